//! Exponential sums evaluated by direct summation with exact-residue phases,
//! plus the closed forms they are compared against.

use num_complex::Complex64;

use super::arith::{gcd, is_odd_prime, mobius, primitive_root, totient};
use crate::error::{Error, Result};
use crate::modular::Modulus;
use crate::table::unit_root;

const REAL_TOLERANCE: f64 = 1e-9;

fn residue(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

fn require_odd_prime(p: u64) -> Result<Modulus> {
    if !is_odd_prime(p) {
        return Err(Error::BadParameter(format!("p = {p} must be an odd prime")));
    }
    Modulus::new(p)
}

/// `c_n(x) = Σ_{(j,n)=1} e(jx/n)` before rounding.
pub fn ramanujan_sum_complex(n: u64, x: i64) -> Complex64 {
    assert!(n >= 1, "Ramanujan sums need n >= 1");
    let m = Modulus::new(n).expect("n >= 1");
    let x = residue(x, n);
    (1..=n).filter(|&j| gcd(j, n) == 1).map(|j| unit_root(m.mul(j, x), n)).sum()
}

/// `c_n(x)` by direct summation, rounded to the nearest integer.
pub fn ramanujan_sum(n: u64, x: i64) -> i64 {
    ramanujan_sum_complex(n, x).re.round() as i64
}

/// `c_n(x) = μ(n/(n,x)) φ(n) / φ(n/(n,x))`.
pub fn von_sterneck(n: u64, x: i64) -> i64 {
    assert!(n >= 1, "Ramanujan sums need n >= 1");
    let q = n / gcd(residue(x, n), n);
    mobius(q) * (totient(n) / totient(q)) as i64
}

/// `K(a, b) = Σ_{ℓ=1}^{p−1} e((aℓ + bℓ⁻¹)/p)`, which is real.
pub fn kloosterman_sum(p: u64, a: i64, b: i64) -> Result<f64> {
    let m = require_odd_prime(p)?;
    let (a, b) = (residue(a, p), residue(b, p));
    let z: Complex64 = (1..p)
        .map(|l| {
            let inv = m.inv(l).expect("p is prime");
            unit_root(m.add(m.mul(a, l), m.mul(b, inv)), p)
        })
        .sum();
    if z.im.abs() >= REAL_TOLERANCE {
        return Err(Error::InternalInconsistency(format!("K({a},{b}) mod {p} has imaginary part {}", z.im)));
    }
    Ok(z.re)
}

/// `H_p(a) = Σ_{ℓ=1}^{p−1} e(aℓ^p/p²)`.
pub fn heilbronn_sum(p: u64, a: i64) -> Result<Complex64> {
    require_odd_prime(p)?;
    let n = p * p;
    let m = Modulus::new(n)?;
    let a = residue(a, n);
    Ok((1..p).map(|l| unit_root(m.mul(a, m.pow(l, p)), n)).sum())
}

/// Gaussian periods `η_j = Σ_{h ∈ ⟨g^k⟩} e(g^j h/p)` for `0 ≤ j < k`, with
/// `g` the smallest primitive root mod `p`.
pub fn gauss_periods(p: u64, k: u64) -> Result<Vec<Complex64>> {
    let m = require_odd_prime(p)?;
    if k == 0 || !(p - 1).is_multiple_of(k) {
        return Err(Error::BadParameter(format!("k = {k} must divide p - 1 = {}", p - 1)));
    }
    let g = primitive_root(p).expect("prime moduli have primitive roots");
    let gk = m.pow(g, k);
    let subgroup: Vec<u64> = (0..(p - 1) / k).map(|e| m.pow(gk, e)).collect();
    Ok((0..k)
        .map(|j| {
            let shift = m.pow(g, j);
            subgroup.iter().map(|&h| unit_root(m.mul(shift, h), p)).sum()
        })
        .collect())
}

/// `G_p(a) = Σ_{x=0}^{p−1} e(ax²/p)`.
pub fn gauss_sum(p: u64, a: i64) -> Result<Complex64> {
    let m = require_odd_prime(p)?;
    let a = residue(a, p);
    Ok((0..p).map(|x| unit_root(m.mul(a, m.mul(x, x)), p)).sum())
}
