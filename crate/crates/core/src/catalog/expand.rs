//! Expansion of even functions modulo `n` in Ramanujan sums.

use num_complex::Complex64;

use super::arith::{divisors, gcd};
use super::named::NamedTheory;
use super::sums::von_sterneck;
use crate::error::{Error, Result};
use crate::fourier::{forward, SuperclassFunction};
use crate::table::SupercharacterTable;

/// Coefficients `α(d)` with `f(x) = Σ_{d|n} α(d) c_d(x)`.
///
/// `values[i]` is `f(e_i)` where `e_i` is the `i`-th divisor of `n` in
/// increasing order. The result is `(d, α(d))` in increasing `d`.
pub fn even_function_expand(n: u64, values: &[Complex64]) -> Result<Vec<(u64, Complex64)>> {
    let divs = divisors(n);
    if values.len() != divs.len() {
        return Err(Error::IncompleteDivisorData { expected: divs.len(), got: values.len() });
    }
    let table = SupercharacterTable::build(NamedTheory::Ramanujan { n }.build()?)?;
    let partition = table.theory().superclasses();
    let space = partition.space();

    // class ℓ has representative n/d_ℓ and supercharacter c_{d_ℓ}
    let mut f = vec![Complex64::new(0.0, 0.0); partition.len()];
    for (e, v) in divs.iter().zip(values) {
        f[partition.class_of_index((e % n) as usize)] = *v;
    }
    let fh = forward(&table, &SuperclassFunction::on_superclasses(f))?;
    let scale = (space.size() as f64).sqrt();

    let mut out: Vec<(u64, Complex64)> = (0..partition.len())
        .map(|l| {
            let rep = partition.class(l).rep_index() as u64;
            (n / gcd(rep, n), fh.values()[l] / scale)
        })
        .collect();
    out.sort_by_key(|&(d, _)| d);
    Ok(out)
}

/// `Σ_{d|n} α(d) c_d(x)`.
pub fn evaluate_expansion(coefficients: &[(u64, Complex64)], x: i64) -> Complex64 {
    coefficients.iter().map(|&(d, a)| a * von_sterneck(d, x) as f64).sum()
}
