//! Exact arithmetic over ℤ/nℤ: residues, vectors of `(ℤ/nℤ)^d` and square
//! matrices, including inverses modulo composite `n`.
//!
//! Every stored residue lies in `[0, n)`; all operations reduce eagerly.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A modulus `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter("modulus must be at least 1".into()));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u64 {
        x % self.0
    }

    #[inline]
    pub fn reduce_signed(self, x: i128) -> u64 {
        x.rem_euclid(self.0 as i128) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        let a = a % self.0;
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    pub fn pow(self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.0;
        base %= self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, or `None` when `gcd(a, n) ≠ 1`.
    pub fn inv(self, a: u64) -> Option<u64> {
        let (g, x, _) = ext_gcd(a as i128 % self.0 as i128, self.0 as i128);
        if g != 1 {
            return None;
        }
        Some(self.reduce_signed(x))
    }

    pub fn is_unit(self, a: u64) -> bool {
        gcd(a % self.0, self.0) == 1
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// An element of `G = (ℤ/nℤ)^d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GVector {
    modulus: Modulus,
    coords: Vec<u64>,
}

impl GVector {
    pub fn new(modulus: Modulus, coords: Vec<u64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::BadParameter("vector dimension must be at least 1".into()));
        }
        let coords = coords.into_iter().map(|c| modulus.reduce(c)).collect();
        Ok(GVector { modulus, coords })
    }

    pub fn zero(modulus: Modulus, dim: usize) -> Self {
        GVector { modulus, coords: vec![0; dim] }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn neg(&self) -> GVector {
        let m = self.modulus;
        GVector { modulus: m, coords: self.coords.iter().map(|&c| m.neg(c)).collect() }
    }

    pub fn add(&self, other: &GVector) -> Result<GVector> {
        check_compatible(self.modulus, other.modulus, self.dim(), other.dim())?;
        let m = self.modulus;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| m.add(a, b)).collect();
        Ok(GVector { modulus: m, coords })
    }

    /// `x · y = Σ x_i y_i (mod n)`.
    pub fn dot(&self, other: &GVector) -> Result<u64> {
        check_compatible(self.modulus, other.modulus, self.dim(), other.dim())?;
        Ok(dot_raw(self.modulus, &self.coords, &other.coords))
    }

    /// Parses `"0,1,2"`.
    pub fn parse(modulus: Modulus, s: &str) -> Result<Self> {
        let coords = parse_residue_list(modulus, s, ',')?;
        GVector::new(modulus, coords)
    }
}

impl fmt::Display for GVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[inline]
pub(crate) fn dot_raw(m: Modulus, a: &[u64], b: &[u64]) -> u64 {
    let mut acc: u128 = 0;
    for (&x, &y) in a.iter().zip(b) {
        acc += x as u128 * y as u128;
    }
    (acc % m.get() as u128) as u64
}

fn check_compatible(m1: Modulus, m2: Modulus, d1: usize, d2: usize) -> Result<()> {
    if m1 != m2 {
        return Err(Error::ModulusMismatch { left: m1.get(), right: m2.get() });
    }
    if d1 != d2 {
        return Err(Error::DimensionMismatch { expected: d1, got: d2 });
    }
    Ok(())
}

fn parse_residue_list(modulus: Modulus, s: &str, sep: char) -> Result<Vec<u64>> {
    s.split(sep)
        .map(|tok| {
            let tok = tok.trim();
            i128::from_str(tok)
                .map(|v| modulus.reduce_signed(v))
                .map_err(|_| Error::Parse(format!("bad residue {tok:?} in {s:?}")))
        })
        .collect()
}

/// A `d × d` matrix over ℤ/nℤ, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GMatrix {
    modulus: Modulus,
    dim: usize,
    entries: Vec<u64>,
}

impl GMatrix {
    pub fn new(modulus: Modulus, dim: usize, entries: Vec<u64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::BadParameter("matrix dimension must be at least 1".into()));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: entries.len() });
        }
        let entries = entries.into_iter().map(|e| modulus.reduce(e)).collect();
        Ok(GMatrix { modulus, dim, entries })
    }

    pub fn from_rows(modulus: Modulus, rows: &[&[u64]]) -> Result<Self> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::BadParameter("matrix must be square".into()));
        }
        GMatrix::new(modulus, dim, rows.concat())
    }

    pub fn identity(modulus: Modulus, dim: usize) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = modulus.reduce(1);
        }
        GMatrix { modulus, dim, entries }
    }

    pub fn diagonal(modulus: Modulus, diag: &[u64]) -> Self {
        let dim = diag.len();
        let mut entries = vec![0; dim * dim];
        for (i, &v) in diag.iter().enumerate() {
            entries[i * dim + i] = modulus.reduce(v);
        }
        GMatrix { modulus, dim, entries }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.dim + col]
    }

    fn check(&self, other: &GMatrix) -> Result<()> {
        check_compatible(self.modulus, other.modulus, self.dim, other.dim)
    }

    pub fn mul(&self, other: &GMatrix) -> Result<GMatrix> {
        self.check(other)?;
        let d = self.dim;
        let n = self.modulus.get() as u128;
        let mut entries = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc: u128 = 0;
                for k in 0..d {
                    acc += self.entries[i * d + k] as u128 * other.entries[k * d + j] as u128;
                }
                entries[i * d + j] = (acc % n) as u64;
            }
        }
        Ok(GMatrix { modulus: self.modulus, dim: d, entries })
    }

    pub fn transpose(&self) -> GMatrix {
        let d = self.dim;
        let mut entries = vec![0u64; d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j];
            }
        }
        GMatrix { modulus: self.modulus, dim: d, entries }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> u64 {
        let cols: Vec<usize> = (0..self.dim).collect();
        det_minor(self, 0, &cols)
    }

    pub fn is_invertible(&self) -> bool {
        self.modulus.is_unit(self.det())
    }

    /// `A⁻¹ = det(A)⁻¹ · adj(A)`.
    pub fn inverse(&self) -> Result<GMatrix> {
        let m = self.modulus;
        let det = self.det();
        let det_inv = m.inv(det).ok_or(Error::NotInvertible { det, modulus: m.get() })?;
        let d = self.dim;
        let mut entries = vec![0u64; d * d];
        if d == 1 {
            entries[0] = det_inv;
            return Ok(GMatrix { modulus: m, dim: 1, entries });
        }
        for i in 0..d {
            for j in 0..d {
                // adj[j][i] = (-1)^{i+j} det(A with row i and column j deleted)
                let minor = self.delete(i, j);
                let mut cof = minor.det();
                if (i + j) % 2 == 1 {
                    cof = m.neg(cof);
                }
                entries[j * d + i] = m.mul(cof, det_inv);
            }
        }
        Ok(GMatrix { modulus: m, dim: d, entries })
    }

    /// `A^{-T}`.
    pub fn inverse_transpose(&self) -> Result<GMatrix> {
        Ok(self.inverse()?.transpose())
    }

    fn delete(&self, row: usize, col: usize) -> GMatrix {
        let d = self.dim;
        let mut entries = Vec::with_capacity((d - 1) * (d - 1));
        for i in (0..d).filter(|&i| i != row) {
            for j in (0..d).filter(|&j| j != col) {
                entries.push(self.entries[i * d + j]);
            }
        }
        GMatrix { modulus: self.modulus, dim: d - 1, entries }
    }

    pub fn apply(&self, v: &GVector) -> Result<GVector> {
        check_compatible(self.modulus, v.modulus, self.dim, v.dim())?;
        let mut out = vec![0u64; self.dim];
        self.apply_raw(&v.coords, &mut out);
        Ok(GVector { modulus: self.modulus, coords: out })
    }

    #[inline]
    pub(crate) fn apply_raw(&self, v: &[u64], out: &mut [u64]) {
        let d = self.dim;
        let n = self.modulus.get() as u128;
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * d..(i + 1) * d];
            let mut acc: u128 = 0;
            for (&a, &x) in row.iter().zip(v) {
                acc += a as u128 * x as u128;
            }
            *o = (acc % n) as u64;
        }
    }

    /// Parses row-major text such as `"1,0;0,1"`.
    pub fn parse(modulus: Modulus, s: &str) -> Result<Self> {
        let rows: Vec<Vec<u64>> = s
            .split(';')
            .map(|row| parse_residue_list(modulus, row, ','))
            .collect::<Result<_>>()?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse(format!("matrix {s:?} is not square")));
        }
        GMatrix::new(modulus, dim, rows.concat())
    }
}

fn det_minor(a: &GMatrix, row: usize, cols: &[usize]) -> u64 {
    let m = a.modulus;
    match cols.len() {
        0 => m.reduce(1),
        1 => a.get(row, cols[0]),
        2 => m.sub(
            m.mul(a.get(row, cols[0]), a.get(row + 1, cols[1])),
            m.mul(a.get(row, cols[1]), a.get(row + 1, cols[0])),
        ),
        _ => {
            let mut acc = 0u64;
            let mut rest = Vec::with_capacity(cols.len() - 1);
            for (idx, &c) in cols.iter().enumerate() {
                let entry = a.get(row, c);
                if entry == 0 {
                    continue;
                }
                rest.clear();
                rest.extend(cols.iter().copied().filter(|&x| x != c));
                let term = m.mul(entry, det_minor(a, row + 1, &rest));
                acc = if idx % 2 == 0 { m.add(acc, term) } else { m.sub(acc, term) };
            }
            acc
        }
    }
}

impl fmt::Display for GMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            if i > 0 {
                write!(f, ";")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn mat(n: u64, rows: &[&[u64]]) -> GMatrix {
        GMatrix::from_rows(m(n), rows).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let a = mat(5, &[&[1, 1], &[0, 1]]);
        assert_eq!(GMatrix::identity(m(5), 2).mul(&a).unwrap(), a);
        assert_eq!(a.mul(&a).unwrap(), mat(5, &[&[1, 2], &[0, 1]]));
        let b = mat(2, &[&[1, 1], &[1, 0]]);
        assert_eq!(b.mul(&b).unwrap(), mat(2, &[&[0, 1], &[1, 1]]));
    }

    #[test]
    fn multiplication_mismatch() {
        let a = GMatrix::identity(m(5), 2);
        let b = GMatrix::identity(m(7), 2);
        let c = GMatrix::identity(m(5), 3);
        assert!(matches!(a.mul(&b), Err(Error::ModulusMismatch { .. })));
        assert!(matches!(a.mul(&c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(GMatrix::identity(m(7), 4).det(), 1);
        assert_eq!(mat(6, &[&[2, 1], &[3, 2]]).det(), 1);
        assert_eq!(mat(4, &[&[2, 0], &[0, 2]]).det(), 0);
        // 3x3 over the integers: det = 1*(5*9-6*8) - 2*(4*9-6*7) + 3*(4*8-5*7) = -3 + 12 - 9 = 0
        assert_eq!(mat(11, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).det(), 0);
        // det = 2*(1*1-0) - 0 + 1*(0-1*1) = 1
        assert_eq!(mat(13, &[&[2, 0, 1], &[0, 1, 0], &[1, 0, 1]]).det(), 1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(GMatrix::identity(m(9), 3).inverse().unwrap(), GMatrix::identity(m(9), 3));
        assert_eq!(mat(5, &[&[2, 0], &[0, 3]]).inverse().unwrap(), mat(5, &[&[3, 0], &[0, 2]]));
        assert_eq!(
            mat(4, &[&[2, 0], &[0, 1]]).inverse(),
            Err(Error::NotInvertible { det: 2, modulus: 4 })
        );
        // composite modulus with a unit determinant
        let a = mat(6, &[&[2, 1], &[3, 2]]);
        assert_eq!(a.mul(&a.inverse().unwrap()).unwrap(), GMatrix::identity(m(6), 2));
    }

    #[test]
    fn modulus_one_is_degenerate_but_consistent() {
        let one = m(1);
        let i = GMatrix::identity(one, 2);
        assert_eq!(i.entries(), &[0, 0, 0, 0]);
        assert!(i.is_invertible());
        assert_eq!(i.inverse().unwrap(), i);
    }

    #[test]
    fn transpose_examples() {
        let i = GMatrix::identity(m(3), 2);
        assert_eq!(i.transpose(), i);
        let n = mat(3, &[&[0, 1], &[0, 0]]);
        assert_eq!(n.transpose(), mat(3, &[&[0, 0], &[1, 0]]));
        assert_eq!(n.transpose().transpose(), n);
    }

    #[test]
    fn dot_and_apply_examples() {
        let v = |n, c: &[u64]| GVector::new(m(n), c.to_vec()).unwrap();
        assert_eq!(v(5, &[1, 2]).dot(&v(5, &[3, 4])).unwrap(), 1);
        assert_eq!(v(12, &[0, 0, 0, 1, 1]).dot(&v(12, &[1, 1, 1, 1, 1])).unwrap(), 2);
        let x = v(7, &[3, 6, 2]);
        assert_eq!(GMatrix::identity(m(7), 3).apply(&x).unwrap(), x);
        assert!(v(5, &[1]).dot(&v(5, &[1, 2])).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let a = GMatrix::parse(m(5), "1,0; 0,-1").unwrap();
        assert_eq!(a, mat(5, &[&[1, 0], &[0, 4]]));
        assert_eq!(a.to_string(), "1,0;0,4");
        assert_eq!(GVector::parse(m(5), "0,1,7").unwrap().coords(), &[0, 1, 2]);
        assert!(GMatrix::parse(m(5), "1,0;0").is_err());
        assert!(GVector::parse(m(5), "1,x").is_err());
    }

    fn arb_matrix(n: u64, d: usize) -> impl Strategy<Value = GMatrix> {
        prop::collection::vec(0..n, d * d).prop_map(move |e| GMatrix::new(m(n), d, e).unwrap())
    }

    fn arb_vector(n: u64, d: usize) -> impl Strategy<Value = GVector> {
        prop::collection::vec(0..n, d).prop_map(move |c| GVector::new(m(n), c).unwrap())
    }

    fn arb_case() -> impl Strategy<Value = (GMatrix, GMatrix, GVector, GVector)> {
        (2u64..40, 1usize..5).prop_flat_map(|(n, d)| {
            (arb_matrix(n, d), arb_matrix(n, d), arb_vector(n, d), arb_vector(n, d))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn transpose_adjoint_identity((a, _b, x, y) in arb_case()) {
            let lhs = a.apply(&x).unwrap().dot(&y).unwrap();
            let rhs = x.dot(&a.transpose().apply(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(2_000))]

        #[test]
        fn determinant_is_multiplicative((a, b, _x, _y) in arb_case()) {
            let md = a.modulus();
            prop_assert_eq!(a.mul(&b).unwrap().det(), md.mul(a.det(), b.det()));
        }

        #[test]
        fn inverse_is_two_sided((a, _b, _x, _y) in arb_case()) {
            let id = GMatrix::identity(a.modulus(), a.dim());
            match a.inverse() {
                Ok(inv) => {
                    prop_assert_eq!(a.mul(&inv).unwrap(), id.clone());
                    prop_assert_eq!(inv.mul(&a).unwrap(), id);
                }
                Err(Error::NotInvertible { det, .. }) => prop_assert!(!a.modulus().is_unit(det)),
                Err(e) => prop_assert!(false, "unexpected error {e}"),
            }
        }
    }
}
