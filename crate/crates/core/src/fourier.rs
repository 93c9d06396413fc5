//! The super-Fourier transform on superclass functions.
//!
//! With `values[(ℓ, i)] = σ_ℓ(Y_i)`:
//!
//! ```text
//! f̂(X_i) = n^{-d/2} Σ_ℓ f(Y_ℓ) · conj(σ_ℓ(Y_i))
//! f(Y_i) = n^{-d/2} Σ_ℓ f̂(X_ℓ) · σ_ℓ(Y_i)
//! ```
//!
//! For a symmetric group `X_i = Y_i` and these are the usual pair; in the
//! `J`-symmetric case `σ_ℓ(Y_i) = (σ_ℓ ∘ J)(X_i)` whenever `J² = I`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::SupercharacterTable;

/// Default cutoff below which `|f(X)|` counts as zero.
pub const DEFAULT_SUPPORT_THRESHOLD: f64 = 1e-8;

/// Which partition a function is indexed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    /// Superclasses `Y`.
    Superclasses,
    /// Character orbits `X`.
    Characters,
}

/// A function constant on superclasses, stored as one value per class.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperclassFunction {
    domain: Domain,
    values: Vec<Complex64>,
}

impl SuperclassFunction {
    pub fn new(domain: Domain, values: Vec<Complex64>) -> Self {
        SuperclassFunction { domain, values }
    }

    pub fn on_superclasses(values: Vec<Complex64>) -> Self {
        Self::new(Domain::Superclasses, values)
    }

    /// Indicator of class `i` among `len` classes.
    pub fn delta(domain: Domain, len: usize, i: usize) -> Self {
        let mut values = vec![Complex64::new(0.0, 0.0); len];
        values[i] = Complex64::new(1.0, 0.0);
        Self::new(domain, values)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `‖f‖_∞ = max |f(X_i)|`.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Indices with `|f(X_i)| > threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.norm() > threshold)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn max_abs_diff(&self, other: &SuperclassFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn check_shape(table: &SupercharacterTable, f: &SuperclassFunction, expected: Domain) -> Result<()> {
    if f.len() != table.num_classes() {
        return Err(Error::TheoryMismatch(format!(
            "function has {} values but the theory has {} classes",
            f.len(),
            table.num_classes()
        )));
    }
    if !table.theory().is_symmetric() && f.domain != expected {
        return Err(Error::TheoryMismatch(format!(
            "expected a function on {expected:?}, got one on {:?}",
            f.domain
        )));
    }
    Ok(())
}

fn scale(table: &SupercharacterTable) -> f64 {
    1.0 / (table.theory().group_size() as f64).sqrt()
}

/// `f ↦ f̂`.
pub fn forward(table: &SupercharacterTable, f: &SuperclassFunction) -> Result<SuperclassFunction> {
    check_shape(table, f, Domain::Superclasses)?;
    let n = table.num_classes();
    let s = scale(table);
    let values = (0..n)
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, fl) in f.values.iter().enumerate() {
                acc += fl * table.value(l, i).conj();
            }
            acc * s
        })
        .collect();
    Ok(SuperclassFunction::new(Domain::Characters, values))
}

/// `f̂ ↦ f`.
pub fn inverse(table: &SupercharacterTable, fh: &SuperclassFunction) -> Result<SuperclassFunction> {
    check_shape(table, fh, Domain::Characters)?;
    let n = table.num_classes();
    let s = scale(table);
    let values = (0..n)
        .map(|i| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (l, fl) in fh.values.iter().enumerate() {
                acc += fl * table.value(l, i);
            }
            acc * s
        })
        .collect();
    Ok(SuperclassFunction::new(Domain::Superclasses, values))
}

/// `‖f‖ = (Σ_ℓ |X_ℓ| |f(X_ℓ)|²)^{1/2}`. Paired classes have equal sizes, so
/// the same weights serve both domains.
pub fn norm(table: &SupercharacterTable, f: &SuperclassFunction) -> f64 {
    let sizes = match f.domain {
        Domain::Superclasses => table.sizes_y(),
        Domain::Characters => table.sizes_x(),
    };
    f.values
        .iter()
        .zip(sizes)
        .map(|(v, s)| s as f64 * v.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// `⌈n^d / M⌉` with `M` the largest class size, in integer arithmetic.
pub fn uncertainty_lhs(table: &SupercharacterTable) -> u64 {
    let total = table.theory().group_size() as u64;
    let max = table.theory().superclasses().max_size() as u64;
    total.div_ceil(max)
}

/// `⌈n^d / M²⌉`, the bound that survives when both `‖f‖_∞` estimates are
/// charged for the largest class size.
pub fn uncertainty_lhs_squared_max(table: &SupercharacterTable) -> u64 {
    let total = table.theory().group_size() as u64;
    let max = table.theory().superclasses().max_size() as u64;
    total.div_ceil(max * max)
}

/// `holds` compares against `⌈n^d/M⌉`; `holds_squared_max` against `⌈n^d/M²⌉`.
#[derive(Debug, Clone, Serialize)]
pub struct UncertaintyCheck {
    pub lhs: u64,
    pub lhs_squared_max: u64,
    pub support_f: usize,
    pub support_fhat: usize,
    pub holds: bool,
    pub holds_squared_max: bool,
}

/// Evaluates `⌈n^d/M⌉ ≤ |supp f|·|supp f̂|` for a nonzero `f`.
pub fn check_uncertainty(
    table: &SupercharacterTable,
    f: &SuperclassFunction,
    threshold: f64,
) -> Result<UncertaintyCheck> {
    let support_f = f.support(threshold).len();
    if support_f == 0 {
        return Err(Error::ZeroFunction);
    }
    let fh = forward(table, f)?;
    let support_fhat = fh.support(threshold).len();
    let lhs = uncertainty_lhs(table);
    let lhs_squared_max = uncertainty_lhs_squared_max(table);
    let product = (support_f * support_fhat) as u64;
    Ok(UncertaintyCheck {
        lhs,
        lhs_squared_max,
        support_f,
        support_fhat,
        holds: lhs <= product,
        holds_squared_max: lhs_squared_max <= product,
    })
}

/// Matrix of the transform in the orthonormal basis `s_i = σ_i / √(n^d |X_i|)`:
/// entry `(i, j)` is `⟨F s_j, s_i⟩`.
pub fn matrix_in_orthonormal_basis(table: &SupercharacterTable) -> Result<DMatrix<Complex64>> {
    let n = table.num_classes();
    let sizes = table.sizes_x();
    let total = table.theory().group_size() as f64;
    let mut out = DMatrix::zeros(n, n);
    for j in 0..n {
        // s_j as a superclass function: σ_j(Y_ℓ) / √(n^d |X_j|)
        let sj: Vec<Complex64> = (0..n)
            .map(|l| table.value(j, l) / (total * sizes[j] as f64).sqrt())
            .collect();
        let fs = forward(table, &SuperclassFunction::on_superclasses(sj))?;
        for i in 0..n {
            // ⟨g, s_i⟩ = Σ_ℓ |X_ℓ| g(X_ℓ) conj(s_i(X_ℓ))
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                let si = table.value(i, l) / (total * sizes[i] as f64).sqrt();
                acc += fs.values[l] * si.conj() * sizes[l] as f64;
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
