//! Uncertainty constants `⌈n^d / M⌉` for the symmetric-group theories, where
//! `M` is the largest orbit of `S_d` on `(ℤ/nℤ)^d`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::MatrixGroup;
use crate::modular::Modulus;
use crate::partition::{Action, SuperclassPartition};

/// Largest `k` with `k!` representable in `u128`.
pub const MAX_FACTORIAL: usize = 34;

fn factorial(k: usize) -> Result<u128> {
    if k > MAX_FACTORIAL {
        return Err(Error::Overflow("factorial"));
    }
    Ok((1..=k as u128).product())
}

/// `⌈n^d (q!)^n (q+1)^r / d!⌉` with `d = qn + r`, `0 ≤ r < n`.
pub fn symmetric_uncertainty_constant(n: u64, d: usize) -> Result<u128> {
    if n == 0 || d == 0 {
        return Err(Error::BadParameter("n and d must be at least 1".into()));
    }
    let (q, r) = (d as u64 / n, d as u64 % n);
    let qf = factorial(q as usize)?;
    let overflow = || Error::Overflow("symmetric uncertainty constant");
    let numerator = (n as u128)
        .checked_pow(d as u32)
        .and_then(|a| a.checked_mul(qf.checked_pow(u32::try_from(n).ok()?)?))
        .and_then(|a| a.checked_mul((q as u128 + 1).checked_pow(r as u32)?))
        .ok_or_else(overflow)?;
    Ok(numerator.div_ceil(factorial(d)?))
}

/// Rows `d = 1..=max_d`, columns `n = 1..=max_n`.
pub fn uncertainty_grid(max_n: u64, max_d: usize) -> Result<Vec<Vec<u128>>> {
    (1..=max_d)
        .into_par_iter()
        .map(|d| (1..=max_n).map(|n| symmetric_uncertainty_constant(n, d)).collect())
        .collect()
}

/// `⌈n^d / M⌉` with `M` read off the computed partition.
pub fn partition_uncertainty_constant(n: u64, d: usize) -> Result<u128> {
    let group = MatrixGroup::permutations(Modulus::new(n)?, d)?;
    let partition = SuperclassPartition::compute(&group, Action::Direct)?;
    Ok((partition.space().size() as u128).div_ceil(partition.max_size() as u128))
}
