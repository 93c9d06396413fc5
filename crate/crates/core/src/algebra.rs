//! Superclass arithmetic: structure constants `c_{i,j,k}`, the matrices
//! `T_i` they induce, and checks that `U` diagonalizes every `T_i`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::{max_abs_diff, SupercharacterTable, UnitaryU};

/// Largest `N³` stored as a dense tensor.
pub const MAX_TENSOR_ENTRIES: u64 = 100_000_000;

/// `c_{i,j,k} = |{(x, y) ∈ X_i × X_j : x + y = z}|` for a fixed `z ∈ X_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    c: Vec<u32>,
}

impl StructureConstants {
    /// Counts with `z` the canonical representative of each `X_k`.
    pub fn compute(table: &SupercharacterTable) -> Result<Self> {
        let theory = table.theory();
        if !theory.is_symmetric() {
            return Err(Error::UnsupportedSymmetry(
                "structure constants are only defined here for symmetric groups".into(),
            ));
        }
        let n = theory.num_classes();
        if (n as u64).pow(3) > MAX_TENSOR_ENTRIES {
            return Err(Error::CapExceeded { what: "structure-constant tensor N^3", cap: MAX_TENSOR_ENTRIES });
        }
        let partition = theory.superclasses();
        let slabs: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|k| count_for(table, partition.class(k).rep_index()))
            .collect();
        let mut c = vec![0u32; n * n * n];
        for (k, slab) in slabs.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    c[(i * n + j) * n + k] = slab[i * n + j];
                }
            }
        }
        Ok(StructureConstants { n, c })
    }

    pub fn num_classes(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.c[(i * self.n + j) * self.n + k]
    }

    /// `[c_{i,j,k}]_{j,k}`.
    pub fn slice(&self, i: usize) -> Vec<Vec<u32>> {
        (0..self.n).map(|j| (0..self.n).map(|k| self.get(i, j, k)).collect()).collect()
    }

    /// Recounts every `k` with `|X_k| > 1` using its second-smallest member as
    /// `z` and returns the classes whose counts changed.
    pub fn representative_mismatches(&self, table: &SupercharacterTable) -> Vec<usize> {
        let partition = table.theory().superclasses();
        let n = self.n;
        (0..n)
            .into_par_iter()
            .filter_map(|k| {
                let members = partition.class(k).members();
                if members.len() < 2 {
                    return None;
                }
                let slab = count_for(table, members[1]);
                let same = (0..n).all(|i| (0..n).all(|j| slab[i * n + j] == self.get(i, j, k)));
                (!same).then_some(k)
            })
            .collect()
    }

    /// Max of `|Σ_k c_{i,j,k}|X_k| − |X_i||X_j||` over all `(i, j)`; zero when
    /// every pair `(x, y)` is counted exactly once.
    pub fn conservation_defect(&self, sizes: &[usize]) -> u64 {
        let n = self.n;
        let mut worst = 0u64;
        for i in 0..n {
            for j in 0..n {
                let total: u64 = (0..n).map(|k| self.get(i, j, k) as u64 * sizes[k] as u64).sum();
                worst = worst.max(total.abs_diff(sizes[i] as u64 * sizes[j] as u64));
            }
        }
        worst
    }

    pub fn to_nested(&self) -> Vec<Vec<Vec<u32>>> {
        (0..self.n).map(|i| self.slice(i)).collect()
    }
}

/// Slab `s[i·N + j] = |{x ∈ X_i : z − x ∈ X_j}|` for the encoded vector `z`.
fn count_for(table: &SupercharacterTable, z: usize) -> Vec<u32> {
    let theory = table.theory();
    let space = theory.space();
    let modulus = space.modulus();
    let partition = theory.superclasses();
    let n = theory.num_classes();
    let mut slab = vec![0u32; n * n];
    let mut zc = vec![0u64; space.dim()];
    let mut xc = vec![0u64; space.dim()];
    space.decode(z, &mut zc);
    for x in 0..space.size() {
        space.decode(x, &mut xc);
        for (a, &b) in xc.iter_mut().zip(&zc) {
            *a = modulus.sub(b, *a);
        }
        let i = partition.class_of_index(x);
        let j = partition.class_of_index(space.encode(&xc));
        slab[i * n + j] += 1;
    }
    slab
}

/// `[T_i]_{j,k} = c_{i,j,k} √|X_k| / √|X_j|` and `D_i = diag(σ_i(X_1), …, σ_i(X_N))`.
#[derive(Debug, Clone)]
pub struct TMatrixFamily {
    t: Vec<DMatrix<f64>>,
    d: Vec<Vec<Complex64>>,
}

impl TMatrixFamily {
    pub fn build(sc: &StructureConstants, table: &SupercharacterTable) -> Result<Self> {
        let n = sc.num_classes();
        if n != table.num_classes() {
            return Err(Error::TheoryMismatch("structure constants belong to another theory".into()));
        }
        let sizes = table.sizes_x();
        let t = (0..n)
            .map(|i| {
                DMatrix::from_fn(n, n, |j, k| {
                    sc.get(i, j, k) as f64 * (sizes[k] as f64).sqrt() / (sizes[j] as f64).sqrt()
                })
            })
            .collect();
        let d = (0..n).map(|i| (0..n).map(|l| table.value(i, l)).collect()).collect();
        Ok(TMatrixFamily { t, d })
    }

    pub fn t(&self, i: usize) -> &DMatrix<f64> {
        &self.t[i]
    }

    pub fn d(&self, i: usize) -> &[Complex64] {
        &self.d[i]
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Eigenvalues of `T_i` read off as `diag(U* T_i U)`.
    pub fn eigenvalues(&self, i: usize, u: &UnitaryU) -> Vec<Complex64> {
        let ti = self.t[i].map(|v| Complex64::new(v, 0.0));
        let um = u.matrix();
        let conj = um.adjoint() * ti * um;
        (0..conj.nrows()).map(|k| conj[(k, k)]).collect()
    }

    /// Product identity, `T_iU = UD_i`, normality and rank of the `D_i`.
    pub fn verify(&self, sc: &StructureConstants, table: &SupercharacterTable, u: &UnitaryU) -> AlgebraReport {
        let n = self.len();
        let um = u.matrix();

        let mut product_identity = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    let lhs = table.value(i, l) * table.value(j, l);
                    let mut rhs = Complex64::new(0.0, 0.0);
                    for k in 0..n {
                        let c = sc.get(i, j, k);
                        if c != 0 {
                            rhs += table.value(k, l) * c as f64;
                        }
                    }
                    product_identity = product_identity.max((lhs - rhs).norm());
                }
            }
        }

        let (diagonalization, commutator) = (0..n)
            .into_par_iter()
            .map(|i| {
                let ti = self.t[i].map(|v| Complex64::new(v, 0.0));
                let di = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.d[i].clone()));
                let tu = &ti * um;
                let ud = um * di;
                let ti_adj = ti.adjoint();
                let comm = max_abs_diff(&(&ti_adj * &ti), &(&ti * &ti_adj));
                (max_abs_diff(&tu, &ud), comm)
            })
            .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));

        let d_rows = DMatrix::from_fn(n, n, |i, l| self.d[i][l]);
        let svd = d_rows.svd(false, false);
        let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
        let rank = svd
            .singular_values
            .iter()
            .filter(|&&s| s > 1e-9 * n as f64 * largest)
            .count();

        AlgebraReport { product_identity, diagonalization, commutator, d_rank: rank, classes: n }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    pub product_identity: f64,
    pub diagonalization: f64,
    pub commutator: f64,
    pub d_rank: usize,
    pub classes: usize,
}

impl AlgebraReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.product_identity < tol * self.classes as f64
            && self.diagonalization < tol
            && self.commutator < tol
            && self.d_rank == self.classes
    }
}
