//! Finite matrix groups `Γ ⊆ GL_d(ℤ/nℤ)` and their transpose symmetry.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::modular::{GMatrix, Modulus};

/// Default cap on the number of elements produced by [`MatrixGroup::closure`].
pub const DEFAULT_CLOSURE_CAP: u64 = 1_000_000;
/// Default cap on the number of candidate matrices scanned by [`MatrixGroup::general_linear`].
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000_000;
/// Largest `d` accepted by [`MatrixGroup::permutations`].
pub const MAX_PERMUTATION_DIM: usize = 8;

/// How a group relates to its transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symmetry {
    /// `Γᵀ = Γ`.
    Symmetric,
    /// `J = Jᵀ` invertible with `JΓ = ΓᵀJ`.
    JSymmetric(GMatrix),
    Asymmetric,
}

/// A finite subgroup of `GL_d(ℤ/nℤ)` with its elements materialized in
/// lexicographic order of their row-major entries.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    modulus: Modulus,
    dim: usize,
    elements: Vec<GMatrix>,
    generators: Vec<GMatrix>,
    symmetry: Symmetry,
}

impl MatrixGroup {
    /// Smallest set containing the identity and `generators` that is closed
    /// under multiplication. For a finite group this is also inverse-closed.
    pub fn closure(
        modulus: Modulus,
        dim: usize,
        generators: &[GMatrix],
        cap: u64,
    ) -> Result<Self> {
        let mut gens: Vec<GMatrix> = generators.to_vec();
        for g in &gens {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch { left: modulus.get(), right: g.modulus().get() });
            }
            if g.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.dim() });
            }
            if !g.is_invertible() {
                return Err(Error::NotInvertible { det: g.det(), modulus: modulus.get() });
            }
        }
        gens.sort();
        gens.dedup();

        let identity = GMatrix::identity(modulus, dim);
        let mut seen = BTreeSet::new();
        seen.insert(identity.clone());
        let mut frontier = VecDeque::from([identity]);
        while let Some(a) = frontier.pop_front() {
            for g in &gens {
                let prod = g.mul(&a)?;
                if !seen.contains(&prod) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::CapExceeded { what: "group closure", cap });
                    }
                    seen.insert(prod.clone());
                    frontier.push_back(prod);
                }
            }
        }
        let mut group = Self::from_sorted(modulus, dim, seen.into_iter().collect());
        group.generators = gens;
        Ok(group)
    }

    /// All of `GL_d(ℤ/nℤ)` by scanning the `n^{d²}` candidate matrices.
    pub fn general_linear(modulus: Modulus, dim: usize, cap: u64) -> Result<Self> {
        Self::scan(modulus, dim, cap, |m| modulus.is_unit(m.det()))
    }

    /// The determinant-one subgroup `SL_d(ℤ/nℤ)`.
    pub fn special_linear(modulus: Modulus, dim: usize, cap: u64) -> Result<Self> {
        let one = modulus.reduce(1);
        Self::scan(modulus, dim, cap, |m| m.det() == one)
    }

    fn scan(modulus: Modulus, dim: usize, cap: u64, keep: impl Fn(&GMatrix) -> bool) -> Result<Self> {
        let n = modulus.get();
        let cells = (dim * dim) as u32;
        let total = n
            .checked_pow(cells)
            .filter(|&t| t <= cap)
            .ok_or(Error::CapExceeded { what: "candidate matrix count", cap })?;
        let mut elements = Vec::new();
        let mut entries = vec![0u64; dim * dim];
        for mut code in 0..total {
            // least significant digit last, so `code` order is lexicographic
            for e in entries.iter_mut().rev() {
                *e = code % n;
                code /= n;
            }
            let m = GMatrix::new(modulus, dim, entries.clone())?;
            if keep(&m) {
                elements.push(m);
            }
        }
        Ok(Self::from_sorted(modulus, dim, elements))
    }

    /// All `d!` permutation matrices.
    pub fn permutations(modulus: Modulus, dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_PERMUTATION_DIM {
            return Err(Error::CapExceeded {
                what: "permutation group dimension",
                cap: MAX_PERMUTATION_DIM as u64,
            });
        }
        let mut elements = Vec::new();
        let mut perm: Vec<usize> = (0..dim).collect();
        loop {
            let mut entries = vec![0u64; dim * dim];
            for (row, &col) in perm.iter().enumerate() {
                entries[row * dim + col] = 1;
            }
            elements.push(GMatrix::new(modulus, dim, entries)?);
            if !next_permutation(&mut perm) {
                break;
            }
        }
        elements.sort();
        elements.dedup();
        let mut group = Self::from_sorted(modulus, dim, elements);
        if dim >= 2 {
            // a transposition and a full cycle generate S_d
            let mut swap = vec![0u64; dim * dim];
            let mut cycle = vec![0u64; dim * dim];
            for row in 0..dim {
                let col = match row {
                    0 => 1,
                    1 => 0,
                    r => r,
                };
                swap[row * dim + col] = 1;
                cycle[row * dim + (row + 1) % dim] = 1;
            }
            group.generators = vec![GMatrix::new(modulus, dim, swap)?, GMatrix::new(modulus, dim, cycle)?];
        }
        Ok(group)
    }

    /// Wraps an explicit element list, verifying that it is a group.
    pub fn from_elements(modulus: Modulus, dim: usize, mut elements: Vec<GMatrix>) -> Result<Self> {
        elements.sort();
        elements.dedup();
        let group = Self::from_sorted(modulus, dim, elements);
        group.validate()?;
        Ok(group)
    }

    fn from_sorted(modulus: Modulus, dim: usize, elements: Vec<GMatrix>) -> Self {
        let generators = elements.clone();
        let mut g = MatrixGroup { modulus, dim, elements, generators, symmetry: Symmetry::Asymmetric };
        g.symmetry = g.check_symmetry(None);
        g
    }

    /// Checks identity, closure under products and under inverses.
    pub fn validate(&self) -> Result<()> {
        let id = GMatrix::identity(self.modulus, self.dim);
        if !self.contains(&id) {
            return Err(Error::BadParameter("group does not contain the identity".into()));
        }
        for a in &self.elements {
            if a.modulus() != self.modulus || a.dim() != self.dim {
                return Err(Error::BadParameter("group element has the wrong shape".into()));
            }
            if !self.contains(&a.inverse()?) {
                return Err(Error::BadParameter(format!("inverse of {a} missing")));
            }
            for b in &self.elements {
                if !self.contains(&a.mul(b)?) {
                    return Err(Error::BadParameter(format!("product of {a} and {b} missing")));
                }
            }
        }
        Ok(())
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GMatrix] {
        &self.elements
    }

    /// A generating set; every element when none smaller is known.
    pub fn generators(&self) -> &[GMatrix] {
        &self.generators
    }

    pub fn symmetry(&self) -> &Symmetry {
        &self.symmetry
    }

    pub fn contains(&self, a: &GMatrix) -> bool {
        self.elements.binary_search(a).is_ok()
    }

    /// Classifies the group: `Symmetric` if transpose-closed, otherwise
    /// `JSymmetric(j)` when `j` is supplied and satisfies `J = Jᵀ`, `J`
    /// invertible and `JΓ = ΓᵀJ`, otherwise `Asymmetric`.
    pub fn check_symmetry(&self, j: Option<&GMatrix>) -> Symmetry {
        if self.elements.iter().all(|a| self.contains(&a.transpose())) {
            return Symmetry::Symmetric;
        }
        match j {
            Some(j) if self.is_j_symmetric(j) => Symmetry::JSymmetric(j.clone()),
            _ => Symmetry::Asymmetric,
        }
    }

    fn is_j_symmetric(&self, j: &GMatrix) -> bool {
        if j.modulus() != self.modulus || j.dim() != self.dim {
            return false;
        }
        if *j != j.transpose() || !j.is_invertible() {
            return false;
        }
        let left: Option<BTreeSet<GMatrix>> = self.elements.iter().map(|a| j.mul(a).ok()).collect();
        let right: Option<BTreeSet<GMatrix>> =
            self.elements.iter().map(|a| a.transpose().mul(j).ok()).collect();
        matches!((left, right), (Some(l), Some(r)) if l == r)
    }

    /// Reclassifies with a user-supplied `J`.
    pub fn with_j(mut self, j: &GMatrix) -> Self {
        self.symmetry = self.check_symmetry(Some(j));
        self
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
