//! Supercharacter theories, their tables `σ_i(Y_j)` and the unitary matrix `U`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{MatrixGroup, Symmetry};
use crate::modular::{dot_raw, GMatrix, GVector, Modulus};
use crate::partition::{j_pairing, stabilizer_order_under, Action, Space, SuperclassPartition};

/// `τ = 10⁻⁹ · max(1, N)`.
pub fn default_tolerance(classes: usize) -> f64 {
    1e-9 * (classes.max(1) as f64)
}

/// `e(r/n) = exp(2πi r/n)` for an exact residue `r`.
#[inline]
pub fn unit_root(r: u64, n: u64) -> Complex64 {
    let r = r % n;
    if 2 * r == n {
        return Complex64::new(-1.0, 0.0);
    }
    // fold into (-n/2, n/2] so that e(r/n) and e(-r/n) are exact conjugates
    let signed = if 2 * r > n { r as f64 - n as f64 } else { r as f64 };
    let theta = std::f64::consts::TAU * signed / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Cached `e(r/n)` for `0 ≤ r < n`.
#[derive(Debug, Clone)]
pub struct PhaseTable {
    n: u64,
    table: Option<Vec<Complex64>>,
}

impl PhaseTable {
    const MAX_CACHED: u64 = 1 << 20;

    pub fn new(modulus: Modulus) -> Self {
        let n = modulus.get();
        let table = (n <= Self::MAX_CACHED).then(|| (0..n).map(|r| unit_root(r, n)).collect());
        PhaseTable { n, table }
    }

    #[inline]
    pub fn get(&self, r: u64) -> Complex64 {
        match &self.table {
            Some(t) => t[r as usize],
            None => unit_root(r, self.n),
        }
    }
}

/// A supercharacter theory on `(ℤ/nℤ)^d`: the superclasses `Y`, the
/// character orbits `X` enumerated so that `X_i = J·Y_i`, and the group.
#[derive(Debug, Clone)]
pub struct Theory {
    name: String,
    group: MatrixGroup,
    y: SuperclassPartition,
    x: SuperclassPartition,
    j: Option<GMatrix>,
}

impl Theory {
    /// Builds both partitions. Fails for groups that are neither symmetric
    /// nor `J`-symmetric.
    pub fn new(name: impl Into<String>, group: MatrixGroup) -> Result<Self> {
        let name = name.into();
        match group.symmetry().clone() {
            Symmetry::Symmetric => {
                let y = SuperclassPartition::compute(&group, Action::Direct)?;
                let x = y.clone();
                Ok(Theory { name, group, y, x, j: None })
            }
            Symmetry::JSymmetric(j) => {
                let y = SuperclassPartition::compute(&group, Action::Direct)?;
                let px = SuperclassPartition::compute(&group, Action::InverseTranspose)?;
                let map = j_pairing(&y, &px, &j)?;
                let x = px.reordered(&map)?;
                Ok(Theory { name, group, y, x, j: Some(j) })
            }
            Symmetry::Asymmetric => Err(Error::UnsupportedSymmetry(format!(
                "{name}: group is not transpose-closed and no valid J was supplied"
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn is_symmetric(&self) -> bool {
        self.j.is_none()
    }

    pub fn j(&self) -> Option<&GMatrix> {
        self.j.as_ref()
    }

    pub fn space(&self) -> Space {
        self.y.space()
    }

    pub fn modulus(&self) -> Modulus {
        self.space().modulus()
    }

    pub fn dim(&self) -> usize {
        self.space().dim()
    }

    /// `N`.
    pub fn num_classes(&self) -> usize {
        self.y.len()
    }

    /// `n^d`.
    pub fn group_size(&self) -> usize {
        self.space().size()
    }

    pub fn superclasses(&self) -> &SuperclassPartition {
        &self.y
    }

    pub fn character_classes(&self) -> &SuperclassPartition {
        &self.x
    }
}

/// The `N × N` table with `values[(i, j)] = σ_i(Y_j)`.
#[derive(Debug, Clone)]
pub struct SupercharacterTable {
    theory: Theory,
    values: DMatrix<Complex64>,
    phases: PhaseTable,
}

impl SupercharacterTable {
    pub fn build(theory: Theory) -> Result<Self> {
        let space = theory.space();
        let n_classes = theory.num_classes();
        let d = space.dim();
        let modulus = space.modulus();
        let phases = PhaseTable::new(modulus);

        let y_reps: Vec<Vec<u64>> = (0..n_classes)
            .map(|j| theory.y.rep(j).coords().to_vec())
            .collect();
        let rows: Vec<Vec<Complex64>> = (0..n_classes)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![Complex64::new(0.0, 0.0); n_classes];
                let mut x = vec![0u64; d];
                for &member in theory.x.class(i).members() {
                    space.decode(member, &mut x);
                    for (acc, y) in row.iter_mut().zip(&y_reps) {
                        *acc += phases.get(dot_raw(modulus, &x, y));
                    }
                }
                row
            })
            .collect();
        let values = DMatrix::from_fn(n_classes, n_classes, |i, j| rows[i][j]);
        Ok(SupercharacterTable { theory, values, phases })
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn num_classes(&self) -> usize {
        self.theory.num_classes()
    }

    pub fn values(&self) -> &DMatrix<Complex64> {
        &self.values
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> Complex64 {
        self.values[(i, j)]
    }

    pub fn sizes_x(&self) -> Vec<usize> {
        self.theory.x.sizes()
    }

    pub fn sizes_y(&self) -> Vec<usize> {
        self.theory.y.sizes()
    }

    /// `σ_i(v) = Σ_{x ∈ X_i} e(x·v/n)`.
    pub fn eval(&self, i: usize, v: &GVector) -> Result<Complex64> {
        let space = self.theory.space();
        space.index_of(v)?;
        let modulus = space.modulus();
        let mut x = vec![0u64; space.dim()];
        let mut acc = Complex64::new(0.0, 0.0);
        for &member in self.theory.x.class(i).members() {
            space.decode(member, &mut x);
            acc += self.phases.get(dot_raw(modulus, &x, v.coords()));
        }
        Ok(acc)
    }

    /// The same value through the group sum
    /// `σ_i(v) = |stab(x_i)|⁻¹ Σ_{A ∈ Γ} e(A·x_i · v / n)`.
    pub fn eval_via_stabilizer(&self, i: usize, v: &GVector) -> Result<Complex64> {
        let space = self.theory.space();
        space.index_of(v)?;
        let group = &self.theory.group;
        let rep = self.theory.x.rep(i);
        let action = self.theory.x.action();
        let stab = stabilizer_order_under(group, action, &rep)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for a in action.actors(group)? {
            let ax = a.apply(&rep)?;
            acc += self.phases.get(ax.dot(v)?);
        }
        Ok(acc / stab as f64)
    }

    /// `U = n^{-d/2} [σ_i(Y_j) √|Y_j| / √|X_i|]`, rejected when `‖UU* − I‖_max > tol`.
    pub fn unitary(&self, tol: f64) -> Result<UnitaryU> {
        let n_classes = self.num_classes();
        let sx = self.sizes_x();
        let sy = self.sizes_y();
        let scale = 1.0 / (self.theory.group_size() as f64).sqrt();
        let u = DMatrix::from_fn(n_classes, n_classes, |i, j| {
            self.values[(i, j)] * ((sy[j] as f64).sqrt() / (sx[i] as f64).sqrt() * scale)
        });
        let residual = max_abs_diff(&(&u * u.adjoint()), &DMatrix::identity(n_classes, n_classes));
        if residual > tol {
            return Err(Error::UnitarityViolation { residual, tolerance: tol });
        }
        Ok(UnitaryU {
            u,
            negation: self.theory.x.negation().to_vec(),
            symmetric: self.theory.is_symmetric(),
        })
    }

    /// Table identities, each reported as a max absolute residual.
    pub fn check_invariants(&self) -> TableReport {
        let n_classes = self.num_classes();
        let sx = self.sizes_x();
        let sy = self.sizes_y();
        let pi = self.theory.x.negation();
        let zero_x = self.theory.x.zero_index();
        let zero_y = self.theory.y.zero_index();
        let total = self.theory.group_size() as f64;
        let one = Complex64::new(1.0, 0.0);

        let mut report = TableReport::default();
        for j in 0..n_classes {
            report.trivial_row = report.trivial_row.max((self.values[(zero_x, j)] - one).norm());
        }
        for i in 0..n_classes {
            let xi = sx[i] as f64;
            report.zero_column = report
                .zero_column
                .max((self.values[(i, zero_y)] - Complex64::new(xi, 0.0)).norm());
            for j in 0..n_classes {
                let v = self.values[(i, j)];
                report.max_bound = report.max_bound.max(v.norm() - xi);
                report.conjugate_pairs =
                    report.conjugate_pairs.max((self.values[(pi[i], j)] - v.conj()).norm());
                let lhs = v / xi;
                let rhs = self.values[(j, i)] / sx[j] as f64;
                report.reciprocity = report.reciprocity.max((lhs - rhs).norm());
            }
        }
        for i in 0..n_classes {
            for j in 0..n_classes {
                let mut acc = Complex64::new(0.0, 0.0);
                for l in 0..n_classes {
                    acc += self.values[(i, l)] * self.values[(j, l)].conj() * sy[l] as f64;
                }
                let expected = if i == j { total * sx[i] as f64 } else { 0.0 };
                // relative to n^d
                let r = (acc - Complex64::new(expected, 0.0)).norm() / total;
                report.orthogonality = report.orthogonality.max(r);
            }
        }
        report
    }
}

/// Max residuals of the table identities; `max_bound` is `max(|σ_i| − |X_i|)`,
/// which must be `≤ τ`.
#[derive(Debug, Clone, Default, Serialize)]
pub struct TableReport {
    pub trivial_row: f64,
    pub zero_column: f64,
    pub max_bound: f64,
    pub conjugate_pairs: f64,
    pub reciprocity: f64,
    pub orthogonality: f64,
}

impl TableReport {
    pub fn passes(&self, tol: f64) -> bool {
        [
            self.trivial_row,
            self.zero_column,
            self.max_bound,
            self.conjugate_pairs,
            self.reciprocity,
            self.orthogonality,
        ]
        .iter()
        .all(|&r| r < tol)
    }
}

/// The unitary matrix `U` together with the negation permutation `P`.
#[derive(Debug, Clone)]
pub struct UnitaryU {
    u: DMatrix<Complex64>,
    negation: Vec<usize>,
    symmetric: bool,
}

impl UnitaryU {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.u
    }

    pub fn negation(&self) -> &[usize] {
        &self.negation
    }

    /// `P` with `P_{i, π(i)} = 1`.
    pub fn permutation(&self) -> DMatrix<Complex64> {
        let n = self.negation.len();
        let mut p = DMatrix::zeros(n, n);
        for (i, &j) in self.negation.iter().enumerate() {
            p[(i, j)] = Complex64::new(1.0, 0.0);
        }
        p
    }

    /// Residuals of `UU* = I`, `U = Uᵀ`, `U² = P` and `U⁴ = I`. For a
    /// `J`-symmetric theory `U² = P` is not defined and `U⁴` is informational.
    pub fn verify_identities(&self) -> UnitaryReport {
        let n = self.u.nrows();
        let id = DMatrix::<Complex64>::identity(n, n);
        let u2 = &self.u * &self.u;
        let u4 = &u2 * &u2;
        UnitaryReport {
            unitarity: max_abs_diff(&(&self.u * self.u.adjoint()), &id),
            symmetry: max_abs_diff(&self.u, &self.u.transpose()),
            square_vs_p: self.symmetric.then(|| max_abs_diff(&u2, &self.permutation())),
            fourth_power: max_abs_diff(&u4, &id),
            fourth_power_asserted: self.symmetric,
        }
    }

    /// Number of singular `2×2` minors (`|det| ≤ tol`) of `U`.
    pub fn singular_2x2_minors(&self, tol: f64) -> usize {
        let n = self.u.nrows();
        let mut count = 0;
        for r1 in 0..n {
            for r2 in r1 + 1..n {
                for c1 in 0..n {
                    for c2 in c1 + 1..n {
                        let det = self.u[(r1, c1)] * self.u[(r2, c2)] - self.u[(r1, c2)] * self.u[(r2, c1)];
                        if det.norm() <= tol {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitaryReport {
    pub unitarity: f64,
    pub symmetry: f64,
    pub square_vs_p: Option<f64>,
    pub fourth_power: f64,
    pub fourth_power_asserted: bool,
}

impl UnitaryReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.unitarity < tol
            && self.symmetry < tol
            && self.square_vs_p.is_none_or(|r| r < tol)
            && (!self.fourth_power_asserted || self.fourth_power < tol)
    }
}

/// `max_{ij} |a_ij − b_ij|`.
pub fn max_abs_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
