//! The verification battery: unitarity of `U`, the transform identities on
//! random superclass functions, and the superclass algebra, run over a list of
//! named theories.

use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{StructureConstants, TMatrixFamily, AlgebraReport};
use crate::catalog::arith::divisors;
use crate::catalog::NamedTheory;
use crate::error::Result;
use crate::fourier::{self, SuperclassFunction, DEFAULT_SUPPORT_THRESHOLD};
use crate::table::{default_tolerance, UnitaryReport, SupercharacterTable, TableReport};

/// Largest `N` for which the symmetric-group family is included by default.
pub const SYMMETRIC_BATTERY_MAX_CLASSES: usize = 300;
/// Largest `n^d` for the symmetric-group family.
pub const SYMMETRIC_BATTERY_MAX_POINTS: u64 = 100_000;

/// The default list of theories.
pub fn default_battery() -> Vec<NamedTheory> {
    let mut out = Vec::new();
    for n in [2, 3, 5] {
        for d in [1, 2] {
            out.push(NamedTheory::MaxCollapse { n, d });
        }
    }
    out.extend((1..=16).map(|n| NamedTheory::Dft { n, d: 1 }));
    out.extend((2..=16).map(|n| NamedTheory::Dct { n }));
    for p in [5, 7, 13, 17, 19] {
        out.extend(divisors(p - 1).into_iter().map(|k| NamedTheory::Gauss { p, k }));
    }
    out.extend([3, 5, 7, 11, 13].map(|p| NamedTheory::Kloosterman { p }));
    out.extend([3, 5, 7].map(|p| NamedTheory::Heilbronn { p }));
    out.extend((1..=36).map(|n| NamedTheory::Ramanujan { n }));
    out.extend(symmetric_battery());
    out.extend([3, 5, 7, 11].map(|p| NamedTheory::JsymTriangular { p }));
    out
}

/// `symmetric(n, d)` with `d ≥ 2`, `n ≥ 2`, `n^d ≤ 10⁵` and at most
/// [`SYMMETRIC_BATTERY_MAX_CLASSES`] classes.
pub fn symmetric_battery() -> Vec<NamedTheory> {
    let mut out = Vec::new();
    for d in 2..=crate::group::MAX_PERMUTATION_DIM {
        for n in 2u64.. {
            match n.checked_pow(d as u32) {
                Some(size) if size <= SYMMETRIC_BATTERY_MAX_POINTS => {}
                _ => break,
            }
            let t = NamedTheory::Symmetric { n, d };
            if t.expected_classes().is_some_and(|c| c <= SYMMETRIC_BATTERY_MAX_CLASSES) {
                out.push(t);
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct BatteryConfig {
    pub seed: u64,
    /// Random functions per theory.
    pub samples: usize,
    /// Structure constants are checked when `N` is at most this.
    pub algebra_max_classes: usize,
    pub support_threshold: f64,
    /// Replaces `τ = 10⁻⁹·max(1, N)` when set.
    pub tolerance: Option<f64>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig {
            seed: 0,
            samples: 1000,
            algebra_max_classes: 60,
            support_threshold: DEFAULT_SUPPORT_THRESHOLD,
            tolerance: None,
        }
    }
}

/// Max residuals over the random sample. `fourth_power` and `square_vs_negation`
/// are `None` when `f` and `f̂` live on different partitions.
#[derive(Debug, Clone, Serialize)]
pub struct TransformReport {
    pub samples: usize,
    /// `max |‖f̂‖ − ‖f‖| / ‖f‖`.
    pub parseval: f64,
    /// `max |F⁻¹Ff − f|`.
    pub round_trip: f64,
    pub fourth_power: Option<f64>,
    pub square_vs_negation: Option<f64>,
    /// `⌈n^d/M⌉`.
    pub uncertainty_lhs: u64,
    pub uncertainty_violations: usize,
    /// `⌈n^d/M²⌉`, reported alongside; it does not enter `passes`.
    pub uncertainty_lhs_squared_max: u64,
    pub squared_max_violations: usize,
    /// Smallest `|supp f|·|supp f̂|` seen.
    pub min_support_product: usize,
    /// The first sampled `f` below `⌈n^d/M⌉`, as `[re, im]` pairs.
    pub uncertainty_witness: Option<Vec<[f64; 2]>>,
}

impl TransformReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.parseval < tol
            && self.round_trip < tol
            && self.fourth_power.is_none_or(|r| r < tol)
            && self.square_vs_negation.is_none_or(|r| r < tol)
            && self.uncertainty_violations == 0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoryReport {
    pub theory: String,
    pub classes: usize,
    pub tolerance: f64,
    pub symmetric: bool,
    pub table: TableReport,
    pub unitary: UnitaryReport,
    pub transform: TransformReport,
    pub algebra: Option<AlgebraReport>,
    /// Why `algebra` is absent.
    pub algebra_skipped: Option<String>,
    pub passed: bool,
}

/// Sparse complex Gaussian: support size uniform in `[1, N]`, i.i.d.
/// standard normal real and imaginary parts on the support.
pub fn random_superclass_function(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    let mut values = vec![Complex64::new(0.0, 0.0); len];
    let size = rng.random_range(1..=len);
    for i in sample(rng, len, size) {
        // a draw that lands under the support threshold is redrawn
        loop {
            let z = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            if z.norm() > 1e-6 {
                values[i] = z;
                break;
            }
        }
    }
    values
}

/// Per-theory stream: FNV-1a of the name mixed into the seed.
fn theory_seed(seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

pub fn transform_checks(table: &SupercharacterTable, config: &BatteryConfig) -> Result<TransformReport> {
    let n = table.num_classes();
    let symmetric = table.theory().is_symmetric();
    let negation = table.theory().superclasses().negation().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(theory_seed(config.seed, table.theory().name()));
    let lhs = fourier::uncertainty_lhs(table);
    let lhs2 = fourier::uncertainty_lhs_squared_max(table);
    let mut report = TransformReport {
        samples: config.samples,
        parseval: 0.0,
        round_trip: 0.0,
        fourth_power: symmetric.then_some(0.0),
        square_vs_negation: symmetric.then_some(0.0),
        uncertainty_lhs: lhs,
        uncertainty_violations: 0,
        uncertainty_lhs_squared_max: lhs2,
        squared_max_violations: 0,
        min_support_product: usize::MAX,
        uncertainty_witness: None,
    };
    for _ in 0..config.samples {
        let f = SuperclassFunction::on_superclasses(random_superclass_function(&mut rng, n));
        let scale = f.sup_norm().max(1.0);
        let fh = fourier::forward(table, &f)?;
        let nf = fourier::norm(table, &f);
        report.parseval = report.parseval.max((fourier::norm(table, &fh) - nf).abs() / nf);
        report.round_trip = report.round_trip.max(fourier::inverse(table, &fh)?.max_abs_diff(&f) / scale);

        if symmetric {
            // relabel f̂ as a function on the (identical) superclasses
            let f2 = fourier::forward(table, &SuperclassFunction::on_superclasses(fh.values().to_vec()))?;
            let neg: Vec<Complex64> = negation.iter().map(|&j| f.values()[j]).collect();
            let r2 = f2.max_abs_diff(&SuperclassFunction::new(f2.domain(), neg)) / scale;
            let f3 = fourier::forward(table, &SuperclassFunction::on_superclasses(f2.values().to_vec()))?;
            let f4 = fourier::forward(table, &SuperclassFunction::on_superclasses(f3.values().to_vec()))?;
            let r4 = f4.max_abs_diff(&SuperclassFunction::new(f4.domain(), f.values().to_vec())) / scale;
            report.square_vs_negation = report.square_vs_negation.map(|r| r.max(r2));
            report.fourth_power = report.fourth_power.map(|r| r.max(r4));
        }

        let sf = f.support(config.support_threshold).len();
        let sfh = fh.support(config.support_threshold).len();
        report.min_support_product = report.min_support_product.min(sf * sfh);
        if ((sf * sfh) as u64) < lhs {
            report.uncertainty_violations += 1;
            if report.uncertainty_witness.is_none() {
                report.uncertainty_witness = Some(f.values().iter().map(|z| [z.re, z.im]).collect());
            }
        }
        if ((sf * sfh) as u64) < lhs2 {
            report.squared_max_violations += 1;
        }
    }
    Ok(report)
}

/// Runs every check on one theory.
pub fn run_theory(named: &NamedTheory, config: &BatteryConfig) -> Result<TheoryReport> {
    let table = SupercharacterTable::build(named.build()?)?;
    let n = table.num_classes();
    let tol = config.tolerance.unwrap_or_else(|| default_tolerance(n));
    let symmetric = table.theory().is_symmetric();
    let table_report = table.check_invariants();
    // unitarity is measured, not enforced, so that a failure is reported in full
    let u = table.unitary(f64::INFINITY)?;
    let unitary = u.verify_identities();
    let t1 = transform_checks(&table, config)?;

    let (algebra, algebra_skipped) = if !symmetric {
        (None, Some("structure constants are not defined for J-symmetric groups".to_string()))
    } else if n > config.algebra_max_classes {
        (None, Some(format!("N = {n} exceeds {}", config.algebra_max_classes)))
    } else {
        let sc = StructureConstants::compute(&table)?;
        let family = TMatrixFamily::build(&sc, &table)?;
        (Some(family.verify(&sc, &table, &u)), None)
    };

    let passed = table_report.passes(tol)
        && unitary.passes(tol)
        && t1.passes(tol)
        && algebra.as_ref().is_none_or(|r| r.passes(tol));
    Ok(TheoryReport {
        theory: named.to_string(),
        classes: n,
        tolerance: tol,
        symmetric,
        table: table_report,
        unitary,
        transform: t1,
        algebra,
        algebra_skipped,
        passed,
    })
}

/// Runs the theories in parallel; results keep the input order.
pub fn run_battery(theories: &[NamedTheory], config: &BatteryConfig) -> Vec<(NamedTheory, Result<TheoryReport>)> {
    theories.par_iter().map(|t| (*t, run_theory(t, config))).collect()
}
