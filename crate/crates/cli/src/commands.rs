use std::fmt;
use std::fs;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use superfourier::algebra::{StructureConstants, TMatrixFamily};
use superfourier::battery::{default_battery, run_battery, run_theory, BatteryConfig, TheoryReport};
use superfourier::catalog::arith::{primitive_root, primitive_root_mod_p_squared};
use superfourier::catalog::{
    gauss_periods, gauss_sum, heilbronn_sum, kloosterman_sum, ramanujan_sum, uncertainty_grid, von_sterneck,
    NamedTheory, SupercharacterImage,
};
use superfourier::fourier::{self, Domain, SuperclassFunction};
use superfourier::table::default_tolerance;
use superfourier::{Error, GVector, SupercharacterTable, Theory};

use crate::args::{
    Command, CommonArgs, Format, GridArgs, OutputArgs, PlotArgs, SumKind, SumsArgs, TransformArgs, VerifyArgs,
};
use crate::output::{csv_string, emit, fixed6, pair, pairs, to_json, SCHEMA};
use crate::select::Selection;

#[derive(Debug)]
pub enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(Error::UnitarityViolation { .. }) => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// `Ok(false)` means a verification failed.
pub fn run(command: Command) -> CliResult<bool> {
    match command {
        Command::Partition(a) => partition(&a),
        Command::Table(a) => table(&a),
        Command::Transform(a) => transform(&a),
        Command::Algebra(a) => algebra(&a),
        Command::Sums(a) => sums(&a),
        Command::UncertaintyGrid(a) => grid(&a),
        Command::Plot(a) => plot(&a),
        Command::Verify(a) => verify(&a),
    }
}

fn symmetry_label(theory: &Theory) -> &'static str {
    if theory.is_symmetric() {
        "symmetric"
    } else {
        "j-symmetric"
    }
}

/// The requested format, defaulting to JSON; svg is only for `plot`.
fn format_of(out: &OutputArgs, command: &str) -> CliResult<Format> {
    match out.format.unwrap_or(Format::Json) {
        Format::Svg => Err(CliError::Usage(format!("--format svg is only produced by plot, not {command}"))),
        Format::Text if command != "verify" => {
            Err(CliError::Usage(format!("--format text is only produced by verify, not {command}")))
        }
        f => Ok(f),
    }
}

fn partition(a: &CommonArgs) -> CliResult<bool> {
    let format = format_of(&a.output, "partition")?;
    let theory = Selection::from_args(&a.theory)?.build()?;
    let y = theory.superclasses();
    let content = match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "theory": theory.name(),
            "symmetry": symmetry_label(&theory),
            "group_order": theory.group().order(),
            "superclasses": y.export(),
            "character_classes": (!theory.is_symmetric()).then(|| theory.character_classes().export()),
        })),
        _ => {
            let mut rows = Vec::new();
            for (label, part) in [("Y", y), ("X", theory.character_classes())] {
                if label == "X" && theory.is_symmetric() {
                    break;
                }
                for (i, c) in part.classes().iter().enumerate() {
                    rows.push(vec![
                        label.to_string(),
                        i.to_string(),
                        part.space().vector(c.rep_index()).to_string(),
                        c.size().to_string(),
                    ]);
                }
            }
            let header = ["partition", "class", "rep", "size"].map(String::from);
            csv_string(&header, &rows)?
        }
    };
    emit(a.output.out.as_deref(), &content)?;
    Ok(true)
}

fn table(a: &CommonArgs) -> CliResult<bool> {
    let format = format_of(&a.output, "table")?;
    let t = SupercharacterTable::build(Selection::from_args(&a.theory)?.build()?)?;
    let n = t.num_classes();
    let tol = a.output.tolerance.unwrap_or_else(|| default_tolerance(n));
    let u = t.unitary(tol)?;
    let invariants = t.check_invariants();
    let ok = invariants.passes(tol);
    let theory = t.theory();
    let content = match format {
        Format::Json => {
            let rows: Vec<Vec<[f64; 2]>> = (0..n).map(|i| (0..n).map(|j| pair(t.value(i, j))).collect()).collect();
            let um: Vec<Vec<[f64; 2]>> =
                (0..n).map(|i| (0..n).map(|j| pair(u.matrix()[(i, j)])).collect()).collect();
            let reps = |p: &superfourier::SuperclassPartition| -> Vec<Vec<u64>> {
                (0..p.len()).map(|i| p.rep(i).coords().to_vec()).collect()
            };
            to_json(&json!({
                "schema": SCHEMA,
                "theory": theory.name(),
                "symmetry": symmetry_label(theory),
                "N": n,
                "superclass_reps": reps(theory.superclasses()),
                "superclass_sizes": t.sizes_y(),
                "character_reps": reps(theory.character_classes()),
                "character_sizes": t.sizes_x(),
                "values": rows,
                "unitary": um,
                "tolerance": tol,
                "invariants": invariants,
            }))
        }
        _ => {
            let mut header = vec!["sigma".to_string(), "size".to_string()];
            for j in 0..n {
                header.push(format!("Y{j}_re"));
                header.push(format!("Y{j}_im"));
            }
            let sizes = t.sizes_x();
            let rows: Vec<Vec<String>> = (0..n)
                .map(|i| {
                    let mut row = vec![i.to_string(), sizes[i].to_string()];
                    for j in 0..n {
                        let z = t.value(i, j);
                        row.push(fixed6(z.re));
                        row.push(fixed6(z.im));
                    }
                    row
                })
                .collect();
            csv_string(&header, &rows)?
        }
    };
    emit(a.output.out.as_deref(), &content)?;
    if !ok {
        eprintln!("table identities exceed tolerance {tol:e}: {invariants:?}");
    }
    Ok(ok)
}

fn parse_values(text: &str) -> CliResult<Vec<Complex64>> {
    let bad = |s: String| CliError::Lib(Error::Parse(s));
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let items: Vec<Value> = serde_json::from_str(trimmed).map_err(|e| bad(e.to_string()))?;
        items
            .iter()
            .map(|v| match v {
                Value::Number(x) => Ok(Complex64::new(x.as_f64().unwrap_or(f64::NAN), 0.0)),
                Value::Array(p) if p.len() == 2 => match (p[0].as_f64(), p[1].as_f64()) {
                    (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
                    _ => Err(bad(format!("not a [re, im] pair: {v}"))),
                },
                _ => Err(bad(format!("expected a number or [re, im], got {v}"))),
            })
            .collect()
    } else {
        trimmed
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|line| {
                let parts: Vec<&str> = line.split(',').map(str::trim).collect();
                let num = |s: &str| s.parse::<f64>().map_err(|e| bad(format!("{s:?}: {e}")));
                match parts.as_slice() {
                    [re] => Ok(Complex64::new(num(re)?, 0.0)),
                    [re, im] => Ok(Complex64::new(num(re)?, num(im)?)),
                    _ => Err(bad(format!("expected \"re\" or \"re,im\", got {line:?}"))),
                }
            })
            .collect()
    }
}

fn transform(a: &TransformArgs) -> CliResult<bool> {
    let out = &a.common.output;
    let format = format_of(out, "transform")?;
    let values = parse_values(&fs::read_to_string(&a.input)?)?;
    if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Parse("input contains a non-finite value".into()).into());
    }
    let t = SupercharacterTable::build(Selection::from_args(&a.common.theory)?.build()?)?;
    let (input, result, f) = if a.inverse {
        let fh = SuperclassFunction::new(Domain::Characters, values);
        let f = fourier::inverse(&t, &fh)?;
        (fh, f.clone(), f)
    } else {
        let f = SuperclassFunction::on_superclasses(values);
        (f.clone(), fourier::forward(&t, &f)?, f)
    };
    let uncertainty = if a.check_uncertainty { Some(fourier::check_uncertainty(&t, &f, a.threshold)?) } else { None };
    let ok = uncertainty.as_ref().is_none_or(|u| u.holds);
    let content = match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "theory": t.theory().name(),
            "direction": if a.inverse { "inverse" } else { "forward" },
            "input": pairs(input.values()),
            "output": pairs(result.values()),
            "norm_input": fourier::norm(&t, &input),
            "norm_output": fourier::norm(&t, &result),
            "uncertainty": uncertainty,
        })),
        _ => {
            let rows: Vec<Vec<String>> = result
                .values()
                .iter()
                .enumerate()
                .map(|(i, z)| vec![i.to_string(), fixed6(z.re), fixed6(z.im)])
                .collect();
            csv_string(&["class", "re", "im"].map(String::from), &rows)?
        }
    };
    emit(out.out.as_deref(), &content)?;
    if !ok {
        eprintln!("uncertainty bound violated: {uncertainty:?}");
    }
    Ok(ok)
}

fn algebra(a: &CommonArgs) -> CliResult<bool> {
    let format = format_of(&a.output, "algebra")?;
    let t = SupercharacterTable::build(Selection::from_args(&a.theory)?.build()?)?;
    let n = t.num_classes();
    let tol = a.output.tolerance.unwrap_or_else(|| default_tolerance(n));
    let sc = StructureConstants::compute(&t)?;
    let u = t.unitary(tol)?;
    let family = TMatrixFamily::build(&sc, &t)?;
    let report = family.verify(&sc, &t, &u);
    let mismatches = sc.representative_mismatches(&t);
    let conservation = sc.conservation_defect(&t.sizes_x());
    let ok = report.passes(tol) && mismatches.is_empty() && conservation == 0;
    let content = match format {
        Format::Json => {
            let eig: Vec<Vec<[f64; 2]>> = (0..n).map(|i| pairs(&family.eigenvalues(i, &u))).collect();
            to_json(&json!({
                "schema": SCHEMA,
                "theory": t.theory().name(),
                "N": n,
                "structure_constants": sc.to_nested(),
                "eigenvalues": eig,
                "report": report,
                "representative_mismatches": mismatches,
                "conservation_defect": conservation,
                "tolerance": tol,
            }))
        }
        _ => {
            let mut rows = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        rows.push(vec![i.to_string(), j.to_string(), k.to_string(), sc.get(i, j, k).to_string()]);
                    }
                }
            }
            csv_string(&["i", "j", "k", "c"].map(String::from), &rows)?
        }
    };
    emit(a.output.out.as_deref(), &content)?;
    Ok(ok)
}

#[derive(Serialize)]
struct SumRow {
    label: String,
    value: [f64; 2],
    expected: Option<[f64; 2]>,
}

fn need(v: Option<u64>, flag: &str) -> CliResult<u64> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn sums(a: &SumsArgs) -> CliResult<bool> {
    let format = format_of(&a.output, "sums")?;
    let mut rows = Vec::new();
    let mut residual = 0.0f64;
    let mut push = |label: String, value: Complex64, expected: Option<Complex64>| {
        if let Some(e) = expected {
            residual = residual.max((value - e).norm());
        }
        rows.push(SumRow { label, value: pair(value), expected: expected.map(pair) });
    };
    let real = |x: f64| Complex64::new(x, 0.0);
    let (kind, params) = match a.kind {
        SumKind::Ramanujan => {
            let n = need(a.n, "n")?;
            if n == 0 {
                return Err(Error::BadParameter("n must be at least 1".into()).into());
            }
            for x in 0..n as i64 {
                push(format!("c_{n}({x})"), real(ramanujan_sum(n, x) as f64), Some(real(von_sterneck(n, x) as f64)));
            }
            ("ramanujan", json!({ "n": n }))
        }
        SumKind::Kloosterman => {
            let p = need(a.p, "p")?;
            for u in 0..p as i64 {
                let k = kloosterman_sum(p, 1, u)?;
                // K(a, b) = K(1, ab): compare against a = 2 when p ∤ 2
                let other = kloosterman_sum(p, 2, u * i64::try_from(p.div_ceil(2)).unwrap_or(0))?;
                push(format!("K(1,{u})"), real(k), Some(real(other)));
            }
            ("kloosterman", json!({ "p": p }))
        }
        SumKind::Heilbronn => {
            let p = need(a.p, "p")?;
            let h0 = heilbronn_sum(p, 0)?;
            push("H(0)".into(), h0, Some(real((p - 1) as f64)));
            let g = primitive_root_mod_p_squared(p).expect("odd primes have primitive roots mod p^2");
            let t = SupercharacterTable::build(NamedTheory::Heilbronn { p }.build()?)?;
            let part = t.theory().superclasses();
            let m = superfourier::Modulus::new(p * p)?;
            let class = |e: u64| part.class_of_index(m.pow(g, e) as usize);
            // σ_i(X_j) = H_p(g^{i+j}) with X_i = g^i Γ
            for i in 1..=p {
                for j in 1..=p {
                    let h = heilbronn_sum(p, m.pow(g, i + j) as i64)?;
                    push(format!("sigma_{i}(X_{j})"), t.value(class(i), class(j)), Some(h));
                }
            }
            ("heilbronn", json!({ "p": p, "g": g }))
        }
        SumKind::Gauss => {
            let p = need(a.p, "p")?;
            let k = a.k.unwrap_or(2);
            let eta = gauss_periods(p, k)?;
            let root = (p as f64).sqrt();
            for (j, e) in eta.iter().enumerate() {
                let expected = (k == 2).then(|| {
                    let s = if j == 0 { 1.0 } else { -1.0 };
                    if p % 4 == 1 {
                        real((-1.0 + s * root) / 2.0)
                    } else {
                        Complex64::new(-0.5, s * root / 2.0)
                    }
                });
                push(format!("eta_{j}"), *e, expected);
            }
            for x in 0..p as i64 {
                let gs = gauss_sum(p, x)?;
                let magnitude = if x == 0 { p as f64 } else { root };
                push(format!("|G({x})|"), real(gs.norm()), Some(real(magnitude)));
            }
            ("gauss", json!({ "p": p, "k": k, "g": primitive_root(p) }))
        }
    };
    let ok = residual < 1e-9;
    let content = match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "kind": kind,
            "params": params,
            "values": rows,
            "max_residual": residual,
        })),
        _ => {
            let csv_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    let e = r.expected.map(|e| [fixed6(e[0]), fixed6(e[1])]).unwrap_or_default();
                    vec![r.label.clone(), fixed6(r.value[0]), fixed6(r.value[1]), e[0].clone(), e[1].clone()]
                })
                .collect();
            csv_string(&["label", "re", "im", "expected_re", "expected_im"].map(String::from), &csv_rows)?
        }
    };
    emit(a.output.out.as_deref(), &content)?;
    Ok(ok)
}

fn grid(a: &GridArgs) -> CliResult<bool> {
    if a.max_n == 0 || a.max_d == 0 {
        return Err(CliError::Usage("--max-n and --max-d must be at least 1".into()));
    }
    let values = uncertainty_grid(a.max_n, a.max_d)?;
    let mut header = vec!["d\\n".to_string()];
    header.extend((1..=a.max_n).map(|n| n.to_string()));
    let rows: Vec<Vec<String>> = values
        .iter()
        .enumerate()
        .map(|(i, row)| std::iter::once((i + 1).to_string()).chain(row.iter().map(u128::to_string)).collect())
        .collect();
    emit(a.out.as_deref(), &csv_string(&header, &rows)?)?;
    Ok(true)
}

fn plot(a: &PlotArgs) -> CliResult<bool> {
    let selection = Selection::from_args(&a.theory)?;
    let image = match (&a.x, a.class) {
        (Some(x), None) => {
            let group = selection.group()?;
            let x = GVector::parse(group.modulus(), x)?;
            if x.dim() != group.dim() {
                return Err(Error::DimensionMismatch { expected: group.dim(), got: x.dim() }.into());
            }
            SupercharacterImage::for_vector(&group, &x)?
        }
        (None, Some(i)) => SupercharacterImage::for_class(&selection.build()?, i)?,
        _ => return Err(CliError::Usage("plot needs exactly one of --x and --class".into())),
    };
    emit(a.out.as_deref(), &image.to_svg())?;
    if a.out.is_some() {
        eprintln!("{} distinct values, radius {}", image.points.len(), image.radius);
    }
    Ok(true)
}

fn summary_line(r: &TheoryReport) -> String {
    let t1 = &r.transform;
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.2e}"));
    let t2 = r.algebra.as_ref().map_or("-".to_string(), |t| {
        format!("{:.2e}/{:.2e}/{:.2e}/rank{}", t.diagonalization, t.commutator, t.product_identity, t.d_rank)
    });
    format!(
        "{} {} N={} tol={:.1e} unitarity={:.2e} symmetry={:.2e} U2-P={} U4-I={:.2e} parseval={:.2e} F4={} F2={} uncertainty_violations={} squared_max_violations={} algebra={}",
        if r.passed { "PASS" } else { "FAIL" },
        r.theory,
        r.classes,
        r.tolerance,
        r.unitary.unitarity,
        r.unitary.symmetry,
        opt(r.unitary.square_vs_p),
        r.unitary.fourth_power,
        t1.parseval,
        opt(t1.fourth_power),
        opt(t1.square_vs_negation),
        t1.uncertainty_violations,
        t1.squared_max_violations,
        t2,
    )
}

fn verify(a: &VerifyArgs) -> CliResult<bool> {
    let format = if a.output.format.is_none() { Format::Text } else { format_of(&a.output, "verify")? };
    let config = BatteryConfig { seed: a.seed, samples: a.samples, tolerance: a.output.tolerance, ..Default::default() };
    let results = match a.battery.as_deref() {
        Some("default") => run_battery(&default_battery(), &config),
        Some(other) => return Err(CliError::Usage(format!("unknown --battery {other}; expected \"default\""))),
        None => match Selection::from_args(&a.theory)? {
            Selection::Named(t) => vec![(t, run_theory(&t, &config))],
            Selection::Custom { .. } => {
                return Err(CliError::Usage("verify runs named theories; use --battery default or --theory".into()))
            }
        },
    };
    let mut ok = true;
    let mut lines = String::new();
    let mut reports = Vec::new();
    for (t, r) in &results {
        match r {
            Ok(rep) => {
                ok &= rep.passed;
                lines.push_str(&summary_line(rep));
                lines.push('\n');
                reports.push(json!(rep));
            }
            Err(e) => {
                ok = false;
                lines.push_str(&format!("FAIL {t} error: {e}\n"));
                reports.push(json!({ "theory": t.to_string(), "error": e.to_string() }));
            }
        }
    }
    let passed = results.iter().filter(|(_, r)| r.as_ref().is_ok_and(|r| r.passed)).count();
    let content = match format {
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "seed": a.seed,
            "samples": a.samples,
            "theories": reports,
            "passed": passed,
            "total": results.len(),
        })),
        _ => {
            lines.push_str(&format!("{passed}/{} theories passed\n", results.len()));
            lines
        }
    };
    emit(a.output.out.as_deref(), &content)?;
    Ok(ok)
}
