use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_superfourier");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&run(&["table"])), 1);
    assert_eq!(code(&run(&["table", "--theory", "nope", "--n", "3"])), 1);
    assert_eq!(code(&run(&["table", "--theory", "gauss", "--p", "9", "--k", "2"])), 1);
    assert_eq!(code(&run(&["table", "--theory", "dft", "--n", "4", "--tolerance", "-1"])), 1);
    assert_eq!(code(&run(&["partition", "--theory", "dft", "--n", "4", "--format", "svg"])), 1);
    assert_eq!(code(&run(&["plot", "--theory", "dft", "--n", "4"])), 1);
    assert_eq!(code(&run(&["frobnicate"])), 1);
    assert_eq!(code(&run(&["--help"])), 0);
    let threads = Command::new(BIN)
        .args(["table", "--theory", "dft", "--n", "2"])
        .env("SUPERFOURIER_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&threads), 1);
}

#[test]
fn partition_json() {
    let out = run(&["partition", "--theory", "ramanujan", "--n", "12"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["superclasses"]["N"], 6);
    let sizes: Vec<u64> = v["superclasses"]["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["size"].as_u64().unwrap())
        .collect();
    assert_eq!(sizes.iter().sum::<u64>(), 12);
    assert_eq!(sizes[0], 1);
}

#[test]
fn table_csv_rounds_to_six_places() {
    let out = run(&["table", "--theory", "gauss", "--p", "5", "--k", "2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "sigma,size,Y0_re,Y0_im,Y1_re,Y1_im,Y2_re,Y2_im");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].contains("0.618034"));
    assert!(lines[2].contains("-1.618034"));
}

#[test]
fn custom_generators_match_named_theory() {
    let named = json(&run(&["table", "--theory", "gauss", "--p", "13", "--k", "2"]));
    let custom = json(&run(&["table", "--n", "13", "--generators", "4"]));
    assert_eq!(named["values"], custom["values"]);
    let gl = json(&run(&["partition", "--theory", "custom", "--n", "5", "--d", "2", "--group", "gl"]));
    assert_eq!(gl["superclasses"]["N"], 2);
}

#[test]
fn transform_round_trip_through_files() {
    let input = scratch("f.json");
    let forward_out = scratch("fh.csv");
    fs::write(&input, "[1, [0, 1], 2, 0, -1.5]").unwrap();
    let args = ["transform", "--theory", "dft", "--n", "5", "--input"];
    let out = run(&[&args[..], &[input.to_str().unwrap(), "--format", "csv", "--out", forward_out.to_str().unwrap()]].concat());
    assert_eq!(code(&out), 0);
    let csv = fs::read_to_string(&forward_out).unwrap();
    assert_eq!(csv.lines().count(), 6);

    let fh = json(&run(&[&args[..], &[input.to_str().unwrap()]].concat()));
    let fh_path = scratch("fh.json");
    fs::write(&fh_path, fh["output"].to_string()).unwrap();
    let back = json(&run(&[&args[..], &[fh_path.to_str().unwrap(), "--inverse"]].concat()));
    let want = [[1.0, 0.0], [0.0, 1.0], [2.0, 0.0], [0.0, 0.0], [-1.5, 0.0]];
    for (got, want) in back["output"].as_array().unwrap().iter().zip(want) {
        assert!((got[0].as_f64().unwrap() - want[0]).abs() < 1e-12);
        assert!((got[1].as_f64().unwrap() - want[1]).abs() < 1e-12);
    }
}

#[test]
fn uncertainty_check_flags_violations() {
    let input = scratch("indicator.json");
    fs::write(&input, "[0, 0, 1, 0, 0]").unwrap();
    let out = run(&["transform", "--theory", "dct", "--n", "8", "--check-uncertainty", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["uncertainty"]["holds"], false);
    assert_eq!(v["uncertainty"]["holds_squared_max"], true);
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--theory", "kloosterman", "--p", "5", "--samples", "50"]);
    assert_eq!(code(&ok), 0);
    assert!(stdout(&ok).starts_with("PASS kloosterman(5)"));
    let bad = run(&["verify", "--theory", "dct", "--n", "8", "--samples", "200"]);
    assert_eq!(code(&bad), 2);
    assert!(stdout(&bad).starts_with("FAIL dct(8)"));
    let a = run(&["verify", "--theory", "gauss", "--p", "13", "--k", "3", "--format", "json", "--seed", "7"]);
    let b = run(&["verify", "--theory", "gauss", "--p", "13", "--k", "3", "--format", "json", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn sums_and_algebra() {
    for args in [
        &["sums", "ramanujan", "--n", "30"][..],
        &["sums", "kloosterman", "--p", "11"],
        &["sums", "heilbronn", "--p", "5"],
        &["sums", "gauss", "--p", "13", "--k", "2"],
        &["algebra", "--theory", "gauss", "--p", "13", "--k", "2"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 0, "{args:?}");
        assert_eq!(json(&out)["schema"], 1);
    }
    let jsym = run(&["algebra", "--theory", "jsym-triangular", "--p", "5"]);
    assert_eq!(code(&jsym), 1);
}

#[test]
fn group_descriptions() {
    let n_of = |args: &[&str]| json(&run(args))["superclasses"]["N"].as_u64().unwrap();
    assert_eq!(n_of(&["partition", "--group", "catalog:kloosterman", "--p", "7"]), 9);
    assert_eq!(n_of(&["partition", "--n", "7", "--d", "2", "--generators", "3,0;0,5|1,0;0,1"]), 9);
    assert_eq!(n_of(&["partition", "--n", "3", "--d", "3", "--group", "perm"]), 10);
    assert_eq!(n_of(&["partition", "--n", "5", "--d", "2", "--group", "sl-like"]), 2);
    assert_eq!(code(&run(&["partition", "--group", "catalog:", "--p", "7"])), 1);
}
