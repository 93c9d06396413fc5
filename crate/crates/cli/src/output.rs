use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

/// Version of every JSON document this tool writes.
pub const SCHEMA: u32 = 1;

pub fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

pub fn pairs(zs: &[Complex64]) -> Vec<[f64; 2]> {
    zs.iter().copied().map(pair).collect()
}

/// Six decimals, without a negative zero.
pub fn fixed6(v: f64) -> String {
    let r = (v * 1e6).round() / 1e6;
    let r = if r == 0.0 { 0.0 } else { r };
    format!("{r:.6}")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn csv_string(header: &[String], rows: &[Vec<String>]) -> io::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn emit(out: Option<&Path>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
            stdout.flush()
        }
    }
}
