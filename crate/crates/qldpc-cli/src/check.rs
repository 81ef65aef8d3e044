use std::path::Path;

use anyhow::{bail, Context, Result};
use qldpc::bench::{BenchRecord, CSV_COLUMNS};
use serde::{Deserialize, Serialize};

/// Row of `decode` output.
#[derive(Debug, Serialize, Deserialize)]
pub struct DecodeRow {
    pub index: usize,
    pub converged: bool,
    pub iterations_used: usize,
    pub e_hat: String,
}

pub const DECODE_COLUMNS: [&str; 4] = ["index", "converged", "iterations_used", "e_hat"];

/// Row of the `simulate` trial log.
#[derive(Debug, Serialize, Deserialize)]
pub struct TrialRow {
    pub trial: u64,
    pub e_x: String,
    pub e_z: String,
    pub e_hat_x: String,
    pub e_hat_z: String,
    pub converged_x: bool,
    pub converged_z: bool,
    pub iterations_x: usize,
    pub iterations_z: usize,
    pub classification: String,
    pub baseline: String,
}

pub const TRIAL_COLUMNS: [&str; 11] = [
    "trial",
    "e_x",
    "e_z",
    "e_hat_x",
    "e_hat_z",
    "converged_x",
    "converged_z",
    "iterations_x",
    "iterations_z",
    "classification",
    "baseline",
];

const CLASSES: [&str; 6] = ["exact", "stabilizer", "logical-x", "logical-z", "logical-both", "non-converged"];

fn is_hex(s: &str) -> bool {
    s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b))
}

/// Re-reads a CSV written by this tool. Returns a one-line description.
pub fn check_file(path: &Path) -> Result<String> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let rows = if header == CSV_COLUMNS {
        let mut n = 0;
        for (i, row) in reader.deserialize::<BenchRecord>().enumerate() {
            let row = row.with_context(|| format!("bench row {i}"))?;
            row.validate().with_context(|| format!("bench row {i}"))?;
            n += 1;
        }
        ("bench", n)
    } else if header == DECODE_COLUMNS {
        let mut n = 0;
        for (i, row) in reader.deserialize::<DecodeRow>().enumerate() {
            let row = row.with_context(|| format!("decode row {i}"))?;
            if row.index != i || !is_hex(&row.e_hat) {
                bail!("decode row {i} is malformed");
            }
            n += 1;
        }
        ("decode", n)
    } else if header == TRIAL_COLUMNS {
        let mut n = 0;
        for (i, row) in reader.deserialize::<TrialRow>().enumerate() {
            let row = row.with_context(|| format!("trial row {i}"))?;
            let hex_ok = [&row.e_x, &row.e_z, &row.e_hat_x, &row.e_hat_z].iter().all(|h| is_hex(h));
            if !hex_ok || !CLASSES.contains(&row.classification.as_str()) || !CLASSES.contains(&row.baseline.as_str()) {
                bail!("trial row {i} is malformed");
            }
            n += 1;
        }
        ("trial log", n)
    } else {
        bail!("unrecognized CSV header: {}", header.join(","));
    };
    Ok(format!("{}: {} CSV, {} rows, ok", path.display(), rows.0, rows.1))
}
