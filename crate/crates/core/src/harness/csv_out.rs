use std::io::Write;
use std::path::Path;

use super::RunResult;
use crate::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "snr_db",
    "scheme",
    "detector",
    "coded",
    "ber_sim",
    "ci",
    "per_sim",
    "ber_bound_exact",
    "ber_bound_tractable",
    "packets",
    "seed",
];

/// 17 significant digits, enough to round-trip an `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Writes the result table to any writer.
pub fn write_csv<W: Write>(results: &[RunResult], out: W) -> Result<()> {
    if results.iter().all(|r| r.points.is_empty()) {
        return Err(Error::Config("nothing to write: no result rows".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in results {
        let c = &r.config;
        for p in &r.points {
            let e = p.estimate.as_ref();
            w.write_record([
                num(p.snr_db),
                c.scheme.to_string(),
                c.detector.to_string(),
                c.coded.to_string(),
                opt(e.map(|e| e.ber)),
                opt(e.map(|e| e.ci_halfwidth)),
                opt(e.map(|e| e.per)),
                opt(p.bound_exact),
                opt(p.bound_tractable),
                e.map(|e| e.packets).unwrap_or(0).to_string(),
                c.seed.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Writes the result table to `path`.
pub fn emit_csv(results: &[RunResult], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv(results, std::io::BufWriter::new(file))
}

/// One row of an SNR-threshold study.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdRow {
    /// `low-ratio` or `period`.
    pub study: String,
    pub coded: bool,
    pub period: usize,
    pub low: f64,
    pub high: f64,
    pub target_ber: f64,
    /// `None` when the target was not reached inside the search window.
    pub snr_threshold_db: Option<f64>,
    pub packets: usize,
    pub seed: u64,
}

pub fn emit_threshold_csv<W: Write>(rows: &[ThresholdRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "study",
        "coded",
        "K",
        "A_L",
        "A_H",
        "target_ber",
        "snr_threshold_db",
        "packets",
        "seed",
    ])?;
    for r in rows {
        w.write_record([
            r.study.clone(),
            r.coded.to_string(),
            r.period.to_string(),
            num(r.low),
            num(r.high),
            num(r.target_ber),
            opt(r.snr_threshold_db),
            r.packets.to_string(),
            r.seed.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
