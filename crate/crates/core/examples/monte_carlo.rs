//! Small Monte Carlo sweep of DPIM-OSD and BDPIM-OSD written as CSV.
//!
//! `cargo run --release --example monte_carlo -- 5000` sets the packet count.

use bdpim::harness::{run, write_csv, BarrierLow, Detector, RunConfig, RunParts};
use bdpim::signal::Scheme;

fn main() -> bdpim::Result<()> {
    let packets = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2000);
    let base = RunConfig {
        snr_db: RunConfig::grid(12.0, 18.0, 2.0)?,
        packets,
        seed: 11,
        ..RunConfig::default()
    };
    let parts = RunParts {
        simulate: true,
        bounds: true,
    };
    let dpim = RunConfig {
        scheme: Scheme::Dpim,
        detector: Detector::Osd,
        ..base.clone()
    };
    let bdpim = RunConfig {
        scheme: Scheme::Bdpim,
        detector: Detector::BdpimOsd,
        low: BarrierLow::Fixed(0.86),
        ..base
    };
    let results = vec![run(&dpim, parts)?, run(&bdpim, parts)?];
    write_csv(&results, std::io::stdout().lock())
}
