//! Prints the four BER upper bounds against SNR, exact and closed form.

use bdpim::bounds::{BoundInput, BoundKind, BoundMode};
use bdpim::signal::{BarrierSpec, ModulationSpec};

fn main() -> bdpim::Result<()> {
    let spec = ModulationSpec::new(4, 1)?;
    let barrier = BarrierSpec::new(10, 1.0, 0.86)?;
    println!(
        "{:>4} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "dB", "DPIM-OTD", "DPIM-OSD", "closed", "BDPIM-OSD", "closed", "OTD-OSD"
    );
    for snr in (10..=20).step_by(2) {
        let snr = snr as f64;
        let dpim = BoundInput::dpim(&spec, 100, 1.0, 1.0, snr)?;
        let bdpim = BoundInput::bdpim(&spec, 100, &barrier, 1.0, snr)?;
        let t1 = BoundKind::DpimOtd.evaluate(&dpim, BoundMode::Exact)?;
        let t2 = BoundKind::DpimOsd.evaluate(&dpim, BoundMode::Exact)?;
        let t2c = BoundKind::DpimOsd.evaluate(&dpim, BoundMode::Tractable)?;
        let t3 = BoundKind::BdpimOsd.evaluate(&bdpim, BoundMode::Exact)?;
        let t3c = BoundKind::BdpimOsd.evaluate(&bdpim, BoundMode::Tractable)?;
        let t4 = BoundKind::BdpimOtdOsd.evaluate(&bdpim, BoundMode::Exact)?;
        println!(
            "{snr:>4} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e}",
            t1.value, t2.value, t2c.value, t3.value, t3c.value, t4.value
        );
    }
    Ok(())
}
