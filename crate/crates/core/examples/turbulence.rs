//! Gamma-Gamma fading: density check, sampler moments and ergodic bounds.

use bdpim::bounds::{ergodic_bound, BoundInput, BoundKind, BoundMode};
use bdpim::channel::{gamma_gamma_pdf, GammaGammaSampler, TurbulenceSpec};
use bdpim::quadrature::{integrate_to_infinity, Tolerance};
use bdpim::signal::{BarrierSpec, ModulationSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;

fn main() -> bdpim::Result<()> {
    let turb = TurbulenceSpec::new(11.6, 10.1)?;
    let mass = integrate_to_infinity(
        |h| gamma_gamma_pdf(h, &turb).unwrap_or(0.0),
        1e-12,
        Tolerance::absolute(1e-10),
    );
    println!(
        "density mass {:.8}, scintillation index {:.4}",
        mass.value,
        turb.variance()
    );

    let sampler = GammaGammaSampler::new(&turb)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 200_000;
    let draws: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng)).collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let var = draws.iter().map(|h| (h - mean).powi(2)).sum::<f64>() / n as f64;
    println!("sample mean {mean:.4}, sample variance {var:.4}");

    let spec = ModulationSpec::new(4, 1)?;
    let barrier = BarrierSpec::new(10, 1.0, 0.86)?;
    println!("{:>4} {:>12} {:>12}", "dB", "DPIM-OTD", "BDPIM-OSD");
    for snr in (16..=28).step_by(4) {
        let snr = snr as f64;
        let otd = ergodic_bound(
            |h| {
                Ok(BoundKind::DpimOtd
                    .evaluate(
                        &BoundInput::dpim(&spec, 100, 1.0, h, snr)?,
                        BoundMode::Exact,
                    )?
                    .value)
            },
            &turb,
        )?;
        let osd = ergodic_bound(
            |h| {
                let input = BoundInput::bdpim(&spec, 100, &barrier, h, snr)?;
                Ok(BoundKind::BdpimOsd
                    .evaluate(&input, BoundMode::Tractable)?
                    .value)
            },
            &turb,
        )?;
        println!("{snr:>4} {:>12.4e} {:>12.4e}", otd.value, osd.value);
    }
    Ok(())
}
