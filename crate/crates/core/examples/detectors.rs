//! Runs the sample-wise and sequence detectors on one noisy DPIM packet.

use bdpim::channel::{apply_awgn, ChannelState};
use bdpim::detect::{
    mlsd_exhaustive, omp_detect, osd_detect, otd_detect, ThresholdSpec, MLSD_DEFAULT_CAP,
};
use bdpim::signal::{map_dpim, ModulationSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> bdpim::Result<()> {
    let spec = ModulationSpec::new(4, 1)?;
    let symbols = 6;
    let snr_db = 9.0;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let bits: Vec<u8> = (0..symbols * 2).map(|_| rng.random_range(0..2)).collect();
    let frame = map_dpim(&bits, &spec, 1.0)?;
    let state = ChannelState::from_snr_db(1.0, snr_db, 1.0)?;
    let y = apply_awgn(frame.chips(), &state, &mut rng);

    let truth: Vec<usize> = (0..frame.len())
        .filter(|&i| frame.chips()[i] != 0.0)
        .collect();
    println!("{} chips, {} pulses at {snr_db} dB", frame.len(), symbols);
    println!("{:>5}: {truth:?}", "sent");

    let gamma = state.snr(1.0);
    let otd = otd_detect(
        &y,
        &ThresholdSpec::optimal(1.0, 1.0, gamma, spec.avg_symbol_duration())?,
    );
    let osd = osd_detect(&y, symbols, 1.0)?;
    let omp = omp_detect(&y, symbols, 1.0)?;
    let mlsd = mlsd_exhaustive(&y, 1.0, symbols, 1.0, MLSD_DEFAULT_CAP)?;
    for (name, r) in [("OTD", &otd), ("OSD", &osd), ("OMP", &omp), ("MLSD", &mlsd)] {
        println!("{name:>5}: {:?}", r.support);
    }
    assert_eq!(osd.support, mlsd.support);
    assert_eq!(osd.support, omp.support);
    println!("OSD, OMP and exhaustive MLSD agree");
    Ok(())
}
