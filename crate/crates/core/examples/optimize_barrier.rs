//! Searches the low barrier amplitude that minimises the BDPIM-OSD bound.

use bdpim::bounds::{BoundKind, BoundMode};
use bdpim::optimize::{bound_objective, optimize_barrier};
use bdpim::signal::ModulationSpec;

fn main() -> bdpim::Result<()> {
    let spec = ModulationSpec::new(4, 1)?;
    let snr_db = 17.0;
    println!("BDPIM-OSD exact bound at {snr_db} dB, N_s = 100");
    println!(
        "{:>3} {:>8} {:>8} {:>11} {:>6}",
        "K", "A_L", "A_H", "bound", "evals"
    );
    for k in [5, 10, 20, 25, 50] {
        let objective = bound_objective(
            BoundKind::BdpimOsd,
            BoundMode::Exact,
            spec,
            100,
            k,
            1.0,
            1.0,
            snr_db,
        );
        let best = optimize_barrier(k, 1.0, 1e-3, objective)?;
        println!(
            "{k:>3} {:>8.4} {:>8.4} {:>11.4e} {:>6}",
            best.low, best.high, best.value, best.evaluations
        );
    }
    Ok(())
}
