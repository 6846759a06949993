//! Maps a short bit block with DPIM, BDPIM and PPM and reads it back.

use bdpim::signal::{
    demap_bdpim, demap_dpim, demap_ppm, map_baseline, map_bdpim, map_dpim, BarrierSpec, Levels,
    ModulationSpec, Scheme,
};

fn show(name: &str, chips: &[f64]) {
    let row: Vec<String> = chips
        .iter()
        .map(|&c| {
            if c == 0.0 {
                "0".to_string()
            } else {
                format!("{c:.2}")
            }
        })
        .collect();
    println!("{name:>6} ({:2} chips): {}", chips.len(), row.join(" "));
}

fn main() -> bdpim::Result<()> {
    let spec = ModulationSpec::new(4, 1)?;
    let bits = [0, 0, 0, 1, 1, 0, 1, 1, 1, 0, 0, 1];
    println!("bits: {bits:?}, L_s = {}", spec.avg_symbol_duration());

    let dpim = map_dpim(&bits, &spec, 1.0)?;
    show("DPIM", dpim.chips());
    assert_eq!(demap_dpim(dpim.chips(), &spec, Some(6))?.bits, bits);

    // Every third symbol is a barrier; the average amplitude stays at 1.
    let barrier = BarrierSpec::new(3, 1.0, 0.8)?;
    let bdpim = map_bdpim(&bits, &spec, &barrier)?;
    show("BDPIM", bdpim.chips());
    println!("        A_L = {}, A_H = {}", barrier.low(), barrier.high());
    assert_eq!(
        demap_bdpim(bdpim.chips(), &spec, &barrier, Some(6))?.bits,
        bits
    );

    let ppm = map_baseline(Scheme::Ppm, &bits, &spec, &Levels::single(1.0))?;
    show("PPM", ppm.chips());
    assert_eq!(demap_ppm(ppm.chips(), &spec, Some(6))?.bits, bits);

    println!("all three round trips recovered the input");
    Ok(())
}
