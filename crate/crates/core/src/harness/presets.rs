//! Figure-reproduction presets for the `sweep` subcommand.
//!
//! | preset | content                                                           |
//! |--------|-------------------------------------------------------------------|
//! | fig4   | DPIM-OTD simulation and bound                                     |
//! | fig5   | DPIM-OSD simulation and bounds                                    |
//! | fig6   | BDPIM-OSD simulation and bounds, `K = 10`, `A_L = 0.86`           |
//! | fig7   | BDPIM-OTD-OSD simulation and bounds, same levels                  |
//! | fig8   | uncoded comparison of MDPIM-OTD, DPIM-OTD/OSD, BDPIM-OSD/OTD-OSD  |
//! | fig9   | the same comparison with the rate-1/2 code                        |
//! | fig10  | SNR thresholds at BER 10⁻³ against `A_L/A` and against `K`       |
//! | fig11  | the uncoded comparison under Gamma-Gamma weak turbulence          |

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use super::{
    emit_threshold_csv, optimized_low, run, threshold_for, write_csv, BarrierLow, ChannelModel,
    Detector, RunConfig, RunParts, RunResult, ThresholdRow,
};
use crate::channel::TurbulenceSpec;
use crate::signal::{barrier_amplitude, Scheme};
use crate::{Error, Result};

/// Low barrier amplitude of the single-scheme bound figures.
pub const FIGURE_LOW: f64 = 0.86;
/// Barrier periods of the `K` study.
pub const PERIODS: [usize; 5] = [5, 10, 20, 25, 50];
pub const THRESHOLD_TARGET: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
    Fig9,
    Fig10,
    Fig11,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Fig4,
        Preset::Fig5,
        Preset::Fig6,
        Preset::Fig7,
        Preset::Fig8,
        Preset::Fig9,
        Preset::Fig10,
        Preset::Fig11,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Preset::Fig4 => "fig4",
            Preset::Fig5 => "fig5",
            Preset::Fig6 => "fig6",
            Preset::Fig7 => "fig7",
            Preset::Fig8 => "fig8",
            Preset::Fig9 => "fig9",
            Preset::Fig10 => "fig10",
            Preset::Fig11 => "fig11",
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown preset '{s}', expected fig4..fig11")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PresetOptions {
    pub packets: usize,
    pub seed: u64,
    pub workers: usize,
    /// Step of the `A_L/A` grid in the threshold study.
    pub low_step: f64,
}

impl Default for PresetOptions {
    fn default() -> Self {
        Self {
            packets: 100_000,
            seed: 1,
            workers: 0,
            low_step: 0.05,
        }
    }
}

pub enum PresetOutput {
    Curves(Vec<RunResult>),
    Thresholds(Vec<ThresholdRow>),
}

impl PresetOutput {
    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        match self {
            PresetOutput::Curves(r) => write_csv(r, out),
            PresetOutput::Thresholds(t) => emit_threshold_csv(t, out),
        }
    }
}

fn base(opts: &PresetOptions) -> RunConfig {
    RunConfig {
        packets: opts.packets,
        seed: opts.seed,
        workers: opts.workers,
        snr_db: RunConfig::grid(0.0, 20.0, 1.0).expect("static grid"),
        ..RunConfig::default()
    }
}

fn with(base: &RunConfig, scheme: Scheme, detector: Detector, low: BarrierLow) -> RunConfig {
    RunConfig {
        scheme,
        detector,
        low,
        ..base.clone()
    }
}

/// The five systems compared in the comparison figures.
pub fn comparison_configs(base: &RunConfig) -> Vec<RunConfig> {
    vec![
        with(base, Scheme::Mdpim, Detector::Otd, BarrierLow::Optimized),
        with(base, Scheme::Dpim, Detector::Otd, BarrierLow::Optimized),
        with(base, Scheme::Dpim, Detector::Osd, BarrierLow::Optimized),
        with(
            base,
            Scheme::Bdpim,
            Detector::BdpimOsd,
            BarrierLow::Optimized,
        ),
        with(
            base,
            Scheme::Bdpim,
            Detector::BdpimOtdOsd,
            BarrierLow::Optimized,
        ),
    ]
}

/// Curve configurations of a preset (empty for the threshold study).
pub fn curve_configs(preset: Preset, opts: &PresetOptions) -> Vec<RunConfig> {
    let b = base(opts);
    let fixed = BarrierLow::Fixed(FIGURE_LOW);
    match preset {
        Preset::Fig4 => vec![with(&b, Scheme::Dpim, Detector::Otd, fixed)],
        Preset::Fig5 => vec![with(&b, Scheme::Dpim, Detector::Osd, fixed)],
        Preset::Fig6 => vec![with(&b, Scheme::Bdpim, Detector::BdpimOsd, fixed)],
        Preset::Fig7 => vec![with(&b, Scheme::Bdpim, Detector::BdpimOtdOsd, fixed)],
        Preset::Fig8 => comparison_configs(&b),
        Preset::Fig9 => comparison_configs(&RunConfig { coded: true, ..b }),
        Preset::Fig10 => Vec::new(),
        Preset::Fig11 => comparison_configs(&RunConfig {
            channel: ChannelModel::GammaGamma(TurbulenceSpec::weak()),
            snr_db: RunConfig::grid(0.0, 30.0, 1.0).expect("static grid"),
            ..b
        }),
    }
}

/// Search window for the BER-10⁻³ threshold, in dB.
pub fn threshold_window(coded: bool) -> (f64, f64) {
    if coded {
        (8.0, 24.0)
    } else {
        (10.0, 26.0)
    }
}

fn threshold_row(config: &RunConfig, study: &str, low: f64) -> Result<ThresholdRow> {
    let (lo, hi) = threshold_window(config.coded);
    let snr = match threshold_for(config, Some(low), THRESHOLD_TARGET, lo, hi) {
        Ok(t) => Some(t.snr_db),
        Err(Error::NotBracketed { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ThresholdRow {
        study: study.into(),
        coded: config.coded,
        period: config.period,
        low,
        high: barrier_amplitude(config.period, config.amplitude, low)?,
        target_ber: THRESHOLD_TARGET,
        snr_threshold_db: snr,
        packets: config.packets,
        seed: config.seed,
    })
}

/// BDPIM-OSD thresholds against `A_L/A` (K = 10) and against `K` with the
/// searched optimum `A_L`, uncoded and coded.
pub fn threshold_study(opts: &PresetOptions) -> Result<Vec<ThresholdRow>> {
    let mut rows = Vec::new();
    let b = with(
        &base(opts),
        Scheme::Bdpim,
        Detector::BdpimOsd,
        BarrierLow::Optimized,
    );
    let steps = (1.0 / opts.low_step).round() as usize;
    for coded in [false, true] {
        let c = RunConfig { coded, ..b.clone() };
        for i in 1..steps {
            let low = c.amplitude * i as f64 * opts.low_step;
            rows.push(threshold_row(&c, "low-ratio", low)?);
        }
    }
    for coded in [false, true] {
        for k in PERIODS {
            let c = RunConfig {
                coded,
                period: k,
                ..b.clone()
            };
            let low = optimized_low(&c)?;
            rows.push(threshold_row(&c, "period", low)?);
        }
    }
    Ok(rows)
}

pub fn run_preset(preset: Preset, opts: &PresetOptions) -> Result<PresetOutput> {
    if preset == Preset::Fig10 {
        return Ok(PresetOutput::Thresholds(threshold_study(opts)?));
    }
    let parts = RunParts {
        simulate: true,
        bounds: true,
    };
    let results = curve_configs(preset, opts)
        .iter()
        .map(|c| run(c, parts))
        .collect::<Result<Vec<_>>>()?;
    Ok(PresetOutput::Curves(results))
}
