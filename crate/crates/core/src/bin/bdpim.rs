use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bdpim::harness::presets::{
    run_preset, threshold_window, Preset, PresetOptions, PERIODS, THRESHOLD_TARGET,
};
use bdpim::harness::{
    emit_threshold_csv, optimize_config, run, threshold_for, write_csv, BarrierLow, ChannelModel,
    Detector, RunConfig, RunParts, ThresholdRow,
};
use bdpim::signal::{barrier_amplitude, Scheme};
use bdpim::{Error, Result};

#[derive(Parser)]
#[command(
    name = "bdpim",
    version,
    about = "DPIM / BDPIM link simulator and BER bound evaluator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Monte Carlo BER sweep over an SNR grid.
    Simulate {
        #[command(flatten)]
        link: LinkArgs,
        /// Skip the bound columns.
        #[arg(long)]
        no_bounds: bool,
    },
    /// Evaluate the BER upper bounds over an SNR grid.
    Bounds {
        #[command(flatten)]
        link: LinkArgs,
    },
    /// Search the low barrier amplitude, or sweep K for SNR thresholds.
    Optimize {
        #[command(flatten)]
        link: LinkArgs,
        /// SNR of the barrier search in dB (default depends on --coded).
        #[arg(long)]
        snr: Option<f64>,
        /// Sweep K over {5,10,20,25,50} and report BER-1e-3 SNR thresholds.
        #[arg(long)]
        k_sweep: bool,
    },
    /// Figure-reproduction presets.
    Sweep {
        /// fig4 | fig5 | fig6 | fig7 | fig8 | fig9 | fig10 | fig11
        preset: String,
        #[arg(long, default_value_t = 100_000)]
        packets: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Step of the A_L/A grid in the fig10 threshold study.
        #[arg(long, default_value_t = 0.05)]
        low_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct LinkArgs {
    /// dpim | bdpim | ppm | mdpim
    #[arg(long, default_value = "dpim")]
    scheme: String,
    /// otd | osd | mlsd | bdpim-osd | bdpim-otd-osd
    #[arg(long)]
    detector: Option<String>,
    #[arg(long = "M", default_value_t = 4)]
    order: usize,
    #[arg(long = "g", default_value_t = 1)]
    guard: usize,
    #[arg(long = "K", default_value_t = 10)]
    period: usize,
    /// Low barrier amplitude, or "auto" to search it.
    #[arg(long = "AL", default_value = "auto")]
    low: String,
    #[arg(long = "Ns", default_value_t = 100)]
    symbols: usize,
    #[arg(long, default_value_t = 0.0)]
    snr_start: f64,
    #[arg(long, default_value_t = 20.0)]
    snr_stop: f64,
    #[arg(long, default_value_t = 1.0)]
    snr_step: f64,
    #[arg(long, default_value_t = 100_000)]
    packets: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    coded: bool,
    /// awgn | gg:λ,μ
    #[arg(long, default_value = "awgn")]
    channel: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

impl LinkArgs {
    fn config(&self) -> Result<RunConfig> {
        let scheme: Scheme = self
            .scheme
            .parse()
            .map_err(|e: Error| Error::Config(e.to_string()))?;
        let detector = match &self.detector {
            Some(d) => d.parse()?,
            None if scheme == Scheme::Bdpim => Detector::BdpimOsd,
            None => Detector::Otd,
        };
        let low = if self.low.eq_ignore_ascii_case("auto") {
            BarrierLow::Optimized
        } else {
            BarrierLow::Fixed(
                self.low
                    .parse()
                    .map_err(|e| Error::Config(format!("bad --AL '{}': {e}", self.low)))?,
            )
        };
        let config = RunConfig {
            scheme,
            detector,
            order: self.order,
            guard: self.guard,
            period: self.period,
            low,
            symbols: self.symbols,
            snr_db: RunConfig::grid(self.snr_start, self.snr_stop, self.snr_step)?,
            packets: self.packets,
            channel: self.channel.parse::<ChannelModel>()?,
            coded: self.coded,
            seed: self.seed,
            workers: self.workers,
            ..RunConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn optimize(link: &LinkArgs, snr: Option<f64>, k_sweep: bool) -> Result<()> {
    let mut config = link.config()?;
    if config.scheme != Scheme::Bdpim {
        config.scheme = Scheme::Bdpim;
        if !matches!(config.detector, Detector::BdpimOsd | Detector::BdpimOtdOsd) {
            config.detector = Detector::BdpimOsd;
        }
        config.validate()?;
    }
    let periods: Vec<usize> = if k_sweep {
        PERIODS.to_vec()
    } else {
        vec![config.period]
    };
    let mut rows = Vec::new();
    for k in periods {
        let c = RunConfig {
            period: k,
            ..config.clone()
        };
        c.validate()?;
        let found = optimize_config(&c, snr)?;
        let threshold = if k_sweep {
            let (lo, hi) = threshold_window(c.coded);
            match threshold_for(&c, Some(found.low), THRESHOLD_TARGET, lo, hi) {
                Ok(t) => Some(t.snr_db),
                Err(Error::NotBracketed { .. }) => None,
                Err(e) => return Err(e),
            }
        } else {
            None
        };
        log::info!("K={k}: A_L={:.4}, objective={:e}", found.low, found.value);
        rows.push(ThresholdRow {
            study: "period".into(),
            coded: c.coded,
            period: k,
            low: found.low,
            high: barrier_amplitude(k, c.amplitude, found.low)?,
            target_ber: THRESHOLD_TARGET,
            snr_threshold_db: threshold,
            packets: c.packets,
            seed: c.seed,
        });
    }
    emit_threshold_csv(&rows, output(&link.out)?)
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate { link, no_bounds } => {
            let config = link.config()?;
            let parts = RunParts {
                simulate: true,
                bounds: !no_bounds,
            };
            let result = run(&config, parts)?;
            write_csv(&[result], output(&link.out)?)
        }
        Command::Bounds { link } => {
            let config = link.config()?;
            let parts = RunParts {
                simulate: false,
                bounds: true,
            };
            let result = run(&config, parts)?;
            write_csv(&[result], output(&link.out)?)
        }
        Command::Optimize { link, snr, k_sweep } => optimize(&link, snr, k_sweep),
        Command::Sweep {
            preset,
            packets,
            seed,
            workers,
            low_step,
            out,
        } => {
            let preset: Preset = preset.parse()?;
            if packets == 0 || !(low_step > 0.0 && low_step < 1.0) {
                return Err(Error::Config(
                    "need packets >= 1 and 0 < low-step < 1".into(),
                ));
            }
            let opts = PresetOptions {
                packets,
                seed,
                workers,
                low_step,
            };
            run_preset(preset, &opts)?.write(output(&out)?)
        }
    }
}

struct StderrLogger;

impl log::Log for StderrLogger {
    fn enabled(&self, metadata: &log::Metadata) -> bool {
        metadata.level() <= log::max_level()
    }

    fn log(&self, record: &log::Record) {
        if self.enabled(record.metadata()) {
            eprintln!("[{}] {}", record.level(), record.args());
        }
    }

    fn flush(&self) {}
}

fn main() -> ExitCode {
    static LOGGER: StderrLogger = StderrLogger;
    if log::set_logger(&LOGGER).is_ok() {
        let verbose = std::env::var_os("BDPIM_LOG").is_some();
        log::set_max_level(if verbose {
            log::LevelFilter::Info
        } else {
            log::LevelFilter::Warn
        });
    }
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
