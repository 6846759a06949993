//! Deterministic Monte Carlo driver.
//!
//! Every packet draws its bits, fading and noise from its own ChaCha stream
//! keyed by `(seed, stream, packet)`, and per-packet error counts are summed
//! as integers, so results do not depend on the number of worker threads.

mod csv_out;
pub mod presets;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Distribution;
use rayon::prelude::*;

use crate::bounds::{ergodic_bound, BoundInput, BoundKind, BoundMode};
use crate::channel::{apply_awgn, snr_from_db, ChannelState, GammaGammaSampler, TurbulenceSpec};
use crate::coding::{conv_encode, info_len, viterbi_decode, BlockInterleaver};
use crate::detect::{
    bdpim_osd_detect, bdpim_otd_osd_detect, bdpim_otd_threshold, mdpim_otd_detect,
    mdpim_thresholds, mlsd_exhaustive, osd_detect, otd_detect, ppm_frame_detect, ThresholdSpec,
    MLSD_DEFAULT_CAP,
};
use crate::optimize::{
    bound_objective, optimize_barrier, snr_threshold_search, OptimizedBarrier, ThresholdResult,
};
use crate::signal::{
    demap_bdpim, demap_dpim, demap_dpim_per_pulse, demap_mdpim, demap_ppm, map_baseline, map_bdpim,
    map_dpim, mdpim_avg_symbol_duration, BarrierSpec, Levels, ModulationSpec, Scheme,
};
use crate::{Error, Result};

pub use csv_out::{emit_csv, emit_threshold_csv, write_csv, ThresholdRow, CSV_HEADER};

/// SNR at which uncoded barrier amplitudes are optimised, near the uncoded
/// BER-10⁻³ operating point.
pub const UNCODED_OPTIMIZATION_SNR_DB: f64 = 17.0;
/// SNR at which coded barrier amplitudes are optimised.
pub const CODED_OPTIMIZATION_SNR_DB: f64 = 15.5;
/// Packets per objective evaluation when optimising against coded Monte Carlo BER.
pub const CODED_OPTIMIZATION_PACKETS: usize = 2000;
/// Amplitude tolerance of the barrier search.
pub const OPTIMIZATION_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Detector {
    Otd,
    Osd,
    Mlsd,
    BdpimOsd,
    BdpimOtdOsd,
}

impl Detector {
    pub fn as_str(&self) -> &'static str {
        match self {
            Detector::Otd => "otd",
            Detector::Osd => "osd",
            Detector::Mlsd => "mlsd",
            Detector::BdpimOsd => "bdpim-osd",
            Detector::BdpimOtdOsd => "bdpim-otd-osd",
        }
    }
}

impl fmt::Display for Detector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Detector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "otd" => Detector::Otd,
            "osd" => Detector::Osd,
            "mlsd" => Detector::Mlsd,
            "bdpim-osd" => Detector::BdpimOsd,
            "bdpim-otd-osd" => Detector::BdpimOtdOsd,
            other => return Err(Error::Config(format!("unknown detector '{other}'"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChannelModel {
    /// `h = 1` for every packet.
    Awgn,
    /// `h` redrawn per packet (quasi-static fading).
    GammaGamma(TurbulenceSpec),
}

impl fmt::Display for ChannelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelModel::Awgn => f.write_str("awgn"),
            ChannelModel::GammaGamma(t) => write!(f, "gg:{},{}", t.lambda, t.mu),
        }
    }
}

impl FromStr for ChannelModel {
    type Err = Error;

    /// `awgn` or `gg:λ,μ`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("awgn") {
            return Ok(ChannelModel::Awgn);
        }
        let params = s.strip_prefix("gg:").ok_or_else(|| {
            Error::Config(format!("unknown channel '{s}', expected awgn or gg:λ,μ"))
        })?;
        let parts: Vec<&str> = params.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Config(format!(
                "gg channel needs two parameters, got '{params}'"
            )));
        }
        let parse = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::Config(format!("bad turbulence parameter '{p}': {e}")))
        };
        let spec = TurbulenceSpec::new(parse(parts[0])?, parse(parts[1])?)
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(ChannelModel::GammaGamma(spec))
    }
}

/// Low barrier amplitude: fixed, or searched before the run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BarrierLow {
    Fixed(f64),
    Optimized,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub scheme: Scheme,
    pub detector: Detector,
    /// Modulation order `M`.
    pub order: usize,
    /// Guard chips `g`.
    pub guard: usize,
    /// Barrier period `K`; also sets the default interleaver depth.
    pub period: usize,
    /// Average amplitude `A`; the SNR refers to it.
    pub amplitude: f64,
    pub low: BarrierLow,
    /// Symbols per packet `N_s`.
    pub symbols: usize,
    pub snr_db: Vec<f64>,
    pub packets: usize,
    pub channel: ChannelModel,
    pub coded: bool,
    pub seed: u64,
    /// Worker threads; 0 uses the rayon default.
    pub workers: usize,
    /// Interleaver depth; `K·log2(M)` when unset.
    pub interleaver_depth: Option<usize>,
    /// MDPIM `A_H / A_L`.
    pub mdpim_ratio: f64,
    pub mlsd_cap: f64,
    pub alpha: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scheme: Scheme::Dpim,
            detector: Detector::Otd,
            order: 4,
            guard: 1,
            period: 10,
            amplitude: 1.0,
            low: BarrierLow::Optimized,
            symbols: 100,
            snr_db: vec![10.0],
            packets: 100_000,
            channel: ChannelModel::Awgn,
            coded: false,
            seed: 1,
            workers: 0,
            interleaver_depth: None,
            mdpim_ratio: 2.0,
            mlsd_cap: MLSD_DEFAULT_CAP,
            alpha: crate::bounds::DEFAULT_ALPHA,
        }
    }
}

impl RunConfig {
    /// SNR grid `start, start + step, …` up to `stop` inclusive.
    pub fn grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
        if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
            return Err(Error::Config(format!(
                "SNR grid needs step > 0 and stop >= start, got {start}:{step}:{stop}"
            )));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| start + step * i as f64).collect())
    }

    pub fn modulation(&self) -> Result<ModulationSpec> {
        ModulationSpec::new(self.order, self.guard).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn interleaver(&self) -> Result<BlockInterleaver> {
        let bps = self.order.trailing_zeros() as usize;
        let depth = self.interleaver_depth.unwrap_or(self.period * bps);
        BlockInterleaver::new(depth).map_err(|e| Error::Config(e.to_string()))
    }

    /// Bits carried by the chips of one packet.
    pub fn packet_bits(&self) -> usize {
        self.symbols * self.order.trailing_zeros() as usize
    }

    /// Information bits per packet after coding overhead.
    pub fn info_bits(&self) -> Result<usize> {
        if self.coded {
            info_len(self.packet_bits()).map_err(|e| Error::Config(e.to_string()))
        } else {
            Ok(self.packet_bits())
        }
    }

    /// Rejects inconsistent configurations before any work is done.
    pub fn validate(&self) -> Result<()> {
        let cfg = |m: String| Err(Error::Config(m));
        if self.snr_db.is_empty() || self.snr_db.iter().any(|s| !s.is_finite()) {
            return cfg("SNR grid must be non-empty and finite".into());
        }
        if self.packets == 0 {
            return cfg("packets must be at least 1".into());
        }
        if self.symbols == 0 {
            return cfg("symbols per packet must be at least 1".into());
        }
        if !(self.amplitude > 0.0) || !self.amplitude.is_finite() {
            return cfg(format!(
                "amplitude must be positive, got {}",
                self.amplitude
            ));
        }
        let spec = self.modulation()?;
        let allowed: &[Detector] = match self.scheme {
            Scheme::Dpim => &[Detector::Otd, Detector::Osd, Detector::Mlsd],
            Scheme::Bdpim => &[Detector::BdpimOsd, Detector::BdpimOtdOsd],
            Scheme::Ppm => &[Detector::Otd, Detector::Osd],
            Scheme::Mdpim => &[Detector::Otd],
            Scheme::Dhpim => &[],
        };
        if !allowed.contains(&self.detector) {
            return cfg(format!(
                "detector {} is not available for scheme {}",
                self.detector, self.scheme
            ));
        }
        if self.scheme == Scheme::Bdpim {
            if self.period < 2 || self.symbols % self.period != 0 {
                return cfg(format!(
                    "barrier period K={} must be >= 2 and divide N_s={}",
                    self.period, self.symbols
                ));
            }
            if let BarrierLow::Fixed(al) = self.low {
                BarrierSpec::new(self.period, self.amplitude, al)
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        if self.scheme == Scheme::Mdpim && !(self.mdpim_ratio > 1.0) {
            return cfg(format!(
                "MDPIM level ratio must exceed 1, got {}",
                self.mdpim_ratio
            ));
        }
        if self.scheme == Scheme::Dpim
            && self.detector == Detector::Otd
            && spec.avg_symbol_duration() <= 1.0
        {
            return cfg("OTD needs an average symbol duration above one chip".into());
        }
        if self.coded {
            let il = self.interleaver()?;
            let n = self.packet_bits();
            if n % 2 != 0 || n < 6 {
                return cfg(format!(
                    "coded packets need an even number of bits >= 6, got {n}"
                ));
            }
            if n % il.depth() != 0 {
                return cfg(format!(
                    "coded packet of {n} bits does not fill interleaver rows of {}",
                    il.depth()
                ));
            }
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return cfg(format!("alpha must lie in (0, 1], got {}", self.alpha));
        }
        Ok(())
    }

    /// Low barrier amplitude, running the barrier search if requested.
    pub fn resolve_low(&self) -> Result<Option<f64>> {
        if self.scheme != Scheme::Bdpim {
            return Ok(None);
        }
        match self.low {
            BarrierLow::Fixed(al) => Ok(Some(al)),
            BarrierLow::Optimized => optimized_low(self).map(Some),
        }
    }
}

fn barrier_bound_kind(detector: Detector) -> BoundKind {
    if detector == Detector::BdpimOtdOsd {
        BoundKind::BdpimOtdOsd
    } else {
        BoundKind::BdpimOsd
    }
}

/// Barrier search for a BDPIM configuration at `snr_db`: the exact bound for
/// uncoded runs, coded Monte Carlo BER (fixed seed) for coded runs. Without
/// an SNR the search runs at [`UNCODED_OPTIMIZATION_SNR_DB`] or
/// [`CODED_OPTIMIZATION_SNR_DB`].
pub fn optimize_config(config: &RunConfig, snr_db: Option<f64>) -> Result<OptimizedBarrier> {
    let spec = config.modulation()?;
    if config.coded {
        let snr = snr_db.unwrap_or(CODED_OPTIMIZATION_SNR_DB);
        let objective = coded_objective(config, snr, CODED_OPTIMIZATION_PACKETS)?;
        optimize_barrier(config.period, config.amplitude, OPTIMIZATION_TOL, objective)
    } else {
        let objective = bound_objective(
            barrier_bound_kind(config.detector),
            BoundMode::Exact,
            spec,
            config.symbols,
            config.period,
            config.amplitude,
            1.0,
            snr_db.unwrap_or(UNCODED_OPTIMIZATION_SNR_DB),
        );
        optimize_barrier(config.period, config.amplitude, OPTIMIZATION_TOL, objective)
    }
}

pub fn optimized_low(config: &RunConfig) -> Result<f64> {
    Ok(optimize_config(config, None)?.low)
}

/// `A_L ↦` Monte Carlo BER at `snr_db` with a fixed seed (common random
/// numbers across all `A_L`).
pub fn coded_objective(
    config: &RunConfig,
    snr_db: f64,
    packets: usize,
) -> Result<impl Fn(f64) -> Result<f64> + Sync> {
    let mut base = config.clone();
    base.packets = packets;
    base.validate()?;
    Ok(move |low: f64| {
        let mut c = base.clone();
        c.low = BarrierLow::Fixed(low);
        let link = Link::new(&c, Some(low))?;
        Ok(link.estimate(snr_db, 0, c.packets)?.ber)
    })
}

/// Error counts at one SNR point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BerEstimate {
    pub snr_db: f64,
    pub packets: u64,
    pub bit_errors: u64,
    pub bits_total: u64,
    pub packet_errors: u64,
    pub ber: f64,
    pub per: f64,
    /// Half-width of the 95% normal-approximation interval on `ber`, from the
    /// spread of per-packet error counts (errors cluster within a packet).
    pub ci_halfwidth: f64,
    /// Mean packet length in chips.
    pub mean_len: f64,
}

impl BerEstimate {
    pub fn from_counts(snr_db: f64, counts: &Counts) -> Self {
        let bits = counts.bits.max(1) as f64;
        let ber = counts.bit_errors as f64 / bits;
        let packets = counts.packets.max(1) as f64;
        let mean = counts.bit_errors as f64 / packets;
        let var = (counts.bit_errors_sq as f64 / packets - mean * mean).max(0.0);
        let bits_per_packet = bits / packets;
        let ci = if counts.packets > 1 {
            1.96 * (var / (packets - 1.0)).sqrt() / bits_per_packet
        } else {
            f64::INFINITY
        };
        Self {
            snr_db,
            packets: counts.packets,
            bit_errors: counts.bit_errors,
            bits_total: counts.bits,
            packet_errors: counts.packet_errors,
            ber,
            per: counts.packet_errors as f64 / packets,
            ci_halfwidth: ci,
            mean_len: counts.chips as f64 / packets,
        }
    }
}

/// Integer tallies; addition is associative, so any reduction order agrees.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counts {
    pub packets: u64,
    pub bit_errors: u64,
    /// Sum of squared per-packet bit errors.
    pub bit_errors_sq: u64,
    pub bits: u64,
    pub packet_errors: u64,
    pub chips: u64,
}

impl std::ops::Add for Counts {
    type Output = Counts;

    fn add(self, o: Counts) -> Counts {
        Counts {
            packets: self.packets + o.packets,
            bit_errors: self.bit_errors + o.bit_errors,
            bit_errors_sq: self.bit_errors_sq + o.bit_errors_sq,
            bits: self.bits + o.bits,
            packet_errors: self.packet_errors + o.packet_errors,
            chips: self.chips + o.chips,
        }
    }
}

/// Independent random stream for one packet.
pub fn packet_rng(seed: u64, stream: u64, packet: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&stream.to_le_bytes());
    key[16..24].copy_from_slice(&packet.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Everything needed to push one packet through the chain.
#[derive(Clone, Debug)]
pub struct Link {
    config: RunConfig,
    spec: ModulationSpec,
    barrier: Option<BarrierSpec>,
    levels: Levels,
    interleaver: Option<BlockInterleaver>,
    fading: Option<GammaGammaSampler>,
    info_bits: usize,
}

impl Link {
    /// `low` is the resolved low barrier amplitude (BDPIM only).
    pub fn new(config: &RunConfig, low: Option<f64>) -> Result<Self> {
        config.validate()?;
        let spec = config.modulation()?;
        let barrier = match (config.scheme, low) {
            (Scheme::Bdpim, Some(al)) => Some(
                BarrierSpec::new(config.period, config.amplitude, al)
                    .map_err(|e| Error::Config(e.to_string()))?,
            ),
            (Scheme::Bdpim, None) => {
                return Err(Error::Config("BDPIM needs a low barrier amplitude".into()))
            }
            _ => None,
        };
        let levels = match config.scheme {
            Scheme::Mdpim => {
                Levels::mdpim_power_matched(&spec, config.amplitude, config.mdpim_ratio)
            }
            _ => Levels::single(config.amplitude),
        };
        let interleaver = if config.coded {
            Some(config.interleaver()?)
        } else {
            None
        };
        let fading = match config.channel {
            ChannelModel::Awgn => None,
            ChannelModel::GammaGamma(t) => Some(GammaGammaSampler::new(&t)?),
        };
        Ok(Self {
            config: config.clone(),
            spec,
            barrier,
            levels,
            interleaver,
            fading,
            info_bits: config.info_bits()?,
        })
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    pub fn barrier(&self) -> Option<&BarrierSpec> {
        self.barrier.as_ref()
    }

    /// Simulates one packet and returns its tallies.
    pub fn simulate_packet<R: Rng>(&self, sigma_n: f64, rng: &mut R) -> Result<Counts> {
        let c = &self.config;
        let h = match &self.fading {
            Some(s) => s.sample(rng),
            None => 1.0,
        };
        let info: Vec<u8> = (0..self.info_bits)
            .map(|_| rng.random_range(0..2u8))
            .collect();
        let tx_bits = match &self.interleaver {
            Some(il) => il.interleave(&conv_encode(&info)),
            None => info.clone(),
        };
        let frame = match c.scheme {
            Scheme::Dpim => map_dpim(&tx_bits, &self.spec, c.amplitude)?,
            Scheme::Bdpim => map_bdpim(
                &tx_bits,
                &self.spec,
                self.barrier.as_ref().expect("checked in new"),
            )?,
            other => map_baseline(other, &tx_bits, &self.spec, &self.levels)?,
        };
        let state = ChannelState::new(h, sigma_n)?;
        let y = apply_awgn(frame.chips(), &state, rng);
        let detected = self.detect(&y, h, sigma_n)?;
        let ns = Some(c.symbols);
        let demapped = match c.scheme {
            Scheme::Dpim if c.detector == Detector::Otd => demap_dpim(&detected, &self.spec, ns)?,
            Scheme::Dpim => demap_dpim_per_pulse(&detected, &self.spec, ns)?,
            Scheme::Bdpim => demap_bdpim(
                &detected,
                &self.spec,
                self.barrier.as_ref().expect("checked in new"),
                ns,
            )?,
            Scheme::Ppm => demap_ppm(&detected, &self.spec, ns)?,
            Scheme::Mdpim => demap_mdpim(&detected, &self.spec, &self.levels, ns)?,
            Scheme::Dhpim => unreachable!("rejected by validate"),
        };
        let rx = match &self.interleaver {
            Some(il) => viterbi_decode(&il.deinterleave(&demapped.bits)?)?,
            None => demapped.bits,
        };
        let errors = info.iter().zip(&rx).filter(|(a, b)| a != b).count() as u64;
        Ok(Counts {
            packets: 1,
            bit_errors: errors,
            bit_errors_sq: errors * errors,
            bits: info.len() as u64,
            packet_errors: (errors > 0) as u64,
            chips: frame.len() as u64,
        })
    }

    fn detect(&self, y: &[f64], h: f64, sigma_n: f64) -> Result<Vec<f64>> {
        let c = &self.config;
        let a = c.amplitude;
        let gamma = if sigma_n > 0.0 {
            (a / sigma_n).powi(2)
        } else {
            f64::INFINITY
        };
        let out = match (c.scheme, c.detector) {
            (Scheme::Dpim, Detector::Otd) => otd_detect(
                y,
                &ThresholdSpec::optimal(a, h, gamma, self.spec.avg_symbol_duration())?,
            ),
            (Scheme::Ppm, Detector::Otd) => {
                otd_detect(y, &ThresholdSpec::optimal(a, h, gamma, c.order as f64)?)
            }
            (Scheme::Dpim, Detector::Osd) => osd_detect(y, c.symbols, a)?,
            (Scheme::Ppm, Detector::Osd) => ppm_frame_detect(y, c.order, a)?,
            (Scheme::Dpim, Detector::Mlsd) => mlsd_exhaustive(y, h, c.symbols, a, c.mlsd_cap)?,
            (Scheme::Mdpim, Detector::Otd) => {
                let (lo, hi) = (self.levels.low, self.levels.high);
                let p = 1.0 / mdpim_avg_symbol_duration(&self.spec);
                mdpim_otd_detect(y, lo, hi, mdpim_thresholds(lo, hi, h, sigma_n, p)?)
            }
            (Scheme::Bdpim, Detector::BdpimOsd) => {
                bdpim_osd_detect(y, c.symbols, self.barrier.as_ref().expect("checked in new"))?
            }
            (Scheme::Bdpim, Detector::BdpimOtdOsd) => {
                let b = self.barrier.as_ref().expect("checked in new");
                let thr = h * bdpim_otd_threshold(b, h, sigma_n)?;
                bdpim_otd_osd_detect(y, thr, c.symbols, b)?
            }
            (s, d) => {
                return Err(Error::Config(format!(
                    "detector {d} is not available for scheme {s}"
                )))
            }
        };
        Ok(out.chips)
    }

    /// Monte Carlo estimate at `snr_db` from packets `0..packets` of `stream`.
    /// Runs on the current rayon pool.
    pub fn estimate(&self, snr_db: f64, stream: u64, packets: usize) -> Result<BerEstimate> {
        let sigma_n = self.config.amplitude / snr_from_db(snr_db).sqrt();
        let seed = self.config.seed;
        let counts = (0..packets as u64)
            .into_par_iter()
            .map(|p| self.simulate_packet(sigma_n, &mut packet_rng(seed, stream, p)))
            .try_reduce(Counts::default, |a, b| Ok(a + b))?;
        Ok(BerEstimate::from_counts(snr_db, &counts))
    }

    /// Bound columns `(exact, tractable)` for this scheme/detector pair.
    pub fn bounds(&self, snr_db: f64) -> Result<(Option<f64>, Option<f64>)> {
        let c = &self.config;
        let (kind, input) = match (c.scheme, c.detector, self.barrier.as_ref()) {
            (Scheme::Dpim, Detector::Otd, _) => (
                BoundKind::DpimOtd,
                BoundInput::dpim(&self.spec, c.symbols, c.amplitude, 1.0, snr_db)?,
            ),
            (Scheme::Dpim, Detector::Osd | Detector::Mlsd, _) => (
                BoundKind::DpimOsd,
                BoundInput::dpim(&self.spec, c.symbols, c.amplitude, 1.0, snr_db)?,
            ),
            (Scheme::Bdpim, d, Some(b)) => (
                barrier_bound_kind(d),
                BoundInput::bdpim(&self.spec, c.symbols, b, 1.0, snr_db)?,
            ),
            _ => return Ok((None, None)),
        };
        let input = input.with_alpha(c.alpha)?;
        let eval = |mode: BoundMode| -> Result<f64> {
            match c.channel {
                ChannelModel::Awgn => Ok(kind.evaluate(&input, mode)?.value),
                ChannelModel::GammaGamma(t) => Ok(ergodic_bound(
                    |h| Ok(kind.evaluate(&input.with_h(h)?, mode)?.value),
                    &t,
                )?
                .value),
            }
        };
        let exact = eval(BoundMode::Exact)?;
        let tractable = if kind == BoundKind::DpimOtd {
            None
        } else {
            Some(eval(BoundMode::Tractable)?)
        };
        Ok((Some(exact), tractable))
    }
}

/// One SNR point of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct PointResult {
    pub snr_db: f64,
    pub estimate: Option<BerEstimate>,
    pub bound_exact: Option<f64>,
    pub bound_tractable: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub config: RunConfig,
    /// Resolved low barrier amplitude (BDPIM only).
    pub low: Option<f64>,
    pub points: Vec<PointResult>,
}

/// What a run computes at each SNR point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunParts {
    pub simulate: bool,
    pub bounds: bool,
}

fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if workers > 0 {
        builder = builder.num_threads(workers);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("cannot build worker pool: {e}")))?;
    pool.install(f)
}

/// Runs simulation and/or bound evaluation over the SNR grid.
pub fn run(config: &RunConfig, parts: RunParts) -> Result<RunResult> {
    config.validate()?;
    with_pool(config.workers, || {
        let low = config.resolve_low()?;
        let link = Link::new(config, low)?;
        let bounds: Vec<(Option<f64>, Option<f64>)> = if parts.bounds {
            config
                .snr_db
                .par_iter()
                .map(|&s| link.bounds(s))
                .collect::<Result<_>>()?
        } else {
            vec![(None, None); config.snr_db.len()]
        };
        let mut points = Vec::with_capacity(config.snr_db.len());
        for (i, (&snr, (exact, tractable))) in config.snr_db.iter().zip(bounds).enumerate() {
            let estimate = if parts.simulate {
                Some(link.estimate(snr, i as u64, config.packets)?)
            } else {
                None
            };
            points.push(PointResult {
                snr_db: snr,
                estimate,
                bound_exact: exact,
                bound_tractable: tractable,
            });
        }
        Ok(RunResult {
            config: config.clone(),
            low,
            points,
        })
    })
}

/// Monte Carlo estimates over the configured grid.
pub fn run_monte_carlo(config: &RunConfig) -> Result<Vec<BerEstimate>> {
    let r = run(
        config,
        RunParts {
            simulate: true,
            bounds: false,
        },
    )?;
    Ok(r.points.into_iter().filter_map(|p| p.estimate).collect())
}

/// SNR at which the simulated BER of `config` crosses `target`, searched in
/// `[lo, hi]` dB. All probes share one random stream.
pub fn threshold_for(
    config: &RunConfig,
    low: Option<f64>,
    target: f64,
    lo: f64,
    hi: f64,
) -> Result<ThresholdResult> {
    with_pool(config.workers, || {
        let link = Link::new(config, low)?;
        snr_threshold_search(target, lo, hi, |snr| {
            let e = link.estimate(snr, 0, config.packets)?;
            Ok((e.ber, e.ci_halfwidth))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(scheme: Scheme, detector: Detector) -> RunConfig {
        RunConfig {
            scheme,
            detector,
            low: BarrierLow::Fixed(0.8),
            snr_db: vec![200.0],
            packets: 20,
            ..RunConfig::default()
        }
    }

    #[test]
    fn noiseless_chains_are_error_free() {
        let cases = [
            (Scheme::Dpim, Detector::Otd),
            (Scheme::Dpim, Detector::Osd),
            (Scheme::Bdpim, Detector::BdpimOsd),
            (Scheme::Bdpim, Detector::BdpimOtdOsd),
            (Scheme::Ppm, Detector::Otd),
            (Scheme::Ppm, Detector::Osd),
            (Scheme::Mdpim, Detector::Otd),
        ];
        for coded in [false, true] {
            for (s, d) in cases {
                let mut c = small(s, d);
                c.coded = coded;
                let est = run_monte_carlo(&c).unwrap();
                assert_eq!(est[0].bit_errors, 0, "{s} {d} coded={coded}");
                assert_eq!(est[0].per, 0.0);
                let want = if coded { 98 } else { 200 };
                assert_eq!(est[0].bits_total, 20 * want);
            }
        }
    }

    #[test]
    fn mlsd_on_short_packets() {
        let mut c = small(Scheme::Dpim, Detector::Mlsd);
        c.symbols = 4;
        c.snr_db = vec![300.0];
        assert_eq!(run_monte_carlo(&c).unwrap()[0].bit_errors, 0);
        c.symbols = 100;
        assert_eq!(run_monte_carlo(&c).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut c = small(Scheme::Bdpim, Detector::BdpimOsd);
        c.snr_db = vec![8.0, 10.0];
        c.packets = 300;
        c.workers = 1;
        let a = run_monte_carlo(&c).unwrap();
        c.workers = 3;
        let b = run_monte_carlo(&c).unwrap();
        assert_eq!(a, b);
        assert!(a[0].bit_errors > 0);
    }

    #[test]
    fn accounting_identities() {
        let mut c = small(Scheme::Dpim, Detector::Otd);
        c.snr_db = vec![9.0];
        c.packets = 500;
        let e = run_monte_carlo(&c).unwrap()[0];
        assert!(e.bit_errors <= e.bits_total);
        assert!(e.packet_errors <= e.packets);
        assert!((e.ber - e.bit_errors as f64 / e.bits_total as f64).abs() < 1e-15);
        assert!(e.ber <= e.per);
        assert!((e.mean_len - 350.0).abs() < 10.0, "{}", e.mean_len);
    }

    #[test]
    fn interval_widens_when_errors_cluster() {
        let packet = |e: u64| Counts {
            packets: 1,
            bit_errors: e,
            bit_errors_sq: e * e,
            bits: 100,
            packet_errors: (e > 0) as u64,
            chips: 350,
        };
        let sum = |v: &[u64]| {
            v.iter()
                .map(|&e| packet(e))
                .fold(Counts::default(), |a, b| a + b)
        };
        // Same 10 errors over 10 packets: spread out, then all in one packet.
        let spread = BerEstimate::from_counts(0.0, &sum(&[1; 10]));
        let lumped = BerEstimate::from_counts(0.0, &sum(&[10, 0, 0, 0, 0, 0, 0, 0, 0, 0]));
        assert_eq!(spread.ber, lumped.ber);
        assert_eq!(spread.ci_halfwidth, 0.0);
        // Sample sd of (10, 0 x 9) is sqrt(10); divided by sqrt(10) packets.
        assert!((lumped.ci_halfwidth - 1.96 * 1.0 / 100.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut c = small(Scheme::Dpim, Detector::BdpimOsd);
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        c = small(Scheme::Bdpim, Detector::BdpimOsd);
        c.period = 7;
        assert!(c.validate().is_err());
        c = small(Scheme::Dpim, Detector::Otd);
        c.snr_db.clear();
        assert!(c.validate().is_err());
        c = small(Scheme::Dpim, Detector::Otd);
        c.packets = 0;
        assert!(c.validate().is_err());
        c = small(Scheme::Dpim, Detector::Otd);
        c.coded = true;
        c.interleaver_depth = Some(30);
        assert!(c.validate().is_err());
        c = small(Scheme::Bdpim, Detector::BdpimOsd);
        c.low = BarrierLow::Fixed(1.5);
        assert!(c.validate().is_err());
    }

    #[test]
    fn parse_channel_and_detector() {
        assert_eq!("awgn".parse::<ChannelModel>().unwrap(), ChannelModel::Awgn);
        let gg: ChannelModel = "gg:11.6,10.1".parse().unwrap();
        assert_eq!(gg, ChannelModel::GammaGamma(TurbulenceSpec::weak()));
        assert_eq!(gg.to_string(), "gg:11.6,10.1");
        assert!("gg:1".parse::<ChannelModel>().is_err());
        assert!("gg:-1,2".parse::<ChannelModel>().is_err());
        for d in ["otd", "osd", "mlsd", "bdpim-osd", "bdpim-otd-osd"] {
            assert_eq!(d.parse::<Detector>().unwrap().as_str(), d);
        }
        assert!("bogus".parse::<Detector>().is_err());
    }

    #[test]
    fn grid_is_inclusive() {
        assert_eq!(
            RunConfig::grid(0.0, 2.0, 0.5).unwrap(),
            vec![0.0, 0.5, 1.0, 1.5, 2.0]
        );
        assert_eq!(RunConfig::grid(3.0, 3.0, 1.0).unwrap(), vec![3.0]);
        assert!(RunConfig::grid(3.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn bounds_only_run() {
        let mut c = small(Scheme::Dpim, Detector::Osd);
        c.snr_db = vec![10.0, 14.0];
        let r = run(
            &c,
            RunParts {
                simulate: false,
                bounds: true,
            },
        )
        .unwrap();
        assert!(r
            .points
            .iter()
            .all(|p| p.estimate.is_none() && p.bound_exact.is_some()));
        let e: Vec<f64> = r.points.iter().map(|p| p.bound_exact.unwrap()).collect();
        assert!(e[1] < e[0]);
    }
}
