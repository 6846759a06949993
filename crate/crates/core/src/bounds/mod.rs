//! Chip error probabilities and approximate BER upper bounds.
//!
//! | detector       | bound                        |
//! |----------------|------------------------------|
//! | DPIM-OTD       | [`ber_bound_dpim_otd`]       |
//! | DPIM-OSD       | [`ber_bound_dpim_osd`]       |
//! | BDPIM-OSD      | [`ber_bound_bdpim_osd`]      |
//! | BDPIM-OTD-OSD  | [`ber_bound_bdpim_otd_osd`]  |
//!
//! The sort-based bounds come in an exact mode, built from quadratures of the
//! OR function, and a tractable mode that replaces each OR term by a tail
//! probability at `α` times the mean of the competing order statistic.

pub mod or_function;
pub mod order_stat;

use std::fmt;

use log::warn;

use crate::channel::{ln_gamma_gamma_pdf, snr_from_db, TurbulenceSpec};
use crate::quadrature::{integrate_with_breaks, Tolerance};
use crate::signal::{BarrierSpec, ModulationSpec};
use crate::special::q_func;
use crate::{Error, Result};

pub use or_function::{or_approx, or_approx_at, or_exact, OrQuery};
pub use order_stat::{
    extreme_order_stat_mean, order_stat_cdf, order_stat_pdf, order_stat_sf, BaseDistribution,
    Gaussian, OrderStatistic,
};

/// Default scaling of the order-statistic mean in the tractable bounds.
pub const DEFAULT_ALPHA: f64 = 0.82;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundMode {
    Exact,
    Tractable,
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMode::Exact => "exact-integral",
            BoundMode::Tractable => "tractable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub mode: BoundMode,
    /// Estimated absolute error from quadrature (0 for closed forms).
    pub quadrature_error: f64,
}

pub(crate) fn clamp_probability(value: f64, mode: BoundMode, error: f64) -> BoundResult {
    let clamped = value.clamp(0.0, 1.0);
    if clamped != value {
        warn!("probability {value:e} clamped to {clamped} (quadrature error {error:e})");
    }
    BoundResult {
        value: clamped,
        mode,
        quadrature_error: error,
    }
}

/// Nearest integer, halves rounded away from zero.
pub fn round_half_away(x: f64) -> usize {
    x.round() as usize
}

/// Parameters shared by all four bounds.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundInput {
    /// Packet length `L` in chips.
    pub len: usize,
    /// Symbols per packet `N_s`.
    pub symbols: usize,
    /// Barrier period `K` (1 for plain DPIM).
    pub period: usize,
    /// Average amplitude `A`; the SNR refers to it.
    pub amplitude: f64,
    pub low: f64,
    pub high: f64,
    pub h: f64,
    pub sigma_n: f64,
    /// Average symbol duration `L_s` in chips.
    pub avg_symbol_duration: f64,
    pub alpha: f64,
}

impl BoundInput {
    /// DPIM with amplitude `A`; `L = ⌊N_s·L_s⌉`.
    pub fn dpim(
        spec: &ModulationSpec,
        symbols: usize,
        amplitude: f64,
        h: f64,
        snr_db: f64,
    ) -> Result<Self> {
        let ls = spec.avg_symbol_duration();
        let input = Self {
            len: round_half_away(symbols as f64 * ls),
            symbols,
            period: 1,
            amplitude,
            low: amplitude,
            high: amplitude,
            h,
            sigma_n: amplitude / snr_from_db(snr_db).sqrt(),
            avg_symbol_duration: ls,
            alpha: DEFAULT_ALPHA,
        };
        input.validate()?;
        Ok(input)
    }

    /// BDPIM; the SNR refers to the average amplitude of `barrier`.
    pub fn bdpim(
        spec: &ModulationSpec,
        symbols: usize,
        barrier: &BarrierSpec,
        h: f64,
        snr_db: f64,
    ) -> Result<Self> {
        let ls = spec.avg_symbol_duration();
        let a = barrier.average();
        let input = Self {
            len: round_half_away(symbols as f64 * ls),
            symbols,
            period: barrier.period(),
            amplitude: a,
            low: barrier.low(),
            high: barrier.high(),
            h,
            sigma_n: a / snr_from_db(snr_db).sqrt(),
            avg_symbol_duration: ls,
            alpha: DEFAULT_ALPHA,
        };
        input.validate()?;
        if symbols % barrier.period() != 0 {
            return Err(Error::SymbolCount {
                symbols,
                period: barrier.period(),
            });
        }
        Ok(input)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        self.alpha = alpha;
        self.validate()?;
        Ok(self)
    }

    pub fn with_h(mut self, h: f64) -> Result<Self> {
        self.h = h;
        self.validate()?;
        Ok(self)
    }

    /// Electrical SNR `A²/σ_n²`.
    pub fn gamma(&self) -> f64 {
        (self.amplitude / self.sigma_n).powi(2)
    }

    /// Barrier count `Q = N_s / K`.
    pub fn barriers(&self) -> usize {
        self.symbols / self.period
    }

    /// Noise standard deviation after dividing out the channel, `σ_n / h`.
    pub fn sigma(&self) -> f64 {
        self.sigma_n / self.h
    }

    /// Empty chips competing with the `K − 1` low pulses of one segment:
    /// `⌊K·L_s⌉ − K`.
    pub fn segment_empty_chips(&self) -> usize {
        round_half_away(self.period as f64 * self.avg_symbol_duration).saturating_sub(self.period)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [self.amplitude, self.low, self.high, self.h, self.sigma_n];
        if positive.iter().any(|v| !(*v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "bound inputs must be positive and finite: {self:?}"
            )));
        }
        if self.symbols == 0 || self.period == 0 || self.len <= self.symbols {
            return Err(Error::InvalidParameter(format!(
                "need N_s >= 1, K >= 1 and L > N_s, got N_s={}, K={}, L={}",
                self.symbols, self.period, self.len
            )));
        }
        if !(self.avg_symbol_duration > 1.0) {
            return Err(Error::InvalidParameter(format!(
                "average symbol duration must exceed 1, got {}",
                self.avg_symbol_duration
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        Ok(())
    }

    fn require_barrier(&self) -> Result<()> {
        if self.period < 2 || self.symbols % self.period != 0 || !(self.high > self.low) {
            return Err(Error::InvalidParameter(format!(
                "barrier bounds need K >= 2 dividing N_s and A_H > A_L, got K={}, N_s={}, A_L={}, A_H={}",
                self.period, self.symbols, self.low, self.high
            )));
        }
        Ok(())
    }
}

/// OTD chip error probability for DPIM:
/// `((L_s−1)/L_s)·Q(h√γ/2 + ln(L_s−1)/(h√γ)) + (1/L_s)·Q(h√γ/2 − ln(L_s−1)/(h√γ))`.
pub fn chip_error_prob_dpim(gamma: f64, h: f64, avg_symbol_duration: f64) -> Result<f64> {
    let ls = avg_symbol_duration;
    if !(ls > 1.0) || !(gamma >= 0.0) || !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need L_s > 1, gamma >= 0, h > 0; got L_s={ls}, gamma={gamma}, h={h}"
        )));
    }
    let s = h * gamma.sqrt();
    if s == 0.0 {
        // Threshold runs off to infinity: every pulse is missed.
        return Ok(1.0 / ls);
    }
    let shift = (ls - 1.0).ln() / s;
    Ok((ls - 1.0) / ls * q_func(s / 2.0 + shift) + q_func(s / 2.0 - shift) / ls)
}

/// `1 − (1−p)^n` without cancellation.
fn one_minus_pow(p: f64, n: f64) -> f64 {
    -(n * (-p).ln_1p()).exp_m1()
}

/// `[2 − 2(1−p)^n − n·p·(1−p)^{n−1}] / 4`: expected BER of a packet whose `n`
/// chips each flip with probability `p`.
fn packet_ber_from_chip_prob(p: f64, n: usize) -> f64 {
    let n = n as f64;
    let q = 1.0 - p;
    let tail = if q > 0.0 {
        n * p * ((n - 1.0) * q.ln()).exp()
    } else {
        0.0
    };
    (2.0 * one_minus_pow(p, n) - tail) / 4.0
}

/// BER bound for DPIM with OTD.
pub fn ber_bound_dpim_otd(input: &BoundInput) -> Result<BoundResult> {
    input.validate()?;
    let pc = chip_error_prob_dpim(input.gamma(), input.h, input.avg_symbol_duration)?;
    Ok(clamp_probability(
        packet_ber_from_chip_prob(pc, input.len),
        BoundMode::Exact,
        0.0,
    ))
}

/// One OR term: exact quadrature or the tractable tail at `threshold`.
/// A comparison against an empty set of samples contributes zero.
fn or_term(q: OrQuery, mode: BoundMode, threshold: f64) -> Result<(f64, f64)> {
    if q.k1 == 0 || q.n1 == 0 || q.k2 == 0 || q.n2 == 0 {
        return Ok((0.0, 0.0));
    }
    let r = match mode {
        BoundMode::Exact => or_exact(&q)?,
        BoundMode::Tractable => or_approx_at(&q, threshold)?,
    };
    Ok((r.value, r.quadrature_error))
}

fn query(mu1: f64, k1: usize, n1: usize, mu2: f64, k2: usize, n2: usize, sigma: f64) -> OrQuery {
    OrQuery {
        mu1,
        k1,
        n1,
        mu2,
        k2,
        n2,
        sigma,
    }
}

/// BER bound for DPIM with OSD:
/// `(1/6)[OR(0,1,L−N_s; A,N_s,N_s) + 2·OR(0,2,L−N_s; A,N_s−1,N_s)]`.
pub fn ber_bound_dpim_osd(input: &BoundInput, mode: BoundMode) -> Result<BoundResult> {
    input.validate()?;
    let (a, ns, sigma) = (input.amplitude, input.symbols, input.sigma());
    let empty = input.len - ns;
    let v1 = input.alpha * extreme_order_stat_mean(ns, a, input.sigma_n, input.h);
    let (p1, e1) = or_term(query(0.0, 1, empty, a, ns, ns, sigma), mode, v1)?;
    let (p2, e2) = if empty >= 2 {
        or_term(query(0.0, 2, empty, a, ns - 1, ns, sigma), mode, v1)?
    } else {
        (0.0, 0.0)
    };
    Ok(clamp_probability(
        (p1 + 2.0 * p2) / 6.0,
        mode,
        (e1 + 2.0 * e2) / 6.0,
    ))
}

/// The two second-phase OR terms for one barrier segment: the largest and
/// second largest empty chip against the weakest and second weakest low
/// pulse. Returns `(P_0L, P_0L', error)`.
fn segment_terms(input: &BoundInput, mode: BoundMode) -> Result<(f64, f64, f64)> {
    let (k, al, sigma) = (input.period, input.low, input.sigma());
    let n0 = input.segment_empty_chips();
    let v4 = input.alpha * extreme_order_stat_mean(k - 1, al, input.sigma_n, input.h);
    let (p0, e0) = or_term(query(0.0, 1, n0, al, k - 1, k - 1, sigma), mode, v4)?;
    let (p0b, e0b) = if n0 >= 2 {
        or_term(query(0.0, 2, n0, al, k - 2, k - 1, sigma), mode, v4)?
    } else {
        (0.0, 0.0)
    };
    Ok((p0, p0b, e0 + e0b))
}

/// BER bound for BDPIM with two-phase OSD.
pub fn ber_bound_bdpim_osd(input: &BoundInput, mode: BoundMode) -> Result<BoundResult> {
    input.validate()?;
    input.require_barrier()?;
    let (al, ah, sigma) = (input.low, input.high, input.sigma());
    let ns = input.symbols;
    let q = input.barriers();
    let lows = ns - q;
    let v3 = input.alpha * extreme_order_stat_mean(q, ah, input.sigma_n, input.h);
    let (plh, e1) = or_term(query(al, 1, lows, ah, q, q, sigma), mode, v3)?;
    let (plh2, e2) = if lows >= 2 {
        or_term(query(al, 2, lows, ah, q - 1, q, sigma), mode, v3)?
    } else {
        (0.0, 0.0)
    };
    let (p0l, p0l2, e3) = segment_terms(input, mode)?;
    let value = (plh + 2.0 * plh2) / 6.0 * (1.0 - p0l)
        + (p0l + 2.0 * p0l2) / 6.0 * (1.0 - plh)
        + 0.5 * plh * p0l;
    Ok(clamp_probability(value, mode, e1 + e2 + e3))
}

/// First-phase OTD error probability on barrier symbols, with prior `1/K`
/// for `A_H` and `(K−1)/K` for `A_L`.
pub fn barrier_chip_error_prob(barrier: &BarrierSpec, h: f64, sigma_n: f64) -> Result<f64> {
    let gap = barrier.high() - barrier.low();
    if !(gap > 0.0) || !(h > 0.0) || !(sigma_n >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need A_H > A_L, h > 0, sigma_n >= 0; got gap={gap}, h={h}, sigma_n={sigma_n}"
        )));
    }
    if sigma_n == 0.0 {
        return Ok(0.0);
    }
    let k = barrier.period() as f64;
    let d = h * gap / (2.0 * sigma_n);
    let shift = sigma_n * (k - 1.0).ln() / (h * gap);
    Ok(q_func(d + shift) / k + (k - 1.0) / k * q_func(d - shift))
}

/// BER bound for BDPIM with OTD barrier search followed by OSD.
///
/// `[2 − 2a − B]/4·(1 − P_0L) + (1/6)(P_0L + 2P_0L')·a + ½(1 − a)·P_0L` with
/// `a = (1 − P_c')^{N_s}` and `B = N_s·P_c'·(1 − P_c')^{N_s−1}`.
pub fn ber_bound_bdpim_otd_osd(input: &BoundInput, mode: BoundMode) -> Result<BoundResult> {
    input.validate()?;
    input.require_barrier()?;
    let barrier = BarrierSpec::from_levels(input.period, input.amplitude, input.low, input.high)?;
    let pc = barrier_chip_error_prob(&barrier, input.h, input.sigma_n)?;
    let ns = input.symbols as f64;
    let miss = one_minus_pow(pc, ns);
    let a = 1.0 - miss;
    let first = packet_ber_from_chip_prob(pc, input.symbols);
    let (p0l, p0l2, err) = segment_terms(input, mode)?;
    let value = first * (1.0 - p0l) + (p0l + 2.0 * p0l2) / 6.0 * a + 0.5 * miss * p0l;
    Ok(clamp_probability(value, mode, err))
}

/// Which of the four bounds to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    DpimOtd,
    DpimOsd,
    BdpimOsd,
    BdpimOtdOsd,
}

impl BoundKind {
    pub fn evaluate(&self, input: &BoundInput, mode: BoundMode) -> Result<BoundResult> {
        match self {
            BoundKind::DpimOtd => ber_bound_dpim_otd(input),
            BoundKind::DpimOsd => ber_bound_dpim_osd(input, mode),
            BoundKind::BdpimOsd => ber_bound_bdpim_osd(input, mode),
            BoundKind::BdpimOtdOsd => ber_bound_bdpim_otd_osd(input, mode),
        }
    }
}

/// `∫₀^∞ bound(h)·f(h) dh` under Gamma-Gamma fading, integrated over `ln h`.
pub fn ergodic_bound<F>(mut bound: F, turbulence: &TurbulenceSpec) -> Result<BoundResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let ln_weight = |u: f64| ln_gamma_gamma_pdf(u.exp(), turbulence) + u;
    let peak = ln_weight(0.0);
    let sd = turbulence.variance().sqrt();
    // Walk outwards until the weight is negligible against its value at h = 1.
    let step = sd.max(1e-3);
    let mut lo = 0.0;
    while ln_weight(lo) - peak > -50.0 && lo > -700.0 {
        lo -= step;
    }
    let mut hi = 0.0;
    while ln_weight(hi) - peak > -50.0 && hi < 700.0 {
        hi += step;
    }
    let mut breaks = vec![lo, 0.0, hi];
    for j in 1..=6 {
        for x in [1.0 - j as f64 * sd, 1.0 + j as f64 * sd] {
            if x > 0.0 {
                let u = x.ln();
                if u > lo && u < hi {
                    breaks.push(u);
                }
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let mut failure = None;
    let mut f = |u: f64| {
        let w = (ln_weight(u)).exp();
        if w == 0.0 {
            return 0.0;
        }
        match bound(u.exp()) {
            Ok(b) => b * w,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        }
    };
    let tol = Tolerance {
        abs: 1e-300,
        rel: 1e-6,
        ..Tolerance::default()
    };
    let r = integrate_with_breaks(&mut f, &breaks, tol);
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.converged {
        return Err(Error::Quadrature {
            estimate: r.value,
            error: r.error,
        });
    }
    Ok(clamp_probability(r.value, BoundMode::Exact, r.error))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> ModulationSpec {
        ModulationSpec::new(4, 1).unwrap()
    }

    fn dpim(snr: f64) -> BoundInput {
        BoundInput::dpim(&spec(), 100, 1.0, 1.0, snr).unwrap()
    }

    fn bdpim(snr: f64, k: usize, al: f64) -> BoundInput {
        let b = BarrierSpec::new(k, 1.0, al).unwrap();
        BoundInput::bdpim(&spec(), 100, &b, 1.0, snr).unwrap()
    }

    #[test]
    fn packet_length_and_segment_size() {
        let d = dpim(10.0);
        assert_eq!(d.len, 350);
        let b = bdpim(10.0, 10, 0.86);
        assert_eq!(b.barriers(), 10);
        assert_eq!(b.segment_empty_chips(), 25);
        // 5 · 3.5 = 17.5 rounds away from zero.
        assert_eq!(bdpim(10.0, 5, 0.86).segment_empty_chips(), 13);
    }

    #[test]
    fn chip_error_limits() {
        assert!(chip_error_prob_dpim(1e8, 1.0, 3.5).unwrap() < 1e-300);
        for g in [0.5, 3.0, 40.0] {
            let p = chip_error_prob_dpim(g, 1.0, 2.0).unwrap();
            assert!((p - q_func(g.sqrt() / 2.0)).abs() < 1e-16);
        }
    }

    #[test]
    fn barrier_chip_error_limits() {
        let b = BarrierSpec::new(2, 1.0, 0.6).unwrap();
        let gap = b.high() - b.low();
        let p = barrier_chip_error_prob(&b, 1.0, 0.3).unwrap();
        assert!((p - q_func(gap / 0.6)).abs() < 1e-16);
        assert_eq!(barrier_chip_error_prob(&b, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn otd_bound_monotone_in_snr_and_length() {
        let mut prev = 1.0;
        for i in 0..40 {
            let v = ber_bound_dpim_otd(&dpim(i as f64 * 0.5)).unwrap().value;
            assert!(v <= prev && v <= 0.5);
            prev = v;
        }
        let mut prev = 0.0;
        for len in (110..2000).step_by(37) {
            let mut inp = dpim(12.0);
            inp.len = len;
            let v = ber_bound_dpim_otd(&inp).unwrap().value;
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn sort_bounds_vanish_at_high_snr() {
        for mode in [BoundMode::Exact, BoundMode::Tractable] {
            assert!(ber_bound_dpim_osd(&dpim(45.0), mode).unwrap().value < 1e-12);
            assert!(
                ber_bound_bdpim_osd(&bdpim(45.0, 10, 0.7), mode)
                    .unwrap()
                    .value
                    < 1e-12
            );
            assert!(
                ber_bound_bdpim_otd_osd(&bdpim(45.0, 10, 0.7), mode)
                    .unwrap()
                    .value
                    < 1e-12
            );
        }
    }

    #[test]
    fn bounds_stay_below_half() {
        for snr in [-10.0, 0.0, 6.0, 12.0, 18.0] {
            for mode in [BoundMode::Exact, BoundMode::Tractable] {
                for v in [
                    ber_bound_dpim_osd(&dpim(snr), mode).unwrap().value,
                    ber_bound_bdpim_osd(&bdpim(snr, 10, 0.86), mode)
                        .unwrap()
                        .value,
                    ber_bound_bdpim_otd_osd(&bdpim(snr, 10, 0.86), mode)
                        .unwrap()
                        .value,
                ] {
                    assert!((0.0..=0.5).contains(&v), "snr {snr} {mode}: {v}");
                }
            }
        }
    }

    #[test]
    fn tractable_dpim_osd_matches_closed_form() {
        let inp = dpim(14.0);
        let v1 = inp.alpha * extreme_order_stat_mean(100, 1.0, inp.sigma_n, 1.0);
        let s = or_function::tractable_sf(v1 / inp.sigma());
        let f = 1.0 - s;
        let n = (inp.len - inp.symbols) as f64;
        let want = 0.5 * (1.0 - f.powf(n)) - n * f.powf(n - 1.0) * s / 3.0;
        let got = ber_bound_dpim_osd(&inp, BoundMode::Tractable)
            .unwrap()
            .value;
        assert!(((got - want) / want).abs() < 1e-9, "{got} vs {want}");
    }

    #[test]
    fn tractable_bdpim_bounds_match_closed_forms() {
        let inp = bdpim(15.0, 10, 0.8);
        let sig = inp.sigma();
        let (q, k) = (inp.barriers(), inp.period);
        let m = (inp.symbols - q) as f64;
        let n0 = inp.segment_empty_chips() as f64;
        let v3 = inp.alpha * extreme_order_stat_mean(q, inp.high, inp.sigma_n, 1.0);
        let v4 = inp.alpha * extreme_order_stat_mean(k - 1, inp.low, inp.sigma_n, 1.0);
        let g = 1.0 - or_function::tractable_sf((v3 - inp.low) / sig);
        let f = 1.0 - or_function::tractable_sf(v4 / sig);
        let gm = g.powf(m);
        let fn0 = f.powf(n0);
        let t3 = 0.5
            - 0.5 * gm * fn0
            - m * g.powf(m - 1.0) * (1.0 - g) * fn0 / 3.0
            - n0 * f.powf(n0 - 1.0) * (1.0 - f) * gm / 3.0;
        let got = ber_bound_bdpim_osd(&inp, BoundMode::Tractable)
            .unwrap()
            .value;
        assert!(((got - t3) / t3).abs() < 1e-8, "{got} vs {t3}");

        let b = BarrierSpec::new(10, 1.0, 0.8).unwrap();
        let pc = barrier_chip_error_prob(&b, 1.0, inp.sigma_n).unwrap();
        let ns = inp.symbols as f64;
        let a = (1.0 - pc).powf(ns);
        let bb = ns * pc * (1.0 - pc).powf(ns - 1.0);
        let t4 =
            0.5 - 0.5 * a * fn0 - 0.25 * bb * fn0 - n0 * f.powf(n0 - 1.0) * (1.0 - f) * a / 3.0;
        let got = ber_bound_bdpim_otd_osd(&inp, BoundMode::Tractable)
            .unwrap()
            .value;
        assert!(((got - t4) / t4).abs() < 1e-8, "{got} vs {t4}");
    }

    #[test]
    fn tractable_within_order_of_magnitude_of_exact() {
        let inp = dpim(20.0);
        let e = ber_bound_dpim_osd(&inp, BoundMode::Exact).unwrap().value;
        let t = ber_bound_dpim_osd(&inp, BoundMode::Tractable)
            .unwrap()
            .value;
        assert!(t / e < 10.0 && e / t < 10.0, "exact {e} tractable {t}");
    }

    #[test]
    fn ergodic_bound_degenerates_to_point_mass() {
        let turb = TurbulenceSpec::new(4000.0, 3000.0).unwrap();
        let f = |h: f64| Ok(ber_bound_dpim_otd(&dpim(12.0).with_h(h)?)?.value);
        let at_one = ber_bound_dpim_otd(&dpim(12.0)).unwrap().value;
        let r = ergodic_bound(f, &turb).unwrap();
        assert!(
            ((r.value - at_one) / at_one).abs() < 0.05,
            "{} vs {at_one}",
            r.value
        );
    }

    #[test]
    fn ergodic_bound_is_monotone_in_snr() {
        let turb = TurbulenceSpec::weak();
        let mut prev = 1.0;
        for snr in [8.0, 12.0, 16.0, 20.0] {
            let r = ergodic_bound(
                |h| Ok(ber_bound_dpim_otd(&dpim(snr).with_h(h)?)?.value),
                &turb,
            )
            .unwrap();
            assert!(r.value < prev);
            prev = r.value;
        }
    }

    #[test]
    fn rejects_invalid_barrier_inputs() {
        let d = dpim(10.0);
        assert!(ber_bound_bdpim_osd(&d, BoundMode::Exact).is_err());
        let b = BarrierSpec::new(7, 1.0, 0.8).unwrap();
        assert!(BoundInput::bdpim(&spec(), 100, &b, 1.0, 10.0).is_err());
    }
}
