//! Chip-level detectors.
//!
//! * OTD compares every sample against a fixed threshold.
//! * OSD declares the `N_s` largest samples of a packet as pulses. It solves
//!   the sparsity-constrained least-squares problem exactly, which
//!   [`mlsd_exhaustive`] and [`omp_detect`] confirm by other routes.
//! * The barrier detectors first locate the `A_H` pulses (by sorting or by
//!   thresholding) and then run OSD separately between consecutive barriers.
//!
//! All sorts break exact ties toward the lower index.

use std::cmp::Ordering;

use crate::signal::BarrierSpec;
use crate::special::ln_binomial;
use crate::{Error, Result};

/// Default limit on the number of candidate supports [`mlsd_exhaustive`] visits.
pub const MLSD_DEFAULT_CAP: f64 = 1e7;

/// Diagnostics raised by the two-phase barrier detectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PhaseFlags {
    /// Barriers found in the first phase.
    pub barriers: usize,
    /// Segments holding fewer chips than the pulses they should carry.
    pub short_segments: usize,
    /// No barrier crossed the threshold; the whole frame was one segment.
    pub no_barrier: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionResult {
    /// Hard-decision amplitudes.
    pub chips: Vec<f64>,
    /// Sorted positions detected as pulses.
    pub support: Vec<usize>,
    pub flags: PhaseFlags,
    /// Longest stretch of samples held before a decision could be made.
    pub max_buffer: usize,
    /// Number of segments processed in the second phase (0 for one-phase detectors).
    pub segments: usize,
}

impl DetectionResult {
    fn from_chips(chips: Vec<f64>, max_buffer: usize) -> Self {
        let support = chips
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| (c != 0.0).then_some(i))
            .collect();
        Self {
            chips,
            support,
            flags: PhaseFlags::default(),
            max_buffer,
            segments: 0,
        }
    }
}

/// Absolute decision threshold `h·A_T` and the amplitude written for a pulse.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThresholdSpec {
    threshold: f64,
    amplitude: f64,
}

impl ThresholdSpec {
    pub fn new(threshold: f64, amplitude: f64) -> Result<Self> {
        if !(threshold > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "threshold must be positive, got {threshold}"
            )));
        }
        Ok(Self {
            threshold,
            amplitude,
        })
    }

    /// Threshold `h·A_T` built from [`otd_threshold`].
    pub fn optimal(amplitude: f64, h: f64, gamma: f64, avg_symbol_duration: f64) -> Result<Self> {
        let at = otd_threshold(amplitude, h, gamma, avg_symbol_duration)?;
        Self::new(h * at, amplitude)
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }
}

/// Normalised OTD threshold `A_T = A/2 + A/(h²γ)·ln(L_s − 1)` built from the
/// expected pulse probability `1/L_s`.
pub fn otd_threshold(amplitude: f64, h: f64, gamma: f64, avg_symbol_duration: f64) -> Result<f64> {
    if !(avg_symbol_duration > 1.0) {
        return Err(Error::InvalidParameter(format!(
            "average symbol duration must exceed 1, got {avg_symbol_duration}"
        )));
    }
    if !(gamma > 0.0) || !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need gamma > 0 and h > 0, got gamma={gamma}, h={h}"
        )));
    }
    Ok(amplitude / 2.0 + amplitude / (h * h * gamma) * (avg_symbol_duration - 1.0).ln())
}

/// Sample-by-sample threshold detector.
#[derive(Clone, Copy, Debug)]
pub struct OtdStream {
    spec: ThresholdSpec,
}

impl OtdStream {
    pub fn new(spec: ThresholdSpec) -> Self {
        Self { spec }
    }

    /// Decision for one sample; depends on nothing but that sample.
    pub fn push(&mut self, sample: f64) -> f64 {
        if sample > self.spec.threshold {
            self.spec.amplitude
        } else {
            0.0
        }
    }
}

pub fn otd_detect(y: &[f64], spec: &ThresholdSpec) -> DetectionResult {
    let mut stream = OtdStream::new(*spec);
    let chips = y.iter().map(|&s| stream.push(s)).collect();
    DetectionResult::from_chips(chips, 1)
}

fn descending(y: &[f64]) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&i, &j| y[j].total_cmp(&y[i]).then(i.cmp(&j))
}

/// Positions of the `k` largest entries, returned in ascending position order.
pub(crate) fn top_k_positions(y: &[f64], k: usize) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    let mut idx: Vec<usize> = (0..y.len()).collect();
    if k < y.len() {
        idx.select_nth_unstable_by(k - 1, descending(y));
        idx.truncate(k);
    }
    idx.sort_unstable();
    idx
}

/// Ordered sequence detection: the `N_s` largest samples become `A`.
/// Uses no channel knowledge.
pub fn osd_detect(y: &[f64], pulses: usize, amplitude: f64) -> Result<DetectionResult> {
    if pulses > y.len() {
        return Err(Error::TooManyPulses {
            pulses,
            len: y.len(),
        });
    }
    let support = top_k_positions(y, pulses);
    let mut chips = vec![0.0; y.len()];
    for &t in &support {
        chips[t] = amplitude;
    }
    Ok(DetectionResult {
        chips,
        support,
        flags: PhaseFlags::default(),
        max_buffer: y.len(),
        segments: 0,
    })
}

/// Greedy matching pursuit over the canonical basis: each iteration picks the
/// atom with the largest correlation with the residual and removes its
/// projection. Atoms carry a known positive amplitude, so the correlation is
/// taken with its sign.
pub fn omp_detect(y: &[f64], pulses: usize, amplitude: f64) -> Result<DetectionResult> {
    if pulses > y.len() {
        return Err(Error::TooManyPulses {
            pulses,
            len: y.len(),
        });
    }
    let mut residual = y.to_vec();
    let mut selected = vec![false; y.len()];
    for _ in 0..pulses {
        let mut best: Option<usize> = None;
        for t in 0..residual.len() {
            if selected[t] {
                continue;
            }
            // <r, e_t> = r[t]; strict comparison keeps the lowest index on ties.
            match best {
                Some(b) if residual[t] <= residual[b] => {}
                _ => best = Some(t),
            }
        }
        let t = best.expect("pulses <= len leaves an unselected atom");
        selected[t] = true;
        residual[t] -= residual[t];
    }
    let chips: Vec<f64> = selected
        .iter()
        .map(|&s| if s { amplitude } else { 0.0 })
        .collect();
    Ok(DetectionResult::from_chips(chips, y.len()))
}

/// Exhaustive maximum-likelihood search over every support of size `N_s`,
/// minimising `‖y − h·x‖²` with `x = A` on the support. Ties keep the
/// lexicographically smallest support.
pub fn mlsd_exhaustive(
    y: &[f64],
    h: f64,
    pulses: usize,
    amplitude: f64,
    cap: f64,
) -> Result<DetectionResult> {
    let len = y.len();
    if pulses > len {
        return Err(Error::TooManyPulses { pulses, len });
    }
    let candidates = ln_binomial(len as u64, pulses as u64).exp();
    if candidates > cap * (1.0 + 1e-9) {
        return Err(Error::EnumerationCap { candidates, cap });
    }
    let level = h * amplitude;
    let mut comb: Vec<usize> = (0..pulses).collect();
    let mut best = comb.clone();
    let mut best_cost = f64::INFINITY;
    let mut x = vec![0.0; len];
    loop {
        x.iter_mut().for_each(|v| *v = 0.0);
        for &t in &comb {
            x[t] = level;
        }
        let cost: f64 = y.iter().zip(&x).map(|(a, b)| (a - b) * (a - b)).sum();
        if cost < best_cost {
            best_cost = cost;
            best.copy_from_slice(&comb);
        }
        // Advance to the next combination in lexicographic order.
        let mut i = pulses;
        loop {
            if i == 0 {
                let mut chips = vec![0.0; len];
                for &t in &best {
                    chips[t] = amplitude;
                }
                return Ok(DetectionResult {
                    chips,
                    support: best,
                    flags: PhaseFlags::default(),
                    max_buffer: len,
                    segments: 0,
                });
            }
            i -= 1;
            if comb[i] < len - pulses + i {
                comb[i] += 1;
                for j in i + 1..pulses {
                    comb[j] = comb[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Marks the `want` largest samples of `segment` (starting at `offset`) as
/// `level` in `chips`. Returns true when the segment was too short.
fn detect_segment(y: &[f64], offset: usize, want: usize, level: f64, chips: &mut [f64]) -> bool {
    let short = y.len() < want;
    for t in top_k_positions(y, want.min(y.len())) {
        chips[offset + t] = level;
    }
    short
}

/// Two-phase OSD for BDPIM: the `Q = N_s/K` largest samples are barriers,
/// then the `K − 1` largest samples between consecutive barriers (and ahead of
/// the first) are low pulses. Chips after the last barrier are left empty.
pub fn bdpim_osd_detect(
    y: &[f64],
    pulses: usize,
    barrier: &BarrierSpec,
) -> Result<DetectionResult> {
    let k = barrier.period();
    if pulses % k != 0 {
        return Err(Error::SymbolCount {
            symbols: pulses,
            period: k,
        });
    }
    let q = pulses / k;
    if q > y.len() {
        return Err(Error::TooManyPulses {
            pulses: q,
            len: y.len(),
        });
    }
    let barriers = top_k_positions(y, q);
    let mut chips = vec![0.0; y.len()];
    let mut flags = PhaseFlags {
        barriers: q,
        ..PhaseFlags::default()
    };
    let mut start = 0;
    let mut longest = 0;
    for &b in &barriers {
        chips[b] = barrier.high();
        let seg = &y[start..b];
        longest = longest.max(seg.len());
        if detect_segment(seg, start, k - 1, barrier.low(), &mut chips) {
            flags.short_segments += 1;
        }
        start = b + 1;
    }
    let support = chips
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| (c != 0.0).then_some(i))
        .collect();
    Ok(DetectionResult {
        chips,
        support,
        flags,
        max_buffer: y.len().max(longest),
        segments: barriers.len(),
    })
}

/// Barrier threshold `A_T' = (A_H + A_L)/2 + σ_n²·ln(K − 1) / (h²(A_H − A_L))`.
pub fn bdpim_otd_threshold(barrier: &BarrierSpec, h: f64, sigma_n: f64) -> Result<f64> {
    let gap = barrier.high() - barrier.low();
    if !(gap > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need A_H > A_L, got {} / {}",
            barrier.high(),
            barrier.low()
        )));
    }
    let k = barrier.period();
    Ok(0.5 * (barrier.high() + barrier.low())
        + sigma_n * sigma_n * ((k - 1) as f64).ln() / (h * h * gap))
}

/// Streaming BDPIM detector: thresholding finds barriers on the fly, and the
/// samples buffered since the previous barrier are resolved by OSD as soon as
/// the next barrier arrives.
#[derive(Clone, Debug)]
pub struct BarrierStream {
    threshold: f64,
    barrier: BarrierSpec,
    pulses: usize,
    buffer: Vec<f64>,
    chips: Vec<f64>,
    detected: usize,
    flags: PhaseFlags,
    max_buffer: usize,
    segments: usize,
}

impl BarrierStream {
    /// `threshold` is the absolute level `h·A_T'`; `pulses` is `N_s`.
    pub fn new(threshold: f64, pulses: usize, barrier: BarrierSpec) -> Self {
        Self {
            threshold,
            barrier,
            pulses,
            buffer: Vec::new(),
            chips: Vec::new(),
            detected: 0,
            flags: PhaseFlags::default(),
            max_buffer: 0,
            segments: 0,
        }
    }

    fn flush(&mut self, want: usize) {
        let offset = self.chips.len();
        self.chips.resize(offset + self.buffer.len(), 0.0);
        let got = want.min(self.buffer.len());
        if detect_segment(
            &self.buffer,
            offset,
            want,
            self.barrier.low(),
            &mut self.chips,
        ) {
            self.flags.short_segments += 1;
        }
        self.detected += got;
        self.segments += 1;
        self.buffer.clear();
    }

    pub fn push(&mut self, sample: f64) {
        if sample > self.threshold {
            let want = self.barrier.period() - 1;
            self.flush(want);
            self.chips.push(self.barrier.high());
            self.detected += 1;
            self.flags.barriers += 1;
        } else {
            self.buffer.push(sample);
            self.max_buffer = self.max_buffer.max(self.buffer.len());
        }
    }

    /// Ends the frame. A trailing buffer is only searched for pulses that the
    /// packet still owes (none for a clean frame, where it holds guard chips).
    pub fn finish(mut self) -> DetectionResult {
        if self.flags.barriers == 0 {
            self.flags.no_barrier = true;
        }
        if !self.buffer.is_empty() {
            let owed = self.pulses.saturating_sub(self.detected);
            if owed > 0 {
                self.flush(owed);
            } else {
                let n = self.buffer.len();
                self.chips.extend(std::iter::repeat(0.0).take(n));
                self.buffer.clear();
            }
        }
        let mut out = DetectionResult::from_chips(self.chips, self.max_buffer);
        out.flags = self.flags;
        out.segments = self.segments;
        out
    }
}

/// Runs [`BarrierStream`] over a whole frame.
pub fn bdpim_otd_osd_detect(
    y: &[f64],
    threshold: f64,
    pulses: usize,
    barrier: &BarrierSpec,
) -> Result<DetectionResult> {
    if pulses % barrier.period() != 0 {
        return Err(Error::SymbolCount {
            symbols: pulses,
            period: barrier.period(),
        });
    }
    let mut stream = BarrierStream::new(threshold, pulses, *barrier);
    for &s in y {
        stream.push(s);
    }
    Ok(stream.finish())
}

/// PPM detection with one pulse per `M`-chip frame: the largest sample of
/// each frame becomes the pulse.
pub fn ppm_frame_detect(y: &[f64], order: usize, amplitude: f64) -> Result<DetectionResult> {
    if order == 0 {
        return Err(Error::InvalidParameter("PPM order must be positive".into()));
    }
    let mut chips = vec![0.0; y.len()];
    for (f, frame) in y.chunks(order).enumerate() {
        let best = top_k_positions(frame, 1)[0];
        chips[f * order + best] = amplitude;
    }
    Ok(DetectionResult::from_chips(chips, order))
}

/// Three-level thresholds for MDPIM: the lower one weighs the empty-chip
/// prior against the low-pulse prior, the upper one is the midpoint of the
/// two pulse levels (both pulse levels are equally likely).
pub fn mdpim_thresholds(
    low: f64,
    high: f64,
    h: f64,
    sigma_n: f64,
    pulse_prob: f64,
) -> Result<(f64, f64)> {
    if !(0.0 < low && low < high) || !(h > 0.0) || !(pulse_prob > 0.0 && pulse_prob < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < low < high, h > 0, 0 < pulse_prob < 1; got {low}, {high}, {h}, {pulse_prob}"
        )));
    }
    let ratio = (1.0 - pulse_prob) / (0.5 * pulse_prob);
    let lower = h * low / 2.0 + sigma_n * sigma_n / (h * low) * ratio.ln();
    let upper = h * (low + high) / 2.0;
    Ok((lower, upper.max(lower)))
}

/// Sample-by-sample MDPIM detection against [`mdpim_thresholds`].
pub fn mdpim_otd_detect(y: &[f64], low: f64, high: f64, thresholds: (f64, f64)) -> DetectionResult {
    let chips = y
        .iter()
        .map(|&s| {
            if s > thresholds.1 {
                high
            } else if s > thresholds.0 {
                low
            } else {
                0.0
            }
        })
        .collect();
    DetectionResult::from_chips(chips, 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DelayMode {
    /// Whole packet buffered before deciding (OSD, MLSD).
    Packet,
    /// One sample at a time (OTD).
    Sample,
}

/// Storage delay in seconds for an `L`-chip packet at `rate` chips per second.
pub fn storage_delay(len: usize, rate: f64, mode: DelayMode) -> Result<f64> {
    if !(rate > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "chip rate must be positive, got {rate}"
        )));
    }
    Ok(match mode {
        DelayMode::Packet => len as f64 / rate,
        DelayMode::Sample => 1.0 / rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{map_bdpim, map_dpim, ModulationSpec};

    #[test]
    fn otd_threshold_values() {
        let at = otd_threshold(1.0, 1.0, 10.0, 3.5).unwrap();
        assert!((at - (0.5 + 0.1 * 2.5f64.ln())).abs() < 1e-15);
        assert!((at - 0.5916).abs() < 1e-4);
        assert!((otd_threshold(1.0, 1.0, 1e12, 3.5).unwrap() - 0.5).abs() < 1e-11);
        assert_eq!(otd_threshold(2.0, 0.7, 0.3, 2.0).unwrap(), 1.0);
        assert!(otd_threshold(1.0, 1.0, 10.0, 1.0).is_err());
    }

    #[test]
    fn otd_recovers_noiseless_frames() {
        let s = ModulationSpec::new(4, 1).unwrap();
        let f = map_dpim(&[0, 1, 1, 1, 0, 0, 1, 0], &s, 1.0).unwrap();
        let spec = ThresholdSpec::new(0.3, 1.0).unwrap();
        assert_eq!(otd_detect(f.chips(), &spec).chips, f.chips());
        assert!(otd_detect(&[0.0; 5], &spec).support.is_empty());
        assert!(ThresholdSpec::new(0.0, 1.0).is_err());
    }

    #[test]
    fn osd_picks_largest() {
        let y = [0.9, 0.1, 0.2, 0.8];
        let r = osd_detect(&y, 2, 1.0).unwrap();
        assert_eq!(r.support, vec![0, 3]);
        assert_eq!(r.chips, vec![1.0, 0.0, 0.0, 1.0]);
        assert_eq!(osd_detect(&y, 4, 1.0).unwrap().support, vec![0, 1, 2, 3]);
        assert!(osd_detect(&y, 5, 1.0).is_err());
        // Exact ties go to the lower index.
        assert_eq!(
            osd_detect(&[0.5, 0.5, 0.5], 2, 1.0).unwrap().support,
            vec![0, 1]
        );
    }

    #[test]
    fn mlsd_brute_force_example() {
        let y = [0.9, 0.1, 0.2, 0.8];
        let r = mlsd_exhaustive(&y, 1.0, 2, 1.0, MLSD_DEFAULT_CAP).unwrap();
        assert_eq!(r.support, vec![0, 3]);
        assert!(matches!(
            mlsd_exhaustive(&[0.0; 60], 1.0, 20, 1.0, MLSD_DEFAULT_CAP),
            Err(Error::EnumerationCap { .. })
        ));
        assert_eq!(
            mlsd_exhaustive(&[0.5, 0.5, 0.5], 1.0, 2, 1.0, 10.0)
                .unwrap()
                .support,
            vec![0, 1]
        );
    }

    #[test]
    fn omp_matches_example() {
        let y = [0.9, 0.1, 0.2, 0.8];
        assert_eq!(omp_detect(&y, 2, 1.0).unwrap().support, vec![0, 3]);
        // Large negative samples are never chosen.
        assert_eq!(
            omp_detect(&[-5.0, 0.1, 0.2], 1, 1.0).unwrap().support,
            vec![2]
        );
        assert!(omp_detect(&y, 5, 1.0).is_err());
    }

    #[test]
    fn bdpim_osd_noiseless() {
        let s = ModulationSpec::new(4, 1).unwrap();
        let b = BarrierSpec::new(5, 1.0, 0.8).unwrap();
        let bits: Vec<u8> = (0..40).map(|i| ((i * 7 + 3) % 5 % 2) as u8).collect();
        let f = map_bdpim(&bits, &s, &b).unwrap();
        let r = bdpim_osd_detect(f.chips(), 20, &b).unwrap();
        assert_eq!(r.chips, f.chips());
        assert_eq!(r.flags.short_segments, 0);
        assert_eq!(r.chips.iter().filter(|&&c| c == b.high()).count(), 4);
        assert!(bdpim_osd_detect(f.chips(), 21, &b).is_err());
    }

    #[test]
    fn bdpim_osd_single_barrier_is_global_max() {
        let b = BarrierSpec::new(3, 1.0, 0.5).unwrap();
        let y = [0.4, 0.1, 0.6, 2.1, 0.0, 0.3];
        let r = bdpim_osd_detect(&y, 3, &b).unwrap();
        assert_eq!(r.chips, vec![0.5, 0.0, 0.5, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn bdpim_osd_short_segment_flagged() {
        let b = BarrierSpec::new(3, 1.0, 0.5).unwrap();
        // Barriers at 1 and 2: first segment has one chip, second none.
        let y = [0.4, 3.0, 2.9, 0.2, 0.1, 0.0];
        let r = bdpim_osd_detect(&y, 6, &b).unwrap();
        assert_eq!(r.flags.short_segments, 2);
        assert_eq!(r.chips[0], 0.5);
    }

    #[test]
    fn barrier_threshold_values() {
        let b = BarrierSpec::new(10, 1.0, 0.86).unwrap();
        let t = bdpim_otd_threshold(&b, 1.0, 0.5).unwrap();
        assert!((t - (1.56 + 0.25 * 9f64.ln() / 1.4)).abs() < 1e-12);
        assert!((t - 1.9524).abs() < 1e-4);
        assert!((bdpim_otd_threshold(&b, 1.0, 1e-9).unwrap() - 1.56).abs() < 1e-12);
        let b2 = BarrierSpec::new(2, 1.0, 0.7).unwrap();
        assert_eq!(
            bdpim_otd_threshold(&b2, 1.0, 3.0).unwrap(),
            0.5 * (b2.high() + b2.low())
        );
    }

    #[test]
    fn otd_osd_noiseless_and_no_barrier() {
        let s = ModulationSpec::new(4, 1).unwrap();
        let b = BarrierSpec::new(5, 1.0, 0.8).unwrap();
        let bits: Vec<u8> = (0..40).map(|i| ((i * 5 + 1) % 3 % 2) as u8).collect();
        let f = map_bdpim(&bits, &s, &b).unwrap();
        let th = 0.5 * (b.high() + b.low());
        let r = bdpim_otd_osd_detect(f.chips(), th, 20, &b).unwrap();
        assert_eq!(r.chips, f.chips());
        assert_eq!(r.segments, 4);
        assert!(r.max_buffer < f.len() / 2);

        let low: Vec<f64> = f.chips().iter().map(|&c| c.min(b.low())).collect();
        let r = bdpim_otd_osd_detect(&low, th, 20, &b).unwrap();
        assert!(r.flags.no_barrier);
        assert_eq!(r.support.len(), 20);
    }

    #[test]
    fn storage_delays() {
        assert!((storage_delay(350, 1e6, DelayMode::Packet).unwrap() - 350e-6).abs() < 1e-18);
        assert_eq!(storage_delay(12345, 1e6, DelayMode::Sample).unwrap(), 1e-6);
        assert!(storage_delay(1, 0.0, DelayMode::Sample).is_err());
    }

    #[test]
    fn ppm_frames_pick_their_maximum() {
        let y = [0.1, 0.9, 0.2, 0.0, 0.5, 0.5, 0.1, 0.3];
        let r = ppm_frame_detect(&y, 4, 1.0).unwrap();
        assert_eq!(r.support, vec![1, 4]);
    }

    #[test]
    fn mdpim_levels_are_separated() {
        let (lo, hi) = mdpim_thresholds(0.5, 1.0, 1.0, 0.1, 0.4).unwrap();
        assert!(0.25 < lo && lo < 0.5 && (hi - 0.75).abs() < 1e-15);
        let r = mdpim_otd_detect(&[0.0, 0.52, 1.1, 0.7, 0.2], 0.5, 1.0, (lo, hi));
        assert_eq!(r.chips, vec![0.0, 0.5, 1.0, 0.5, 0.0]);
        assert!(mdpim_thresholds(1.0, 0.5, 1.0, 0.1, 0.4).is_err());
    }
}
