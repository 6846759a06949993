//! Bit-to-chip mapping for DPIM, BDPIM and the PPM / MDPIM / DHPIM baselines.
//!
//! A DPIM symbol carrying value `v` (most-significant bit first) is a single
//! pulse followed by `v + g` empty chips, where `g` is the guard-interval
//! count. BDPIM keeps that interval structure and raises the amplitude of
//! every `K`-th pulse to `A_H` so that the receiver can re-synchronise on it.

use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Modulation order `M` and guard-interval count `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModulationSpec {
    order: usize,
    guard: usize,
}

impl ModulationSpec {
    pub fn new(order: usize, guard: usize) -> Result<Self> {
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "modulation order must be a power of two >= 2, got {order}"
            )));
        }
        Ok(Self { order, guard })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn guard(&self) -> usize {
        self.guard
    }

    pub fn bits_per_symbol(&self) -> usize {
        self.order.trailing_zeros() as usize
    }

    /// Average symbol duration as the exact ratio `(M + 2g + 1) / 2`.
    pub fn avg_symbol_duration_ratio(&self) -> (usize, usize) {
        (self.order + 2 * self.guard + 1, 2)
    }

    /// Average DPIM symbol duration in chips, `(M + 2g + 1) / 2`.
    pub fn avg_symbol_duration(&self) -> f64 {
        let (num, den) = self.avg_symbol_duration_ratio();
        num as f64 / den as f64
    }

    /// Chip length of a DPIM symbol with value `v`.
    pub fn symbol_len(&self, value: usize) -> usize {
        value + 1 + self.guard
    }
}

/// Barrier period `K` together with the average, low and high pulse amplitudes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BarrierSpec {
    period: usize,
    average: f64,
    low: f64,
    high: f64,
}

impl BarrierSpec {
    /// Derives `A_H` from the power constraint `(K-1)·A_L + A_H = K·A`.
    pub fn new(period: usize, average: f64, low: f64) -> Result<Self> {
        let high = barrier_amplitude(period, average, low)?;
        Ok(Self {
            period,
            average,
            low,
            high,
        })
    }

    /// Builds a spec from explicit levels, checking the power constraint.
    pub fn from_levels(period: usize, average: f64, low: f64, high: f64) -> Result<Self> {
        if period < 2 {
            return Err(Error::InvalidParameter(format!(
                "barrier period must be >= 2, got {period}"
            )));
        }
        if !(low > 0.0 && low < high) {
            return Err(Error::InvalidParameter(format!(
                "need 0 < A_L < A_H, got A_L={low}, A_H={high}"
            )));
        }
        let lhs = (period - 1) as f64 * low + high;
        let rhs = period as f64 * average;
        if ((lhs - rhs) / rhs).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "power constraint violated: (K-1)A_L + A_H = {lhs}, K·A = {rhs}"
            )));
        }
        Ok(Self {
            period,
            average,
            low,
            high,
        })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn average(&self) -> f64 {
        self.average
    }

    pub fn low(&self) -> f64 {
        self.low
    }

    pub fn high(&self) -> f64 {
        self.high
    }
}

/// `A_H = K·A − (K−1)·A_L`.
pub fn barrier_amplitude(period: usize, average: f64, low: f64) -> Result<f64> {
    if period < 2 {
        return Err(Error::InvalidParameter(format!(
            "barrier period must be >= 2, got {period}"
        )));
    }
    if !(average > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "average amplitude must be positive, got {average}"
        )));
    }
    if !(low > 0.0 && low < average) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < A_L < A, got A_L={low}, A={average}"
        )));
    }
    Ok(period as f64 * average - (period - 1) as f64 * low)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    Dpim,
    Bdpim,
    Ppm,
    Mdpim,
    Dhpim,
}

impl Scheme {
    pub fn as_str(&self) -> &'static str {
        match self {
            Scheme::Dpim => "dpim",
            Scheme::Bdpim => "bdpim",
            Scheme::Ppm => "ppm",
            Scheme::Mdpim => "mdpim",
            Scheme::Dhpim => "dhpim",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dpim" => Ok(Scheme::Dpim),
            "bdpim" => Ok(Scheme::Bdpim),
            "ppm" => Ok(Scheme::Ppm),
            "mdpim" => Ok(Scheme::Mdpim),
            "dhpim" => Ok(Scheme::Dhpim),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// One packet's transmit amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct ChipFrame {
    chips: Vec<f64>,
    symbols: usize,
    scheme: Scheme,
}

impl ChipFrame {
    pub fn chips(&self) -> &[f64] {
        &self.chips
    }

    pub fn into_chips(self) -> Vec<f64> {
        self.chips
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn len(&self) -> usize {
        self.chips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chips.is_empty()
    }

    pub fn pulse_count(&self) -> usize {
        self.chips.iter().filter(|&&c| c != 0.0).count()
    }
}

/// Splits a bit block into symbol values, most-significant bit first.
pub fn bits_to_symbols(bits: &[u8], bits_per_symbol: usize) -> Result<Vec<usize>> {
    if bits.len() % bits_per_symbol != 0 {
        return Err(Error::BitLength {
            len: bits.len(),
            bits_per_symbol,
        });
    }
    Ok(bits
        .chunks(bits_per_symbol)
        .map(|c| {
            c.iter()
                .fold(0usize, |acc, &b| (acc << 1) | (b & 1) as usize)
        })
        .collect())
}

pub fn symbols_to_bits(symbols: &[usize], bits_per_symbol: usize) -> Vec<u8> {
    let mut bits = Vec::with_capacity(symbols.len() * bits_per_symbol);
    for &s in symbols {
        for shift in (0..bits_per_symbol).rev() {
            bits.push(((s >> shift) & 1) as u8);
        }
    }
    bits
}

fn push_symbol(chips: &mut Vec<f64>, amplitude: f64, zeros: usize) {
    chips.push(amplitude);
    chips.extend(std::iter::repeat(0.0).take(zeros));
}

pub fn map_dpim(bits: &[u8], spec: &ModulationSpec, amplitude: f64) -> Result<ChipFrame> {
    let symbols = bits_to_symbols(bits, spec.bits_per_symbol())?;
    let mut chips = Vec::with_capacity(symbols.len() * (spec.order() + spec.guard()));
    for &v in &symbols {
        push_symbol(&mut chips, amplitude, v + spec.guard());
    }
    Ok(ChipFrame {
        chips,
        symbols: symbols.len(),
        scheme: Scheme::Dpim,
    })
}

/// DPIM mapping with `A_H` on every `K`-th symbol (1-based `n mod K == 0`).
pub fn map_bdpim(bits: &[u8], spec: &ModulationSpec, barrier: &BarrierSpec) -> Result<ChipFrame> {
    let symbols = bits_to_symbols(bits, spec.bits_per_symbol())?;
    let k = barrier.period();
    if symbols.len() % k != 0 {
        return Err(Error::SymbolCount {
            symbols: symbols.len(),
            period: k,
        });
    }
    let mut chips = Vec::with_capacity(symbols.len() * (spec.order() + spec.guard()));
    for (n, &v) in symbols.iter().enumerate() {
        let amp = if (n + 1) % k == 0 {
            barrier.high()
        } else {
            barrier.low()
        };
        push_symbol(&mut chips, amp, v + spec.guard());
    }
    Ok(ChipFrame {
        chips,
        symbols: symbols.len(),
        scheme: Scheme::Bdpim,
    })
}

/// Amplitude levels for the baseline schemes: `peak` drives PPM and DHPIM,
/// `low` / `high` drive MDPIM.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Levels {
    pub peak: f64,
    pub low: f64,
    pub high: f64,
}

impl Levels {
    pub fn single(peak: f64) -> Self {
        Self {
            peak,
            low: peak,
            high: peak,
        }
    }

    /// MDPIM levels with `high = ratio · low`, scaled so the average optical
    /// power per chip equals that of DPIM with amplitude `reference`.
    pub fn mdpim_power_matched(spec: &ModulationSpec, reference: f64, ratio: f64) -> Self {
        let dpim_power = reference / spec.avg_symbol_duration();
        let mdpim_duration = mdpim_avg_symbol_duration(spec);
        let low = 2.0 * dpim_power * mdpim_duration / (1.0 + ratio);
        Self {
            peak: reference,
            low,
            high: ratio * low,
        }
    }
}

/// Average MDPIM symbol duration: the interval carries only the lower half
/// of the symbol value, the header amplitude carries the top bit.
pub fn mdpim_avg_symbol_duration(spec: &ModulationSpec) -> f64 {
    let half = spec.order() / 2;
    1.0 + spec.guard() as f64 + (half as f64 - 1.0) / 2.0
}

/// PPM, MDPIM and DHPIM mappings.
pub fn map_baseline(
    scheme: Scheme,
    bits: &[u8],
    spec: &ModulationSpec,
    levels: &Levels,
) -> Result<ChipFrame> {
    let symbols = bits_to_symbols(bits, spec.bits_per_symbol())?;
    let m = spec.order();
    let half = m / 2;
    let mut chips = Vec::new();
    match scheme {
        Scheme::Ppm => {
            if !(levels.peak > 0.0) {
                return Err(Error::InvalidParameter("PPM needs a positive peak".into()));
            }
            for &v in &symbols {
                let start = chips.len();
                chips.resize(start + m, 0.0);
                chips[start + v] = levels.peak;
            }
        }
        Scheme::Mdpim => {
            if !(levels.low > 0.0 && levels.high > levels.low) {
                return Err(Error::InvalidParameter(format!(
                    "MDPIM needs 0 < low < high, got {} / {}",
                    levels.low, levels.high
                )));
            }
            for &v in &symbols {
                if v < half {
                    push_symbol(&mut chips, levels.low, v + spec.guard());
                } else {
                    push_symbol(&mut chips, levels.high, v - half + spec.guard());
                }
            }
        }
        Scheme::Dhpim => {
            if !(levels.peak > 0.0) {
                return Err(Error::InvalidParameter(
                    "DHPIM needs a positive peak".into(),
                ));
            }
            for &v in &symbols {
                if v < half {
                    push_symbol(&mut chips, levels.peak, v + spec.guard());
                } else {
                    chips.push(levels.peak);
                    push_symbol(&mut chips, levels.peak, v - half + spec.guard());
                }
            }
        }
        Scheme::Dpim | Scheme::Bdpim => {
            return Err(Error::InvalidParameter(format!(
                "{scheme} is not a baseline scheme"
            )))
        }
    }
    Ok(ChipFrame {
        chips,
        symbols: symbols.len(),
        scheme,
    })
}

/// Output of a demapper.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Demapped {
    pub bits: Vec<u8>,
    /// Number of intervals (or blocks) that did not correspond to a valid symbol.
    pub invalid_intervals: usize,
    /// Set when the chip sequence held no pulse at all.
    pub no_pulses: bool,
}

impl Demapped {
    pub fn is_clean(&self) -> bool {
        self.invalid_intervals == 0 && !self.no_pulses
    }
}

/// Decodes one run of `len` chips that starts at a pulse, pushing the symbols
/// it represents. Runs longer than `M + g` are split greedily into maximal
/// symbols; leftovers shorter than `1 + g` clamp to symbol 0. Returns the
/// number of invalid pieces encountered.
fn decode_interval(len: usize, spec: &ModulationSpec, out: &mut Vec<usize>) -> usize {
    let m = spec.order();
    let g = spec.guard();
    let longest = m + g;
    let mut rest = len;
    let mut invalid = 0;
    if rest > longest {
        invalid += 1;
        while rest > longest {
            out.push(m - 1);
            rest -= longest;
        }
    }
    if rest > 0 {
        if rest < 1 + g {
            invalid += 1;
            out.push(0);
        } else {
            out.push(rest - 1 - g);
        }
    }
    invalid
}

fn fit_length(bits: &mut Vec<u8>, expected_bits: Option<usize>) {
    if let Some(n) = expected_bits {
        bits.resize(n, 0);
    }
}

/// Hard-decision DPIM demapper. Any nonzero chip counts as a pulse.
///
/// With `expected_symbols` the output is truncated or zero-padded to
/// `expected_symbols · log2(M)` bits.
pub fn demap_dpim(
    chips: &[f64],
    spec: &ModulationSpec,
    expected_symbols: Option<usize>,
) -> Result<Demapped> {
    let pulses: Vec<usize> = chips
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| (c != 0.0).then_some(i))
        .collect();
    demap_dpim_positions(&pulses, chips.len(), spec, expected_symbols)
}

/// [`demap_dpim`] driven by sorted pulse positions within a `len`-chip frame.
pub fn demap_dpim_positions(
    pulses: &[usize],
    len: usize,
    spec: &ModulationSpec,
    expected_symbols: Option<usize>,
) -> Result<Demapped> {
    if len == 0 {
        return Err(Error::InvalidParameter("empty chip sequence".into()));
    }
    let bps = spec.bits_per_symbol();
    let expected_bits = expected_symbols.map(|n| n * bps);
    if pulses.is_empty() {
        return Ok(Demapped {
            bits: vec![0; expected_bits.unwrap_or(0)],
            invalid_intervals: 0,
            no_pulses: true,
        });
    }

    let mut symbols = Vec::with_capacity(expected_symbols.unwrap_or(pulses.len()));
    let mut invalid = 0;
    // Chips ahead of the first detected pulse form a corrupted leading interval.
    if pulses[0] > 0 {
        invalid += 1 + decode_interval(pulses[0], spec, &mut symbols);
    }
    for (i, &p) in pulses.iter().enumerate() {
        let end = pulses.get(i + 1).copied().unwrap_or(len);
        invalid += decode_interval(end - p, spec, &mut symbols);
        if let Some(n) = expected_symbols {
            if symbols.len() >= n {
                break;
            }
        }
    }
    let mut bits = symbols_to_bits(&symbols, bps);
    fit_length(&mut bits, expected_bits);
    Ok(Demapped {
        bits,
        invalid_intervals: invalid,
        no_pulses: false,
    })
}

/// Hard-decision PPM demapper: each `M`-chip block decodes to the slot of
/// its first pulse; empty blocks decode to 0 and are counted as invalid.
pub fn demap_ppm(
    chips: &[f64],
    spec: &ModulationSpec,
    expected_symbols: Option<usize>,
) -> Result<Demapped> {
    if chips.is_empty() {
        return Err(Error::InvalidParameter("empty chip sequence".into()));
    }
    let m = spec.order();
    let mut invalid = 0;
    let mut any = false;
    let symbols: Vec<usize> = chips
        .chunks(m)
        .map(|block| match block.iter().position(|&c| c != 0.0) {
            Some(slot) => {
                any = true;
                if block.len() < m || block[slot + 1..].iter().any(|&c| c != 0.0) {
                    invalid += 1;
                }
                slot
            }
            None => {
                invalid += 1;
                0
            }
        })
        .collect();
    let mut bits = symbols_to_bits(&symbols, spec.bits_per_symbol());
    fit_length(
        &mut bits,
        expected_symbols.map(|n| n * spec.bits_per_symbol()),
    );
    Ok(Demapped {
        bits,
        invalid_intervals: invalid,
        no_pulses: !any,
    })
}

/// Hard-decision MDPIM demapper. Pulses at or above the midpoint of the two
/// levels carry the upper half of the symbol alphabet.
pub fn demap_mdpim(
    chips: &[f64],
    spec: &ModulationSpec,
    levels: &Levels,
    expected_symbols: Option<usize>,
) -> Result<Demapped> {
    if chips.is_empty() {
        return Err(Error::InvalidParameter("empty chip sequence".into()));
    }
    let bps = spec.bits_per_symbol();
    let expected_bits = expected_symbols.map(|n| n * bps);
    let pulses: Vec<usize> = chips
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| (c != 0.0).then_some(i))
        .collect();
    if pulses.is_empty() {
        return Ok(Demapped {
            bits: vec![0; expected_bits.unwrap_or(0)],
            invalid_intervals: 0,
            no_pulses: true,
        });
    }
    // Intervals are decoded against an M/2-ary DPIM alphabet.
    let half_spec = ModulationSpec {
        order: spec.order() / 2,
        guard: spec.guard(),
    };
    let split = 0.5 * (levels.low + levels.high);
    let half = spec.order() / 2;
    let mut symbols = Vec::new();
    let mut invalid = 0;
    if pulses[0] > 0 {
        invalid += 1 + decode_interval(pulses[0], &half_spec, &mut symbols);
    }
    let mut scratch = Vec::new();
    for (i, &p) in pulses.iter().enumerate() {
        let end = pulses.get(i + 1).copied().unwrap_or(chips.len());
        scratch.clear();
        invalid += decode_interval(end - p, &half_spec, &mut scratch);
        // Only the first symbol of a run owns the header amplitude.
        let upper = chips[p] >= split;
        for (j, &v) in scratch.iter().enumerate() {
            symbols.push(if j == 0 && upper { v + half } else { v });
        }
    }
    let mut bits = symbols_to_bits(&symbols, bps);
    fit_length(&mut bits, expected_bits);
    Ok(Demapped {
        bits,
        invalid_intervals: invalid,
        no_pulses: false,
    })
}

/// One symbol per pulse: the interval to the next pulse, clamped into the
/// valid range. Returns whether clamping was needed.
fn clamp_interval(len: usize, spec: &ModulationSpec) -> (usize, bool) {
    let g = spec.guard();
    let longest = spec.order() + g;
    if len < 1 + g {
        (0, true)
    } else if len > longest {
        (spec.order() - 1, true)
    } else {
        (len - 1 - g, false)
    }
}

/// DPIM demapper for detectors that fix the pulse count (OSD, MLSD): every
/// detected pulse starts exactly one symbol and out-of-range intervals are
/// clamped, so a false-alarm/erasure pair only disturbs the symbols between
/// the two chips.
pub fn demap_dpim_per_pulse(
    chips: &[f64],
    spec: &ModulationSpec,
    expected_symbols: Option<usize>,
) -> Result<Demapped> {
    if chips.is_empty() {
        return Err(Error::InvalidParameter("empty chip sequence".into()));
    }
    let bps = spec.bits_per_symbol();
    let expected_bits = expected_symbols.map(|n| n * bps);
    let pulses: Vec<usize> = chips
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| (c != 0.0).then_some(i))
        .collect();
    if pulses.is_empty() {
        return Ok(Demapped {
            bits: vec![0; expected_bits.unwrap_or(0)],
            invalid_intervals: 0,
            no_pulses: true,
        });
    }
    let mut invalid = usize::from(pulses[0] > 0);
    let mut symbols = Vec::with_capacity(pulses.len());
    for (i, &p) in pulses.iter().enumerate() {
        let end = pulses.get(i + 1).copied().unwrap_or(chips.len());
        let (v, clamped) = clamp_interval(end - p, spec);
        invalid += usize::from(clamped);
        symbols.push(v);
    }
    let mut bits = symbols_to_bits(&symbols, bps);
    fit_length(&mut bits, expected_bits);
    Ok(Demapped {
        bits,
        invalid_intervals: invalid,
        no_pulses: false,
    })
}

/// Barrier-aligned BDPIM demapper. Detected chips at or above the midpoint of
/// `A_L` and `A_H` are barriers; each barrier closes a group of exactly `K`
/// symbols (its `K − 1` predecessors plus itself), so a misplaced pulse only
/// disturbs the group it falls in and the barrier interval ahead of it.
/// Groups with the wrong pulse count are truncated or zero-padded at the end
/// of their low part and flagged.
pub fn demap_bdpim(
    chips: &[f64],
    spec: &ModulationSpec,
    barrier: &BarrierSpec,
    expected_symbols: Option<usize>,
) -> Result<Demapped> {
    if chips.is_empty() {
        return Err(Error::InvalidParameter("empty chip sequence".into()));
    }
    let bps = spec.bits_per_symbol();
    let expected_bits = expected_symbols.map(|n| n * bps);
    let pulses: Vec<usize> = chips
        .iter()
        .enumerate()
        .filter_map(|(i, &c)| (c != 0.0).then_some(i))
        .collect();
    if pulses.is_empty() {
        return Ok(Demapped {
            bits: vec![0; expected_bits.unwrap_or(0)],
            invalid_intervals: 0,
            no_pulses: true,
        });
    }
    let k = barrier.period();
    let split = 0.5 * (barrier.low() + barrier.high());
    let mut invalid = usize::from(pulses[0] > 0);
    let mut symbols = Vec::new();
    let mut lows = Vec::with_capacity(k);
    for (i, &p) in pulses.iter().enumerate() {
        let end = pulses.get(i + 1).copied().unwrap_or(chips.len());
        let (v, clamped) = clamp_interval(end - p, spec);
        invalid += usize::from(clamped);
        if chips[p] >= split {
            if lows.len() != k - 1 {
                invalid += 1;
                lows.resize(k - 1, 0);
            }
            symbols.append(&mut lows);
            symbols.push(v);
        } else {
            lows.push(v);
        }
    }
    symbols.append(&mut lows);
    let mut bits = symbols_to_bits(&symbols, bps);
    fit_length(&mut bits, expected_bits);
    Ok(Demapped {
        bits,
        invalid_intervals: invalid,
        no_pulses: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(m: usize, g: usize) -> ModulationSpec {
        ModulationSpec::new(m, g).unwrap()
    }

    #[test]
    fn average_symbol_duration() {
        assert_eq!(spec(4, 1).avg_symbol_duration(), 3.5);
        assert_eq!(spec(8, 1).avg_symbol_duration(), 5.5);
        assert_eq!(spec(2, 0).avg_symbol_duration(), 1.5);
        assert_eq!(spec(16, 2).avg_symbol_duration_ratio(), (21, 2));
    }

    #[test]
    fn rejects_bad_order() {
        assert!(ModulationSpec::new(3, 0).is_err());
        assert!(ModulationSpec::new(1, 0).is_err());
        assert!(ModulationSpec::new(0, 0).is_err());
    }

    #[test]
    fn dpim_mapping_matches_table() {
        let a = 1.5;
        assert_eq!(
            map_dpim(&[0, 0], &spec(4, 1), a).unwrap().chips(),
            &[a, 0.0]
        );
        assert_eq!(
            map_dpim(&[0, 1, 0], &spec(8, 1), a).unwrap().chips(),
            &[a, 0.0, 0.0, 0.0]
        );
        assert_eq!(
            map_dpim(&[1, 1], &spec(4, 0), a).unwrap().chips(),
            &[a, 0.0, 0.0, 0.0]
        );
        // 4-DPIM with one guard chip: 00, 01, 10, 11 -> A0, A00, A000, A0000.
        let f = map_dpim(&[0, 0, 0, 1, 1, 0, 1, 1], &spec(4, 1), 1.0).unwrap();
        assert_eq!(f.len(), 2 + 3 + 4 + 5);
        assert_eq!(f.symbols(), 4);
        assert!(matches!(
            map_dpim(&[0, 1, 1], &spec(4, 1), 1.0),
            Err(Error::BitLength { .. })
        ));
    }

    #[test]
    fn dpim_demapping() {
        let d = demap_dpim(&[1.0, 0.0, 0.0, 0.0], &spec(8, 1), None).unwrap();
        assert_eq!(d.bits, vec![0, 1, 0]);
        assert!(d.is_clean());
        let d = demap_dpim(&[1.0, 0.0, 1.0, 0.0, 0.0], &spec(4, 1), None).unwrap();
        assert_eq!(d.bits, vec![0, 0, 0, 1]);
        assert!(demap_dpim(&[], &spec(4, 1), None).is_err());
        let d = demap_dpim(&[0.0; 6], &spec(4, 1), Some(3)).unwrap();
        assert!(d.no_pulses);
        assert_eq!(d.bits, vec![0; 6]);
    }

    #[test]
    fn corrupted_intervals() {
        let s = spec(4, 1);
        // A 12-chip run: two maximal symbols (5 chips each) plus a 2-chip "00".
        let mut chips = vec![0.0; 12];
        chips[0] = 1.0;
        let d = demap_dpim(&chips, &s, None).unwrap();
        assert_eq!(d.bits, vec![1, 1, 1, 1, 0, 0]);
        assert_eq!(d.invalid_intervals, 1);
        // Leftover of a single chip is shorter than 1 + g: clamps to 0.
        let mut chips = vec![0.0; 6];
        chips[0] = 1.0;
        let d = demap_dpim(&chips, &s, None).unwrap();
        assert_eq!(d.bits, vec![1, 1, 0, 0]);
        assert_eq!(d.invalid_intervals, 2);
        // Two adjacent pulses: first run has length 1 < 1 + g.
        let d = demap_dpim(&[1.0, 1.0, 0.0], &s, None).unwrap();
        assert_eq!(d.bits, vec![0, 0, 0, 0]);
        assert_eq!(d.invalid_intervals, 1);
        // Leading chips before the first pulse.
        let d = demap_dpim(&[0.0, 0.0, 1.0, 0.0], &s, None).unwrap();
        assert_eq!(d.bits, vec![0, 0, 0, 0]);
        assert!(d.invalid_intervals >= 1);
    }

    #[test]
    fn demap_fits_expected_length() {
        let s = spec(4, 1);
        let f = map_dpim(&[1, 1, 0, 1], &s, 1.0).unwrap();
        let d = demap_dpim(f.chips(), &s, Some(1)).unwrap();
        assert_eq!(d.bits, vec![1, 1]);
        let d = demap_dpim(f.chips(), &s, Some(4)).unwrap();
        assert_eq!(d.bits, vec![1, 1, 0, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn bdpim_mapping() {
        let s = spec(8, 1);
        let b = BarrierSpec::new(2, 1.0, 0.5).unwrap();
        assert_eq!(b.high(), 1.5);
        let f = map_bdpim(&[0, 0, 0, 0, 0, 0], &s, &b).unwrap();
        assert_eq!(f.chips(), &[0.5, 0.0, 1.5, 0.0]);
        assert!(matches!(
            map_bdpim(&[0, 0, 0], &s, &b),
            Err(Error::SymbolCount { .. })
        ));
        assert!(BarrierSpec::new(1, 1.0, 0.5).is_err());
        // K = N_s gives one barrier on the final symbol.
        let b = BarrierSpec::new(4, 1.0, 0.9).unwrap();
        let f = map_bdpim(&[0; 12], &s, &b).unwrap();
        let highs: Vec<usize> = f
            .chips()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == b.high())
            .map(|(i, _)| i)
            .collect();
        assert_eq!(highs, vec![6]);
    }

    #[test]
    fn barrier_amplitudes() {
        assert!((barrier_amplitude(10, 1.0, 0.86).unwrap() - 2.26).abs() < 1e-12);
        assert_eq!(barrier_amplitude(2, 1.0, 0.5).unwrap(), 1.5);
        let near = barrier_amplitude(10, 1.0, 1.0 - 1e-9).unwrap();
        assert!((near - 1.0).abs() < 1e-7);
        assert!(barrier_amplitude(10, 1.0, 1.0).is_err());
        assert!(barrier_amplitude(10, 1.0, 0.0).is_err());
        assert!(barrier_amplitude(10, 1.0, -0.2).is_err());
        // The rounded figure-caption levels break the constraint for A = 1.
        assert!(BarrierSpec::from_levels(10, 1.0, 0.86, 2.3).is_err());
        assert!(BarrierSpec::from_levels(10, 1.0, 0.86, 2.26).is_ok());
    }

    #[test]
    fn baseline_mappings() {
        let s = spec(8, 1);
        let lv = Levels {
            peak: 1.0,
            low: 0.5,
            high: 1.0,
        };
        let f = map_baseline(Scheme::Ppm, &[0, 0, 0], &s, &lv).unwrap();
        assert_eq!(f.chips(), &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let f = map_baseline(Scheme::Ppm, &[0, 1, 1], &s, &lv).unwrap();
        assert_eq!(f.chips()[3], 1.0);
        let f = map_baseline(Scheme::Mdpim, &[1, 0, 0], &s, &lv).unwrap();
        assert_eq!(f.chips(), &[1.0, 0.0]);
        let f = map_baseline(Scheme::Mdpim, &[0, 1, 1], &s, &lv).unwrap();
        assert_eq!(f.chips(), &[0.5, 0.0, 0.0, 0.0, 0.0]);
        let f = map_baseline(Scheme::Mdpim, &[1, 1, 1], &s, &lv).unwrap();
        assert_eq!(f.chips(), &[1.0, 0.0, 0.0, 0.0, 0.0]);
        let f = map_baseline(Scheme::Dhpim, &[1, 0, 1], &s, &lv).unwrap();
        assert_eq!(f.chips(), &[1.0, 1.0, 0.0, 0.0]);
        let f = map_baseline(Scheme::Dhpim, &[0, 1, 0], &s, &lv).unwrap();
        assert_eq!(f.chips(), &[1.0, 0.0, 0.0, 0.0]);
        assert!(map_baseline(Scheme::Dpim, &[0, 0, 0], &s, &lv).is_err());
        let bad = Levels {
            peak: 1.0,
            low: 1.0,
            high: 0.5,
        };
        assert!(map_baseline(Scheme::Mdpim, &[0, 0, 0], &s, &bad).is_err());
    }

    #[test]
    fn mdpim_power_matching() {
        let s = spec(4, 1);
        let lv = Levels::mdpim_power_matched(&s, 1.0, 2.0);
        assert!((lv.high - 2.0 * lv.low).abs() < 1e-15);
        // Average power per chip: mean header amplitude over mean duration.
        let per_chip = 0.5 * (lv.low + lv.high) / mdpim_avg_symbol_duration(&s);
        assert!((per_chip - 1.0 / 3.5).abs() < 1e-14);
        assert_eq!(mdpim_avg_symbol_duration(&s), 2.5);
    }

    #[test]
    fn baseline_round_trips_exhaustive() {
        let lv = Levels {
            peak: 1.0,
            low: 0.6,
            high: 1.2,
        };
        for m in [2usize, 4, 8, 16] {
            for g in 0..3 {
                let s = spec(m, g);
                let bps = s.bits_per_symbol();
                // Every ordered pair of symbols.
                for a in 0..m {
                    for b in 0..m {
                        let bits = symbols_to_bits(&[a, b], bps);
                        let f = map_baseline(Scheme::Ppm, &bits, &s, &lv).unwrap();
                        assert_eq!(demap_ppm(f.chips(), &s, Some(2)).unwrap().bits, bits);
                        let f = map_baseline(Scheme::Mdpim, &bits, &s, &lv).unwrap();
                        let d = demap_mdpim(f.chips(), &s, &lv, Some(2)).unwrap();
                        assert_eq!(d.bits, bits, "M={m} g={g} a={a} b={b}");
                        assert!(d.is_clean());
                        let f = map_dpim(&bits, &s, 1.0).unwrap();
                        assert_eq!(demap_dpim(f.chips(), &s, Some(2)).unwrap().bits, bits);
                    }
                }
            }
        }
    }

    #[test]
    fn bdpim_demap_round_trip_and_confinement() {
        let sp = spec(4, 1);
        let b = BarrierSpec::new(5, 1.0, 0.8).unwrap();
        let bits: Vec<u8> = (0..40).map(|i| ((i * 7 + i / 3) % 2) as u8).collect();
        let frame = map_bdpim(&bits, &sp, &b).unwrap();
        let d = demap_bdpim(frame.chips(), &sp, &b, Some(20)).unwrap();
        assert_eq!(d.bits, bits);
        assert!(d.is_clean());

        // Drop the first low pulse of the second group and add one at the end
        // of the same group: only that group's symbols can change.
        let mut chips = frame.chips().to_vec();
        let pulses: Vec<usize> = (0..chips.len()).filter(|&i| chips[i] != 0.0).collect();
        chips[pulses[5]] = 0.0;
        chips[pulses[9] - 1] = b.low();
        let d = demap_bdpim(&chips, &sp, &b, Some(20)).unwrap();
        for (i, (x, y)) in bits.iter().zip(&d.bits).enumerate() {
            if i / 2 < 4 || i / 2 >= 10 {
                assert_eq!(x, y, "bit {i} outside the disturbed group");
            }
        }
    }

    #[test]
    fn per_pulse_demap_keeps_alignment() {
        let sp = spec(4, 1);
        let bits: Vec<u8> = (0..24).map(|i| ((i * 5 + i / 4) % 2) as u8).collect();
        let frame = map_dpim(&bits, &sp, 1.0).unwrap();
        assert_eq!(
            demap_dpim_per_pulse(frame.chips(), &sp, Some(12))
                .unwrap()
                .bits,
            bits
        );
        // Erase the third pulse and add one just before the seventh.
        let mut chips = frame.chips().to_vec();
        let pulses: Vec<usize> = (0..chips.len()).filter(|&i| chips[i] != 0.0).collect();
        chips[pulses[2]] = 0.0;
        chips[pulses[6] - 1] = 1.0;
        let d = demap_dpim_per_pulse(&chips, &sp, Some(12)).unwrap();
        assert_eq!(d.bits[..2], bits[..2]);
        assert_eq!(d.bits[12..], bits[12..]);
    }

    #[test]
    fn bdpim_demap_pads_short_groups() {
        let sp = spec(4, 1);
        let b = BarrierSpec::new(3, 1.0, 0.5).unwrap();
        // One low pulse then a barrier: the group is padded to K symbols.
        let chips = [0.5, 0.0, b.high(), 0.0, 0.0];
        let d = demap_bdpim(&chips, &sp, &b, Some(3)).unwrap();
        assert_eq!(d.invalid_intervals, 1);
        assert_eq!(d.bits, vec![0, 0, 0, 0, 0, 1]);
    }
}
