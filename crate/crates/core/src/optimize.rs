//! Barrier amplitude search and SNR-threshold search.

use rayon::prelude::*;

use crate::bounds::{BoundInput, BoundKind, BoundMode};
use crate::signal::{barrier_amplitude, BarrierSpec, ModulationSpec};
use crate::{Error, Result};

/// Points in the confirming grid scan of [`optimize_barrier`].
pub const GRID_POINTS: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizedBarrier {
    pub low: f64,
    pub high: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search on `[a, b]` down to width `tol`.
fn golden_section<F>(
    f: &F,
    mut a: f64,
    mut b: f64,
    tol: f64,
    evals: &mut usize,
) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    *evals += 2;
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
        *evals += 1;
    }
    Ok(if fc <= fd { (c, fc) } else { (d, fd) })
}

/// Minimises `objective(A_L)` over `A_L ∈ (ε, A − ε)`, `ε = 10⁻⁴·A`, with
/// `A_H = K·A − (K − 1)·A_L`. Golden-section search is cross-checked by a
/// 200-point grid; if the grid finds a better basin the search is repeated
/// there. A constant objective yields the midpoint of the interval.
pub fn optimize_barrier<F>(
    period: usize,
    amplitude: f64,
    tol: f64,
    objective: F,
) -> Result<OptimizedBarrier>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(tol > 0.0) || !(amplitude > 0.0) || period < 2 {
        return Err(Error::InvalidParameter(format!(
            "need tol > 0, A > 0, K >= 2; got tol={tol}, A={amplitude}, K={period}"
        )));
    }
    let eps = 1e-4 * amplitude;
    let (lo, hi) = (eps, amplitude - eps);
    let spacing = (hi - lo) / (GRID_POINTS - 1) as f64;
    let grid: Vec<f64> = (0..GRID_POINTS).map(|i| lo + spacing * i as f64).collect();
    let values = grid
        .par_iter()
        .map(|&x| objective(x))
        .collect::<Result<Vec<f64>>>()?;
    let mut evaluations = GRID_POINTS;

    let finish = |low: f64, value: f64, evaluations: usize| -> Result<OptimizedBarrier> {
        Ok(OptimizedBarrier {
            low,
            high: barrier_amplitude(period, amplitude, low)?,
            value,
            evaluations,
        })
    };

    let (imin, &vmin) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("grid is non-empty");
    if values.iter().all(|&v| v == vmin) {
        return finish(0.5 * (lo + hi), vmin, evaluations);
    }

    let (mut best_x, mut best_v) = golden_section(&objective, lo, hi, tol, &mut evaluations)?;
    let x_grid = grid[imin];
    if (best_x - x_grid).abs() > spacing.max(tol) || best_v > vmin {
        let a = (x_grid - spacing).max(lo);
        let b = (x_grid + spacing).min(hi);
        let (x, v) = golden_section(&objective, a, b, tol, &mut evaluations)?;
        if v < best_v {
            best_x = x;
            best_v = v;
        }
    }
    if vmin < best_v {
        best_x = x_grid;
        best_v = vmin;
    }
    finish(best_x, best_v, evaluations)
}

/// Objective `A_L ↦ bound` for a BDPIM bound at fixed SNR.
pub fn bound_objective(
    kind: BoundKind,
    mode: BoundMode,
    spec: ModulationSpec,
    symbols: usize,
    period: usize,
    amplitude: f64,
    h: f64,
    snr_db: f64,
) -> impl Fn(f64) -> Result<f64> + Sync {
    move |low: f64| {
        let barrier = BarrierSpec::new(period, amplitude, low)?;
        let input = BoundInput::bdpim(&spec, symbols, &barrier, h, snr_db)?;
        Ok(kind.evaluate(&input, mode)?.value)
    }
}

/// One BER measurement taken during a threshold search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BerProbe {
    pub snr_db: f64,
    pub ber: f64,
    /// Half-width of the 95% confidence interval.
    pub ci: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult {
    pub snr_db: f64,
    pub probes: Vec<BerProbe>,
}

/// Smallest window width at which bisection stops, in dB.
pub const MIN_WINDOW_DB: f64 = 0.1;

/// Bisects `[lo, hi]` dB for the SNR where `estimate` crosses `target`.
///
/// `estimate(snr_db)` returns `(ber, ci)`. The search stops when the CI at
/// the midpoint covers the target or the window is narrower than
/// [`MIN_WINDOW_DB`], then interpolates `ln BER` across the final bracket.
pub fn snr_threshold_search<F>(
    target: f64,
    lo: f64,
    hi: f64,
    mut estimate: F,
) -> Result<ThresholdResult>
where
    F: FnMut(f64) -> Result<(f64, f64)>,
{
    if !(target > 0.0 && target < 1.0) || !(hi > lo) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < target < 1 and lo < hi, got target={target}, window=[{lo}, {hi}]"
        )));
    }
    let mut probes = Vec::new();
    let mut probe = |snr: f64, probes: &mut Vec<BerProbe>| -> Result<BerProbe> {
        let (ber, ci) = estimate(snr)?;
        let p = BerProbe {
            snr_db: snr,
            ber,
            ci,
        };
        probes.push(p);
        Ok(p)
    };
    let mut a = probe(lo, &mut probes)?;
    let mut b = probe(hi, &mut probes)?;
    if !(a.ber > target && b.ber < target) {
        return Err(Error::NotBracketed { target, lo, hi });
    }
    while b.snr_db - a.snr_db >= MIN_WINDOW_DB {
        let mid = 0.5 * (a.snr_db + b.snr_db);
        let m = probe(mid, &mut probes)?;
        let covered = (m.ber - target).abs() <= m.ci;
        if m.ber > target {
            a = m;
        } else {
            b = m;
        }
        if covered {
            break;
        }
    }
    Ok(ThresholdResult {
        snr_db: log_interpolate(&a, &b, target),
        probes,
    })
}

/// SNR where `ln BER` interpolated linearly between `a` and `b` hits `target`.
fn log_interpolate(a: &BerProbe, b: &BerProbe, target: f64) -> f64 {
    if a.ber > 0.0 && b.ber > 0.0 && a.ber != b.ber {
        let (la, lb, lt) = (a.ber.ln(), b.ber.ln(), target.ln());
        a.snr_db + (la - lt) / (la - lb) * (b.snr_db - a.snr_db)
    } else {
        0.5 * (a.snr_db + b.snr_db)
    }
}

/// Entry with the smallest value, first one on ties.
pub fn argmin<T: Copy>(items: &[(T, f64)]) -> Option<(T, f64)> {
    items.iter().copied().min_by(|a, b| a.1.total_cmp(&b.1))
}
