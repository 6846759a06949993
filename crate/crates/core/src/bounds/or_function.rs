//! `OR(μ1,k1,n1; μ2,k2,n2) = Pr{U_{k1:n1} > V_{k2:n2}}` for independent
//! Gaussian samples `U ~ N(μ1, σ²)`, `V ~ N(μ2, σ²)`.

use std::f64::consts::FRAC_1_SQRT_2;

use super::order_stat::{extreme_order_stat_mean, Gaussian, OrderStatistic};
use super::{clamp_probability, BoundMode, BoundResult};
use crate::quadrature::{integrate, integrate_with_breaks, Tolerance};
use crate::special::{erf_tractable, ERF_FAST_CUTOFF};
use crate::{Error, Result};

/// Absolute error the exact evaluation must reach.
pub const OR_ABS_TOL: f64 = 1e-10;

/// Half-width of the integration range in units of `σ`.
const RANGE_SIGMAS: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrQuery {
    pub mu1: f64,
    pub k1: usize,
    pub n1: usize,
    pub mu2: f64,
    pub k2: usize,
    pub n2: usize,
    pub sigma: f64,
}

impl OrQuery {
    pub fn new(
        mu1: f64,
        k1: usize,
        n1: usize,
        mu2: f64,
        k2: usize,
        n2: usize,
        sigma: f64,
    ) -> Result<Self> {
        let q = Self {
            mu1,
            k1,
            n1,
            mu2,
            k2,
            n2,
            sigma,
        };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k1 == 0 || self.k1 > self.n1 || self.k2 == 0 || self.k2 > self.n2 {
            return Err(Error::InvalidParameter(format!(
                "OR ranks out of range: k1={}, n1={}, k2={}, n2={}",
                self.k1, self.n1, self.k2, self.n2
            )));
        }
        if !(self.sigma > 0.0) || !self.mu1.is_finite() || !self.mu2.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "OR needs sigma > 0 and finite means, got sigma={}, mu1={}, mu2={}",
                self.sigma, self.mu1, self.mu2
            )));
        }
        Ok(())
    }
}

/// Quadrature of `∫ Pr{U_{k1:n1} > v} f_{V_{k2:n2}}(v) dv` over
/// `[min μ − 10σ, max μ + 10σ]`.
pub fn or_exact(q: &OrQuery) -> Result<BoundResult> {
    q.validate()?;
    let u = OrderStatistic::new(q.k1, q.n1)?;
    let v = OrderStatistic::new(q.k2, q.n2)?;
    let gu = Gaussian::new(q.mu1, q.sigma);
    let gv = Gaussian::new(q.mu2, q.sigma);
    let lo = q.mu1.min(q.mu2) - RANGE_SIGMAS * q.sigma;
    let hi = q.mu1.max(q.mu2) + RANGE_SIGMAS * q.sigma;

    let mut breaks = vec![lo, hi];
    for mu in [q.mu1, q.mu2] {
        for j in -10..=10 {
            let b = mu + j as f64 * q.sigma;
            if b > lo && b < hi {
                breaks.push(b);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let tol = Tolerance {
        abs: 1e-3 * OR_ABS_TOL,
        rel: 1e-9,
        ..Tolerance::default()
    };
    let mut f = |x: f64| u.sf(&gu, x) * v.pdf(&gv, x);
    let r = integrate_with_breaks(&mut f, &breaks, tol);
    if !r.converged && r.error > OR_ABS_TOL {
        return Err(Error::Quadrature {
            estimate: r.value,
            error: r.error,
        });
    }
    Ok(clamp_probability(r.value, BoundMode::Exact, r.error))
}

/// Mean of `V_{k2:n2}`: the closed-form approximation for the minimum, a
/// quadrature of `v·f(v)` otherwise.
pub fn order_stat_mean(mu: f64, k: usize, n: usize, sigma: f64) -> Result<f64> {
    if k == n {
        return Ok(extreme_order_stat_mean(n, mu, sigma, 1.0));
    }
    let os = OrderStatistic::new(k, n)?;
    let g = Gaussian::new(mu, sigma);
    let r = integrate(
        |x| (x - mu) * os.pdf(&g, x),
        mu - 12.0 * sigma,
        mu + 12.0 * sigma,
        Tolerance::absolute(1e-12 * sigma).with_panels(48),
    );
    Ok(mu + r.value)
}

/// Survival of a Gaussian sample at standardised distance `z`, using the
/// fast erf approximation where the tractable bounds call for it.
pub(crate) fn tractable_sf(z: f64) -> f64 {
    let v = z * FRAC_1_SQRT_2;
    if v >= ERF_FAST_CUTOFF {
        0.5 * ((-v * v).exp() / 6.0 + 0.5 * (-4.0 * v * v / 3.0).exp())
    } else if v <= -ERF_FAST_CUTOFF {
        1.0 - tractable_sf(-z)
    } else {
        0.5 * (1.0 - erf_tractable(v))
    }
}

/// `Pr{U_{k1:n1} > t}` with the base survival taken from [`tractable_sf`].
pub fn or_approx_at(q: &OrQuery, threshold: f64) -> Result<BoundResult> {
    q.validate()?;
    let s = tractable_sf((threshold - q.mu1) / q.sigma);
    let u = OrderStatistic::new(q.k1, q.n1)?;
    Ok(clamp_probability(
        u.sf_from(1.0 - s, s),
        BoundMode::Tractable,
        0.0,
    ))
}

/// `1 − F_{U_{k1:n1}}(α·E(V_{k2:n2}))`.
pub fn or_approx(q: &OrQuery, alpha: f64) -> Result<BoundResult> {
    q.validate()?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let mean = order_stat_mean(q.mu2, q.k2, q.n2, q.sigma)?;
    or_approx_at(q, alpha * mean)
}

/// Monte Carlo estimate of the OR event, for cross-checking.
pub fn or_monte_carlo<R: rand::Rng + ?Sized>(
    q: &OrQuery,
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    use rand_distr::{Beta, Distribution};
    q.validate()?;
    // The k-th largest of n uniforms is Beta(n + 1 − k, k); its complement
    // Beta(k, n + 1 − k) maps through the upper-tail quantile.
    let beta_u = Beta::new(q.k1 as f64, (q.n1 + 1 - q.k1) as f64)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let beta_v = Beta::new(q.k2 as f64, (q.n2 + 1 - q.k2) as f64)
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let draw = |b: &Beta<f64>, mu: f64, rng: &mut R| {
        let upper = b.sample(rng);
        mu + q.sigma * crate::special::q_inv(upper)
    };
    let mut hits = 0usize;
    for _ in 0..trials {
        let u = draw(&beta_u, q.mu1, rng);
        let v = draw(&beta_v, q.mu2, rng);
        if u > v {
            hits += 1;
        }
    }
    Ok(hits as f64 / trials as f64)
}
