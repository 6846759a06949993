//! Order statistics of i.i.d. samples. Ranks count from the top: `k = 1` is
//! the largest of `n`, `k = n` the smallest.

use crate::special::{ln_binomial, norm_inv_cdf, norm_pdf, q_func};
use crate::{Error, Result};

/// Above this sample count the binomial sums are accumulated in log space.
const LOG_SPACE_ABOVE: usize = 50;

/// A continuous base distribution. `sf` must be accurate where `cdf` is
/// close to one.
pub trait BaseDistribution {
    fn cdf(&self, v: f64) -> f64;
    fn sf(&self, v: f64) -> f64;
    fn pdf(&self, v: f64) -> f64;
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gaussian {
    pub mean: f64,
    pub sd: f64,
}

impl Gaussian {
    pub fn new(mean: f64, sd: f64) -> Self {
        Self { mean, sd }
    }
}

impl BaseDistribution for Gaussian {
    fn cdf(&self, v: f64) -> f64 {
        q_func((self.mean - v) / self.sd)
    }

    fn sf(&self, v: f64) -> f64 {
        q_func((v - self.mean) / self.sd)
    }

    fn pdf(&self, v: f64) -> f64 {
        norm_pdf((v - self.mean) / self.sd) / self.sd
    }
}

fn check_rank(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "order-statistic rank must satisfy 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    Ok(())
}

/// Largest `n` whose binomial coefficients all fit in an `f64`.
const EXACT_ROW_MAX: usize = 1000;

/// `ln C(n, j)` for `j = 0..=n`, from the multiplicative recurrence while the
/// coefficients are representable.
fn ln_binomial_row(n: usize) -> Vec<f64> {
    if n > EXACT_ROW_MAX {
        return (0..=n).map(|j| ln_binomial(n as u64, j as u64)).collect();
    }
    let mut row = Vec::with_capacity(n + 1);
    let mut c = 1.0f64;
    row.push(0.0);
    for j in 1..=n {
        c = (c * (n + 1 - j) as f64 / j as f64).round();
        row.push(c.ln());
    }
    row
}

/// The `k`-th largest of `n` i.i.d. samples, with its binomial
/// coefficients cached for repeated evaluation.
#[derive(Clone, Debug)]
pub struct OrderStatistic {
    k: usize,
    n: usize,
    ln_binom: Vec<f64>,
}

impl OrderStatistic {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        check_rank(k, n)?;
        Ok(Self {
            k,
            n,
            ln_binom: ln_binomial_row(n),
        })
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn count(&self) -> usize {
        self.n
    }

    /// `Σ_{j=lo}^{hi} C(n,j) F^j S^{n−j}` for base CDF `F` and survival `S`.
    fn binomial_tail(&self, f: f64, s: f64, lo: usize, hi: usize) -> f64 {
        let n = self.n;
        if lo > hi {
            return 0.0;
        }
        if n <= LOG_SPACE_ABOVE {
            return (lo..=hi)
                .map(|j| self.ln_binom[j].exp() * f.powi(j as i32) * s.powi((n - j) as i32))
                .sum();
        }
        let (lf, ls) = (f.ln(), s.ln());
        let term = |j: usize| {
            let mut t = self.ln_binom[j];
            // 0·ln 0 is taken as 0 so that F = 0 or S = 0 behave.
            if j > 0 {
                t += j as f64 * lf;
            }
            if j < n {
                t += (n - j) as f64 * ls;
            }
            t
        };
        let mut max = f64::NEG_INFINITY;
        for j in lo..=hi {
            max = max.max(term(j));
        }
        if max == f64::NEG_INFINITY {
            return 0.0;
        }
        max.exp() * (lo..=hi).map(|j| (term(j) - max).exp()).sum::<f64>()
    }

    /// CDF from the base CDF / survival values at the evaluation point:
    /// `Σ_{j=n+1−k}^{n} C(n,j) F^j (1−F)^{n−j}`.
    pub fn cdf_from(&self, f: f64, s: f64) -> f64 {
        self.binomial_tail(f, s, self.n + 1 - self.k, self.n)
            .min(1.0)
    }

    /// Survival `Pr{X_{k:n} > v}`, summed directly so it keeps relative
    /// precision when the CDF is close to one.
    pub fn sf_from(&self, f: f64, s: f64) -> f64 {
        self.binomial_tail(f, s, 0, self.n - self.k).min(1.0)
    }

    /// Density `n!/((n−k)!(k−1)!) · F^{n−k} (1−F)^{k−1} f`.
    pub fn pdf_from(&self, f: f64, s: f64, density: f64) -> f64 {
        if density == 0.0 {
            return 0.0;
        }
        let (k, n) = (self.k, self.n);
        // n!/((n-k)!(k-1)!) = n · C(n-1, k-1) = k · C(n, k)
        let mut l = (k as f64).ln() + self.ln_binom[k] + density.ln();
        if n > k {
            l += (n - k) as f64 * f.ln();
        }
        if k > 1 {
            l += (k - 1) as f64 * s.ln();
        }
        l.exp()
    }

    pub fn cdf<D: BaseDistribution>(&self, base: &D, v: f64) -> f64 {
        self.cdf_from(base.cdf(v), base.sf(v))
    }

    pub fn sf<D: BaseDistribution>(&self, base: &D, v: f64) -> f64 {
        self.sf_from(base.cdf(v), base.sf(v))
    }

    pub fn pdf<D: BaseDistribution>(&self, base: &D, v: f64) -> f64 {
        self.pdf_from(base.cdf(v), base.sf(v), base.pdf(v))
    }
}

pub fn order_stat_cdf_from(f: f64, s: f64, k: usize, n: usize) -> Result<f64> {
    Ok(OrderStatistic::new(k, n)?.cdf_from(f, s))
}

pub fn order_stat_sf_from(f: f64, s: f64, k: usize, n: usize) -> Result<f64> {
    Ok(OrderStatistic::new(k, n)?.sf_from(f, s))
}

/// CDF of the `k`-th largest of `n` samples drawn from `base`.
pub fn order_stat_cdf<D: BaseDistribution>(base: &D, k: usize, n: usize, v: f64) -> Result<f64> {
    Ok(OrderStatistic::new(k, n)?.cdf(base, v))
}

pub fn order_stat_sf<D: BaseDistribution>(base: &D, k: usize, n: usize, v: f64) -> Result<f64> {
    Ok(OrderStatistic::new(k, n)?.sf(base, v))
}

/// Density of the `k`-th largest of `n` samples drawn from `base`.
pub fn order_stat_pdf<D: BaseDistribution>(base: &D, k: usize, n: usize, v: f64) -> Result<f64> {
    Ok(OrderStatistic::new(k, n)?.pdf(base, v))
}

/// Approximate mean of the smallest of `n` Gaussian samples with mean `a`
/// and standard deviation `sigma_n / h`: `a − (σ_n/h)·Φ⁻¹(0.5264^{1/n})`.
pub fn extreme_order_stat_mean(n: usize, a: f64, sigma_n: f64, h: f64) -> f64 {
    if sigma_n == 0.0 {
        return a;
    }
    let p = (0.5264f64.ln() / n as f64).exp();
    a - sigma_n / h * norm_inv_cdf(p)
}
