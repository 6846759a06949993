//! AWGN and Gamma-Gamma turbulence.

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::special::{ln_bessel_k, ln_gamma};
use crate::{Error, Result};

/// Channel coefficient `h` and noise standard deviation `σ_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelState {
    pub h: f64,
    pub sigma_n: f64,
}

impl ChannelState {
    pub fn new(h: f64, sigma_n: f64) -> Result<Self> {
        if !(h > 0.0) || !(sigma_n >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "need h > 0 and sigma_n >= 0, got h={h}, sigma_n={sigma_n}"
            )));
        }
        Ok(Self { h, sigma_n })
    }

    /// State for electrical SNR `γ = A²/σ_n²` given in dB.
    pub fn from_snr_db(amplitude: f64, snr_db: f64, h: f64) -> Result<Self> {
        Self::new(h, sigma_from_snr_db(amplitude, snr_db))
    }

    /// Electrical SNR `A²/σ_n²` for reference amplitude `A`.
    pub fn snr(&self, amplitude: f64) -> f64 {
        amplitude * amplitude / (self.sigma_n * self.sigma_n)
    }
}

pub fn snr_from_db(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}

pub fn sigma_from_snr_db(amplitude: f64, snr_db: f64) -> f64 {
    amplitude / snr_from_db(snr_db).sqrt()
}

/// `y[t] = h·x[t] + n[t]` with i.i.d. `N(0, σ_n²)` noise.
pub fn apply_awgn<R: Rng + ?Sized>(chips: &[f64], state: &ChannelState, rng: &mut R) -> Vec<f64> {
    chips
        .iter()
        .map(|&x| {
            let n: f64 = rng.sample(StandardNormal);
            state.h * x + state.sigma_n * n
        })
        .collect()
}

/// Large- and small-scale turbulence parameters `λ`, `μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TurbulenceSpec {
    pub lambda: f64,
    pub mu: f64,
}

impl TurbulenceSpec {
    pub fn new(lambda: f64, mu: f64) -> Result<Self> {
        if !(lambda > 0.0 && mu > 0.0) || !lambda.is_finite() || !mu.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "turbulence parameters must be positive, got λ={lambda}, μ={mu}"
            )));
        }
        Ok(Self { lambda, mu })
    }

    /// Weak-turbulence parameters used throughout the fading experiments.
    pub fn weak() -> Self {
        Self {
            lambda: 11.6,
            mu: 10.1,
        }
    }

    /// `Var[h] = (1 + 1/λ)(1 + 1/μ) − 1` for the unit-mean product.
    pub fn variance(&self) -> f64 {
        (1.0 + 1.0 / self.lambda) * (1.0 + 1.0 / self.mu) - 1.0
    }
}

/// Unit-mean Gamma-Gamma density
/// `2(λμ)^((λ+μ)/2) / (Γ(λ)Γ(μ)) · h^((λ+μ)/2 − 1) · K_{λ−μ}(2√(λμh))`.
pub fn gamma_gamma_pdf(h: f64, spec: &TurbulenceSpec) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "Gamma-Gamma density needs h > 0, got {h}"
        )));
    }
    Ok(ln_gamma_gamma_pdf(h, spec).exp())
}

pub(crate) fn ln_gamma_gamma_pdf(h: f64, spec: &TurbulenceSpec) -> f64 {
    let (l, m) = (spec.lambda, spec.mu);
    let s = 0.5 * (l + m);
    let arg = 2.0 * (l * m * h).sqrt();
    std::f64::consts::LN_2 + s * (l * m).ln() - ln_gamma(l) - ln_gamma(m)
        + (s - 1.0) * h.ln()
        + ln_bessel_k(l - m, arg)
}

/// Draws `h = X·Y`, `X ~ Gamma(λ, 1/λ)`, `Y ~ Gamma(μ, 1/μ)`.
#[derive(Clone, Debug)]
pub struct GammaGammaSampler {
    large: Gamma<f64>,
    small: Gamma<f64>,
}

impl GammaGammaSampler {
    pub fn new(spec: &TurbulenceSpec) -> Result<Self> {
        let large = Gamma::new(spec.lambda, 1.0 / spec.lambda)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        let small = Gamma::new(spec.mu, 1.0 / spec.mu)
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
        Ok(Self { large, small })
    }
}

impl Distribution<f64> for GammaGammaSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.large.sample(rng) * self.small.sample(rng)
    }
}

pub fn gamma_gamma_sample<R: Rng + ?Sized>(spec: &TurbulenceSpec, rng: &mut R) -> Result<f64> {
    Ok(GammaGammaSampler::new(spec)?.sample(rng))
}
