//! Gaussian tail functions, the fast erf approximation and the modified
//! Bessel function of the second kind.

use std::f64::consts::{FRAC_1_SQRT_2, LN_2, SQRT_2};

use statrs::function::erf;

use crate::quadrature::{integrate_with_breaks, Tolerance};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Gaussian tail probability `Q(x) = Pr{N(0,1) > x}`.
pub fn q_func(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// Standard normal CDF.
pub fn norm_cdf(x: f64) -> f64 {
    q_func(-x)
}

pub fn norm_pdf(x: f64) -> f64 {
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

/// Inverse of the standard normal CDF.
pub fn norm_inv_cdf(p: f64) -> f64 {
    if p <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if p >= 1.0 {
        return f64::INFINITY;
    }
    if p > 0.5 {
        // Work from the upper tail so that p close to 1 keeps its precision.
        SQRT_2 * erf::erfc_inv(2.0 * (1.0 - p))
    } else {
        -SQRT_2 * erf::erfc_inv(2.0 * p)
    }
}

/// Inverse of the Gaussian tail function: returns `x` with `Q(x) = q`.
pub fn q_inv(q: f64) -> f64 {
    if q <= 0.0 {
        return f64::INFINITY;
    }
    if q >= 1.0 {
        return f64::NEG_INFINITY;
    }
    SQRT_2 * erf::erfc_inv(2.0 * q)
}

pub fn erf(x: f64) -> f64 {
    libm::erf(x)
}

/// Two-exponential approximation `1 - e^{-v²}/6 - e^{-4v²/3}/2`, extended
/// as an odd function. Tight in the tail, off by 1/3 at the origin.
pub fn erf_fast(v: f64) -> f64 {
    let a = v.abs();
    let val = 1.0 - (-a * a).exp() / 6.0 - 0.5 * (-4.0 * a * a / 3.0).exp();
    val.copysign(v)
}

/// Arguments at or beyond this magnitude use [`erf_fast`] in the tractable bounds.
pub const ERF_FAST_CUTOFF: f64 = 1.0;

/// erf as used by the closed-form bounds: the fast approximation for
/// `|v| >= 1`, the exact function below that.
pub fn erf_tractable(v: f64) -> f64 {
    if v.abs() >= ERF_FAST_CUTOFF {
        erf_fast(v)
    } else {
        erf(v)
    }
}

fn ln_cosh(z: f64) -> f64 {
    let a = z.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// Exponentially scaled modified Bessel function of the second kind,
/// `e^x K_ν(x)` for `x > 0`, from `K_ν(x) = ∫₀^∞ exp(-x cosh t) cosh(νt) dt`.
pub fn bessel_k_scaled(nu: f64, x: f64) -> f64 {
    assert!(x > 0.0, "bessel_k_scaled needs x > 0");
    let nu = nu.abs();
    let log_integrand = |t: f64| {
        let s = (0.5 * t).sinh();
        -2.0 * x * s * s + ln_cosh(nu * t)
    };
    // Peak of the integrand (it is log-concave in t for fixed x).
    let peak = if nu > 0.0 { (nu / x).asinh() } else { 0.0 };
    let peak_log = log_integrand(peak);
    let mut upper = peak.max(1.0);
    while log_integrand(upper) - peak_log > -60.0 {
        upper *= 2.0;
    }
    let width = (1.0 / (x * peak.cosh() + 1e-300).sqrt()).min(upper);
    let mut breaks = vec![0.0];
    for k in [-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
        let b = peak + k * width;
        if b > 0.0 && b < upper {
            breaks.push(b);
        }
    }
    breaks.push(upper);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut f = |t: f64| (log_integrand(t) - peak_log).exp();
    let r = integrate_with_breaks(&mut f, &breaks, Tolerance::relative(1e-13));
    r.value * peak_log.exp()
}

/// `ln K_ν(x)`, finite for large `x` where `K_ν` itself underflows.
pub fn ln_bessel_k(nu: f64, x: f64) -> f64 {
    bessel_k_scaled(nu, x).ln() - x
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// `ln C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    statrs::function::factorial::ln_binomial(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn q_function_values() {
        assert!((q_func(0.0) - 0.5).abs() < 1e-16);
        assert!((q_func(1.0) - 0.158_655_253_931_457_05).abs() < 1e-15);
        // Deep tail keeps relative precision.
        let q10 = q_func(10.0);
        assert!(((q10 - 7.619_853_024_160_47e-24) / q10).abs() < 1e-10);
    }

    #[test]
    fn inverse_normal_round_trips() {
        for &p in &[1e-12, 1e-4, 0.1, 0.5, 0.5264, 0.9, 1.0 - 1e-9] {
            let x = norm_inv_cdf(p);
            assert!(((norm_cdf(x) - p) / p).abs() < 1e-9, "p={p}");
        }
        assert!((norm_inv_cdf(0.5264) - 0.066_223_358_748_744_74).abs() < 1e-9);
        for &q in &[1e-15, 1e-6, 0.3] {
            assert!(((q_func(q_inv(q)) - q) / q).abs() < 1e-9);
        }
    }

    #[test]
    fn erf_fast_in_tail() {
        assert!((erf_fast(2.0) - 0.994_533_418_521_628_6).abs() < 1e-12);
        assert!((erf_fast(2.0) - erf(2.0)).abs() < 1e-3);
        assert!((erf_fast(40.0) - 1.0).abs() < 1e-15);
        assert!((erf_fast(0.0) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(erf_fast(-2.0), -erf_fast(2.0));
        assert_eq!(erf_tractable(0.5), erf(0.5));
        assert_eq!(erf_tractable(1.5), erf_fast(1.5));
    }

    #[test]
    fn bessel_half_integer_closed_forms() {
        for &x in &[1e-3, 0.1, 1.0, 7.5, 40.0, 900.0] {
            let k05 = (PI / (2.0 * x)).sqrt();
            let k15 = k05 * (1.0 + 1.0 / x);
            assert!(
                ((bessel_k_scaled(0.5, x) - k05) / k05).abs() < 1e-10,
                "x={x}"
            );
            assert!(
                ((bessel_k_scaled(1.5, x) - k15) / k15).abs() < 1e-10,
                "x={x}"
            );
        }
    }

    #[test]
    fn bessel_integer_orders() {
        // Reference values of K_0(1), K_1(1), K_1(0.01).
        assert!(
            (bessel_k_scaled(0.0, 1.0) * (-1.0f64).exp() - 0.421_024_438_240_708_3).abs() < 1e-13
        );
        assert!(
            (bessel_k_scaled(1.0, 1.0) * (-1.0f64).exp() - 0.601_907_230_197_234_6).abs() < 1e-13
        );
        let k1 = bessel_k_scaled(1.0, 0.01) * (-0.01f64).exp();
        assert!(((k1 - 99.973_894_118_296_24) / k1).abs() < 1e-10);
        assert!((ln_bessel_k(0.5, 2000.0) - ((PI / 4000.0).sqrt().ln() - 2000.0)).abs() < 1e-10);
    }
}
