//! Two-parameter Weibull lifetimes: sampling and maximum-likelihood fitting.

use rand::distr::Open01;
use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{Error, Result};

/// Smallest sample accepted by [`weibull_mle_fit`].
pub const MIN_FIT_SAMPLES: usize = 10;

const MAX_ITER: usize = 200;
const REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeibullParams {
    #[serde(rename = "beta")]
    pub shape: f64,
    #[serde(rename = "eta")]
    pub scale: f64,
}

impl WeibullParams {
    pub fn new(shape: f64, scale: f64) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(Error::domain("Weibull shape", "> 0", shape));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::domain("Weibull scale", "> 0", scale));
        }
        Ok(WeibullParams { shape, scale })
    }

    /// The Weibull with shape `shape` whose mean is `mean`:
    /// `eta = mean / Gamma(1 + 1/shape)`.
    pub fn with_mean(shape: f64, mean: f64) -> Result<Self> {
        if !(shape > 0.0 && shape.is_finite()) {
            return Err(Error::domain("Weibull shape", "> 0", shape));
        }
        WeibullParams::new(shape, mean / gamma(1.0 + 1.0 / shape))
    }

    pub fn mean(&self) -> f64 {
        self.scale * gamma(1.0 + 1.0 / self.shape)
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    /// Inverse CDF `eta * (-ln(1 - u))^(1/beta)`.
    pub fn quantile(&self, u: f64) -> f64 {
        self.scale * (-(-u).ln_1p()).powf(1.0 / self.shape)
    }

    pub fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else {
            -(-(t / self.scale).powf(self.shape)).exp_m1()
        }
    }

    pub fn log_likelihood(&self, samples: &[f64]) -> f64 {
        let (b, eta) = (self.shape, self.scale);
        let n = samples.len() as f64;
        let sum_ln: f64 = samples.iter().map(|t| t.ln()).sum();
        let sum_pow: f64 = samples.iter().map(|t| (t / eta).powf(b)).sum();
        n * b.ln() - n * b * eta.ln() + (b - 1.0) * sum_ln - sum_pow
    }
}

/// One inverse-CDF draw.
pub fn weibull_sample<R: Rng + ?Sized>(p: &WeibullParams, rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    p.quantile(u)
}

/// Maximum-likelihood Weibull fit to complete (uncensored) failure times.
///
/// The shape solves the profile-likelihood equation
///
/// ```text
/// g(b) = 1/b + mean(ln t) - sum(t^b ln t) / sum(t^b) = 0
/// ```
///
/// which is strictly decreasing in `b`. Newton steps are kept inside a sign
/// bracket and fall back to bisection when they leave it. The scale then
/// follows in closed form as `(mean(t^b))^(1/b)`.
pub fn weibull_mle_fit(samples: &[f64]) -> Result<WeibullParams> {
    if samples.len() < MIN_FIT_SAMPLES {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_SAMPLES,
            got: samples.len(),
        });
    }
    if let Some((index, &value)) = samples
        .iter()
        .enumerate()
        .find(|(_, t)| !(t.is_finite() && **t > 0.0))
    {
        return Err(Error::InvalidSample { index, value });
    }

    let n = samples.len() as f64;
    // logs shifted so the largest is 0; keeps t^b from overflowing
    let ln_max = samples
        .iter()
        .map(|t| t.ln())
        .fold(f64::NEG_INFINITY, f64::max);
    let x: Vec<f64> = samples.iter().map(|t| t.ln() - ln_max).collect();
    let mean_x = x.iter().sum::<f64>() / n;
    let var_x = x.iter().map(|v| (v - mean_x).powi(2)).sum::<f64>() / n;
    if var_x == 0.0 {
        return Err(Error::DegenerateData(
            "all failure times are equal; the Weibull shape is unbounded".into(),
        ));
    }

    let profile = |b: f64| -> (f64, f64, f64) {
        let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
        for &xi in &x {
            let w = (b * xi).exp();
            s0 += w;
            s1 += w * xi;
            s2 += w * xi * xi;
        }
        let m1 = s1 / s0;
        let g = 1.0 / b + mean_x - m1;
        let dg = -1.0 / (b * b) - (s2 / s0 - m1 * m1);
        (g, dg, s0)
    };

    // Gumbel method-of-moments start on ln t
    let mut b = std::f64::consts::PI / (6.0 * var_x).sqrt();
    let (mut lo, mut hi) = (b, b);
    while profile(lo).0 <= 0.0 {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(Error::NonConvergence(0));
        }
    }
    while profile(hi).0 >= 0.0 {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(Error::NonConvergence(0));
        }
    }

    for _ in 0..MAX_ITER {
        let (g, dg, _) = profile(b);
        if g > 0.0 {
            lo = b;
        } else {
            hi = b;
        }
        let mut next = b - g / dg;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        let converged = ((next - b) / b).abs() < REL_TOL;
        b = next;
        if converged {
            let (_, _, s0) = profile(b);
            let scale = (ln_max + (s0 / n).ln() / b).exp();
            return WeibullParams::new(b, scale);
        }
    }
    Err(Error::NonConvergence(MAX_ITER))
}
