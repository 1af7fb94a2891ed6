//! Monte Carlo device populations.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::distribution::{sample_parameter, ParameterDistribution, TrojanShift};
use super::rng::StreamKey;
use super::weibull::{weibull_sample, WeibullParams};
use crate::error::{Diagnostic, Error, Result};
use crate::models::{lifetime, MechanismParams, OperatingPoint};

/// Everything needed to simulate one population. An empty `shifts` slice
/// gives the nominal (uninfected) process.
#[derive(Debug, Clone, Copy)]
pub struct PopulationConfig<'a> {
    pub params: &'a MechanismParams,
    pub operating_point: &'a OperatingPoint,
    pub distributions: &'a [ParameterDistribution],
    pub shifts: &'a [TrojanShift],
    pub n_samples: usize,
    pub mission_lifetime: f64,
    pub seed: u64,
}

/// Parameter draws and resulting time to failure of one simulated device.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviceSample {
    pub parameters: Vec<f64>,
    pub ttf: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    #[serde(rename = "0.01")]
    pub p01: f64,
    #[serde(rename = "0.1")]
    pub p10: f64,
    #[serde(rename = "0.5")]
    pub p50: f64,
    #[serde(rename = "0.9")]
    pub p90: f64,
}

impl Quantiles {
    /// Linear-interpolation sample quantiles of already sorted data.
    pub fn from_sorted(sorted: &[f64]) -> Self {
        Quantiles {
            p01: sample_quantile(sorted, 0.01),
            p10: sample_quantile(sorted, 0.1),
            p50: sample_quantile(sorted, 0.5),
            p90: sample_quantile(sorted, 0.9),
        }
    }
}

fn sample_quantile(sorted: &[f64], p: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        n => {
            let h = (n - 1) as f64 * p;
            let i = h.floor() as usize;
            let frac = h - i as f64;
            if i + 1 >= n {
                sorted[n - 1]
            } else {
                sorted[i] + frac * (sorted[i + 1] - sorted[i])
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PopulationResult {
    /// Times to failure in device order.
    pub ttf_samples: Vec<f64>,
    pub quantiles: Quantiles,
    pub infection_fraction: f64,
    /// Three-sigma binomial half-width of `infection_fraction`.
    pub infection_ci_halfwidth: f64,
    pub seed: u64,
    pub sample_count: usize,
}

impl PopulationResult {
    pub fn median(&self) -> f64 {
        self.quantiles.p50
    }
}

/// `3 * sqrt(p (1 - p) / n)`.
pub fn binomial_halfwidth(p: f64, n: usize) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

struct Plan<'a> {
    cfg: PopulationConfig<'a>,
    shifts: Vec<Option<&'a TrojanShift>>,
    weibull_shape: Option<f64>,
    key: StreamKey,
}

impl<'a> Plan<'a> {
    fn new(cfg: PopulationConfig<'a>) -> Result<Self> {
        if cfg.n_samples == 0 {
            return Err(Error::InvalidScenario(vec![Diagnostic::error(
                "n_samples must be >= 1",
            )]));
        }
        if !(cfg.mission_lifetime > 0.0 && cfg.mission_lifetime.is_finite()) {
            return Err(Error::InvalidScenario(vec![Diagnostic::error(format!(
                "mission lifetime must be > 0 (got {})",
                cfg.mission_lifetime
            ))]));
        }
        let mut diags = Vec::new();
        for dist in cfg.distributions {
            if !dist.target.is_compatible(cfg.params) {
                diags.push(Diagnostic::error(format!(
                    "distribution `{}` targets `{}`, which the {} model does not use",
                    dist.name,
                    dist.target,
                    cfg.params.mechanism()
                )));
            }
        }
        for s in cfg.shifts {
            if !cfg.distributions.iter().any(|d| d.name == s.parameter) {
                diags.push(Diagnostic::error(format!(
                    "shift references undeclared parameter `{}`",
                    s.parameter
                )));
            }
        }
        if !diags.is_empty() {
            return Err(Error::InvalidScenario(diags));
        }
        let shifts = cfg
            .distributions
            .iter()
            .map(|d| cfg.shifts.iter().find(|s| s.parameter == d.name))
            .collect();
        Ok(Plan {
            cfg,
            shifts,
            weibull_shape: cfg.params.weibull_shape(),
            key: StreamKey::new(cfg.seed),
        })
    }

    /// Draw parameters into `values` and return the device's time to failure.
    fn device(&self, index: usize, values: &mut Vec<f64>) -> Result<f64> {
        values.clear();
        let mut params = self.cfg.params.clone();
        let mut op = *self.cfg.operating_point;
        for (slot, (dist, shift)) in self.cfg.distributions.iter().zip(&self.shifts).enumerate() {
            let mut rng = self.key.substream(index as u64, slot as u32);
            let x = sample_parameter(dist, *shift, &mut rng)?;
            dist.target.apply(x, &mut params, &mut op)?;
            values.push(x);
        }
        let mttf = lifetime(&params, &op)?;
        match self.weibull_shape {
            None => Ok(mttf),
            Some(shape) => {
                let w = WeibullParams::with_mean(shape, mttf)?;
                let slot = self.cfg.distributions.len() as u32;
                Ok(weibull_sample(
                    &w,
                    &mut self.key.substream(index as u64, slot),
                ))
            }
        }
    }
}

/// Simulate every device, keeping the parameter draws. Results are in device
/// order and independent of the rayon pool size.
pub fn sample_devices(cfg: &PopulationConfig<'_>) -> Result<Vec<DeviceSample>> {
    let plan = Plan::new(*cfg)?;
    let out: Vec<Result<DeviceSample>> = (0..cfg.n_samples)
        .into_par_iter()
        .map_init(Vec::new, |values, i| {
            let ttf = plan.device(i, values)?;
            Ok(DeviceSample {
                parameters: values.clone(),
                ttf,
            })
        })
        .collect();
    out.into_iter().collect()
}

/// Simulate a population and summarize its lifetimes against the mission.
pub fn monte_carlo_population(cfg: &PopulationConfig<'_>) -> Result<PopulationResult> {
    let plan = Plan::new(*cfg)?;
    let ttf: Vec<Result<f64>> = (0..cfg.n_samples)
        .into_par_iter()
        .map_init(Vec::new, |values, i| plan.device(i, values))
        .collect();
    let ttf_samples = ttf.into_iter().collect::<Result<Vec<f64>>>()?;
    Ok(summarize(ttf_samples, cfg.mission_lifetime, cfg.seed))
}

fn summarize(ttf_samples: Vec<f64>, mission_lifetime: f64, seed: u64) -> PopulationResult {
    let n = ttf_samples.len();
    let failed = ttf_samples
        .iter()
        .filter(|&&t| t < mission_lifetime)
        .count();
    let mut sorted = ttf_samples.clone();
    sorted.sort_unstable_by(f64::total_cmp);
    let p = failed as f64 / n as f64;
    PopulationResult {
        quantiles: Quantiles::from_sorted(&sorted),
        infection_fraction: p,
        infection_ci_halfwidth: binomial_halfwidth(p, n),
        seed,
        sample_count: n,
        ttf_samples,
    }
}
