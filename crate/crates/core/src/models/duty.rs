//! Cycle-averaged HCI degradation for time-varying bias.

use super::{hci_failure_rate, HciParams, OperatingPoint};
use crate::error::{Error, Result};

/// One period of a bias waveform, sampled at increasing times starting at 0.
/// The operating point of the last sample holds until the end of the period.
#[derive(Debug, Clone, PartialEq)]
pub struct Waveform {
    samples: Vec<(f64, OperatingPoint)>,
    period: f64,
}

impl Waveform {
    pub fn new(samples: Vec<(f64, OperatingPoint)>, period: f64) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::Waveform(format!(
                "period must be > 0 (got {period})"
            )));
        }
        if samples.len() < 2 {
            return Err(Error::Waveform(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        if samples[0].0 != 0.0 {
            return Err(Error::Waveform(format!(
                "first sample must be at t = 0 (got {})",
                samples[0].0
            )));
        }
        for (i, w) in samples.windows(2).enumerate() {
            if w[1].0.partial_cmp(&w[0].0) != Some(std::cmp::Ordering::Greater) {
                return Err(Error::Waveform(format!(
                    "sample times must be strictly increasing ({} at index {} follows {})",
                    w[1].0,
                    i + 1,
                    w[0].0
                )));
            }
        }
        let last = samples[samples.len() - 1].0;
        if last > period {
            return Err(Error::Waveform(format!(
                "last sample at {last} lies beyond the period {period}"
            )));
        }
        Ok(Waveform { samples, period })
    }

    /// `n_intervals + 1` evenly spaced samples of `profile` over `[0, period]`.
    pub fn sampled<F>(period: f64, n_intervals: usize, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> OperatingPoint,
    {
        let n = n_intervals.max(1);
        let samples = (0..=n)
            .map(|k| {
                let t = if k == n {
                    period
                } else {
                    period * k as f64 / n as f64
                };
                (t, profile(t))
            })
            .collect();
        Waveform::new(samples, period)
    }

    pub fn samples(&self) -> &[(f64, OperatingPoint)] {
        &self.samples
    }

    pub fn period(&self) -> f64 {
        self.period
    }
}

/// Cycle-averaged HCI failure rate: trapezoidal integral of the static rate
/// over the waveform samples, divided by the period.
pub fn duty_cycle_rate(w: &Waveform, p: &HciParams) -> Result<f64> {
    let rates = w
        .samples
        .iter()
        .map(|(_, op)| hci_failure_rate(op, p))
        .collect::<Result<Vec<_>>>()?;

    // constant integrand: return the static rate without rounding drift
    if rates.iter().all(|&r| r == rates[0]) {
        return Ok(rates[0]);
    }

    let mut integral = 0.0;
    for (k, pair) in w.samples.windows(2).enumerate() {
        let dt = pair[1].0 - pair[0].0;
        integral += 0.5 * dt * (rates[k] + rates[k + 1]);
    }
    let (t_last, _) = w.samples[w.samples.len() - 1];
    integral += (w.period - t_last) * rates[rates.len() - 1];
    Ok(integral / w.period)
}
