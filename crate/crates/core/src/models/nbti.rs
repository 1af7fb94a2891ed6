//! Negative bias temperature instability.

use serde::{Deserialize, Serialize};

use super::{positive_diag, require_non_negative, require_positive, OperatingPoint};
use crate::constants::thermal_energy_ev;
use crate::error::{Diagnostic, Error, Result};

/// Constants for `dVth = A(Vg, t) * exp(-E_NB / kT)` with the separable
/// amplitude `A(Vg, t) = a0 * |Vg|^gamma_v * t^beta_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NbtiParams {
    pub a0: f64,
    #[serde(default = "default_gamma_v")]
    pub gamma_v: f64,
    #[serde(default = "default_beta")]
    pub beta_t: f64,
    #[serde(rename = "e_nb_eV")]
    pub e_nb_ev: f64,
    /// Threshold shift treated as failure.
    #[serde(rename = "vth_crit_V", default = "default_vth_crit")]
    pub vth_crit_v: f64,
}

fn default_gamma_v() -> f64 {
    1.0
}

fn default_beta() -> f64 {
    0.25
}

fn default_vth_crit() -> f64 {
    0.05
}

impl Default for NbtiParams {
    fn default() -> Self {
        NbtiParams {
            a0: 1.0,
            gamma_v: default_gamma_v(),
            beta_t: default_beta(),
            e_nb_ev: 0.1,
            vth_crit_v: default_vth_crit(),
        }
    }
}

impl NbtiParams {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        positive_diag(&mut out, "nbti a0", self.a0);
        positive_diag(&mut out, "nbti beta_t", self.beta_t);
        positive_diag(&mut out, "nbti e_nb_eV", self.e_nb_ev);
        positive_diag(&mut out, "nbti vth_crit_V", self.vth_crit_v);
        out
    }

    fn amplitude(&self, gate_voltage_v: f64) -> f64 {
        self.a0 * gate_voltage_v.abs().powf(self.gamma_v)
    }
}

/// Threshold-voltage shift after `op.stress_time` at `op.gate_voltage_v`.
/// Only the magnitude of the (negative) gate bias enters.
pub fn nbti_vth_shift(op: &OperatingPoint, p: &NbtiParams) -> Result<f64> {
    let t = require_non_negative("stress time", op.stress_time)?;
    let temp = require_positive("temperature", op.temperature_k)?;
    Ok(p.amplitude(op.gate_voltage_v)
        * t.powf(p.beta_t)
        * (-p.e_nb_ev / thermal_energy_ev(temp)).exp())
}

/// Stress time at which the shift reaches `vth_crit_v`, the closed-form
/// inverse of [`nbti_vth_shift`]. `op.stress_time` is ignored.
pub fn nbti_lifetime(op: &OperatingPoint, p: &NbtiParams) -> Result<f64> {
    let temp = require_positive("temperature", op.temperature_k)?;
    let crit = require_positive("NBTI failure criterion", p.vth_crit_v)?;
    let beta = require_positive("NBTI time exponent", p.beta_t)?;
    let amp = p.amplitude(op.gate_voltage_v);
    if !(amp > 0.0 && amp.is_finite()) {
        return Err(Error::domain(
            "NBTI amplitude a0*|Vg|^gamma_v",
            "> 0 (nonzero gate bias when gamma_v > 0)",
            amp,
        ));
    }
    let ratio = crit * (p.e_nb_ev / thermal_energy_ev(temp)).exp() / amp;
    Ok(ratio.powf(1.0 / beta))
}
