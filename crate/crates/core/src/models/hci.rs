//! Hot carrier injection.

use serde::{Deserialize, Serialize};

use super::{
    arrhenius, finite_diag, positive_diag, require_finite, require_non_negative, require_positive,
    OperatingPoint,
};
use crate::error::{Diagnostic, Error, Result};

/// Constants for the substrate-current HCI models and the threshold-shift
/// power law.
///
/// `b_scale` absorbs the damage prefactor divided by device width, so width
/// does not appear separately.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HciParams {
    pub b_scale: f64,
    #[serde(default = "default_m")]
    pub m_exponent: f64,
    /// Substrate-current exponent of the MTTF model, typically 2 to 4.
    pub n_exponent: f64,
    /// Activation energy, typically -0.2 to -0.1 eV.
    #[serde(rename = "ea_eV")]
    pub ea_ev: f64,
    #[serde(default = "one")]
    pub vth_prefactor: f64,
    #[serde(default = "one")]
    pub q_inversion: f64,
    #[serde(rename = "e_ox_Vcm", default)]
    pub e_ox_v_cm: f64,
    #[serde(rename = "e0_Vcm", default = "one")]
    pub e0_v_cm: f64,
    #[serde(rename = "phi_it_eV", default)]
    pub phi_it_ev: f64,
    #[serde(default = "one")]
    pub lambda_mfp_cm: f64,
    #[serde(rename = "e_m_Vcm", default = "one")]
    pub e_m_v_cm: f64,
    #[serde(default = "default_n_prime")]
    pub n_prime: f64,
}

fn one() -> f64 {
    1.0
}

fn default_m() -> f64 {
    3.0
}

fn default_n_prime() -> f64 {
    0.5
}

impl Default for HciParams {
    fn default() -> Self {
        HciParams {
            b_scale: 1.0,
            m_exponent: default_m(),
            n_exponent: 3.0,
            ea_ev: -0.15,
            vth_prefactor: 1.0,
            q_inversion: 1.0,
            e_ox_v_cm: 0.0,
            e0_v_cm: 1.0,
            phi_it_ev: 0.0,
            lambda_mfp_cm: 1.0,
            e_m_v_cm: 1.0,
            n_prime: default_n_prime(),
        }
    }
}

impl HciParams {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        positive_diag(&mut out, "hci b_scale", self.b_scale);
        positive_diag(&mut out, "hci m_exponent", self.m_exponent);
        positive_diag(&mut out, "hci lambda_mfp_cm", self.lambda_mfp_cm);
        positive_diag(&mut out, "hci e_m_Vcm", self.e_m_v_cm);
        positive_diag(&mut out, "hci e0_Vcm", self.e0_v_cm);
        finite_diag(&mut out, "hci n_exponent", self.n_exponent);
        finite_diag(&mut out, "hci ea_eV", self.ea_ev);
        if self.n_exponent.is_finite() && !(2.0..=4.0).contains(&self.n_exponent) {
            out.push(Diagnostic::warning(format!(
                "hci n_exponent = {} is outside the typical [2, 4]",
                self.n_exponent
            )));
        }
        out
    }
}

/// Static HCI failure rate `B * I_d * (I_sub / I_d)^m`.
pub fn hci_failure_rate(op: &OperatingPoint, p: &HciParams) -> Result<f64> {
    let id = require_positive("drain current", op.drain_current_a)?;
    let isub = require_non_negative("substrate current", op.substrate_current_a)?;
    Ok(p.b_scale * id * (isub / id).powf(p.m_exponent))
}

/// MTTF `B * I_sub^-N * exp(Ea / kT)`.
pub fn hci_mttf(op: &OperatingPoint, p: &HciParams) -> Result<f64> {
    let isub = require_positive("substrate current", op.substrate_current_a)?;
    let t = require_positive("temperature", op.temperature_k)?;
    Ok(p.b_scale * isub.powf(-p.n_exponent) * arrhenius(p.ea_ev, t))
}

/// Threshold-voltage shift after `op.stress_time` of HCI stress:
/// `c * sqrt(Q_i) * exp(E_ox / E_0) * exp(-phi_it / (q lambda E_m)) * t^n'`.
///
/// With `phi_it` in eV, `lambda` in cm and `E_m` in V/cm the charge cancels
/// and the second exponent is `phi_it / (lambda * E_m)`.
pub fn hci_vth_shift(op: &OperatingPoint, p: &HciParams) -> Result<f64> {
    let t = require_non_negative("stress time", op.stress_time)?;
    let qi = require_non_negative("inversion charge", p.q_inversion)?;
    let e0 = require_positive("process field factor E0", p.e0_v_cm)?;
    let lambda = require_positive("hot-electron mean free path", p.lambda_mfp_cm)?;
    let em = require_positive("lateral field", p.e_m_v_cm)?;
    let eox = require_finite("oxide field", p.e_ox_v_cm)?;
    if p.n_prime < 0.0 || p.n_prime.is_nan() {
        return Err(Error::domain("time exponent n'", ">= 0", p.n_prime));
    }
    let field_term = (eox / e0).exp();
    let trap_term = (-p.phi_it_ev / (lambda * em)).exp();
    Ok(p.vth_prefactor * qi.sqrt() * field_term * trap_term * t.powf(p.n_prime))
}
