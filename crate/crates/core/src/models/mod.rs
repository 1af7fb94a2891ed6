//! Closed-form lifetime and degradation models for the four time-based CMOS
//! wearout mechanisms: hot carrier injection, oxide breakdown,
//! electromigration and negative bias temperature instability.
//!
//! Every function here is pure. Inputs outside an equation's domain are
//! rejected with [`Error::Domain`] instead of producing infinities or NaN.
//!
//! Units: Kelvin, eV (with `k` in eV/K), V/cm for fields, A/cm² for current
//! density. Lifetimes come out in whatever time unit the prefactor of the
//! model (`b_scale`, `a_scale`, `tau0`, `t_bd0`) is expressed in.

mod duty;
mod em;
mod hci;
mod nbti;
mod oxide;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Diagnostic, Error, Result};

pub use duty::{duty_cycle_rate, Waveform};
pub use em::{mttf_em, EmParams};
pub use hci::{hci_failure_rate, hci_mttf, hci_vth_shift, HciParams};
pub use nbti::{nbti_lifetime, nbti_vth_shift, NbtiParams};
pub use oxide::{
    mttf_ob_thin, mttf_ob_ultrathin, oxide_field, oxide_lifetime, time_to_breakdown, ObParams,
    ObVariant,
};

/// The stress condition a model is evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatingPoint {
    #[serde(rename = "temperature_K")]
    pub temperature_k: f64,
    #[serde(rename = "gate_voltage_V", default)]
    pub gate_voltage_v: f64,
    #[serde(rename = "drain_current_A", default)]
    pub drain_current_a: f64,
    #[serde(rename = "substrate_current_A", default)]
    pub substrate_current_a: f64,
    #[serde(rename = "current_density_A_cm2", default)]
    pub current_density_a_cm2: f64,
    #[serde(default)]
    pub stress_time: f64,
}

impl OperatingPoint {
    /// An operating point at `temperature_k` with every electrical quantity zero.
    pub fn at_temperature(temperature_k: f64) -> Self {
        OperatingPoint {
            temperature_k,
            gate_voltage_v: 0.0,
            drain_current_a: 0.0,
            substrate_current_a: 0.0,
            current_density_a_cm2: 0.0,
            stress_time: 0.0,
        }
    }

    pub fn with_gate_voltage(mut self, volts: f64) -> Self {
        self.gate_voltage_v = volts;
        self
    }

    pub fn with_currents(mut self, drain_a: f64, substrate_a: f64) -> Self {
        self.drain_current_a = drain_a;
        self.substrate_current_a = substrate_a;
        self
    }

    pub fn with_current_density(mut self, a_cm2: f64) -> Self {
        self.current_density_a_cm2 = a_cm2;
        self
    }

    pub fn with_stress_time(mut self, t: f64) -> Self {
        self.stress_time = t;
        self
    }
}

impl Default for OperatingPoint {
    fn default() -> Self {
        OperatingPoint::at_temperature(300.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mechanism {
    Hci,
    Ob,
    Em,
    Nbti,
}

impl Mechanism {
    pub const ALL: [Mechanism; 4] = [
        Mechanism::Hci,
        Mechanism::Ob,
        Mechanism::Em,
        Mechanism::Nbti,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mechanism::Hci => "hci",
            Mechanism::Ob => "ob",
            Mechanism::Em => "em",
            Mechanism::Nbti => "nbti",
        }
    }
}

impl fmt::Display for Mechanism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mechanism {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hci" => Ok(Mechanism::Hci),
            "ob" | "tddb" => Ok(Mechanism::Ob),
            "em" => Ok(Mechanism::Em),
            "nbti" => Ok(Mechanism::Nbti),
            other => Err(format!(
                "unknown mechanism `{other}` (expected hci, ob, em or nbti)"
            )),
        }
    }
}

/// Model constants for one mechanism.
#[derive(Debug, Clone, PartialEq)]
pub enum MechanismParams {
    Hci(HciParams),
    Ob(ObParams),
    Em(EmParams),
    Nbti(NbtiParams),
}

impl MechanismParams {
    pub fn mechanism(&self) -> Mechanism {
        match self {
            MechanismParams::Hci(_) => Mechanism::Hci,
            MechanismParams::Ob(_) => Mechanism::Ob,
            MechanismParams::Em(_) => Mechanism::Em,
            MechanismParams::Nbti(_) => Mechanism::Nbti,
        }
    }

    /// Invariant violations (errors) and out-of-typical-range constants (warnings).
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        match self {
            MechanismParams::Hci(p) => p.diagnostics(),
            MechanismParams::Ob(p) => p.diagnostics(),
            MechanismParams::Em(p) => p.diagnostics(),
            MechanismParams::Nbti(p) => p.diagnostics(),
        }
    }

    /// The Weibull shape for intrinsic time-to-failure scatter, if the
    /// mechanism has one. Only oxide breakdown does.
    pub fn weibull_shape(&self) -> Option<f64> {
        match self {
            MechanismParams::Ob(p) => p.weibull_shape,
            _ => None,
        }
    }
}

/// Characteristic lifetime of a device under `op`: MTTF for HCI, EM and the
/// thin/ultra-thin oxide models, t_BD for the E and 1/E oxide models, and the
/// time for the NBTI threshold shift to reach its failure criterion.
pub fn lifetime(params: &MechanismParams, op: &OperatingPoint) -> Result<f64> {
    match params {
        MechanismParams::Hci(p) => hci_mttf(op, p),
        MechanismParams::Ob(p) => oxide_lifetime(op, p),
        MechanismParams::Em(p) => mttf_em(op, p),
        MechanismParams::Nbti(p) => nbti_lifetime(op, p),
    }
}

/// Lifetime at the use condition divided by lifetime at the stress condition.
pub fn acceleration_factor(
    params: &MechanismParams,
    op_stress: &OperatingPoint,
    op_use: &OperatingPoint,
) -> Result<f64> {
    acceleration_factor_between((params, op_use), (params, op_stress))
}

/// Acceleration factor between two full conditions, where the model constants
/// may differ as well as the operating point (for example a process change
/// that lowers the activation energy).
pub fn acceleration_factor_between(
    reference: (&MechanismParams, &OperatingPoint),
    accelerated: (&MechanismParams, &OperatingPoint),
) -> Result<f64> {
    if reference.0.mechanism() != accelerated.0.mechanism() {
        return Err(Error::IncompatibleBinding {
            input: accelerated.0.mechanism().to_string(),
            mechanism: reference.0.mechanism().to_string(),
        });
    }
    Ok(lifetime(reference.0, reference.1)? / lifetime(accelerated.0, accelerated.1)?)
}

pub(crate) fn require_positive(quantity: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(quantity, "> 0", value))
    }
}

pub(crate) fn require_non_negative(quantity: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(quantity, ">= 0", value))
    }
}

pub(crate) fn require_finite(quantity: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(quantity, "finite", value))
    }
}

/// Arrhenius factor exp(Ea / kT).
pub(crate) fn arrhenius(ea_ev: f64, temperature_k: f64) -> f64 {
    (ea_ev / crate::constants::thermal_energy_ev(temperature_k)).exp()
}

pub(crate) fn positive_diag(out: &mut Vec<Diagnostic>, name: &str, value: f64) {
    if !(value > 0.0 && value.is_finite()) {
        out.push(Diagnostic::error(format!(
            "{name} must be > 0 (got {value})"
        )));
    }
}

pub(crate) fn finite_diag(out: &mut Vec<Diagnostic>, name: &str, value: f64) {
    if !value.is_finite() {
        out.push(Diagnostic::error(format!(
            "{name} must be finite (got {value})"
        )));
    }
}
