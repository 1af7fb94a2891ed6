//! Oxide (dielectric) breakdown.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{arrhenius, positive_diag, require_finite, require_positive, OperatingPoint};
use crate::error::{Diagnostic, Error, Result};

/// Which breakdown model an [`ObParams`] describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObVariant {
    /// Anode hole injection, `t_BD = tau0 * exp(-gamma * E_ox)`.
    EModel,
    /// Thermochemical, `t_BD = tau0 * exp(gamma / E_ox)`.
    InvEModel,
    /// Thin oxide, `A * exp(B / E_ox) * exp(Ea / kT)`.
    #[serde(rename = "thin")]
    ThinArrhenius,
    /// Ultra-thin oxide, `T_BD0 * exp(a / T + b / T^2)`.
    UltraThin,
}

impl ObVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            ObVariant::EModel => "e_model",
            ObVariant::InvEModel => "inv_e_model",
            ObVariant::ThinArrhenius => "thin",
            ObVariant::UltraThin => "ultra_thin",
        }
    }

    /// Whether the model depends on the oxide field (and so on thickness
    /// and gate voltage).
    pub fn uses_field(self) -> bool {
        !matches!(self, ObVariant::UltraThin)
    }
}

impl fmt::Display for ObVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ObVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "e" | "e_model" => Ok(ObVariant::EModel),
            "1/e" | "inv_e" | "inv_e_model" => Ok(ObVariant::InvEModel),
            "thin" | "thin_arrhenius" => Ok(ObVariant::ThinArrhenius),
            "ultra_thin" | "ultrathin" => Ok(ObVariant::UltraThin),
            other => Err(format!(
                "unknown oxide model `{other}` (expected e, inv_e, thin or ultra_thin)"
            )),
        }
    }
}

/// Oxide breakdown constants. Only the fields of the selected `variant` are
/// consulted.
///
/// The ultra-thin coefficients `t_bd0`, `a_coeff_k` and `b_coeff_k2` depend on
/// gate voltage; callers supply them already evaluated at the operating
/// voltage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObParams {
    pub variant: ObVariant,
    #[serde(default = "one")]
    pub tau0: f64,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default = "one")]
    pub a_scale: f64,
    #[serde(rename = "b_field_Vcm", default)]
    pub b_field_v_cm: f64,
    #[serde(rename = "ea_eV", default)]
    pub ea_ev: f64,
    #[serde(default = "one")]
    pub t_bd0: f64,
    #[serde(rename = "a_coeff_K", default)]
    pub a_coeff_k: f64,
    #[serde(rename = "b_coeff_K2", default)]
    pub b_coeff_k2: f64,
    /// Weibull shape of the intrinsic breakdown-time scatter. `None` makes the
    /// time to failure equal to the model lifetime.
    #[serde(default = "default_shape")]
    pub weibull_shape: Option<f64>,
    /// Physical oxide thickness; with the gate voltage it sets the oxide field.
    #[serde(rename = "d_ox_cm", default)]
    pub d_ox_cm: Option<f64>,
}

fn one() -> f64 {
    1.0
}

fn default_shape() -> Option<f64> {
    Some(1.0)
}

impl ObParams {
    pub fn new(variant: ObVariant) -> Self {
        ObParams {
            variant,
            tau0: 1.0,
            gamma: 0.0,
            a_scale: 1.0,
            b_field_v_cm: 0.0,
            ea_ev: 0.0,
            t_bd0: 1.0,
            a_coeff_k: 0.0,
            b_coeff_k2: 0.0,
            weibull_shape: default_shape(),
            d_ox_cm: None,
        }
    }

    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        match self.variant {
            ObVariant::EModel | ObVariant::InvEModel => {
                positive_diag(&mut out, "ob tau0", self.tau0);
            }
            ObVariant::ThinArrhenius => positive_diag(&mut out, "ob a_scale", self.a_scale),
            ObVariant::UltraThin => positive_diag(&mut out, "ob t_bd0", self.t_bd0),
        }
        if let Some(shape) = self.weibull_shape {
            positive_diag(&mut out, "ob weibull_shape", shape);
        }
        if let Some(d) = self.d_ox_cm {
            positive_diag(&mut out, "ob d_ox_cm", d);
        }
        out
    }
}

/// Oxide field `V / d_ox` in V/cm.
pub fn oxide_field(voltage_v: f64, d_ox_cm: f64) -> Result<f64> {
    let d = require_positive("oxide thickness", d_ox_cm)?;
    Ok(require_finite("gate voltage", voltage_v)? / d)
}

/// Time to breakdown under the E or 1/E field-acceleration model.
pub fn time_to_breakdown(e_ox: f64, p: &ObParams) -> Result<f64> {
    match p.variant {
        ObVariant::EModel => Ok(p.tau0 * (-p.gamma * require_finite("oxide field", e_ox)?).exp()),
        ObVariant::InvEModel => {
            let e = require_positive("oxide field", e_ox)?;
            Ok(p.tau0 * (p.gamma / e).exp())
        }
        other => Err(Error::Variant {
            operation: "time_to_breakdown",
            variant: other.as_str(),
        }),
    }
}

/// Thin-oxide MTTF `A * exp(B / E_ox) * exp(Ea / kT)`.
pub fn mttf_ob_thin(e_ox: f64, temperature_k: f64, p: &ObParams) -> Result<f64> {
    if p.variant != ObVariant::ThinArrhenius {
        return Err(Error::Variant {
            operation: "mttf_ob_thin",
            variant: p.variant.as_str(),
        });
    }
    let e = require_positive("oxide field", e_ox)?;
    let t = require_positive("temperature", temperature_k)?;
    Ok(p.a_scale * (p.b_field_v_cm / e).exp() * arrhenius(p.ea_ev, t))
}

/// Ultra-thin oxide MTTF `T_BD0 * exp(a / T + b / T^2)`.
pub fn mttf_ob_ultrathin(temperature_k: f64, p: &ObParams) -> Result<f64> {
    if p.variant != ObVariant::UltraThin {
        return Err(Error::Variant {
            operation: "mttf_ob_ultrathin",
            variant: p.variant.as_str(),
        });
    }
    let t = require_positive("temperature", temperature_k)?;
    Ok(p.t_bd0 * (p.a_coeff_k / t + p.b_coeff_k2 / (t * t)).exp())
}

/// Lifetime of the selected oxide model at `op`. Field-dependent variants
/// need `d_ox_cm`; the field is `op.gate_voltage_v / d_ox_cm`.
pub fn oxide_lifetime(op: &OperatingPoint, p: &ObParams) -> Result<f64> {
    let field = || match p.d_ox_cm {
        Some(d) => oxide_field(op.gate_voltage_v, d),
        None => Err(Error::domain(
            "oxide thickness",
            "set for field-dependent oxide models",
            f64::NAN,
        )),
    };
    match p.variant {
        ObVariant::EModel | ObVariant::InvEModel => time_to_breakdown(field()?, p),
        ObVariant::ThinArrhenius => mttf_ob_thin(field()?, op.temperature_k, p),
        ObVariant::UltraThin => mttf_ob_ultrathin(op.temperature_k, p),
    }
}
