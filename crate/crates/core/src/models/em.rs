//! Electromigration (Black's equation).

use serde::{Deserialize, Serialize};

use super::{arrhenius, positive_diag, require_positive, OperatingPoint};
use crate::error::{Diagnostic, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmParams {
    /// Fabrication- and geometry-dependent prefactor.
    pub a_scale: f64,
    /// Current-density exponent, typically between 1 and 2.
    pub n_exponent: f64,
    /// Activation energy; about 1.4 eV for pure Al, 0.5-0.8 eV with Cu doping.
    #[serde(rename = "ea_eV")]
    pub ea_ev: f64,
}

impl EmParams {
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        positive_diag(&mut out, "em a_scale", self.a_scale);
        positive_diag(&mut out, "em ea_eV", self.ea_ev);
        if self.n_exponent.is_finite() && !(self.n_exponent > 1.0 && self.n_exponent < 2.0) {
            out.push(Diagnostic::warning(format!(
                "em n_exponent = {} is outside the typical (1, 2)",
                self.n_exponent
            )));
        }
        if !self.n_exponent.is_finite() {
            out.push(Diagnostic::error(format!(
                "em n_exponent must be finite (got {})",
                self.n_exponent
            )));
        }
        out
    }
}

/// MTTF `A * j^-n * exp(Ea / kT)`.
pub fn mttf_em(op: &OperatingPoint, p: &EmParams) -> Result<f64> {
    let j = require_positive("current density", op.current_density_a_cm2)?;
    let t = require_positive("temperature", op.temperature_k)?;
    Ok(p.a_scale * j.powf(-p.n_exponent) * arrhenius(p.ea_ev, t))
}
