use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{lifetime, MechanismParams, ObVariant, OperatingPoint};

/// Rejected draws tolerated below a truncation floor before giving up.
pub const MAX_TRUNCATION_ATTEMPTS: usize = 100;

/// A process parameter varying normally across devices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterDistribution {
    pub name: String,
    pub mean: f64,
    pub sigma: f64,
    pub target: ModelInput,
    /// Physical lower bound; draws at or below it are rejected and redrawn.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub floor: Option<f64>,
}

impl ParameterDistribution {
    pub fn new(name: impl Into<String>, mean: f64, sigma: f64, target: ModelInput) -> Self {
        ParameterDistribution {
            name: name.into(),
            mean,
            sigma,
            target,
            floor: None,
        }
    }

    pub fn with_floor(mut self, floor: f64) -> Self {
        self.floor = Some(floor);
        self
    }

    /// Mean and standard deviation after applying `shift`.
    pub fn moments(&self, shift: Option<&TrojanShift>) -> (f64, f64) {
        match shift {
            Some(s) => (self.mean + s.delta_mean, self.sigma * s.sigma_scale),
            None => (self.mean, self.sigma),
        }
    }
}

/// A malicious change to one process step: moves the mean of a parameter and
/// optionally widens or narrows its spread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrojanShift {
    pub parameter: String,
    pub delta_mean: f64,
    #[serde(default = "unit_scale")]
    pub sigma_scale: f64,
}

fn unit_scale() -> f64 {
    1.0
}

impl TrojanShift {
    pub fn new(parameter: impl Into<String>, delta_mean: f64) -> Self {
        TrojanShift {
            parameter: parameter.into(),
            delta_mean,
            sigma_scale: 1.0,
        }
    }

    pub fn with_sigma_scale(mut self, scale: f64) -> Self {
        self.sigma_scale = scale;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.delta_mean == 0.0 && self.sigma_scale == 1.0
    }
}

/// Draw one value of `dist`, shifted by `shift` when given.
///
/// The same generator state yields `mean + sigma * z` for the same standard
/// normal `z` with or without a zero shift, so paired nominal and infected
/// populations stay bit-identical when the shift is a no-op.
pub fn sample_parameter<R: Rng + ?Sized>(
    dist: &ParameterDistribution,
    shift: Option<&TrojanShift>,
    rng: &mut R,
) -> Result<f64> {
    let (mean, sigma) = dist.moments(shift);
    let Some(floor) = dist.floor else {
        let z: f64 = rng.sample(StandardNormal);
        return Ok(mean + sigma * z);
    };
    for _ in 0..MAX_TRUNCATION_ATTEMPTS {
        let z: f64 = rng.sample(StandardNormal);
        let x = mean + sigma * z;
        if x > floor {
            return Ok(x);
        }
    }
    Err(Error::TruncationExhausted {
        name: dist.name.clone(),
        floor,
        attempts: MAX_TRUNCATION_ATTEMPTS,
    })
}

/// The model input a varying process parameter drives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModelInput {
    #[serde(rename = "i_sub")]
    SubstrateCurrent,
    #[serde(rename = "hci_b")]
    HciScale,
    #[serde(rename = "hci_n")]
    HciExponent,
    #[serde(rename = "ea_hci")]
    HciActivationEnergy,
    #[serde(rename = "d_ox")]
    OxideThickness,
    #[serde(rename = "v_g")]
    GateVoltage,
    #[serde(rename = "ea_ob")]
    OxideActivationEnergy,
    #[serde(rename = "ob_b_field")]
    OxideFieldAcceleration,
    #[serde(rename = "ob_gamma")]
    OxideGamma,
    /// tau0, A or T_BD0 depending on the oxide model.
    #[serde(rename = "ob_scale")]
    OxideScale,
    #[serde(rename = "j_e")]
    CurrentDensity,
    #[serde(rename = "ea_em")]
    EmActivationEnergy,
    #[serde(rename = "em_a")]
    EmScale,
    #[serde(rename = "em_n")]
    EmExponent,
    #[serde(rename = "e_nb")]
    NbtiActivationEnergy,
    #[serde(rename = "nbti_a0")]
    NbtiAmplitude,
}

impl ModelInput {
    pub const ALL: [ModelInput; 16] = [
        ModelInput::SubstrateCurrent,
        ModelInput::HciScale,
        ModelInput::HciExponent,
        ModelInput::HciActivationEnergy,
        ModelInput::OxideThickness,
        ModelInput::GateVoltage,
        ModelInput::OxideActivationEnergy,
        ModelInput::OxideFieldAcceleration,
        ModelInput::OxideGamma,
        ModelInput::OxideScale,
        ModelInput::CurrentDensity,
        ModelInput::EmActivationEnergy,
        ModelInput::EmScale,
        ModelInput::EmExponent,
        ModelInput::NbtiActivationEnergy,
        ModelInput::NbtiAmplitude,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelInput::SubstrateCurrent => "i_sub",
            ModelInput::HciScale => "hci_b",
            ModelInput::HciExponent => "hci_n",
            ModelInput::HciActivationEnergy => "ea_hci",
            ModelInput::OxideThickness => "d_ox",
            ModelInput::GateVoltage => "v_g",
            ModelInput::OxideActivationEnergy => "ea_ob",
            ModelInput::OxideFieldAcceleration => "ob_b_field",
            ModelInput::OxideGamma => "ob_gamma",
            ModelInput::OxideScale => "ob_scale",
            ModelInput::CurrentDensity => "j_e",
            ModelInput::EmActivationEnergy => "ea_em",
            ModelInput::EmScale => "em_a",
            ModelInput::EmExponent => "em_n",
            ModelInput::NbtiActivationEnergy => "e_nb",
            ModelInput::NbtiAmplitude => "nbti_a0",
        }
    }

    /// Whether this input appears in the lifetime model described by `params`.
    pub fn is_compatible(self, params: &MechanismParams) -> bool {
        use ModelInput::*;
        match params {
            MechanismParams::Hci(_) => matches!(
                self,
                SubstrateCurrent | HciScale | HciExponent | HciActivationEnergy
            ),
            MechanismParams::Ob(p) => match self {
                OxideThickness | GateVoltage => p.variant.uses_field(),
                OxideActivationEnergy | OxideFieldAcceleration => {
                    p.variant == ObVariant::ThinArrhenius
                }
                OxideGamma => matches!(p.variant, ObVariant::EModel | ObVariant::InvEModel),
                OxideScale => true,
                _ => false,
            },
            MechanismParams::Em(_) => {
                matches!(
                    self,
                    CurrentDensity | EmActivationEnergy | EmScale | EmExponent
                )
            }
            MechanismParams::Nbti(_) => {
                matches!(self, GateVoltage | NbtiActivationEnergy | NbtiAmplitude)
            }
        }
    }

    /// Overwrite this input in `params` / `op` with `value`.
    pub fn apply(
        self,
        value: f64,
        params: &mut MechanismParams,
        op: &mut OperatingPoint,
    ) -> Result<()> {
        use ModelInput::*;
        if !self.is_compatible(params) {
            return Err(self.incompatible(params));
        }
        match (self, params) {
            (SubstrateCurrent, _) => op.substrate_current_a = value,
            (CurrentDensity, _) => op.current_density_a_cm2 = value,
            (GateVoltage, _) => op.gate_voltage_v = value,
            (HciScale, MechanismParams::Hci(p)) => p.b_scale = value,
            (HciExponent, MechanismParams::Hci(p)) => p.n_exponent = value,
            (HciActivationEnergy, MechanismParams::Hci(p)) => p.ea_ev = value,
            (OxideThickness, MechanismParams::Ob(p)) => p.d_ox_cm = Some(value),
            (OxideActivationEnergy, MechanismParams::Ob(p)) => p.ea_ev = value,
            (OxideFieldAcceleration, MechanismParams::Ob(p)) => p.b_field_v_cm = value,
            (OxideGamma, MechanismParams::Ob(p)) => p.gamma = value,
            (OxideScale, MechanismParams::Ob(p)) => match p.variant {
                ObVariant::EModel | ObVariant::InvEModel => p.tau0 = value,
                ObVariant::ThinArrhenius => p.a_scale = value,
                ObVariant::UltraThin => p.t_bd0 = value,
            },
            (EmActivationEnergy, MechanismParams::Em(p)) => p.ea_ev = value,
            (EmScale, MechanismParams::Em(p)) => p.a_scale = value,
            (EmExponent, MechanismParams::Em(p)) => p.n_exponent = value,
            (NbtiActivationEnergy, MechanismParams::Nbti(p)) => p.e_nb_ev = value,
            (NbtiAmplitude, MechanismParams::Nbti(p)) => p.a0 = value,
            (_, params) => return Err(self.incompatible(params)),
        }
        Ok(())
    }

    fn incompatible(self, params: &MechanismParams) -> Error {
        let mechanism = match params {
            MechanismParams::Ob(p) => format!("ob ({})", p.variant),
            other => other.mechanism().to_string(),
        };
        Error::IncompatibleBinding {
            input: self.as_str().to_string(),
            mechanism,
        }
    }
}

impl fmt::Display for ModelInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelInput {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        ModelInput::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown model input `{s}`"))
    }
}

/// Lifetime with one model input overridden by `value`; everything else comes
/// from `params` and `op`.
pub fn map_param_to_ttf(
    params: &MechanismParams,
    op: &OperatingPoint,
    value: f64,
    input: ModelInput,
) -> Result<f64> {
    let mut params = params.clone();
    let mut op = *op;
    input.apply(value, &mut params, &mut op)?;
    lifetime(&params, &op)
}
