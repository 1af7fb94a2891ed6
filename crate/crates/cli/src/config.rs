//! Scenario configuration files.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use wearsim_core::constants::{celsius_to_kelvin, TEN_YEARS_HOURS};
use wearsim_core::{
    validate_scenario, Diagnostic, Mechanism, MechanismParams, OperatingPoint,
    ParameterDistribution, TrojanScenario, TrojanShift,
};

use crate::error::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub label: String,
    pub mechanism: Mechanism,
    pub model_params: serde_json::Value,
    pub operating_point: OperatingPointFile,
    #[serde(default)]
    pub distributions: Vec<ParameterDistribution>,
    #[serde(default)]
    pub shifts: Vec<TrojanShift>,
    #[serde(default = "ten_years")]
    pub mission_lifetime_hours: f64,
    pub n_samples: usize,
    pub seed: u64,
}

fn ten_years() -> f64 {
    TEN_YEARS_HOURS
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatingPointFile {
    #[serde(rename = "temperature_C")]
    pub temperature_c: Option<f64>,
    #[serde(rename = "temperature_K")]
    pub temperature_k: Option<f64>,
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

/// A scenario that parsed and passed validation, with any warnings.
#[derive(Debug)]
pub struct LoadedScenario {
    pub scenario: TrojanScenario,
    pub warnings: Vec<Diagnostic>,
}

pub fn load(path: &Path) -> Result<LoadedScenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Data(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<LoadedScenario, CliError> {
    let file: ScenarioFile = serde_json::from_str(text)
        .map_err(|e| CliError::Data(format!("invalid scenario file: {e}")))?;
    let mut diags = Vec::new();

    let params = match file.mechanism {
        Mechanism::Hci => typed(&file.model_params).map(MechanismParams::Hci),
        Mechanism::Ob => typed(&file.model_params).map(MechanismParams::Ob),
        Mechanism::Em => typed(&file.model_params).map(MechanismParams::Em),
        Mechanism::Nbti => typed(&file.model_params).map(MechanismParams::Nbti),
    }
    .map_err(|e| CliError::Data(format!("invalid model_params for {}: {e}", file.mechanism)))?;

    let op = &file.operating_point;
    let temperature_k = match (op.temperature_k, op.temperature_c) {
        (Some(k), None) => k,
        (None, Some(c)) => celsius_to_kelvin(c),
        (Some(_), Some(_)) => {
            diags.push(Diagnostic::error(
                "operating_point: give exactly one of temperature_K and temperature_C",
            ));
            f64::NAN
        }
        (None, None) => {
            diags.push(Diagnostic::error(
                "operating_point: temperature_K or temperature_C is required",
            ));
            f64::NAN
        }
    };
    let operating_point = OperatingPoint {
        temperature_k,
        gate_voltage_v: op.gate_voltage_v,
        drain_current_a: op.drain_current_a,
        substrate_current_a: op.substrate_current_a,
        current_density_a_cm2: op.current_density_a_cm2,
        stress_time: op.stress_time,
    };

    let scenario = TrojanScenario {
        label: file.label,
        params,
        operating_point,
        distributions: file.distributions,
        shifts: file.shifts,
        mission_lifetime: file.mission_lifetime_hours,
        n_samples: file.n_samples,
        seed: file.seed,
    };

    let temperature_ok = diags.is_empty();
    for d in validate_scenario(&scenario) {
        // already reported as a missing/duplicate temperature
        if !temperature_ok && d.message.starts_with("temperature") {
            continue;
        }
        diags.push(d);
    }
    let (errors, warnings): (Vec<_>, Vec<_>) = diags.into_iter().partition(Diagnostic::is_error);
    if !errors.is_empty() {
        let listing = errors
            .iter()
            .map(|d| format!("  {d}"))
            .collect::<Vec<_>>()
            .join("\n");
        return Err(CliError::Data(format!("invalid scenario:\n{listing}")));
    }
    Ok(LoadedScenario { scenario, warnings })
}

fn typed<T: DeserializeOwned>(v: &serde_json::Value) -> Result<T, serde_json::Error> {
    T::deserialize(v)
}
