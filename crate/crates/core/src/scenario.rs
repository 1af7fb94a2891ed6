//! End-to-end reliability Trojan scenarios: a nominal process population
//! against the same population built with maliciously shifted process steps.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::constants::TEN_YEARS_HOURS;
use crate::error::{Diagnostic, Error, Result};
use crate::models::{MechanismParams, ObVariant, OperatingPoint};
use crate::stochastic::{
    binomial_halfwidth, infection_probability_analytic, map_param_to_ttf, monte_carlo_population,
    ModelInput, ParameterDistribution, PopulationConfig, PopulationResult, TrojanShift,
};

#[derive(Debug, Clone, PartialEq)]
pub struct TrojanScenario {
    pub label: String,
    pub params: MechanismParams,
    pub operating_point: OperatingPoint,
    pub distributions: Vec<ParameterDistribution>,
    pub shifts: Vec<TrojanShift>,
    pub mission_lifetime: f64,
    pub n_samples: usize,
    pub seed: u64,
}

impl TrojanScenario {
    pub fn new(
        label: impl Into<String>,
        params: MechanismParams,
        operating_point: OperatingPoint,
    ) -> Self {
        TrojanScenario {
            label: label.into(),
            params,
            operating_point,
            distributions: Vec::new(),
            shifts: Vec::new(),
            mission_lifetime: TEN_YEARS_HOURS,
            n_samples: 10_000,
            seed: 0,
        }
    }

    fn population<'a>(&'a self, shifts: &'a [TrojanShift]) -> PopulationConfig<'a> {
        PopulationConfig {
            params: &self.params,
            operating_point: &self.operating_point,
            distributions: &self.distributions,
            shifts,
            n_samples: self.n_samples,
            mission_lifetime: self.mission_lifetime,
            seed: self.seed,
        }
    }
}

/// Infection fraction with a single shift applied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensitivityEntry {
    pub parameter: String,
    pub delta_mean: f64,
    pub sigma_scale: f64,
    pub infection_fraction: f64,
}

/// Exact normal-tail infection probabilities for single-parameter scenarios
/// with deterministic lifetimes, next to whether the Monte Carlo estimates
/// fall within three binomial standard errors of them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticCheck {
    pub nominal_probability: f64,
    pub infected_probability: f64,
    pub nominal_within_3sigma: bool,
    pub infected_within_3sigma: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub label: String,
    pub nominal: PopulationResult,
    pub infected: PopulationResult,
    pub infection_delta: f64,
    pub mttf_ratio_median: f64,
    pub sensitivity: Vec<SensitivityEntry>,
    pub analytic_check: Option<AnalyticCheck>,
}

/// Check a scenario without running it. Returns one diagnostic per problem;
/// warnings flag constants outside their typical range.
pub fn validate_scenario(s: &TrojanScenario) -> Vec<Diagnostic> {
    let mut out = s.params.diagnostics();

    let t = s.operating_point.temperature_k;
    if !(t > 0.0 && t.is_finite()) {
        out.push(Diagnostic::error(format!(
            "temperature must be > 0 K (got {t})"
        )));
    }
    if s.n_samples == 0 {
        out.push(Diagnostic::error("n_samples must be >= 1"));
    }
    if !(s.mission_lifetime > 0.0 && s.mission_lifetime.is_finite()) {
        out.push(Diagnostic::error(format!(
            "mission lifetime must be > 0 (got {})",
            s.mission_lifetime
        )));
    }

    let mut names = HashSet::new();
    let mut targets = HashSet::new();
    for d in &s.distributions {
        if !names.insert(d.name.as_str()) {
            out.push(Diagnostic::error(format!(
                "parameter `{}` is declared twice",
                d.name
            )));
        }
        if !targets.insert(d.target) {
            out.push(Diagnostic::error(format!(
                "model input `{}` is driven by more than one distribution",
                d.target
            )));
        }
        if !d.target.is_compatible(&s.params) {
            out.push(Diagnostic::error(format!(
                "parameter `{}` targets `{}`, which the {} model does not use",
                d.name,
                d.target,
                describe(&s.params)
            )));
        }
        if !d.mean.is_finite() {
            out.push(Diagnostic::error(format!(
                "parameter `{}` has a non-finite mean",
                d.name
            )));
        }
        if !(d.sigma >= 0.0 && d.sigma.is_finite()) {
            out.push(Diagnostic::error(format!(
                "parameter `{}` sigma must be >= 0 (got {})",
                d.name, d.sigma
            )));
        }
        if let Some(floor) = d.floor {
            if d.mean.partial_cmp(&floor) != Some(std::cmp::Ordering::Greater) {
                out.push(Diagnostic::error(format!(
                    "parameter `{}` mean {} must lie above its floor {floor}",
                    d.name, d.mean
                )));
            }
        }
    }

    let mut shifted = HashSet::new();
    for sh in &s.shifts {
        if !names.contains(sh.parameter.as_str()) {
            out.push(Diagnostic::error(format!(
                "shift references undeclared parameter `{}`",
                sh.parameter
            )));
        }
        if !shifted.insert(sh.parameter.as_str()) {
            out.push(Diagnostic::error(format!(
                "parameter `{}` is shifted more than once",
                sh.parameter
            )));
        }
        if !sh.delta_mean.is_finite() {
            out.push(Diagnostic::error(format!(
                "shift of `{}` has a non-finite delta_mean",
                sh.parameter
            )));
        }
        if !(sh.sigma_scale >= 0.0 && sh.sigma_scale.is_finite()) {
            out.push(Diagnostic::error(format!(
                "shift of `{}` sigma_scale must be >= 0 (got {})",
                sh.parameter, sh.sigma_scale
            )));
        }
    }

    if let MechanismParams::Ob(p) = &s.params {
        let bound = targets.contains(&ModelInput::OxideThickness);
        if p.variant != ObVariant::UltraThin && p.d_ox_cm.is_none() && !bound {
            out.push(Diagnostic::error(format!(
                "the {} oxide model needs d_ox_cm or a `d_ox` distribution",
                p.variant
            )));
        }
    }
    out
}

fn describe(params: &MechanismParams) -> String {
    match params {
        MechanismParams::Ob(p) => format!("ob ({})", p.variant),
        other => other.mechanism().to_string(),
    }
}

/// Simulate the nominal and the infected process with the same seed, then
/// each shift on its own.
pub fn run_scenario(s: &TrojanScenario) -> Result<ScenarioReport> {
    let errors: Vec<Diagnostic> = validate_scenario(s)
        .into_iter()
        .filter(Diagnostic::is_error)
        .collect();
    if !errors.is_empty() {
        return Err(Error::InvalidScenario(errors));
    }

    let (nominal, infected) = if s.shifts.is_empty() {
        let nominal = monte_carlo_population(&s.population(&[]))?;
        (nominal.clone(), nominal)
    } else {
        let (a, b) = rayon::join(
            || monte_carlo_population(&s.population(&[])),
            || monte_carlo_population(&s.population(&s.shifts)),
        );
        (a?, b?)
    };

    let sensitivity = s
        .shifts
        .iter()
        .map(|shift| {
            let single = std::slice::from_ref(shift);
            let r = monte_carlo_population(&s.population(single))?;
            Ok(SensitivityEntry {
                parameter: shift.parameter.clone(),
                delta_mean: shift.delta_mean,
                sigma_scale: shift.sigma_scale,
                infection_fraction: r.infection_fraction,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let analytic_check = analytic_check(s, &nominal, &infected)?;

    Ok(ScenarioReport {
        label: s.label.clone(),
        infection_delta: infected.infection_fraction - nominal.infection_fraction,
        mttf_ratio_median: nominal.median() / infected.median(),
        nominal,
        infected,
        sensitivity,
        analytic_check,
    })
}

fn analytic_check(
    s: &TrojanScenario,
    nominal: &PopulationResult,
    infected: &PopulationResult,
) -> Result<Option<AnalyticCheck>> {
    let [dist] = s.distributions.as_slice() else {
        return Ok(None);
    };
    if s.params.weibull_shape().is_some() {
        return Ok(None);
    }
    let shift = s.shifts.iter().find(|sh| sh.parameter == dist.name);
    let map = |x: f64| map_param_to_ttf(&s.params, &s.operating_point, x, dist.target);
    let probability =
        |shift| match infection_probability_analytic(dist, shift, map, s.mission_lifetime) {
            Ok(p) => Ok(Some(p)),
            Err(Error::NonMonotone(_)) => Ok(None),
            Err(e) => Err(e),
        };
    let (Some(p_nom), Some(p_inf)) = (probability(None)?, probability(shift)?) else {
        return Ok(None);
    };
    let within = |mc: f64, p: f64| (mc - p).abs() <= binomial_halfwidth(p, s.n_samples);
    Ok(Some(AnalyticCheck {
        nominal_probability: p_nom,
        infected_probability: p_inf,
        nominal_within_3sigma: within(nominal.infection_fraction, p_nom),
        infected_within_3sigma: within(infected.infection_fraction, p_inf),
    }))
}
