//! Scenarios shared by the integration and acceptance tests.

#![allow(dead_code)]

use wearsim_core::{
    MechanismParams, ModelInput, ObParams, ObVariant, OperatingPoint, ParameterDistribution,
    TrojanScenario, TrojanShift,
};

pub const D_OX_MEAN: f64 = 2.0e-7;
pub const D_OX_SIGMA: f64 = 0.05e-7;

/// Deterministic thin-oxide model with lifetime monotone increasing in d_ox.
pub fn thin_oxide_params() -> ObParams {
    let mut p = ObParams::new(ObVariant::ThinArrhenius);
    p.a_scale = 1e-11;
    p.b_field_v_cm = 1.2e8;
    p.ea_ev = 0.6;
    p.weibull_shape = None;
    p
}

pub fn thin_oxide_op() -> OperatingPoint {
    OperatingPoint::at_temperature(358.15).with_gate_voltage(1.2)
}

pub fn d_ox_distribution() -> ParameterDistribution {
    ParameterDistribution::new("d_ox", D_OX_MEAN, D_OX_SIGMA, ModelInput::OxideThickness)
        .with_floor(0.0)
}

/// Single-parameter oxide scenario whose shift thins the oxide by `k` sigma.
pub fn thin_oxide_scenario(k: f64, n: usize, seed: u64) -> TrojanScenario {
    let mut s = TrojanScenario::new(
        "thin oxide",
        MechanismParams::Ob(thin_oxide_params()),
        thin_oxide_op(),
    );
    s.distributions = vec![d_ox_distribution()];
    s.shifts = vec![TrojanShift::new("d_ox", -k * D_OX_SIGMA)];
    s.n_samples = n;
    s.seed = seed;
    s
}
