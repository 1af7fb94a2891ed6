//! Shared fixtures for the criterion benches.

use wearsim_core::{
    EmParams, MechanismParams, ModelInput, ObParams, ObVariant, OperatingPoint,
    ParameterDistribution, TrojanScenario, TrojanShift,
};

/// Thin-oxide scenario with a single varying thickness and a thinning shift.
pub fn oxide_scenario(n_samples: usize) -> TrojanScenario {
    let mut p = ObParams::new(ObVariant::ThinArrhenius);
    p.a_scale = 1e-4;
    p.b_field_v_cm = 2.0e8;
    p.ea_ev = 0.3;
    p.weibull_shape = None;
    let op = OperatingPoint::at_temperature(358.15).with_gate_voltage(1.2);
    let mut s = TrojanScenario::new("bench-ob", MechanismParams::Ob(p), op);
    s.distributions =
        vec![
            ParameterDistribution::new("d_ox", 2.0e-7, 0.05e-7, ModelInput::OxideThickness)
                .with_floor(0.0),
        ];
    s.shifts = vec![TrojanShift::new("d_ox", -0.1e-7)];
    s.n_samples = n_samples;
    s.seed = 1;
    s
}

pub fn em_params() -> EmParams {
    EmParams {
        a_scale: 1e3,
        n_exponent: 1.5,
        ea_ev: 0.7,
    }
}
