//! Lifetime models for CMOS wearout mechanisms and a Monte Carlo simulator
//! for reliability Trojans: malicious shifts of critical fabrication
//! parameters that leave fresh devices within specification but pull their
//! time to failure inside the guaranteed mission lifetime.

pub mod constants;
pub mod error;
pub mod models;
pub mod scenario;
pub mod stochastic;

pub use error::{Diagnostic, Error, Result, Severity};
pub use models::{
    acceleration_factor, acceleration_factor_between, lifetime, EmParams, HciParams, Mechanism,
    MechanismParams, NbtiParams, ObParams, ObVariant, OperatingPoint, Waveform,
};
pub use scenario::{
    run_scenario, validate_scenario, AnalyticCheck, ScenarioReport, SensitivityEntry,
    TrojanScenario,
};
pub use stochastic::{
    ModelInput, ParameterDistribution, PopulationConfig, PopulationResult, TrojanShift,
    WeibullParams,
};
