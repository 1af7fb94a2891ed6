//! Process variation, Monte Carlo populations and Weibull lifetime statistics.

mod analytic;
mod distribution;
mod population;
mod rng;
mod weibull;

pub use analytic::{infection_probability_analytic, normal_lower_tail, normal_upper_tail};
pub use distribution::{
    map_param_to_ttf, sample_parameter, ModelInput, ParameterDistribution, TrojanShift,
    MAX_TRUNCATION_ATTEMPTS,
};
pub use population::{
    binomial_halfwidth, monte_carlo_population, sample_devices, DeviceSample, PopulationConfig,
    PopulationResult, Quantiles,
};
pub use rng::StreamKey;
pub use weibull::{weibull_mle_fit, weibull_sample, WeibullParams, MIN_FIT_SAMPLES};
