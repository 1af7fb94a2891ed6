//! Physical constants (CODATA 2018 exact values).

/// Boltzmann constant in eV/K.
pub const K_BOLTZMANN_EV: f64 = 8.617333262e-5;

/// Elementary charge in coulombs.
pub const Q_ELECTRON: f64 = 1.602176634e-19;

/// Offset between the Celsius and Kelvin scales.
pub const ZERO_CELSIUS_K: f64 = 273.15;

/// Hours in ten years of continuous operation, the default mission lifetime.
pub const TEN_YEARS_HOURS: f64 = 87_600.0;

/// Convert a Celsius temperature to Kelvin.
pub fn celsius_to_kelvin(celsius: f64) -> f64 {
    celsius + ZERO_CELSIUS_K
}

/// Thermal energy kT in eV.
#[inline]
pub fn thermal_energy_ev(temperature_k: f64) -> f64 {
    K_BOLTZMANN_EV * temperature_k
}
