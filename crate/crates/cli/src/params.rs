//! Model constants and operating points assembled from command-line flags.

use std::collections::BTreeMap;

use clap::Args;
use wearsim_core::constants::celsius_to_kelvin;
use wearsim_core::{
    EmParams, HciParams, Mechanism, MechanismParams, NbtiParams, ObParams, ObVariant,
    OperatingPoint,
};

use crate::error::CliError;

/// Flags shared by `mttf` and `accel`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Wearout mechanism: hci, ob, em or nbti
    #[arg(long)]
    pub mechanism: Mechanism,
    /// Oxide model for ob: e, inv_e, thin or ultra_thin
    #[arg(long)]
    pub variant: Option<ObVariant>,

    /// Prefactor A (em; ob thin)
    #[arg(long = "A")]
    pub a: Option<f64>,
    /// Scale B (hci) or field acceleration factor B in V/cm (ob thin)
    #[arg(long = "B")]
    pub b: Option<f64>,
    /// Current-density exponent (em)
    #[arg(long = "n")]
    pub n_lower: Option<f64>,
    /// Substrate-current exponent (hci)
    #[arg(long = "N")]
    pub n_upper: Option<f64>,
    /// Current-ratio exponent of the failure rate (hci)
    #[arg(long)]
    pub m: Option<f64>,
    /// Activation energy in eV (hci, em, ob thin)
    #[arg(long)]
    pub ea: Option<f64>,
    /// Time constant tau0 (ob e / inv_e)
    #[arg(long)]
    pub tau0: Option<f64>,
    /// Field coefficient gamma (ob e / inv_e)
    #[arg(long)]
    pub gamma: Option<f64>,
    /// T_BD0 at the operating voltage (ob ultra_thin)
    #[arg(long)]
    pub tbd0: Option<f64>,
    /// a(V) in K (ob ultra_thin)
    #[arg(long = "a-coeff")]
    pub a_coeff: Option<f64>,
    /// b(V) in K^2 (ob ultra_thin)
    #[arg(long = "b-coeff")]
    pub b_coeff: Option<f64>,
    /// Amplitude a0 in V (nbti)
    #[arg(long)]
    pub a0: Option<f64>,
    /// Gate-voltage exponent (nbti)
    #[arg(long = "gamma-v")]
    pub gamma_v: Option<f64>,
    /// Time exponent (nbti)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Activation energy E_NB in eV (nbti)
    #[arg(long)]
    pub enb: Option<f64>,
    /// Threshold shift treated as failure, in V (nbti)
    #[arg(long = "vth-crit")]
    pub vth_crit: Option<f64>,

    /// Oxide field in V/cm (ob); shorthand for --vg <eox> --dox 1
    #[arg(long)]
    pub eox: Option<f64>,
    /// Oxide thickness in cm (ob)
    #[arg(long)]
    pub dox: Option<f64>,
    /// Gate voltage in V (ob, nbti)
    #[arg(long)]
    pub vg: Option<f64>,
    /// Drain current in A (hci)
    #[arg(long)]
    pub id: Option<f64>,
    /// Substrate current in A (hci)
    #[arg(long)]
    pub isub: Option<f64>,
    /// Current density in A/cm^2 (em)
    #[arg(long)]
    pub j: Option<f64>,
    /// Temperature in kelvin
    #[arg(long = "temp-k")]
    pub temp_k: Option<f64>,
    /// Temperature in degrees Celsius
    #[arg(long = "temp-c")]
    pub temp_c: Option<f64>,
    /// Stress time in hours (nbti threshold shift)
    #[arg(long = "t")]
    pub t: Option<f64>,
}

/// Names accepted by `--stress KEY=VALUE`, identical to the long flag names.
pub const KEYS: &[&str] = &[
    "A", "B", "n", "N", "m", "ea", "tau0", "gamma", "tbd0", "a-coeff", "b-coeff", "a0", "gamma-v",
    "beta", "enb", "vth-crit", "eox", "dox", "vg", "id", "isub", "j", "temp-k", "temp-c", "t",
];

/// Flag values keyed by long flag name.
#[derive(Debug, Clone)]
pub struct ParamSet {
    pub mechanism: Mechanism,
    pub variant: Option<ObVariant>,
    values: BTreeMap<&'static str, f64>,
}

impl ParamSet {
    pub fn from_args(a: &ModelArgs) -> Self {
        let pairs = [
            ("A", a.a),
            ("B", a.b),
            ("n", a.n_lower),
            ("N", a.n_upper),
            ("m", a.m),
            ("ea", a.ea),
            ("tau0", a.tau0),
            ("gamma", a.gamma),
            ("tbd0", a.tbd0),
            ("a-coeff", a.a_coeff),
            ("b-coeff", a.b_coeff),
            ("a0", a.a0),
            ("gamma-v", a.gamma_v),
            ("beta", a.beta),
            ("enb", a.enb),
            ("vth-crit", a.vth_crit),
            ("eox", a.eox),
            ("dox", a.dox),
            ("vg", a.vg),
            ("id", a.id),
            ("isub", a.isub),
            ("j", a.j),
            ("temp-k", a.temp_k),
            ("temp-c", a.temp_c),
            ("t", a.t),
        ];
        ParamSet {
            mechanism: a.mechanism,
            variant: a.variant,
            values: pairs
                .into_iter()
                .filter_map(|(k, v)| v.map(|v| (k, v)))
                .collect(),
        }
    }

    /// Apply a `KEY=VALUE` override. Setting one temperature scale clears the
    /// other; setting `eox` clears `dox` and `vg` and vice versa.
    pub fn set_override(&mut self, assignment: &str) -> Result<(), CliError> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("override `{assignment}` is not KEY=VALUE")))?;
        let key = KEYS
            .iter()
            .copied()
            .find(|k| *k == key.trim().trim_start_matches("--"))
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "unknown override key `{key}` (expected one of {})",
                    KEYS.join(", ")
                ))
            })?;
        let value: f64 = value.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "override `{assignment}`: `{value}` is not a number"
            ))
        })?;
        match key {
            "temp-k" => {
                self.values.remove("temp-c");
            }
            "temp-c" => {
                self.values.remove("temp-k");
            }
            "eox" => {
                self.values.remove("dox");
                self.values.remove("vg");
            }
            "dox" | "vg" => {
                self.values.remove("eox");
            }
            _ => {}
        }
        self.values.insert(key, value);
        Ok(())
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.get(key).copied()
    }

    fn require(&self, key: &'static str) -> Result<f64, CliError> {
        self.get(key).ok_or_else(|| {
            CliError::Usage(format!(
                "--{key} is required for --mechanism {}",
                self.mechanism
            ))
        })
    }

    fn or(&self, key: &str, default: f64) -> f64 {
        self.get(key).unwrap_or(default)
    }

    pub fn temperature_k(&self) -> Result<f64, CliError> {
        match (self.get("temp-k"), self.get("temp-c")) {
            (Some(k), None) => Ok(k),
            (None, Some(c)) => Ok(celsius_to_kelvin(c)),
            (Some(_), Some(_)) => Err(CliError::Usage(
                "give the temperature once, with either --temp-k or --temp-c".into(),
            )),
            (None, None) => Err(CliError::Usage("--temp-k or --temp-c is required".into())),
        }
    }

    /// Gate voltage and oxide thickness for field-dependent oxide models.
    fn oxide_geometry(&self) -> Result<(f64, f64), CliError> {
        match (self.get("eox"), self.get("vg"), self.get("dox")) {
            (Some(e), None, None) => Ok((e, 1.0)),
            (None, Some(v), Some(d)) => Ok((v, d)),
            (Some(_), _, _) => Err(CliError::Usage(
                "--eox cannot be combined with --vg/--dox".into(),
            )),
            _ => Err(CliError::Usage(
                "the oxide field needs --eox, or both --vg and --dox".into(),
            )),
        }
    }

    pub fn build(&self) -> Result<(MechanismParams, OperatingPoint), CliError> {
        let mut op = OperatingPoint::at_temperature(self.temperature_k()?);
        op.stress_time = self.or("t", 0.0);
        let params = match self.mechanism {
            Mechanism::Em => {
                op.current_density_a_cm2 = self.require("j")?;
                MechanismParams::Em(EmParams {
                    a_scale: self.require("A")?,
                    n_exponent: self.require("n")?,
                    ea_ev: self.require("ea")?,
                })
            }
            Mechanism::Hci => {
                op.substrate_current_a = self.require("isub")?;
                op.drain_current_a = self.or("id", 0.0);
                MechanismParams::Hci(HciParams {
                    b_scale: self.require("B")?,
                    n_exponent: self.require("N")?,
                    ea_ev: self.require("ea")?,
                    m_exponent: self.or("m", HciParams::default().m_exponent),
                    ..HciParams::default()
                })
            }
            Mechanism::Nbti => {
                op.gate_voltage_v = self.require("vg")?;
                let d = NbtiParams::default();
                MechanismParams::Nbti(NbtiParams {
                    a0: self.require("a0")?,
                    e_nb_ev: self.require("enb")?,
                    gamma_v: self.or("gamma-v", d.gamma_v),
                    beta_t: self.or("beta", d.beta_t),
                    vth_crit_v: self.or("vth-crit", d.vth_crit_v),
                })
            }
            Mechanism::Ob => {
                let variant = self.variant.ok_or_else(|| {
                    CliError::Usage("--variant is required for --mechanism ob".into())
                })?;
                let mut p = ObParams::new(variant);
                p.weibull_shape = None;
                match variant {
                    ObVariant::EModel | ObVariant::InvEModel => {
                        p.tau0 = self.require("tau0")?;
                        p.gamma = self.require("gamma")?;
                    }
                    ObVariant::ThinArrhenius => {
                        p.a_scale = self.require("A")?;
                        p.b_field_v_cm = self.require("B")?;
                        p.ea_ev = self.require("ea")?;
                    }
                    ObVariant::UltraThin => {
                        p.t_bd0 = self.require("tbd0")?;
                        p.a_coeff_k = self.or("a-coeff", 0.0);
                        p.b_coeff_k2 = self.or("b-coeff", 0.0);
                    }
                }
                if variant.uses_field() {
                    let (vg, dox) = self.oxide_geometry()?;
                    op.gate_voltage_v = vg;
                    p.d_ox_cm = Some(dox);
                }
                MechanismParams::Ob(p)
            }
        };
        Ok((params, op))
    }
}
