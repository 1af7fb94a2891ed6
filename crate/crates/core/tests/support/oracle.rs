//! Independent 256-bit evaluations of the wearout models, and a randomized
//! agreement check against the `f64` implementations.

#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wearsim_core::constants::K_BOLTZMANN_EV;
use wearsim_core::models::{
    hci_failure_rate, hci_mttf, hci_vth_shift, mttf_em, mttf_ob_thin, mttf_ob_ultrathin,
    nbti_lifetime, nbti_vth_shift, oxide_field, time_to_breakdown,
};
use wearsim_core::{EmParams, HciParams, NbtiParams, ObParams, ObVariant, OperatingPoint};

const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

pub struct Hp {
    cc: Consts,
}

#[derive(Clone)]
pub struct B(BigFloat);

impl Hp {
    pub fn new() -> Self {
        Self {
            cc: Consts::new().expect("constant cache"),
        }
    }

    pub fn v(&self, x: f64) -> B {
        B(BigFloat::from_f64(x, PREC))
    }

    pub fn exp(&mut self, x: &B) -> B {
        B(x.0.exp(PREC, RM, &mut self.cc))
    }

    pub fn ln(&mut self, x: &B) -> B {
        B(x.0.ln(PREC, RM, &mut self.cc))
    }

    pub fn pow(&mut self, x: &B, y: &B) -> B {
        B(x.0.pow(&y.0, PREC, RM, &mut self.cc))
    }

    pub fn sqrt(&self, x: &B) -> B {
        B(x.0.sqrt(PREC, RM))
    }

    /// `exp(ea / (k T))`
    pub fn arrhenius(&mut self, ea: f64, t: f64) -> B {
        let kt = self.v(K_BOLTZMANN_EV).mul(&self.v(t));
        let x = self.v(ea).div(&kt);
        self.exp(&x)
    }
}

impl B {
    pub fn add(&self, o: &B) -> B {
        B(self.0.add(&o.0, PREC, RM))
    }
    pub fn sub(&self, o: &B) -> B {
        B(self.0.sub(&o.0, PREC, RM))
    }
    pub fn mul(&self, o: &B) -> B {
        B(self.0.mul(&o.0, PREC, RM))
    }
    pub fn div(&self, o: &B) -> B {
        B(self.0.div(&o.0, PREC, RM))
    }
    pub fn neg(&self) -> B {
        B(self.0.neg())
    }
    pub fn to_f64(&self) -> f64 {
        self.0.to_string().parse().expect("decimal rendering")
    }
}

pub fn hci_rate(hp: &mut Hp, op: &OperatingPoint, p: &HciParams) -> f64 {
    let id = hp.v(op.drain_current_a);
    let ratio = hp.v(op.substrate_current_a).div(&id);
    let pw = hp.pow(&ratio, &hp.v(p.m_exponent));
    hp.v(p.b_scale).mul(&id).mul(&pw).to_f64()
}

pub fn hci_mttf_hp(hp: &mut Hp, op: &OperatingPoint, p: &HciParams) -> f64 {
    let pw = hp.pow(&hp.v(op.substrate_current_a), &hp.v(-p.n_exponent));
    let arr = hp.arrhenius(p.ea_ev, op.temperature_k);
    hp.v(p.b_scale).mul(&pw).mul(&arr).to_f64()
}

pub fn hci_vth_hp(hp: &mut Hp, op: &OperatingPoint, p: &HciParams) -> f64 {
    let sq = hp.sqrt(&hp.v(p.q_inversion));
    let f = hp.exp(&hp.v(p.e_ox_v_cm).div(&hp.v(p.e0_v_cm)));
    let trap_arg = hp
        .v(p.phi_it_ev)
        .div(&hp.v(p.lambda_mfp_cm).mul(&hp.v(p.e_m_v_cm)))
        .neg();
    let trap = hp.exp(&trap_arg);
    let tp = hp.pow(&hp.v(op.stress_time), &hp.v(p.n_prime));
    hp.v(p.vth_prefactor)
        .mul(&sq)
        .mul(&f)
        .mul(&trap)
        .mul(&tp)
        .to_f64()
}

pub fn field_hp(hp: &mut Hp, v: f64, d: f64) -> f64 {
    hp.v(v).div(&hp.v(d)).to_f64()
}

pub fn tbd_hp(hp: &mut Hp, e: f64, p: &ObParams) -> f64 {
    let arg = match p.variant {
        ObVariant::EModel => hp.v(p.gamma).mul(&hp.v(e)).neg(),
        ObVariant::InvEModel => hp.v(p.gamma).div(&hp.v(e)),
        _ => unreachable!("field-only variants"),
    };
    hp.v(p.tau0).mul(&hp.exp(&arg)).to_f64()
}

pub fn thin_hp(hp: &mut Hp, e: f64, t: f64, p: &ObParams) -> f64 {
    let f = hp.exp(&hp.v(p.b_field_v_cm).div(&hp.v(e)));
    let arr = hp.arrhenius(p.ea_ev, t);
    hp.v(p.a_scale).mul(&f).mul(&arr).to_f64()
}

pub fn ultrathin_hp(hp: &mut Hp, t: f64, p: &ObParams) -> f64 {
    let tt = hp.v(t);
    let arg = hp
        .v(p.a_coeff_k)
        .div(&tt)
        .add(&hp.v(p.b_coeff_k2).div(&tt.mul(&tt)));
    hp.v(p.t_bd0).mul(&hp.exp(&arg)).to_f64()
}

pub fn em_hp(hp: &mut Hp, op: &OperatingPoint, p: &EmParams) -> f64 {
    let pw = hp.pow(&hp.v(op.current_density_a_cm2), &hp.v(-p.n_exponent));
    let arr = hp.arrhenius(p.ea_ev, op.temperature_k);
    hp.v(p.a_scale).mul(&pw).mul(&arr).to_f64()
}

fn nbti_amp(hp: &mut Hp, op: &OperatingPoint, p: &NbtiParams) -> B {
    let vg = hp.pow(&hp.v(op.gate_voltage_v.abs()), &hp.v(p.gamma_v));
    hp.v(p.a0).mul(&vg)
}

pub fn nbti_shift_hp(hp: &mut Hp, op: &OperatingPoint, p: &NbtiParams) -> f64 {
    let amp = nbti_amp(hp, op, p);
    let tp = hp.pow(&hp.v(op.stress_time), &hp.v(p.beta_t));
    let arr = hp.arrhenius(-p.e_nb_ev, op.temperature_k);
    amp.mul(&tp).mul(&arr).to_f64()
}

pub fn nbti_lifetime_hp(hp: &mut Hp, op: &OperatingPoint, p: &NbtiParams) -> f64 {
    let amp = nbti_amp(hp, op, p);
    let arr = hp.arrhenius(p.e_nb_ev, op.temperature_k);
    let ratio = hp.v(p.vth_crit_v).mul(&arr).div(&amp);
    let inv_beta = hp.v(1.0).div(&hp.v(p.beta_t));
    hp.pow(&ratio, &inv_beta).to_f64()
}

/// Worst relative disagreement per operation.
#[derive(Debug, Default)]
pub struct OracleReport {
    pub rows: Vec<(&'static str, usize, f64)>,
}

impl OracleReport {
    pub fn worst(&self) -> f64 {
        self.rows.iter().map(|r| r.2).fold(0.0, f64::max)
    }

    pub fn min_cases(&self) -> usize {
        self.rows.iter().map(|r| r.1).min().unwrap_or(0)
    }

    fn record(&mut self, name: &'static str, errs: &[f64]) {
        let worst = errs.iter().copied().fold(0.0, f64::max);
        self.rows.push((name, errs.len(), worst));
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        ((a - b) / b).abs()
    }
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..hi.ln())).exp()
}

/// Evaluate every model at `cases` random parameter sets and compare with the
/// high-precision oracle.
pub fn run_suite(seed: u64, cases: usize) -> OracleReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hp = Hp::new();
    let mut report = OracleReport::default();
    let mut errs: [Vec<f64>; 11] = Default::default();

    for _ in 0..cases {
        let temp = rng.random_range(250.0..450.0);

        let hci = HciParams {
            b_scale: log_uniform(&mut rng, 1e-6, 1e6),
            m_exponent: rng.random_range(1.5..4.0),
            n_exponent: rng.random_range(2.0..4.0),
            ea_ev: rng.random_range(-0.2..-0.1),
            vth_prefactor: log_uniform(&mut rng, 1e-4, 1.0),
            q_inversion: log_uniform(&mut rng, 1e-8, 1e-6),
            e_ox_v_cm: rng.random_range(1e6..8e6),
            e0_v_cm: rng.random_range(1e6..5e6),
            phi_it_ev: rng.random_range(1.0..4.0),
            lambda_mfp_cm: log_uniform(&mut rng, 5e-7, 1e-5),
            e_m_v_cm: rng.random_range(1e5..1e6),
            n_prime: rng.random_range(0.3..0.7),
        };
        let id = log_uniform(&mut rng, 1e-5, 1e-2);
        let hop = OperatingPoint::at_temperature(temp)
            .with_currents(id, id * rng.random_range(1e-4..1e-1))
            .with_stress_time(log_uniform(&mut rng, 1.0, 1e6));
        errs[0].push(rel(
            hci_failure_rate(&hop, &hci).unwrap(),
            hci_rate(&mut hp, &hop, &hci),
        ));
        errs[1].push(rel(
            hci_mttf(&hop, &hci).unwrap(),
            hci_mttf_hp(&mut hp, &hop, &hci),
        ));
        errs[2].push(rel(
            hci_vth_shift(&hop, &hci).unwrap(),
            hci_vth_hp(&mut hp, &hop, &hci),
        ));

        let vg = rng.random_range(0.5..5.0);
        let d = rng.random_range(1e-7..1e-6);
        errs[3].push(rel(oxide_field(vg, d).unwrap(), field_hp(&mut hp, vg, d)));

        let e_ox = rng.random_range(2e6..1.2e7);
        let mut ob = ObParams::new(ObVariant::EModel);
        ob.tau0 = log_uniform(&mut rng, 1e3, 1e15);
        ob.gamma = rng.random_range(1e-7..4e-6);
        errs[4].push(rel(
            time_to_breakdown(e_ox, &ob).unwrap(),
            tbd_hp(&mut hp, e_ox, &ob),
        ));

        let mut inv = ObParams::new(ObVariant::InvEModel);
        inv.tau0 = log_uniform(&mut rng, 1e-12, 1e-6);
        inv.gamma = rng.random_range(1e7..3e8);
        errs[5].push(rel(
            time_to_breakdown(e_ox, &inv).unwrap(),
            tbd_hp(&mut hp, e_ox, &inv),
        ));

        let mut thin = ObParams::new(ObVariant::ThinArrhenius);
        thin.a_scale = log_uniform(&mut rng, 1e-15, 1e-5);
        thin.b_field_v_cm = rng.random_range(1e7..3e8);
        thin.ea_ev = rng.random_range(0.1..1.0);
        errs[6].push(rel(
            mttf_ob_thin(e_ox, temp, &thin).unwrap(),
            thin_hp(&mut hp, e_ox, temp, &thin),
        ));

        let mut ultra = ObParams::new(ObVariant::UltraThin);
        ultra.t_bd0 = log_uniform(&mut rng, 1e-10, 1e-2);
        ultra.a_coeff_k = rng.random_range(-5e3..5e3);
        ultra.b_coeff_k2 = rng.random_range(0.0..3e6);
        errs[7].push(rel(
            mttf_ob_ultrathin(temp, &ultra).unwrap(),
            ultrathin_hp(&mut hp, temp, &ultra),
        ));

        let em = EmParams {
            a_scale: log_uniform(&mut rng, 1e-3, 1e6),
            n_exponent: rng.random_range(1.0..2.0),
            ea_ev: rng.random_range(0.5..1.4),
        };
        let eop = OperatingPoint::at_temperature(temp)
            .with_current_density(log_uniform(&mut rng, 1e4, 1e7));
        errs[8].push(rel(mttf_em(&eop, &em).unwrap(), em_hp(&mut hp, &eop, &em)));

        let nb = NbtiParams {
            a0: log_uniform(&mut rng, 1e-3, 1e1),
            gamma_v: rng.random_range(1.0..4.0),
            beta_t: rng.random_range(0.15..0.3),
            e_nb_ev: rng.random_range(0.05..0.2),
            vth_crit_v: rng.random_range(0.01..0.1),
        };
        let nop = OperatingPoint::at_temperature(temp)
            .with_gate_voltage(-rng.random_range(0.8..2.0))
            .with_stress_time(log_uniform(&mut rng, 1.0, 1e6));
        errs[9].push(rel(
            nbti_vth_shift(&nop, &nb).unwrap(),
            nbti_shift_hp(&mut hp, &nop, &nb),
        ));
        errs[10].push(rel(
            nbti_lifetime(&nop, &nb).unwrap(),
            nbti_lifetime_hp(&mut hp, &nop, &nb),
        ));
    }

    let names = [
        "hci_failure_rate",
        "hci_mttf",
        "hci_vth_shift",
        "oxide_field",
        "time_to_breakdown[e]",
        "time_to_breakdown[1/e]",
        "mttf_ob_thin",
        "mttf_ob_ultrathin",
        "mttf_em",
        "nbti_vth_shift",
        "nbti_lifetime",
    ];
    for (name, e) in names.iter().zip(errs.iter()) {
        report.record(name, e);
    }
    report
}
