//! Report JSON, per-device CSV and histogram data for scenario runs.

use std::io::{self, Write};

use serde::Serialize;
use wearsim_core::stochastic::Quantiles;
use wearsim_core::{
    AnalyticCheck, Diagnostic, PopulationResult, ScenarioReport, SensitivityEntry, TrojanScenario,
};

use crate::format::num;

pub const HISTOGRAM_BINS: usize = 50;

#[derive(Debug, Serialize)]
pub struct ReportJson<'a> {
    pub label: &'a str,
    pub mechanism: &'static str,
    pub seed: u64,
    pub sample_count: usize,
    pub mission_lifetime_hours: f64,
    pub nominal: PopulationSummary,
    pub infected: PopulationSummary,
    pub infection_delta: f64,
    pub mttf_ratio_median: f64,
    pub sensitivity: &'a [SensitivityEntry],
    pub analytic_check: Option<AnalyticCheck>,
    pub warnings: Vec<String>,
    pub histogram: Histogram,
}

/// A population without its per-device samples, which go to the CSV.
#[derive(Debug, Serialize)]
pub struct PopulationSummary {
    pub infection_fraction: f64,
    pub infection_ci_halfwidth: f64,
    pub quantiles: Quantiles,
    pub seed: u64,
    pub sample_count: usize,
}

impl From<&PopulationResult> for PopulationSummary {
    fn from(p: &PopulationResult) -> Self {
        PopulationSummary {
            infection_fraction: p.infection_fraction,
            infection_ci_halfwidth: p.infection_ci_halfwidth,
            quantiles: p.quantiles,
            seed: p.seed,
            sample_count: p.sample_count,
        }
    }
}

/// Equal-width bins spanning the combined range of both populations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub nominal: Vec<u64>,
    pub infected: Vec<u64>,
}

pub fn histogram(nominal: &[f64], infected: &[f64], bins: usize) -> Histogram {
    let all = nominal.iter().chain(infected);
    let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| {
        (lo.min(t), hi.max(t))
    });
    let width = hi - lo;
    let bin_edges = (0..=bins)
        .map(|k| {
            if k == bins {
                hi
            } else {
                lo + width * k as f64 / bins as f64
            }
        })
        .collect();
    let count = |xs: &[f64]| {
        let mut c = vec![0u64; bins];
        for &t in xs {
            let k = if width > 0.0 {
                (((t - lo) / width) * bins as f64).floor() as usize
            } else {
                0
            };
            c[k.min(bins - 1)] += 1;
        }
        c
    };
    Histogram {
        bin_edges,
        nominal: count(nominal),
        infected: count(infected),
    }
}

pub fn report_json<'a>(
    scenario: &'a TrojanScenario,
    report: &'a ScenarioReport,
    warnings: &[Diagnostic],
) -> ReportJson<'a> {
    ReportJson {
        label: &report.label,
        mechanism: scenario.params.mechanism().as_str(),
        seed: scenario.seed,
        sample_count: scenario.n_samples,
        mission_lifetime_hours: scenario.mission_lifetime,
        nominal: (&report.nominal).into(),
        infected: (&report.infected).into(),
        infection_delta: report.infection_delta,
        mttf_ratio_median: report.mttf_ratio_median,
        sensitivity: &report.sensitivity,
        analytic_check: report.analytic_check,
        warnings: warnings.iter().map(|d| d.message.clone()).collect(),
        histogram: histogram(
            &report.nominal.ttf_samples,
            &report.infected.ttf_samples,
            HISTOGRAM_BINS,
        ),
    }
}

/// `device_id,ttf,failed_before_mission,population`, nominal rows first.
pub fn write_results_csv<W: Write>(
    out: &mut W,
    report: &ScenarioReport,
    mission_lifetime: f64,
) -> io::Result<()> {
    writeln!(out, "device_id,ttf,failed_before_mission,population")?;
    for (label, pop) in [("nominal", &report.nominal), ("infected", &report.infected)] {
        for (i, &t) in pop.ttf_samples.iter().enumerate() {
            writeln!(out, "{i},{},{},{label}", num(t), t < mission_lifetime)?;
        }
    }
    Ok(())
}
