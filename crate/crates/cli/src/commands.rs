use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::Serialize;
use wearsim_core::models::{hci_failure_rate, nbti_vth_shift, oxide_field};
use wearsim_core::stochastic::{sample_devices, weibull_mle_fit};
use wearsim_core::{
    acceleration_factor_between, lifetime, run_scenario, MechanismParams, ObVariant,
    PopulationConfig,
};

use crate::config;
use crate::error::CliError;
use crate::format::num;
use crate::params::{ModelArgs, ParamSet};
use crate::report::{report_json, write_results_csv};

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MttfArgs {
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct AccelArgs {
    /// Use condition
    #[command(flatten)]
    pub model: ModelArgs,
    /// Stress-condition override of any model flag, e.g. --stress j=2e6 or
    /// --stress ea=0.7 (repeatable)
    #[arg(long = "stress", value_name = "KEY=VALUE", required = true)]
    pub stress: Vec<String>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Scenario JSON file
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory for report.json and results.csv
    #[arg(long)]
    pub out: PathBuf,
    /// Override the number of devices per population
    #[arg(long)]
    pub samples: Option<usize>,
    /// Override the seed
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Population {
    Nominal,
    Infected,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    /// Scenario JSON file
    #[arg(long)]
    pub config: PathBuf,
    /// Output CSV file
    #[arg(long)]
    pub out: PathBuf,
    /// Which process to sample
    #[arg(long, value_enum, default_value = "infected")]
    pub population: Population,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV file of failure times
    #[arg(long)]
    pub input: PathBuf,
    /// Column name, or 0-based index; defaults to `ttf` when present, else the
    /// first column
    #[arg(long)]
    pub column: Option<String>,
    /// Keep only rows whose `population` column matches
    #[arg(long, value_enum)]
    pub population: Option<Population>,
}

fn print_warnings(params: &MechanismParams) {
    for d in params.diagnostics().iter().filter(|d| !d.is_error()) {
        eprintln!("{d}");
    }
}

pub fn mttf(args: &MttfArgs) -> Result<(), CliError> {
    let set = ParamSet::from_args(&args.model);
    let (params, op) = set.build()?;
    print_warnings(&params);
    let value = lifetime(&params, &op)?;
    match &params {
        MechanismParams::Ob(p) => {
            if p.variant.uses_field() {
                let e = oxide_field(op.gate_voltage_v, p.d_ox_cm.unwrap_or(1.0))?;
                println!("e_ox_V_cm = {}", num(e));
            }
            let label = match p.variant {
                ObVariant::EModel | ObVariant::InvEModel => "t_bd_hours",
                _ => "mttf_hours",
            };
            println!("{label} = {}", num(value));
        }
        MechanismParams::Nbti(p) => {
            println!("lifetime_hours = {}", num(value));
            if set.get("t").is_some() {
                println!("delta_vth_V = {}", num(nbti_vth_shift(&op, p)?));
            }
        }
        MechanismParams::Hci(p) => {
            println!("mttf_hours = {}", num(value));
            if set.get("id").is_some() {
                println!("failure_rate_per_hour = {}", num(hci_failure_rate(&op, p)?));
            }
        }
        MechanismParams::Em(_) => println!("mttf_hours = {}", num(value)),
    }
    Ok(())
}

pub fn accel(args: &AccelArgs) -> Result<(), CliError> {
    let use_set = ParamSet::from_args(&args.model);
    let mut stress_set = use_set.clone();
    for s in &args.stress {
        stress_set.set_override(s)?;
    }
    let (use_params, use_op) = use_set.build()?;
    let (stress_params, stress_op) = stress_set.build()?;
    print_warnings(&use_params);
    let af = acceleration_factor_between((&use_params, &use_op), (&stress_params, &stress_op))?;
    println!("mttf_use_hours = {}", num(lifetime(&use_params, &use_op)?));
    println!(
        "mttf_stress_hours = {}",
        num(lifetime(&stress_params, &stress_op)?)
    );
    println!("acceleration_factor = {}", num(af));
    Ok(())
}

fn load_with_overrides(
    path: &Path,
    samples: Option<usize>,
    seed: Option<u64>,
) -> Result<config::LoadedScenario, CliError> {
    let mut loaded = config::load(path)?;
    if let Some(n) = samples {
        if n == 0 {
            return Err(CliError::Usage("--samples must be >= 1".into()));
        }
        loaded.scenario.n_samples = n;
    }
    if let Some(s) = seed {
        loaded.scenario.seed = s;
    }
    for w in &loaded.warnings {
        eprintln!("{w}");
    }
    Ok(loaded)
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("writing {}: {e}", path.display()))
}

pub fn scenario(args: &ScenarioArgs) -> Result<(), CliError> {
    let loaded = load_with_overrides(&args.config, args.samples, args.seed)?;
    let s = &loaded.scenario;
    let report = run_scenario(s)?;

    fs::create_dir_all(&args.out)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", args.out.display())))?;
    let json_path = args.out.join("report.json");
    let csv_path = args.out.join("results.csv");

    let json = serde_json::to_string_pretty(&report_json(s, &report, &loaded.warnings))
        .map_err(|e| CliError::Io(e.to_string()))?;
    let mut f = create(&json_path)?;
    writeln!(f, "{json}").map_err(io_err(&json_path))?;
    f.flush().map_err(io_err(&json_path))?;

    let mut f = create(&csv_path)?;
    write_results_csv(&mut f, &report, s.mission_lifetime).map_err(io_err(&csv_path))?;
    f.flush().map_err(io_err(&csv_path))?;

    println!("scenario = {}", report.label);
    println!(
        "nominal_infection = {}",
        num(report.nominal.infection_fraction)
    );
    println!(
        "infected_infection = {}",
        num(report.infected.infection_fraction)
    );
    println!("infection_delta = {}", num(report.infection_delta));
    println!("mttf_ratio_median = {}", num(report.mttf_ratio_median));
    if let Some(check) = report.analytic_check {
        println!("analytic_nominal = {}", num(check.nominal_probability));
        println!("analytic_infected = {}", num(check.infected_probability));
    }
    println!("report = {}", json_path.display());
    println!("results = {}", csv_path.display());
    Ok(())
}

pub fn sample(args: &SampleArgs) -> Result<(), CliError> {
    let loaded = load_with_overrides(&args.config, args.samples, args.seed)?;
    let s = &loaded.scenario;
    let shifts: &[_] = match args.population {
        Population::Nominal => &[],
        Population::Infected => &s.shifts,
    };
    let devices = sample_devices(&PopulationConfig {
        params: &s.params,
        operating_point: &s.operating_point,
        distributions: &s.distributions,
        shifts,
        n_samples: s.n_samples,
        mission_lifetime: s.mission_lifetime,
        seed: s.seed,
    })?;

    let mut f = create(&args.out)?;
    let mut header = vec!["device_id".to_string()];
    header.extend(s.distributions.iter().map(|d| d.name.clone()));
    header.push("ttf".into());
    header.push("failed_before_mission".into());
    let write = |f: &mut BufWriter<File>| -> std::io::Result<()> {
        writeln!(f, "{}", header.join(","))?;
        for (i, d) in devices.iter().enumerate() {
            write!(f, "{i}")?;
            for v in &d.parameters {
                write!(f, ",{}", num(*v))?;
            }
            writeln!(f, ",{},{}", num(d.ttf), d.ttf < s.mission_lifetime)?;
        }
        f.flush()
    };
    write(&mut f).map_err(io_err(&args.out))?;
    println!("wrote {} devices to {}", devices.len(), args.out.display());
    Ok(())
}

#[derive(Debug, Serialize)]
struct FitOutput {
    beta: f64,
    eta: f64,
    log_likelihood: f64,
    n: usize,
}

pub fn fit(args: &FitArgs) -> Result<(), CliError> {
    let values = read_column(&args.input, args.column.as_deref(), args.population)?;
    let w = weibull_mle_fit(&values)?;
    let out = FitOutput {
        beta: w.shape,
        eta: w.scale,
        log_likelihood: w.log_likelihood(&values),
        n: values.len(),
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&out).map_err(|e| CliError::Io(e.to_string()))?
    );
    Ok(())
}

fn read_column(
    path: &Path,
    column: Option<&str>,
    population: Option<Population>,
) -> Result<Vec<f64>, CliError> {
    let data = |msg: String| CliError::Data(format!("{}: {msg}", path.display()));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| data(e.to_string()))?;
    let mut rows = reader.records();
    let Some(first) = rows.next() else {
        return Err(data("file is empty".into()));
    };
    let first = first.map_err(|e| data(e.to_string()))?;
    let has_header = first.iter().any(|f| f.parse::<f64>().is_err());
    let header: Option<Vec<String>> = has_header.then(|| first.iter().map(String::from).collect());

    let find = |name: &str| {
        header
            .as_ref()
            .and_then(|h| h.iter().position(|c| c == name))
    };
    let col = match column {
        Some(c) => match c.parse::<usize>() {
            Ok(i) => i,
            Err(_) => find(c).ok_or_else(|| data(format!("no column named `{c}`")))?,
        },
        None => find("ttf").unwrap_or(0),
    };
    if col >= first.len() {
        return Err(data(format!(
            "column {col} is out of range ({} columns)",
            first.len()
        )));
    }
    let pop_col = match population {
        Some(_) => Some(find("population").ok_or_else(|| data("no `population` column".into()))?),
        None => None,
    };
    let wanted = population.map(|p| match p {
        Population::Nominal => "nominal",
        Population::Infected => "infected",
    });

    let mut values = Vec::new();
    let body = (!has_header).then_some(Ok(first)).into_iter().chain(rows);
    for (i, rec) in body.enumerate() {
        let line = i + 1 + usize::from(has_header);
        let rec = rec.map_err(|e| data(e.to_string()))?;
        if let (Some(pc), Some(w)) = (pop_col, wanted) {
            if rec.get(pc) != Some(w) {
                continue;
            }
        }
        let field = rec.get(col).unwrap_or("");
        let v: f64 = field
            .parse()
            .map_err(|_| data(format!("line {line}: `{field}` is not a number")))?;
        if !(v.is_finite() && v > 0.0) {
            return Err(data(format!(
                "line {line}: failure time {v} must be finite and > 0"
            )));
        }
        values.push(v);
    }
    Ok(values)
}
