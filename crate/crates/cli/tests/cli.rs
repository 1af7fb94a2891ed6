use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn wearsim() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_wearsim"));
    c.env_remove("WEARSIM_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    wearsim().args(args).output().expect("spawn wearsim")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Value of a `key = value` line.
fn field(o: &Output, key: &str) -> f64 {
    stdout(o)
        .lines()
        .find_map(|l| {
            l.strip_prefix(&format!("{key} = "))
                .map(|v| v.parse().unwrap())
        })
        .unwrap_or_else(|| panic!("no `{key}` in output:\n{}", stdout(o)))
}

fn scenarios_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

const OB_SCENARIO: &str = r#"{
  "label": "cli oxide",
  "mechanism": "ob",
  "model_params": { "variant": "thin", "a_scale": 1e-11, "b_field_Vcm": 1.2e8,
                    "ea_eV": 0.6, "weibull_shape": null },
  "operating_point": { "temperature_C": 85.0, "gate_voltage_V": 1.2 },
  "distributions": [
    { "name": "d_ox", "mean": 2e-7, "sigma": 5e-9, "target": "d_ox", "floor": 0.0 }
  ],
  "shifts": [ { "parameter": "d_ox", "delta_mean": -3e-8 } ],
  "n_samples": 2000,
  "seed": 5
}"#;

#[test]
fn em_unit_lifetime() {
    let o = run(&[
        "mttf",
        "--mechanism",
        "em",
        "--A",
        "1",
        "--n",
        "2",
        "--ea",
        "0",
        "--j",
        "1",
        "--temp-k",
        "300",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&o, "mttf_hours"), 1.0);
}

#[test]
fn thin_oxide_unit_field() {
    let o = run(&[
        "mttf",
        "--mechanism",
        "ob",
        "--variant",
        "thin",
        "--A",
        "1",
        "--B",
        "1",
        "--eox",
        "1",
        "--ea",
        "0",
        "--temp-c",
        "26.85",
    ]);
    assert_eq!(code(&o), 0);
    assert!((field(&o, "mttf_hours") - std::f64::consts::E).abs() < 1e-15);
}

#[test]
fn nbti_lifetime_and_shift() {
    let o = run(&[
        "mttf",
        "--mechanism",
        "nbti",
        "--a0",
        "1",
        "--gamma-v",
        "1",
        "--beta",
        "0.25",
        "--enb",
        "0.1",
        "--vth-crit",
        "0.05",
        "--vg",
        "-1.2",
        "--temp-c",
        "125",
        "--t",
        "1000",
    ]);
    assert_eq!(code(&o), 0);
    let life = field(&o, "lifetime_hours");
    assert!(life > 0.0);
    assert!(field(&o, "delta_vth_V") > 0.0);
}

#[test]
fn copper_doping_acceleration() {
    let o = run(&[
        "accel",
        "--mechanism",
        "em",
        "--A",
        "1",
        "--n",
        "1.5",
        "--ea",
        "1.4",
        "--j",
        "1e6",
        "--temp-k",
        "373.15",
        "--stress",
        "ea=0.7",
    ]);
    assert_eq!(code(&o), 0);
    let expected = (0.7f64 / (8.617333262e-5 * 373.15)).exp();
    assert!((field(&o, "acceleration_factor") / expected - 1.0).abs() < 1e-9);
}

#[test]
fn doubling_current_density_with_n_two() {
    let o = run(&[
        "accel",
        "--mechanism",
        "em",
        "--A",
        "1",
        "--n",
        "2",
        "--ea",
        "0.7",
        "--j",
        "1e6",
        "--temp-k",
        "350",
        "--stress",
        "j=2e6",
    ]);
    assert_eq!(code(&o), 0);
    assert!((field(&o, "acceleration_factor") - 4.0).abs() < 1e-12);
}

#[test]
fn printed_numbers_round_trip() {
    let o = run(&[
        "mttf",
        "--mechanism",
        "em",
        "--A",
        "3",
        "--n",
        "1.5",
        "--ea",
        "0.7",
        "--j",
        "1e6",
        "--temp-k",
        "373.15",
    ]);
    let line = stdout(&o);
    let text = line.lines().next().unwrap().split(" = ").nth(1).unwrap();
    let v: f64 = text.parse().unwrap();
    assert_eq!(format!("{v:.16e}"), text);
}

#[test]
fn exit_code_contract() {
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
    assert_eq!(code(&run(&[])), 64);
    assert_eq!(code(&run(&["frobnicate"])), 64);
    assert_eq!(code(&run(&["mttf", "--mechanism", "em", "--A", "1"])), 64);
    assert_eq!(code(&run(&["mttf", "--mechanism", "plasma"])), 64);
    // both temperature scales
    assert_eq!(
        code(&run(&[
            "mttf",
            "--mechanism",
            "em",
            "--A",
            "1",
            "--n",
            "2",
            "--ea",
            "0.7",
            "--j",
            "1",
            "--temp-k",
            "300",
            "--temp-c",
            "20"
        ])),
        64
    );
    // non-positive current density and temperature are domain errors
    assert_eq!(
        code(&run(&[
            "mttf",
            "--mechanism",
            "em",
            "--A",
            "1",
            "--n",
            "2",
            "--ea",
            "0.7",
            "--j",
            "0",
            "--temp-k",
            "300"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "mttf",
            "--mechanism",
            "em",
            "--A",
            "1",
            "--n",
            "2",
            "--ea",
            "0.7",
            "--j",
            "1",
            "--temp-k",
            "-5"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "accel",
            "--mechanism",
            "em",
            "--A",
            "1",
            "--n",
            "2",
            "--ea",
            "0.7",
            "--j",
            "1",
            "--temp-k",
            "300",
            "--stress",
            "zz=1"
        ])),
        64
    );
}

#[test]
fn bad_thread_count_is_a_usage_error() {
    let o = wearsim()
        .env("WEARSIM_THREADS", "zero")
        .args([
            "mttf",
            "--mechanism",
            "em",
            "--A",
            "1",
            "--n",
            "2",
            "--ea",
            "0",
            "--j",
            "1",
            "--temp-k",
            "300",
        ])
        .output()
        .unwrap();
    assert_eq!(code(&o), 64);
}

#[test]
fn scenario_schema_errors_exit_65() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cases = [
        (
            "unknown_key.json",
            OB_SCENARIO.replace("\"seed\": 5", "\"seed\": 5, \"sede\": 1"),
        ),
        (
            "bad_binding.json",
            OB_SCENARIO.replace("\"target\": \"d_ox\"", "\"target\": \"j_e\""),
        ),
        (
            "bad_shift.json",
            OB_SCENARIO.replace("\"parameter\": \"d_ox\"", "\"parameter\": \"tox\""),
        ),
        (
            "two_temps.json",
            OB_SCENARIO.replace(
                "\"temperature_C\": 85.0",
                "\"temperature_C\": 85.0, \"temperature_K\": 358.15",
            ),
        ),
        ("not_json.json", "{ nope".to_string()),
    ];
    for (name, text) in cases {
        let cfg = write(dir.path(), name, &text);
        let o = run(&[
            "scenario",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            code(&o),
            65,
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let o = run(&[
        "scenario",
        "--config",
        "/nonexistent/x.json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 65);
}

#[test]
fn scenario_outputs_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", OB_SCENARIO);
    let mut outputs = Vec::new();
    for (i, threads) in ["1", "8", "3"].iter().enumerate() {
        let out = dir.path().join(format!("out{i}"));
        let o = wearsim()
            .env("WEARSIM_THREADS", threads)
            .args([
                "scenario",
                "--config",
                cfg.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push((
            fs::read(out.join("report.json")).unwrap(),
            fs::read(out.join("results.csv")).unwrap(),
        ));
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn results_csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", OB_SCENARIO);
    let out = dir.path().join("out");
    let o = run(&[
        "scenario",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--samples",
        "50",
    ]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(out.join("results.csv")).unwrap();
    assert!(!csv.contains('\r'));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "device_id,ttf,failed_before_mission,population");
    assert_eq!(lines.len(), 1 + 2 * 50);
    assert!(lines[1..51].iter().all(|l| l.ends_with(",nominal")));
    assert!(lines[51..].iter().all(|l| l.ends_with(",infected")));

    let report: serde_json::Value =
        serde_json::from_slice(&fs::read(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(
        report["histogram"]["bin_edges"].as_array().unwrap().len(),
        51
    );
    let nominal: u64 = report["histogram"]["nominal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap())
        .sum();
    assert_eq!(nominal, 50);
    let check = &report["analytic_check"];
    assert!(check["infected_probability"].as_f64().unwrap() > 0.5);
}

#[test]
fn zero_shift_scenario_has_no_delta() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", &OB_SCENARIO.replace("-3e-8", "0.0"));
    let out = dir.path().join("out");
    let o = run(&[
        "scenario",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(field(&o, "infection_delta"), 0.0);
    assert_eq!(
        field(&o, "nominal_infection"),
        field(&o, "infected_infection")
    );
}

#[test]
fn shipped_scenarios_run() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["ob_thin_oxide.json", "em_current_density.json"] {
        let cfg = scenarios_dir().join(name);
        let out = dir.path().join(name);
        let o = run(&[
            "scenario",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
            "--samples",
            "500",
        ]);
        assert_eq!(
            code(&o),
            0,
            "{name}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(field(&o, "infected_infection") > field(&o, "nominal_infection"));
    }
}

#[test]
fn golden_outputs() {
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let cfg = scenarios_dir().join("ob_thin_oxide.json");
    let o = run(&[
        "scenario",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--samples",
        "100",
    ]);
    assert_eq!(code(&o), 0);
    for file in ["report.json", "results.csv"] {
        let got = fs::read_to_string(out.join(file)).unwrap();
        if std::env::var_os("WEARSIM_BLESS").is_some() {
            fs::write(golden.join(file), &got).unwrap();
        }
        let want = fs::read_to_string(golden.join(file)).unwrap();
        assert!(
            got == want,
            "{file} differs from golden (rerun with WEARSIM_BLESS=1 to update)"
        );
    }
}

#[test]
fn sample_emits_parameter_draws() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", OB_SCENARIO);
    let out = dir.path().join("draws.csv");
    let o = run(&[
        "sample",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--samples",
        "20",
        "--population",
        "nominal",
    ]);
    assert_eq!(code(&o), 0);
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "device_id,d_ox,ttf,failed_before_mission");
    assert_eq!(lines.len(), 21);
    let d: f64 = lines[1].split(',').nth(1).unwrap().parse().unwrap();
    assert!(d > 0.0 && (d - 2e-7).abs() < 5e-8);
}

fn weibull_quantile_csv(dir: &Path, beta: f64, eta: f64, n: usize) -> PathBuf {
    let mut text = String::from("ttf\n");
    for i in 1..=n {
        let u = i as f64 / (n as f64 + 1.0);
        text.push_str(&format!(
            "{:.17e}\n",
            eta * (-(1.0 - u).ln()).powf(1.0 / beta)
        ));
    }
    write(dir, "q.csv", &text)
}

#[test]
fn fit_recovers_plotting_positions() {
    let dir = tempfile::tempdir().unwrap();
    let input = weibull_quantile_csv(dir.path(), 1.0, 1.0, 1000);
    let o = run(&["fit", "--input", input.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["beta"].as_f64().unwrap() - 1.0).abs() < 0.02);
    assert!((v["eta"].as_f64().unwrap() - 1.0).abs() < 0.02);
    assert_eq!(v["n"].as_u64().unwrap(), 1000);
}

#[test]
fn fit_reads_scenario_results_by_population() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.json", OB_SCENARIO);
    let out = dir.path().join("out");
    assert_eq!(
        code(&run(&[
            "scenario",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ])),
        0
    );
    let csv = out.join("results.csv");
    let o = run(&[
        "fit",
        "--input",
        csv.to_str().unwrap(),
        "--population",
        "infected",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"].as_u64().unwrap(), 2000);
}

#[test]
fn fit_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let negative = write(dir.path(), "neg.csv", "ttf\n1.0\n2.0\n-3.0\n");
    assert_eq!(
        code(&run(&["fit", "--input", negative.to_str().unwrap()])),
        65
    );
    let garbage = write(dir.path(), "bad.csv", "ttf\n1.0\nabc\n");
    assert_eq!(
        code(&run(&["fit", "--input", garbage.to_str().unwrap()])),
        65
    );
    let short = write(dir.path(), "short.csv", "1\n2\n3\n");
    assert_eq!(code(&run(&["fit", "--input", short.to_str().unwrap()])), 65);
    let constant = write(dir.path(), "const.csv", &"7.5\n".repeat(20));
    assert_eq!(
        code(&run(&["fit", "--input", constant.to_str().unwrap()])),
        2
    );
    let missing = dir.path().join("missing.csv");
    assert_eq!(
        code(&run(&["fit", "--input", missing.to_str().unwrap()])),
        65
    );
    let ragged = write(dir.path(), "ragged.csv", "a,b\n1,2\n3\n");
    assert_eq!(
        code(&run(&["fit", "--input", ragged.to_str().unwrap()])),
        65
    );
}
