use std::path::Path;
use std::process::{Command, Output};

use cosmofate::classifier::classify;
use cosmofate::dust_oracle::{dust_scan, linspace, Branch};
use cosmofate::dynamics::Sign;
use cosmofate::io::{read_trajectory_csv, write_dust_scan_csv, write_trajectory_csv};
use cosmofate::{integrate, CosmoParams, EosModel, IntegrationConfig, State};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosmofate"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

const SIM: &[&str] = &[
    "simulate", "--eos", "gamma:1.3333", "--a0", "1", "--adot0", "0.8", "--rho0", "0.4", "--lambda", "0.5", "--t1", "2",
];

#[test]
fn simulate_matches_library_output() {
    let text = stdout(&run(SIM));
    let p = CosmoParams::new(1.0, 1.0, 0.5).unwrap();
    let m = EosModel::gamma_law(1.3333, 1.0).unwrap();
    let s0 = State::new(1.0, 0.8, 0.4).unwrap();
    let tr = integrate(&p, &m, s0, (0.0, 2.0), &IntegrationConfig::default()).unwrap();
    let mut golden = Vec::new();
    write_trajectory_csv(&tr, &mut golden).unwrap();
    assert_eq!(text.as_bytes(), golden.as_slice());
}

#[test]
fn simulate_is_deterministic() {
    assert_eq!(stdout(&run(SIM)), stdout(&run(SIM)));
}

#[test]
fn static_universe_stays_put() {
    let rho = format!("{:.17e}", 1.0 / (4.0 * std::f64::consts::PI));
    let text = stdout(&run(&[
        "simulate", "--eos", "dust", "--a0", "1", "--adot0", "0", "--rho0", &rho, "--lambda", "1", "--preset",
        "natural", "--t1", "10",
    ]));
    let samples = read_trajectory_csv(text.as_bytes()).unwrap();
    assert!(samples.len() >= 2);
    for s in samples {
        assert!((s.state.a - 1.0).abs() < 1e-10, "a = {}", s.state.a);
    }
}

#[test]
fn plot_data_files_have_one_row_per_sample() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("traj.csv");
    let prefix = dir.path().join("run");
    let mut args: Vec<&str> = SIM.to_vec();
    let (csv_s, prefix_s) = (csv.to_str().unwrap(), prefix.to_str().unwrap());
    args.extend(["--out", csv_s, "--plot-data", prefix_s]);
    stdout(&run(&args));
    let samples = read_trajectory_csv(std::fs::read_to_string(&csv).unwrap().as_bytes()).unwrap();
    for suffix in ["a", "rho", "adot"] {
        let text = std::fs::read_to_string(dir.path().join(format!("run_{suffix}.dat"))).unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(rows.len(), samples.len());
        assert_eq!(rows[0].split_whitespace().count(), 2);
    }
}

#[test]
fn bigbang_plot_data_has_expected_slope() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("bb");
    let out = dir.path().join("bb.csv");
    stdout(&run(&[
        "simulate", "--eos", "gamma:1.3333333333333333", "--a0", "1", "--adot0", "1", "--rho0", "1", "--lambda", "1",
        "--t1", "-inf", "--out", out.to_str().unwrap(), "--plot-data", prefix.to_str().unwrap(),
    ]));
    let text = std::fs::read_to_string(dir.path().join("bb_a.dat")).unwrap();
    let pts: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace().map(|v| v.parse::<f64>().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    // The run stops at a = 1e-6, so its first time stands in for the
    // singular time over a window well above that.
    let t_star = pts[0].0;
    let window: Vec<(f64, f64)> = pts
        .iter()
        .filter(|(_, a)| (1e-4..1e-2).contains(a))
        .map(|&(t, a)| ((t - t_star).ln(), a.ln()))
        .collect();
    assert!(window.len() >= 5);
    let (x0, y0) = window[0];
    let (x1, y1) = window[window.len() - 1];
    let slope = (y1 - y0) / (x1 - x0);
    assert!((slope - 0.5).abs() < 0.01, "slope {slope}");
}

#[test]
fn classify_zero_lambda_has_big_bang() {
    let v: Value = serde_json::from_str(&stdout(&run(&[
        "classify", "--eos", "gamma:1.3333", "--a0", "1", "--adot0", "1", "--rho0", "1", "--lambda", "0",
    ])))
    .unwrap();
    assert_eq!(v["past"]["label"], "BB");
    let p = CosmoParams::new(1.0, 1.0, 0.0).unwrap();
    let m = EosModel::gamma_law(1.3333, 1.0).unwrap();
    let lib = classify(&p, &m, State::new(1.0, 1.0, 1.0).unwrap()).unwrap().to_json();
    assert_eq!(v, lib);
}

#[test]
fn dust_scan_has_one_row_per_grid_point() {
    let text = stdout(&run(&["dust-scan", "--alpha", "0.1:3:100"]));
    assert_eq!(text.lines().count(), 101);
    let rows = dust_scan(&linspace(0.1, 3.0, 100), &[Branch::Low], Sign::Positive).unwrap();
    let mut golden = Vec::new();
    write_dust_scan_csv(&rows, &mut golden).unwrap();
    assert_eq!(text.as_bytes(), golden.as_slice());
}

#[test]
fn eos_check_reports_neutron_limits() {
    let v: Value = serde_json::from_str(&stdout(&run(&["eos-check", "--eos", "neutron:1"]))).unwrap();
    assert_eq!(v["a0_pointwise"], true);
    let g = v["gamma_low"].as_f64().unwrap();
    assert!((g / (5.0 / 3.0) - 1.0).abs() < 0.02);
}

#[test]
fn fit_latetime_reports_rates() {
    let v: Value = serde_json::from_str(&stdout(&run(&[
        "fit", "--regime", "latetime", "--eos", "dust", "--a0", "1", "--adot0", "1", "--rho0", "0.01", "--lambda", "1",
    ])))
    .unwrap();
    let fits = v.as_array().unwrap();
    assert_eq!(fits.len(), 2);
    for f in fits {
        assert!(f["rel_err"].as_f64().unwrap() < 5e-3);
        assert!(f.get("window").is_some());
    }
}

#[test]
fn stability_growth_rate_matches() {
    let v: Value = serde_json::from_str(&stdout(&run(&["stability", "--lambda", "1"]))).unwrap();
    assert!(v["rel_err"].as_f64().unwrap() < 0.01);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["simulate", "--bogus"]).status.code(), Some(64));
    assert_eq!(run(&["dust-scan", "--alpha", "1:2"]).status.code(), Some(64));
    assert_eq!(
        run(&["classify", "--eos", "nonsense", "--a0", "1", "--adot0", "0", "--rho0", "1"]).status.code(),
        Some(64)
    );
    assert_eq!(
        run(&["classify", "--eos", "gamma:2.5", "--a0", "1", "--adot0", "0", "--rho0", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["simulate", "--a0", "-1", "--adot0", "0", "--rho0", "1"]).status.code(), Some(2));
    assert_eq!(
        run(&["fit", "--regime", "latetime", "--a0", "1", "--adot0", "1", "--rho0", "1", "--lambda", "0.001",
            "--a-max-stop", "2"])
        .status
        .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_directory_errors_name_the_path() {
    let bad = Path::new("/nonexistent-dir/out.csv");
    let out = run(&[SIM, &["--out", bad.to_str().unwrap()]].concat());
    assert_eq!(out.status.code(), Some(74));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent-dir"));
}
