//! Black-box checks of the binary: flag handling, exit codes, and the
//! stability and shape of the JSON and CSV outputs.

use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn entdisc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_entdisc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).expect("stdout is one JSON document")
}

fn sorted_keys(value: &Value) -> Vec<String> {
    value.as_object().unwrap().keys().cloned().collect()
}

#[test]
fn verify_rho_passes_at_a_maximally_entangled_point() {
    let out = entdisc(&["verify-rho", "--alpha", "1.5707963", "--beta", "0"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert!(report["max_abs_diff"].as_f64().unwrap() <= 1e-12);
    assert_eq!(report["grid"], 16);
    assert_eq!(
        sorted_keys(&report),
        ["alpha", "beta", "grid", "max_abs_diff", "q", "schema_version"]
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("{\"schema_version\":1,"));
    assert!(text.ends_with("}\n"));
}

#[test]
fn verify_rho_reports_zero_mixing_for_product_states() {
    let out = entdisc(&["verify-rho", "--alpha", "0", "--beta", "0"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["q"], 0.0);
}

#[test]
fn verify_rho_accepts_pi_suffixed_angles() {
    let out = entdisc(&["verify-rho", "--alpha", "0.5pi", "--beta", "pi"]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["q"], -1.0);
}

#[test]
fn verify_rho_rejects_coarse_grids() {
    let out = entdisc(&["verify-rho", "--alpha", "1", "--beta", "1", "--grid", "4"]);
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("grid must be ≥ 8"), "stderr: {stderr}");
}

#[test]
fn discriminate_orthogonal_ensembles_score_one() {
    let out = entdisc(&[
        "discriminate",
        "--alpha1", "1.5707963", "--beta1", "3.1415927",
        "--alpha2", "1.5707963", "--beta2", "0",
        "--trials", "10000", "--seed", "7",
    ]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["empirical_payoff"], 1.0);
    assert_eq!(
        sorted_keys(&report),
        [
            "analytic_payoff",
            "config_echo",
            "empirical_payoff",
            "schema_version",
            "seed",
            "std_error",
            "trials"
        ]
    );
    assert_eq!(
        sorted_keys(&report["config_echo"]),
        ["alpha1", "alpha2", "beta1", "beta2", "prior1", "seed", "trials"]
    );
}

#[test]
fn discriminate_identical_product_ensembles_score_half() {
    let out = entdisc(&[
        "discriminate",
        "--alpha1", "0", "--alpha2", "0",
        "--trials", "100000", "--seed", "7",
    ]);
    assert!(out.status.success());
    let payoff = stdout_json(&out)["empirical_payoff"].as_f64().unwrap();
    assert!((payoff - 0.5).abs() <= 0.0047, "payoff {payoff}");
}

#[test]
fn discriminate_runs_are_reproducible() {
    let args = [
        "discriminate",
        "--alpha1", "0.3pi", "--beta1", "1.1",
        "--alpha2", "0.6pi", "--beta2", "4.2",
        "--prior1", "0.3", "--trials", "5000", "--seed", "42",
    ];
    let first = entdisc(&args);
    let second = entdisc(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn discriminate_validates_flags() {
    let base = [
        "discriminate",
        "--alpha1", "0", "--alpha2", "0", "--trials", "10", "--seed", "1",
    ];
    let bad_prior: Vec<&str> = base.iter().chain(&["--prior1", "1.5"]).copied().collect();
    assert_eq!(entdisc(&bad_prior).status.code(), Some(2));

    let out = entdisc(&[
        "discriminate",
        "--alpha1", "0", "--alpha2", "0", "--trials", "0", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let zero_threads: Vec<&str> = base.iter().chain(&["--threads", "0"]).copied().collect();
    assert_eq!(entdisc(&zero_threads).status.code(), Some(2));
}

#[test]
fn unknown_flags_are_rejected() {
    let out = entdisc(&["pryde", "--trials", "10", "--bogus", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_emits_a_well_formed_csv() {
    let path = std::env::temp_dir().join(format!("entdisc-sweep-{}.csv", std::process::id()));
    let out = entdisc(&[
        "sweep",
        "--alpha-steps",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());

    let text = fs::read_to_string(&path).unwrap();
    fs::remove_file(&path).ok();
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));

    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 82);
    assert_eq!(lines[0], "alpha1,alpha2,optimal_payoff");
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        for field in &fields {
            let digits = field.chars().filter(char::is_ascii_digit).count();
            assert!(digits >= 12, "field {field} has too few digits");
            let value: f64 = field.parse().unwrap();
            assert!(value.is_finite());
        }
        let payoff: f64 = fields[2].parse().unwrap();
        assert!((0.5..=1.0).contains(&payoff));
    }

    // Grid corners are product states, the center is maximally entangled.
    let payoff_at = |row: usize| -> f64 {
        lines[1 + row].split(',').nth(2).unwrap().parse().unwrap()
    };
    assert_eq!(payoff_at(0), 0.5);
    assert!((payoff_at(80) - 0.5).abs() <= 1e-12);
    assert_eq!(payoff_at(9 * 4 + 4), 1.0);
}

#[test]
fn sweep_rejects_degenerate_grids() {
    assert_eq!(entdisc(&["sweep", "--alpha-steps", "1"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_paths_fail_cleanly() {
    let path = std::env::temp_dir().join("entdisc-missing-dir/sub/out.csv");
    let out = entdisc(&["sweep", "--alpha-steps", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8(out.stderr).unwrap().contains("error:"));
}

#[test]
fn pryde_matches_the_analytic_baseline() {
    let out = entdisc(&["pryde", "--trials", "100000", "--seed", "3"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["analytic_payoff"], 0.75);
    let payoff = report["empirical_payoff"].as_f64().unwrap();
    assert!((payoff - 0.75).abs() <= 0.0041, "payoff {payoff}");
    assert_eq!(sorted_keys(&report["config_echo"]), ["seed", "trials"]);
}

#[test]
fn pryde_handles_a_single_trial() {
    let out = entdisc(&["pryde", "--trials", "1", "--seed", "0"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert_eq!(report["trials"], 1);
    assert_eq!(report["std_error"], 0.0);
    let payoff = report["empirical_payoff"].as_f64().unwrap();
    assert!(payoff == 0.0 || payoff == 1.0);
}

#[test]
fn pryde_repeats_bitwise() {
    let first = entdisc(&["pryde", "--trials", "3000", "--seed", "5"]);
    let second = entdisc(&["pryde", "--trials", "3000", "--seed", "5"]);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn separability_holds_over_sampled_ensembles() {
    let out = entdisc(&["separability", "--samples", "10000", "--seed", "1"]);
    assert!(out.status.success());
    let report = stdout_json(&out);
    assert!(report["max_margin"].as_f64().unwrap() <= 0.0);
    assert_eq!(
        sorted_keys(&report),
        ["max_margin", "samples", "schema_version", "seed"]
    );
}

#[test]
fn separability_rejects_zero_samples() {
    let out = entdisc(&["separability", "--samples", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("must be ≥ 1"));
}

#[test]
fn out_flag_redirects_the_report() {
    let path = std::env::temp_dir().join(format!("entdisc-report-{}.json", std::process::id()));
    let args = [
        "discriminate",
        "--alpha1", "0.25pi", "--alpha2", "0.75pi",
        "--trials", "2000", "--seed", "8",
    ];
    let direct = entdisc(&args);
    assert!(direct.status.success());

    let redirected: Vec<&str> = args.iter().chain(&["--out", path.to_str().unwrap()]).copied().collect();
    let out = entdisc(&redirected);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = fs::read(&path).unwrap();
    fs::remove_file(&path).ok();
    assert_eq!(written, direct.stdout);
}
