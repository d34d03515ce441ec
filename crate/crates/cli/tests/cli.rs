//! End-to-end tests of the binary: exit codes, pinned output values and
//! the determinism/runtime acceptance criterion for the verify command.

use std::process::{Command, Output};
use std::time::Instant;

fn mpfock(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mpfock"));
    for key in ["MPFOCK_DIM", "MPFOCK_TOL", "MPFOCK_MARGIN", "MPFOCK_FORMAT", "MPFOCK_OUT", "MPFOCK_CONFIG"] {
        cmd.env_remove(key);
    }
    cmd.args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf8 stdout")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

#[test]
fn acceptance_verify_all_is_green_fast_and_deterministic() {
    let name = "CLI: verify --suite all --dim 64 exits 0 in < 60 s, byte-identical twice";
    let start = Instant::now();
    let first = mpfock(&["verify", "--suite", "all", "--dim", "64"]);
    let first_elapsed = start.elapsed();
    assert_eq!(exit_code(&first), 0, "first run failed:\n{}", stdout_of(&first));
    assert!(
        first_elapsed.as_secs_f64() < 60.0,
        "first run took {first_elapsed:?}"
    );

    let start = Instant::now();
    let second = mpfock(&["verify", "--suite", "all", "--dim", "64"]);
    let second_elapsed = start.elapsed();
    assert_eq!(exit_code(&second), 0);
    assert!(
        second_elapsed.as_secs_f64() < 60.0,
        "second run took {second_elapsed:?}"
    );
    assert_eq!(first.stdout, second.stdout, "output differs between runs");
    println!(
        "ACCEPTANCE {name}: PASS (runs {first_elapsed:?} and {second_elapsed:?}, {} bytes identical)",
        first.stdout.len()
    );
}

#[test]
fn verify_single_suites_pass() {
    for (suite, dim) in [("fock", "16"), ("generators", "32")] {
        let output = mpfock(&["verify", "--suite", suite, "--dim", dim]);
        assert_eq!(exit_code(&output), 0, "suite {suite}:\n{}", stdout_of(&output));
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let output = mpfock(&["verify", "--suite", "nosuch"]);
    assert_eq!(exit_code(&output), 2);
}

#[test]
fn vacuum_thermal_pins_the_two_level_coefficients() {
    let output = mpfock(&["vacuum", "--p", "0", "--m", "5", "--eps", "3", "--mode", "thermal", "--dim", "8"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    let coeffs = parsed["state"]["coeffs"].as_array().unwrap();
    assert_eq!(coeffs[0][0], 2.0);
    assert_eq!(coeffs[1][0], 8.0);
    assert_eq!(coeffs[2][0], 0.0);
}

#[test]
fn vacuum_least_squares_at_the_critical_point() {
    let output = mpfock(&["vacuum", "--p", "0", "--m", "1", "--eps", "1", "--mode", "leastsquares"]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed["residual"], 0.0);
    assert_eq!(parsed["state"]["coeffs"][0][0], 1.0);
}

#[test]
fn vacuum_on_the_critical_surface_exits_three() {
    let output = mpfock(&["vacuum", "--p", "0", "--m", "3", "--eps", "3", "--mode", "thermal"]);
    assert_eq!(exit_code(&output), 3);
    let stderr = String::from_utf8(output.stderr).unwrap();
    assert!(stderr.contains("limit-scan"), "stderr should point to the scan: {stderr}");
}

#[test]
fn bch_antisymmetric_point_validates_on_the_paper_branch() {
    let output = mpfock(&["bch", "--a", "0", "--b", "0.15", "--c", "-0.15", "--dim", "48"]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed["branch_used"], "paper");
    let deviation = parsed["oracle_deviation"].as_f64().unwrap();
    let scale = parsed["oracle_scale"].as_f64().unwrap();
    assert!(deviation <= 1e-9 * scale.max(1.0), "deviation {deviation} at scale {scale}");
}

#[test]
fn bch_symmetric_point_flags_the_substituted_branch() {
    let output = mpfock(&["bch", "--a", "0.2", "--b", "0", "--c", "0"]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed["branch_used"], "substituted");
}

#[test]
fn bch_divergent_point_exits_four_with_both_candidates() {
    let output = mpfock(&["bch", "--a", "0", "--b", "2", "--c", "2", "--dim", "48"]);
    assert_eq!(exit_code(&output), 4);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed["error"], "validation_failed");
    assert!(parsed["paper"].is_object());
    assert!(parsed["substituted"].is_object());
}

#[test]
fn spectrum_at_the_disk_center_is_a_single_row() {
    let output = mpfock(&["spectrum", "--omega", "0", "--sector", "even"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3, "header, one row, summary:\n{text}");
    assert_eq!(lines[0], "n,probability");
    assert_eq!(lines[1], "0,1");
}

#[test]
fn spectrum_even_sector_summary_mean() {
    let output = mpfock(&["spectrum", "--omega", "0.6", "--sector", "even"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    assert!(text.starts_with("n,probability\n"));
    let summary_line = text.lines().last().unwrap();
    let summary: serde_json::Value = serde_json::from_str(summary_line).unwrap();
    let mean = summary["mean"].as_f64().unwrap();
    assert!((mean - 0.5625).abs() < 1e-10, "mean {mean}");
    assert_eq!(summary["odd_even_ratio"], 0.0);
}

#[test]
fn spectrum_from_physics_matches_the_disk_route_bytewise() {
    let physics = mpfock(&["spectrum", "--p", "2", "--m", "5", "--eps", "3", "--sector", "full"]);
    let disk = mpfock(&["spectrum", "--omega", "0.5", "--sector", "full"]);
    assert_eq!(exit_code(&physics), 0);
    assert_eq!(exit_code(&disk), 0);
    assert_eq!(physics.stdout, disk.stdout);
}

#[test]
fn spectrum_outside_the_disk_exits_three() {
    let output = mpfock(&["spectrum", "--omega", "1.1", "--sector", "full"]);
    assert_eq!(exit_code(&output), 3);
    // Supercritical physics parameters as well.
    let output = mpfock(&["spectrum", "--p", "4.5", "--m", "5", "--eps", "3", "--sector", "full"]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn spectrum_near_edge_needs_more_levels() {
    let output = mpfock(&["spectrum", "--omega", "0.9", "--sector", "even", "--dim", "64"]);
    assert_eq!(exit_code(&output), 3);
}

#[test]
fn limit_scan_reproduces_the_per_level_law() {
    let output = mpfock(&["limit-scan", "--start", "0.99", "--end", "0.99", "--steps", "1", "--levels", "1"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "omega_abs,m,ratio");
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let ratio: f64 = row[2].parse().unwrap();
    assert!((ratio - 0.0199).abs() < 1e-10, "ratio {ratio}");
}

#[test]
fn spectrum_scan_flag_emits_the_scan_table() {
    let output = mpfock(&["spectrum", "--omega", "0.5", "--sector", "full", "--scan", "0.5..0.7:2"]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    assert!(text.starts_with("omega_abs,m,ratio\n"));
    assert!(text.lines().any(|l| l.starts_with("0.7,")));
}

#[test]
fn bargmann_eval_emits_the_grid() {
    let dir = std::env::temp_dir().join("mpfock-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let state_path = dir.join("state.json");
    let vacuum = mpfock(&["vacuum", "--p", "0", "--m", "5", "--eps", "3", "--mode", "thermal", "--dim", "8"]);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&vacuum)).unwrap();
    std::fs::write(&state_path, parsed["state"].to_string()).unwrap();

    let output = mpfock(&[
        "bargmann-eval",
        "--state",
        state_path.to_str().unwrap(),
        "--re-min",
        "0",
        "--re-max",
        "1",
        "--re-steps",
        "3",
        "--im-min",
        "0",
        "--im-max",
        "1",
        "--im-steps",
        "3",
    ]);
    assert_eq!(exit_code(&output), 0);
    let text = stdout_of(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im,abs_f");
    assert_eq!(lines.len(), 1 + 9);
    // f(z) = (2 + 8z)/sqrt(1) at the thermal (2, 8) state: |f(0)| = 2.
    let first: Vec<&str> = lines[1].split(',').collect();
    let value: f64 = first[2].parse().unwrap();
    assert!((value - 2.0).abs() < 1e-12, "f(0) = {value}");
}

#[test]
fn output_file_and_config_precedence() {
    let dir = std::env::temp_dir().join("mpfock-cli-config");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("config.json");
    let out_path = dir.join("spectrum.csv");
    std::fs::write(&config_path, r#"{"dim": 32, "format": "csv"}"#).unwrap();

    // Config file sets dim 32; the flag overrides to 64; env overrides
    // the file but not the flag.
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mpfock"));
    cmd.env("MPFOCK_DIM", "16");
    cmd.args([
        "spectrum",
        "--omega",
        "0.1",
        "--sector",
        "even",
        "--dim",
        "64",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let output = cmd.output().unwrap();
    assert_eq!(output.status.code().unwrap(), 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    // Levels 0..62 (the last occupied even level) plus header and summary.
    assert_eq!(written.lines().count(), 63 + 2);

    // Without the flag the environment wins over the file: 16 levels.
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mpfock"));
    cmd.env("MPFOCK_DIM", "16");
    cmd.args([
        "spectrum",
        "--omega",
        "0.1",
        "--sector",
        "even",
        "--config",
        config_path.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    let output = cmd.output().unwrap();
    assert_eq!(output.status.code().unwrap(), 0);
    let written = std::fs::read_to_string(&out_path).unwrap();
    assert_eq!(written.lines().count(), 15 + 2);
}

#[test]
fn json_format_variants_parse() {
    let output = mpfock(&["verify", "--suite", "fock", "--dim", "8", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed[0]["suite"], "fock");
    assert!(parsed[0]["checks"].as_array().unwrap().len() > 5);

    let output = mpfock(&["spectrum", "--omega", "0.5", "--sector", "odd", "--format", "json"]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(parsed["sector"], "odd");
    assert_eq!(parsed["spectrum"][0][1], 0.0);
    assert!(parsed["summary"]["mean"].as_f64().unwrap() > 1.0);
}

#[test]
fn solution_thermal_envelope_matches_the_closed_form() {
    let output = mpfock(&["solution", "--p", "0", "--m", "5", "--eps", "3", "--mode", "thermal", "--dim", "8"]);
    assert_eq!(exit_code(&output), 0);
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    // |0> + |1> exactly at p = 0; the two routes agree to rounding.
    assert_eq!(parsed["state"]["coeffs"][0][0], 1.0);
    assert_eq!(parsed["state"]["coeffs"][1][0], 1.0);
    let deviation = parsed["diagnostics"]["closed_vs_operator_deviation"]
        .as_f64()
        .unwrap();
    assert!(deviation < 1e-13, "route deviation {deviation}");
}
