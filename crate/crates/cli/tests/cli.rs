//! End-to-end tests of the binary: spawn it, check exit codes and output.

use std::process::{Command, Output};

use modeq_core::modified_eq::SchemeKind;
use modeq_core::series::SeriesJson;

fn modeq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modeq"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = modeq(args);
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn derive_verlet_order_four_multiplier() {
    let v = stdout_json(&["derive", "--scheme", "verlet", "--order", "4"]);
    assert_eq!(v["scheme"], "verlet");
    assert_eq!(v["order"], 4);
    assert_eq!(v["pathway"], "substitution");
    let coeffs: Vec<&str> = v["multiplier"]["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(coeffs, ["-1/1", "0/1", "-1/12", "0/1", "-1/90"]);
}

#[test]
fn derive_json_round_trips_into_the_series() {
    let v = stdout_json(&["derive", "--scheme", "verlet", "--order", "8"]);
    let parsed: SeriesJson = serde_json::from_value(v["multiplier"].clone()).unwrap();
    let expected = SchemeKind::Verlet.derive(8).unwrap().into_multiplier();
    assert_eq!(parsed.to_series().unwrap(), expected);
}

#[test]
fn derive_pathways_agree_from_the_outside() {
    let substitution = stdout_json(&["derive", "--scheme", "verlet", "--order", "10"]);
    for pathway in ["arcsine", "closed-form"] {
        let other = stdout_json(&[
            "derive",
            "--scheme",
            "verlet",
            "--order",
            "10",
            "--pathway",
            pathway,
        ]);
        assert_eq!(
            substitution["multiplier"], other["multiplier"],
            "pathway {pathway}"
        );
    }
}

#[test]
fn derive_csv_lists_one_power_per_row() {
    let out = modeq(&[
        "derive", "--scheme", "euler", "--order", "3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "power,coefficient\n0,-1/1\n1,-1/2\n2,-1/3\n3,-1/4\n");
}

#[test]
fn accelerated_single_term_is_exactly_three_halves() {
    let v = stdout_json(&["basel", "--terms", "1", "--accelerated"]);
    assert_eq!(v["exact"], "3/2");
    assert_eq!(v["target"], "pi^2/6");
    assert_eq!(
        v["decimal"].as_str().unwrap(),
        "1.50000000000000000000000000000"
    );
}

#[test]
fn raw_and_central_targets() {
    let raw = stdout_json(&["basel", "--terms", "3"]);
    assert_eq!(raw["exact"], "49/36");
    assert_eq!(raw["target"], "pi^2/6");
    let central = stdout_json(&["basel", "--terms", "3", "--central"]);
    assert_eq!(central["exact"], "197/360");
    assert_eq!(central["target"], "pi^2/18");
}

#[test]
fn chebyshev_unit_step_identity_and_periodicity() {
    let v = stdout_json(&["chebyshev", "--k", "6", "--h", "1", "--check-period", "6"]);
    assert_eq!(v["identity_holds"], true);
    assert_eq!(v["periodic"], true);
    assert_eq!(v["h"], "1/1");
    let five = stdout_json(&["chebyshev", "--k", "6", "--h", "1", "--check-period", "5"]);
    assert_eq!(five["periodic"], false);
}

#[test]
fn chebyshev_without_step_reports_weights_only() {
    let v = stdout_json(&["chebyshev", "--k", "1"]);
    let weights: Vec<&str> = v["weight_polynomial"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c.as_str().unwrap())
        .collect();
    assert_eq!(weights, ["2/1", "0/1", "-1/1"]);
    assert!(v.get("identity_holds").is_none());
    assert!(v.get("periodic").is_none());
}

#[test]
fn cramer_known_values_at_k3() {
    let v = stdout_json(&["cramer", "--k", "3"]);
    assert_eq!(v["denominator"], "4320/1");
    assert_eq!(v["minor"], "-48/1");
    assert_eq!(v["coefficient"], "-1/90");
}

#[test]
fn arcsin_routes_agree() {
    let v = stdout_json(&["arcsin", "--order", "12"]);
    assert_eq!(v["match"], true);
    assert_eq!(v["closed_form"], v["via_reversion"]);
    assert_eq!(v["closed_form"]["coeffs"][2], "1/4");
    assert_eq!(v["closed_form"]["coeffs"][4], "1/48");
    assert_eq!(v["closed_form"]["coeffs"][6], "1/360");
}

#[test]
fn ladder_at_unit_step() {
    let v = stdout_json(&["simulate", "ladder", "--h", "1"]);
    assert_eq!(v["omega_0"], 1.0);
    let exact = v["omega_exact"].as_f64().unwrap();
    assert!((exact - std::f64::consts::FRAC_PI_3).abs() < 1e-14);
}

#[test]
fn residual_slope_measures_six_when_keeping_h2() {
    let v = stdout_json(&["simulate", "residual", "--scheme", "verlet", "--keep", "2"]);
    let slope = v["slope"].as_f64().unwrap();
    assert!((slope - 6.0).abs() < 0.5, "slope {slope}");
    assert_eq!(v["grid"].as_array().unwrap().len(), 6);
}

#[test]
fn trace_csv_shape_at_unit_step() {
    let out = modeq(&["simulate", "trace", "--h", "1", "--steps", "12"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,discrete,exact,mod2,mod4");
    assert_eq!(lines.len(), 15); // header + seeds + 12 steps
    assert!(lines[1].starts_with("0,1.00000000000000,"));
    assert!(lines[7].starts_with("6.00000000000000,1.00000000000000,")); // period 6
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["derive", "--scheme", "verlet", "--order", "12"],
        vec!["figure1"],
        vec!["simulate", "residual", "--scheme", "euler", "--keep", "1"],
    ] {
        let a = modeq(&args);
        let b = modeq(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "non-deterministic output for {args:?}");
    }
}

#[test]
fn figure_files_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("figure.csv");
    let svg_path = dir.path().join("figure.svg");
    let out = modeq(&[
        "figure1",
        "--out",
        csv_path.to_str().unwrap(),
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty(), "file mode must not also print");
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(csv.lines().count(), 602);
    assert!(csv.starts_with("t,exact,discrete,mod2,mod4\n"));
    let svg = std::fs::read_to_string(&svg_path).unwrap();
    assert!(svg.starts_with("<svg"));
}

#[test]
fn out_flag_writes_other_commands_too() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("derive.json");
    let out = modeq(&[
        "derive",
        "--scheme",
        "verlet",
        "--order",
        "4",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let direct = modeq(&["derive", "--scheme", "verlet", "--order", "4"]);
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(modeq(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(
        modeq(&["derive", "--scheme", "cubic", "--order", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        modeq(&[
            "derive",
            "--scheme",
            "euler",
            "--order",
            "4",
            "--pathway",
            "arcsine"
        ])
        .status
        .code(),
        Some(2),
        "the arcsine route has no one-step variant"
    );
    assert_eq!(
        modeq(&["chebyshev", "--k", "3", "--check-period", "6"])
            .status
            .code(),
        Some(2),
        "a period check needs a step size"
    );
}

#[test]
fn domain_errors_exit_one() {
    let big_step = modeq(&["simulate", "ladder", "--h", "5/2"]);
    assert_eq!(big_step.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&big_step.stderr).contains("outside (0, 2)"));
    assert_eq!(
        modeq(&["derive", "--scheme", "verlet", "--order", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        modeq(&["simulate", "residual", "--scheme", "verlet", "--keep", "4"])
            .status
            .code(),
        Some(1),
        "an eighth-order residual drowns in rounding noise on the dyadic grid"
    );
    assert_eq!(modeq(&["cramer", "--k", "0"]).status.code(), Some(1));
}
