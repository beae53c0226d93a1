//! End-to-end tests against the compiled `cvdc` binary: exit-code
//! contract, output schemas, and round-tripping of emitted records.

use std::io::Write;
use std::process::{Command, Output};

fn cvdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvdc"))
        .args(args)
        .output()
        .expect("spawn cvdc")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn convert_round_trips_two_decibels() {
    let out = cvdc(&["convert", "--db", "2.0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# cvdc-csv v1 convert\n"), "{text}");
    let row = text.lines().nth(2).unwrap();
    let r: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
    assert!((r - 0.230258509).abs() < 1e-8, "{r}");

    let back = cvdc(&["convert", "--r", &r.to_string(), "--format", "json-lines"]);
    assert!(back.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&back).trim()).unwrap();
    assert!((v["db"].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn simulate_reports_the_two_db_squeezed_variance() {
    let out = cvdc(&["simulate", "--set", "experiment.r=0.23025850929940458"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let header: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let row: Vec<&str> = text.lines().nth(2).unwrap().split(',').collect();
    let field = |name: &str| -> f64 {
        let i = header.iter().position(|h| *h == name).unwrap();
        row[i].parse().unwrap()
    };
    assert!((field("x_variance") - 0.315478672).abs() < 1e-3);
    assert!((field("x_rel_db") + 2.0).abs() < 0.02);
    assert!((field("epr_variance") - 0.553963).abs() < 1e-3);
    assert!(field("separability_cross_cov").abs() < 1e-9);
}

#[test]
fn simulate_decodes_the_displacement() {
    let out = cvdc(&[
        "simulate",
        "--format",
        "json-lines",
        "--set",
        "experiment.r=0.4",
        "--set",
        "experiment.alpha_re=1.25",
        "--set",
        "experiment.alpha_im=-0.5",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!((v["x_mean"].as_f64().unwrap() - 1.25).abs() < 0.01);
    assert!((v["p_mean"].as_f64().unwrap() + 0.5).abs() < 0.01);
    assert!((v["signal_photons"].as_f64().unwrap() - 1.8125).abs() < 1e-9);
}

#[test]
fn crossing_finds_the_squeezed_homodyne_threshold() {
    let out = cvdc(&[
        "crossing",
        "--a",
        "dense-coding:r=0.23025850929940458",
        "--b",
        "squeezed-homodyne:r=0.23025850929940458",
        "--format",
        "json-lines",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(
        (v["crossing_n_bar"].as_f64().unwrap() - 1.315877).abs() < 1e-3,
        "{v}"
    );
}

#[test]
fn capacity_curve_flags_infeasible_points_instead_of_dropping_them() {
    let out = cvdc(&[
        "capacity-curve",
        "--channels",
        "dense-coding:r=1.0",
        "--n-min",
        "0",
        "--n-max",
        "2",
        "--points",
        "5",
        "--format",
        "json-lines",
    ]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 5);
    // sinh^2(1) ~ 1.38, so n_bar in {0, 0.5, 1} is infeasible
    for row in &rows[..3] {
        assert_eq!(row["feasible"], false, "{row}");
        assert!(row["info_nats"].is_null());
    }
    for row in &rows[3..] {
        assert_eq!(row["feasible"], true, "{row}");
        assert!(row["info_nats"].as_f64().unwrap() > 0.0);
    }
}

#[test]
fn traces_emits_all_four_kinds_in_long_format() {
    let out = cvdc(&[
        "traces",
        "--set",
        "trace.averages=2",
        "--set",
        "trace.sweep_s=0.004",
        "--set",
        "experiment.r=0.23025850929940458",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("# cvdc-csv v1 traces\n"));
    for kind in [
        "shot-noise",
        "epr-noise",
        "squeezed-locked",
        "squeezed-scanned",
    ] {
        assert!(
            text.lines().any(|l| l.starts_with(&format!("{kind},"))),
            "missing {kind}"
        );
    }
}

#[test]
fn spectrum_warns_when_the_signal_is_outside_the_span() {
    let out = cvdc(&[
        "traces",
        "--spectrum",
        "--set",
        "trace.span_hz=2e5",
        "--set",
        "trace.averages=2",
        "--set",
        "trace.sweep_s=0.004",
        "--set",
        "trace.am_signal.freq_hz=5e6",
        "--set",
        "trace.am_signal.depth=1.0",
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("outside span"), "{}", stderr(&out));
}

#[test]
fn config_file_and_overrides_compose() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[experiment]\nr = 0.1\nalpha_re = 2.0").unwrap();
    let path = file.path().to_str().unwrap();
    let out = cvdc(&[
        "simulate",
        "--config",
        path,
        "--set",
        "experiment.r=0.3",
        "--format",
        "json-lines",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["r"].as_f64().unwrap(), 0.3); // override wins
    assert_eq!(v["alpha_re"].as_f64().unwrap(), 2.0); // file value kept
}

#[test]
fn exit_codes_distinguish_usage_from_physics() {
    // unknown config key: usage error
    let out = cvdc(&["simulate", "--set", "experiment.squeeze_db=2.0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("squeeze_db"), "{}", stderr(&out));

    // unknown channel: usage error
    let out = cvdc(&["crossing", "--a", "telepathy", "--b", "coherent-2q"]);
    assert_eq!(out.status.code(), Some(2));

    // clap rejects unknown flags with code 2
    let out = cvdc(&["simulate", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));

    // negative squeezing: physics/domain error
    let out = cvdc(&["simulate", "--set", "experiment.r=-0.5"]);
    assert_eq!(out.status.code(), Some(1));

    // no sign change in the crossing bracket: domain error
    let out = cvdc(&[
        "crossing",
        "--a",
        "holevo-limit",
        "--b",
        "coherent-2q",
        "--lo",
        "1",
        "--hi",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));

    let out = cvdc(&["convert", "--db", "2.0"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn csv_and_json_outputs_agree_field_by_field() {
    let args = ["capacity-curve", "--channels", "holevo-limit", "--points", "3", "--n-max", "1"];
    let csv = cvdc(&args);
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json-lines"]);
    let json = cvdc(&json_args);
    assert!(csv.status.success() && json.status.success());

    let csv_text = stdout(&csv);
    let header: Vec<&str> = csv_text.lines().nth(1).unwrap().split(',').collect();
    let json_rows: Vec<serde_json::Value> = stdout(&json)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    for (csv_row, json_row) in csv_text.lines().skip(2).zip(&json_rows) {
        for (name, cell) in header.iter().zip(csv_row.split(',')) {
            match &json_row[*name] {
                serde_json::Value::Number(n) => {
                    assert_eq!(cell.parse::<f64>().unwrap(), n.as_f64().unwrap())
                }
                serde_json::Value::String(s) => assert_eq!(cell, s),
                serde_json::Value::Bool(b) => assert_eq!(cell, b.to_string()),
                serde_json::Value::Null => assert!(cell.is_empty()),
                other => panic!("unexpected value {other}"),
            }
        }
    }
}

#[test]
fn output_file_is_written() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let out = cvdc(&["convert", "--db", "3.0", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# cvdc-csv v1 convert\n"));
}
