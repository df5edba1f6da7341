use std::fs;
use std::process::{Command, Output};

fn threept(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threept"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn reduce_prints_central_coordinates() {
    let o = threept(&["reduce", "t^1*u", "t^-2*u"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "c0 = -6, c1 = 0\n");
}

#[test]
fn bracket_of_odd_generators() {
    let o = threept(&["bracket", "h1[0]", "e1[0]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("2*e[t^2] + 8*e[t^1]"));
}

#[test]
fn bracket_with_central_term() {
    let o = threept(&["bracket", "e[t^1]", "f[t^-1]"]);
    assert_eq!(stdout(&o), "h[t^0] - w0\nc0 = -1, c1 = 0\n");
}

#[test]
fn apply_modes() {
    let o = threept(&["apply", "e", "-2", "x_2*v0", "--r", "1", "--kappa0", "3"]);
    assert_eq!(stdout(&o), "-7*v0\n");
    let o = threept(&["apply", "a*", "0", "v0"]);
    assert_eq!(stdout(&o), "x_0*v0\n");
    let o = threept(&["apply", "w0", "0", "v1"]);
    assert_eq!(stdout(&o), "5*v1\n");
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        &["bracket", "q[0]", "e[0]"][..],
        &["reduce", "t^", "u"],
        &["apply", "e", "0", "x_1"],
        &["verify", "--r", "2"],
        &["verify", "--suites", "nope"],
        &["frobnicate"],
    ] {
        assert_eq!(threept(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_writes_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    let out = dir.path().join("report.json");
    fs::write(&cfg, r#"{"r": [1], "kappa0": ["1"], "m_min": -1, "m_max": 1, "degree_max": 1, "suites": ["oscillator", "realization"]}"#)
        .unwrap();
    let o = threept(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["summary"]["passed"], true);
    assert_eq!(report["index_range"], serde_json::json!([-5, 5]));
    assert_eq!(report["suites"][1]["suite"], "realization");
    assert_eq!(
        report["suites"][1]["families"].as_array().unwrap().len(),
        36
    );
}

#[test]
fn flags_override_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.json");
    fs::write(&cfg, r#"{"suites": ["realization"], "degree_max": 1}"#).unwrap();
    let o = threept(&[
        "verify",
        "--config",
        cfg.to_str().unwrap(),
        "--suites",
        "ring",
        "--m-min",
        "-1",
        "--m-max",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["config"]["suites"], serde_json::json!(["ring"]));
    assert_eq!(report["config"]["degree_max"], 1);
}

#[test]
fn published_closed_form_failures_exit_1() {
    let o = threept(&[
        "verify", "--suites", "kahler", "--m-min", "-2", "--m-max", "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["summary"]["passed"], false);
}

#[test]
fn paper_heisenberg_variant_is_report_only() {
    let o = threept(&[
        "verify",
        "--suites",
        "heisenberg",
        "--heis-variant",
        "paper",
        "--m-min",
        "-2",
        "--m-max",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let suite = &report["suites"][0];
    assert_eq!(suite["asserted"], false);
    assert!(suite["failures"].as_u64().unwrap() > 0);
}
