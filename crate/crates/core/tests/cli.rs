use std::process::{Command, Output};

fn triples(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triples")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn walls_json() {
    let o = triples(&["walls", "--triple", "2,1,2,0", "--window", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"interval":["1","2"],"walls":["3/2"]}"#);
}

#[test]
fn walls_csv() {
    let o = triples(&["walls", "--triple", "2,1,2,0", "--format", "csv"]);
    assert_eq!(stdout(&o), "wall\n3/2\n");
}

#[test]
fn dimension() {
    let o = triples(&["dimension", "--triple", "2,1,2,0", "--genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn vortex_sweep_threshold() {
    let o = triples(&[
        "vortex-sweep", "--d1", "0", "--d2", "0", "--profile", "constant:3.14159", "--sigmas", "-0.5,0.5", "--n", "64",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let rows = json(&o)["rows"].as_array().unwrap().clone();
    let feasible: Vec<bool> = rows.iter().map(|r| r["feasible"].as_bool().unwrap()).collect();
    assert_eq!(feasible, [false, true]);
}

#[test]
fn vortex_solve_summary_and_dump() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fields.csv");
    let o = triples(&[
        "vortex-solve", "--d1", "1", "--d2", "0", "--sigma", "2", "--profile", "cosine:3.14159:1.5", "--n", "32",
        "--dump-fields", path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let summary = json(&o);
    for key in ["sigma", "tau", "tau_prime", "d1", "d2", "feasible", "residual_sup", "iterations"] {
        assert!(summary.get(key).is_some(), "{key}");
    }
    assert_eq!(summary["tau"], 1.5);
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("x,y,u1,u2,res1,res2\n"));
    assert_eq!(text.lines().count(), 1 + 32 * 32);

    let o = triples(&["vortex-solve", "--d1", "0", "--d2", "0", "--sigma", "1", "--n", "32"]);
    assert!(!stdout(&o).is_empty());
}

#[test]
fn infeasible_and_unstable_exit_one() {
    let o = triples(&["vortex-solve", "--d1", "0", "--d2", "0", "--sigma=-0.5", "--n", "32"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["feasible"], false);

    let o = triples(&["theta", "--triple", "1,1,1,0", "--sub", "1,0,1,0", "--tau", "1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["verdict"]["status"], "unstable");
}

#[test]
fn input_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &["convert", "--triple", "1,1,1,0", "--tau", "0.5"],
        &["convert", "--triple", "1,1,1,0", "--tau", "1/0"],
        &["walls", "--triple", "0,1,1,0"],
        &["generic", "--triple", "2,1,2,0", "--tau", "5/2"],
        &["bounds", "--triple", "2,1,2,0", "--tau", "1"],
        &["dual", "--triple", "2,1,2,0", "--sub", "2,0,1,0"],
        &["theta", "--triple", "1,1,1,0", "--sub", "2,0,1,0", "--tau", "1"],
        &["vortex-solve", "--d1", "0", "--d2", "0", "--tau", "1", "--tau-prime", "0.5", "--n", "32"],
        &["vortex-solve", "--d1", "0", "--d2", "0", "--sigma", "1", "--n", "15"],
        &["vortex-sweep", "--d1", "0", "--d2", "0", "--sigmas", "1,0.5", "--n", "16"],
        &["vortex-solve", "--d1", "0", "--d2", "0", "--sigma", "1", "--profile", "cosine:1:2"],
        &["no-such-command"],
    ];
    for args in cases {
        let o = triples(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn distinct_messages_for_distinct_preconditions() {
    let err = |args: &[&str]| String::from_utf8(triples(args).stderr).unwrap();
    let decimal = err(&["convert", "--triple", "1,1,1,0", "--tau", "0.5"]);
    let interval = err(&["generic", "--triple", "2,1,2,0", "--tau", "5/2"]);
    let trace = err(&["vortex-solve", "--d1", "0", "--d2", "0", "--tau", "1", "--tau-prime", "0.5", "--n", "32"]);
    assert!(interval.contains("admissible interval"));
    assert!(trace.contains("tau + tau'"));
    assert!(decimal != interval && interval != trace);
}

#[test]
fn output_is_deterministic() {
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            triples(&["reduce-check", "--triple", "3,2,5,-1", "--sigma", "7/3", "--samples", "500", "--seed", "42"]).stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let sweep = |_| triples(&["vortex-sweep", "--d1", "1", "--d2", "0", "--sigmas", "0.5,1.5,2", "--n", "32"]).stdout;
    assert_eq!(sweep(0), sweep(1));
}

#[test]
fn convert_and_dual() {
    let o = triples(&["convert", "--triple", "1,1,1,0", "--tau", "2"]);
    let v = json(&o);
    assert_eq!((v["sigma"].as_str(), v["tau_prime"].as_str()), (Some("3"), Some("-1")));

    let o = triples(&["dual", "--triple", "2,1,2,0", "--sub", "1,0,1,0", "--tau", "4/3"]);
    let v = json(&o);
    assert_eq!(v["dual"], serde_json::json!([1, 2, 0, -2]));
    assert_eq!(v["dual_tau"], "2/3");
}

#[test]
fn reduce_check_agreement() {
    let o = triples(&["reduce-check", "--triple", "1,1,1,0", "--sigma", "3", "--sub", "1,0,1,0", "--samples", "200"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["disagreements"], 0);
    assert_eq!(v["extension_slope"], "2");
}

#[test]
fn help_exits_zero() {
    let o = triples(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("vortex-sweep"));
}
