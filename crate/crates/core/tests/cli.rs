use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn evofam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evofam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn evofam_with_threads(threads: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evofam"))
        .env("EVOFAM_THREADS", threads)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = out.to_str().unwrap();
    assert_eq!(
        code(&evofam(&[
            "verify",
            "--family",
            "radial",
            "--interval",
            "0,1",
            "--out",
            o
        ])),
        0
    );
    assert_eq!(report(&out)["verdicts"]["ef3"]["passed"], true);

    assert_eq!(code(&evofam(&["verify", "--family", "corrupted-demo", "--out", o])), 1);
    let ef3 = report(&out)["residuals"]["ef3"].as_f64().unwrap();
    assert!(ef3 > 0.01, "{ef3}");

    assert_eq!(code(&evofam(&["verify", "--family", "radial", "--interval", "1,0"])), 2);
    assert_eq!(code(&evofam(&["verify", "--family", "spiral"])), 2);
    assert_eq!(code(&evofam(&["verify", "--grid", "1"])), 2);
    assert_eq!(code(&evofam(&["verify", "--radii", "0.9,0.5"])), 2);
}

#[test]
fn seed_is_recorded_verbatim() {
    let out = evofam(&["verify", "--family", "rotation:sin", "--seed", "18446744073709551615"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["seed"].as_u64(), Some(u64::MAX));
}

#[test]
fn bounds_exit_codes() {
    assert_eq!(code(&evofam(&["bounds", "--trials", "1000", "--seed", "42"])), 0);

    let widened = evofam(&["bounds", "--trials", "20", "--seed", "42", "--widen"]);
    assert_eq!(code(&widened), 1);
    let stderr = String::from_utf8_lossy(&widened.stderr);
    assert!(stderr.contains("violation") && stderr.contains("1.01z"), "{stderr}");

    let empty = evofam(&["bounds", "--trials", "0"]);
    assert_eq!(code(&empty), 0);
    assert!(String::from_utf8_lossy(&empty.stderr).contains("warning"));
}

#[test]
fn counterexample_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.json");
    let o = out.to_str().unwrap();
    assert_eq!(code(&evofam(&["counterexample", "--out", o])), 0);
    let v = report(&out);
    let gap = v["counterexample"]["witness"]["gap"].as_f64().unwrap();
    assert!((gap - 0.7933533402912352).abs() < 1e-12, "{gap}");
    assert_eq!(v["counterexample"]["exact_axioms"]["ef3"], true);

    let linear = dir.path().join("linear.toml");
    std::fs::write(&linear, "basis = [\"1\", \"sqrt2\"]\nimages = [\"pi\", \"pi*sqrt2\"]\n").unwrap();
    assert_eq!(
        code(&evofam(&["counterexample", "--spec", linear.to_str().unwrap()])),
        1
    );

    let malformed = dir.path().join("bad.toml");
    std::fs::write(&malformed, "basis = [\"1\", \"sqrt2\"\nimages = 3").unwrap();
    assert_eq!(
        code(&evofam(&["counterexample", "--spec", malformed.to_str().unwrap()])),
        2
    );
    assert_eq!(
        code(&evofam(&["counterexample", "--spec", "/nonexistent/spec.toml"])),
        2
    );
}

#[test]
fn scan_verdicts_and_tables() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tables");
    let out = dir.path().join("s.json");
    let args = [
        "scan",
        "--family",
        "radial",
        "--csv-dir",
        csv.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ];
    assert_eq!(code(&evofam(&args)), 0);
    for kind in ["right", "left", "joint", "diagonal"] {
        let text = std::fs::read_to_string(csv.join(format!("{kind}.csv"))).unwrap();
        assert!(text.starts_with("delta,radius,modulus\n"));
    }
    let v = report(&out);
    assert_eq!(v["verdicts"]["continuity"]["passed"], true);
    assert!(!v["certificates"].as_array().unwrap().is_empty());

    assert_eq!(code(&evofam(&["scan", "--family", "rotation:t^2"])), 0);

    let hamel = evofam(&["scan", "--family", "hamel"]);
    assert_eq!(code(&hamel), 1);
    let v: Value = serde_json::from_slice(&hamel.stdout).unwrap();
    assert_eq!(v["verdicts"]["continuity"]["passed"], false);
    for kind in ["right", "left"] {
        let rows = &v["moduli"][kind]["moduli"];
        let radii = v["moduli"][kind]["radii"].as_array().unwrap();
        let i = radii.iter().position(|r| r.as_f64() == Some(0.5)).unwrap();
        let floor = rows[i]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .fold(f64::INFINITY, f64::min);
        assert!(floor >= 0.79, "{kind}: {floor}");
    }
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "family = \"corrupted-demo\"\ninterval = [0.0, 2.0]\nseed = 5\n[grid]\nn_time = 5\n",
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let from_file = evofam(&["verify", "--config", c]);
    assert_eq!(code(&from_file), 1);
    let v: Value = serde_json::from_slice(&from_file.stdout).unwrap();
    assert_eq!(v["seed"], 5);
    assert_eq!(v["grid"]["n_time"], 5);
    assert_eq!(v["interval"][1], "2");

    assert_eq!(code(&evofam(&["verify", "--config", c, "--family", "radial"])), 0);

    std::fs::write(&cfg, "family = \"radial\"\ncolour = 1\n").unwrap();
    assert_eq!(code(&evofam(&["verify", "--config", c])), 2);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["scan", "--family", "loewner:mobius", "--seed", "3"];
    let one = evofam_with_threads("1", &args);
    let many = evofam_with_threads("8", &args);
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, many.stdout);
    let bounds = ["bounds", "--trials", "100", "--seed", "9"];
    assert_eq!(
        evofam_with_threads("1", &bounds).stdout,
        evofam_with_threads("3", &bounds).stdout
    );
    assert_eq!(code(&evofam_with_threads("zero", &args)), 2);
}
