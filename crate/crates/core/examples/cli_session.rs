// Driving the command-line front end in-process.

use evofam::cli::run;

pub fn run_example() -> evofam::Result<()> {
    let dir = std::env::temp_dir().join("evofam-cli-session");
    std::fs::create_dir_all(&dir).map_err(|e| evofam::Error::Config(e.to_string()))?;
    let report = dir.join("verify.json");
    let report = report.to_string_lossy();
    let runs: [&[&str]; 4] = [
        &[
            "evofam",
            "verify",
            "--family",
            "glued:radial+rotation:t",
            "--interval",
            "0,2",
            "--out",
            &report,
        ],
        &["evofam", "verify", "--family", "corrupted-demo", "--out", &report],
        &["evofam", "bounds", "--trials", "50", "--seed", "42", "--out", &report],
        &["evofam", "verify", "--interval", "1,0"],
    ];
    for args in runs {
        println!("{} -> exit {}", args[1..].join(" "), run(args.iter().copied()));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cli example");
}
