//! Process-level tests of the `conewave` binary: flags, artifacts, exit codes.

use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conewave"))
}

fn tmpdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conewave-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn reference_run_exact_mode() {
    let dir = tmpdir("exact");
    let coeffs = dir.join("coeffs.json");
    let solution = dir.join("solution.txt");
    let residual = dir.join("residual.json");
    let out = bin()
        .args([
            "--dim",
            "2",
            "--convention",
            "trig-paper",
            "-f",
            "t*x1^2 + t^2*x2 + x1*x2^2",
            "--mode",
            "exact",
        ])
        .arg("--out-coeffs")
        .arg(&coeffs)
        .arg("--out-solution")
        .arg(&solution)
        .arg("--out-residual")
        .arg(&residual)
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));

    // coefficients file carries the expected spot values
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&coeffs).unwrap()).unwrap();
    let entries = doc["solution"]["entries"].as_array().unwrap();
    let find = |n: u64, m: u64, j: u64, ell: u64| -> String {
        entries
            .iter()
            .find(|e| {
                e[0].as_u64() == Some(n)
                    && e[1].as_u64() == Some(m)
                    && e[2].as_u64() == Some(j)
                    && e[3].as_u64() == Some(ell)
            })
            .map(|e| e[4].as_str().unwrap().to_string())
            .unwrap_or_else(|| panic!("missing entry ({n},{m},{j},{ell})"))
    };
    assert_eq!(find(3, 3, 1, 1), "1/8");
    assert_eq!(find(3, 0, 0, 1), "-3");

    // the closed form written to disk reparses to the synthesized solution
    let text = std::fs::read_to_string(&solution).unwrap();
    let u = conewave::expr::parse_poly(text.trim(), 2).unwrap();
    let f = conewave::expr::parse_poly("t*x1^2 + t^2*x2 + x1*x2^2", 2).unwrap();
    assert!(u.conjugated_wave().sub(&f).is_zero());

    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&residual).unwrap()).unwrap();
    assert_eq!(report["exact_residual_zero"], serde_json::json!(true));
    assert!(report["max_fd_residual"].as_f64().unwrap() <= 1e-6);
}

#[test]
fn zero_forcing_succeeds() {
    let out = bin().args(["--dim", "2", "-f", "0"]).output().unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("forcing coefficients: 0"), "{stdout}");
}

#[test]
fn float_mode_reports_small_residual() {
    let out = bin()
        .args([
            "--dim",
            "2",
            "--convention",
            "trig-paper",
            "-f",
            "t*x1^2 + t^2*x2 + x1*x2^2",
            "--mode",
            "float",
            "--probes",
            "50",
            "--seed",
            "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn parse_errors_exit_nonzero() {
    let out = bin().args(["--dim", "2", "-f", "x3 + 1"]).output().unwrap();
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("unknown variable"), "{stderr}");
}

#[test]
fn deterministic_given_seed() {
    let run = || {
        let out = bin()
            .args([
                "--dim", "2", "-f", "t^2*x1 - x2^3", "--mode", "float", "--seed", "11",
            ])
            .output()
            .unwrap();
        assert!(out.status.success());
        String::from_utf8_lossy(&out.stdout).to_string()
    };
    assert_eq!(run(), run());
}

#[test]
fn sample_grid_writes_csv() {
    let dir = tmpdir("grid");
    let out = bin()
        .args(["--dim", "1", "-f", "t*x1", "--sample-grid", "4,5,2"])
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.join("samples.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "x1,t,u,U");
    assert_eq!(lines.count(), 20);
}
