//! End-to-end checks of the binary: worked values, exit codes, and
//! byte-stable output for fixed inputs.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_wronski"))
}

#[test]
fn chi_worked_values() {
    let out = bin()
        .args(["chi", "--lambda", "6,1", "--mu", "2,2,1,1,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");

    let out = bin()
        .args([
            "chi",
            "--lambda",
            "3,3,3,3,3,3",
            "--mu",
            "2,2,2,2,2,2,1,1,1,1,1,1",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "0");

    let out = bin()
        .args(["chi", "--lambda", "2,1", "--mu", "1,1,1"])
        .output()
        .unwrap();
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "2");
}

#[test]
fn usage_errors_exit_2() {
    let out = bin()
        .args(["chi", "--lambda", "2,1", "--mu", "1,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["verify", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["fibre", "--lambda", "2,1"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fibre_with_explicit_target() {
    let out = bin()
        .args(["fibre", "--lambda", "1", "--g", r#"{"coeffs":["1","1"]}"#])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["totals"]["complex_count"], 1);
    assert_eq!(v["solutions"][0]["point"]["coords"]["1,1"][0], 1.0);
}

#[test]
fn fibre_reports_signs_over_ladder_targets() {
    let out = bin()
        .args(["fibre", "--lambda", "2,1", "--mu", "2,1"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["totals"]["complex_count"], 2);
    assert_eq!(v["totals"]["real_count_with_multiplicity"], 2);
    assert_eq!(v["sign_sum"], 0);
    let signs: Vec<i64> = v["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["sgn"].as_i64().unwrap())
        .collect();
    let mut sorted = signs.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, vec![-1, 1]);

    // No real solutions over the skew ladder.
    let out = bin()
        .args(["fibre", "--lambda", "2,1", "--mu", "1,2"])
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["totals"]["real_count_with_multiplicity"], 0);
    assert_eq!(v["totals"]["complex_count"], 2);
}

#[test]
fn verify_stream_and_exit() {
    let out = bin()
        .args(["verify", "slices", "--n-max", "4"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("PASS C5/one-box-slice"));
    assert!(text.lines().last().unwrap().starts_with("OK:"));
}

#[test]
fn output_is_byte_stable() {
    let run = || {
        bin()
            .args([
                "verify",
                "wronski",
                "--n-max",
                "3",
                "--samples",
                "10",
                "--seed",
                "42",
            ])
            .output()
            .unwrap()
    };
    let a = run();
    let b = run();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let fibre = || {
        bin()
            .args(["fibre", "--lambda", "2,1", "--mu", "1,1,1"])
            .output()
            .unwrap()
    };
    let a = fibre();
    let b = fibre();
    assert_eq!(a.stdout, b.stdout);
}
