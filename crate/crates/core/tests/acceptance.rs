//! Acceptance suite: every verification criterion at its stated scale, one
//! pass/fail line per criterion. Run with `--nocapture` to see the lines on
//! success as well.

use wronski::verify::{run_criterion, VerifyOptions};

fn run(idx: usize, name: &str) {
    let opts = VerifyOptions::default();
    let records = run_criterion(idx, &opts);
    assert!(!records.is_empty(), "criterion {idx} produced no records");
    let failures: Vec<_> = records.iter().filter(|r| !r.pass).collect();
    let total_ms: u128 = records.iter().map(|r| r.runtime_ms).sum();
    println!(
        "{} criterion {idx:>2} ({name}): {} records, {} failed, {} ms",
        if failures.is_empty() { "PASS" } else { "FAIL" },
        records.len(),
        failures.len(),
        total_ms
    );
    for f in &failures {
        println!(
            "    FAIL {} [{}] expected: {} | observed: {}",
            f.claim, f.params, f.expected, f.observed
        );
    }
    assert!(
        failures.is_empty(),
        "criterion {idx} ({name}) had {} failing records",
        failures.len()
    );
}

#[test]
fn criterion_01_combinatorics_identities() {
    run(1, "tableau count identities, n <= 8");
}

#[test]
fn criterion_02_character_values() {
    run(2, "characters: oracle, hooks, duality");
}

#[test]
fn criterion_03_paper_constants() {
    run(3, "inversion sums and character minima for 3^5, 3^6");
}

#[test]
fn criterion_04_wronski_consistency() {
    run(4, "affine = pluecker = dual route, n <= 6");
}

#[test]
fn criterion_05_slice_formulas() {
    run(5, "slice closed forms and the two-box hook identity, n <= 8");
}

#[test]
fn criterion_06_all_real_cover() {
    run(6, "all-real fibres are full, real, simple, n <= 5");
}

#[test]
fn criterion_07_special_fibre_counts_and_labels() {
    run(7, "ladder fibres: real counts, labels, worked valuations");
}

#[test]
fn criterion_08_degree_equals_character() {
    run(8, "ledger signs match strip signs; sums match characters");
}

#[test]
fn criterion_09_ambient_degree() {
    run(9, "signed real counts equal the inversion sum; hook parity");
}

#[test]
fn criterion_10_bounds() {
    run(10, "two-sided bounds |chi| <= N_g <= f^lambda");
}

#[test]
fn criterion_11_tightness() {
    run(11, "two-row shapes: one sign class, N = |chi|, n <= 6");
}

#[test]
fn criterion_12_dual_sign_relation() {
    run(12, "sgn * dual sign = (-1)^{n2} on every label");
}

#[test]
fn criterion_13_path_independence() {
    run(13, "signs agree across spanning trees and merge orders");
}
