//! Acceptance suite: runs every verification criterion at its stated
//! tolerance and prints one pass/fail line per criterion.
//!
//! Criteria 1–11 come from the library suite at the full profile; criterion
//! 12 exercises the binary itself (byte-identical reports under a fixed
//! seed, timing excluded).

use std::process::Command;
use std::sync::OnceLock;

use hcrep_core::verify::{run_acceptance, CriterionResult, Profile};

const SEED: u64 = 42;

fn suite() -> &'static Vec<CriterionResult> {
    static RESULTS: OnceLock<Vec<CriterionResult>> = OnceLock::new();
    RESULTS.get_or_init(|| run_acceptance(Profile::Full, SEED))
}

fn check(id: u32) {
    let r = suite()
        .iter()
        .find(|r| r.id == id)
        .unwrap_or_else(|| panic!("criterion {id} missing"));
    println!(
        "{} {:>2} {:<22} {}",
        if r.passed { "PASS" } else { "FAIL" },
        r.id,
        r.name,
        r.detail
    );
    assert!(
        r.passed,
        "criterion {} ({}) failed: {}",
        r.id, r.name, r.detail
    );
}

#[test]
fn criterion_01_a2_admissibility() {
    check(1);
}

#[test]
fn criterion_02_theorem3_suite() {
    check(2);
}

#[test]
fn criterion_03_admissible_count() {
    check(3);
}

#[test]
fn criterion_04_multiplicity_oracle() {
    check(4);
}

#[test]
fn criterion_05_section_dimension() {
    check(5);
}

#[test]
fn criterion_06_hc_homomorphism() {
    check(6);
}

#[test]
fn criterion_07_character_orbit() {
    check(7);
}

#[test]
fn criterion_08_criteria_consistency() {
    check(8);
}

#[test]
fn criterion_09_trivial_unitary() {
    check(9);
}

#[test]
fn criterion_10_big_cell() {
    check(10);
}

#[test]
fn criterion_11_psi_extension() {
    check(11);
}

/// Criterion 12: two runs of `verify-paper --profile quick` with one seed
/// give byte-identical reports once the timing field is stripped.
#[test]
fn criterion_12_deterministic_reports() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_hcrep"))
            .args(["verify-paper", "--profile", "quick", "--seed", "42"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "verify-paper must pass");
        String::from_utf8(out.stdout).expect("utf-8 report")
    };
    let strip_timing = |report: &str| -> String {
        let mut v: serde_json::Value = serde_json::from_str(report).expect("JSON report");
        v.as_object_mut().unwrap().remove("timing_ms");
        serde_json::to_string_pretty(&v).unwrap()
    };
    let first = run();
    let second = run();
    let passed = strip_timing(&first) == strip_timing(&second);
    println!(
        "{} 12 {:<22} two quick-profile reports byte-identical modulo timing",
        if passed { "PASS" } else { "FAIL" },
        "determinism"
    );
    assert!(passed, "reports differ beyond the timing field");
}
