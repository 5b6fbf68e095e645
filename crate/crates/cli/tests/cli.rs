//! Black-box checks of the command-line surface: exit codes, report shape,
//! and the worked examples from the command help.

use std::process::Command;

use serde_json::Value;

fn hcrep(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hcrep"))
        .args(args)
        .output()
        .expect("binary runs");
    let code = out.status.code().expect("exit code");
    let stdout = String::from_utf8(out.stdout).unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    let json = if stdout.trim().is_empty() {
        Value::Null
    } else {
        serde_json::from_str(&stdout).unwrap_or(Value::Null)
    };
    (code, json, stderr)
}

#[test]
fn roots_a2_has_six_roots_and_exit_zero() {
    let (code, report, _) = hcrep(&["roots", "--type", "A", "--rank", "2", "--format", "table"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["roots"].as_array().unwrap().len(), 6);
    assert_eq!(report["command"], "roots");
    assert!(report["input_digest"].as_str().unwrap().len() == 64);
}

#[test]
fn unknown_flag_is_usage_error() {
    let (code, _, _) = hcrep(&["--no-such-flag"]);
    assert_eq!(code, 2);
}

#[test]
fn missing_system_selector_is_usage_error() {
    let (code, _, stderr) = hcrep(&["roots"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("--type") || stderr.contains("--cartan"));
}

#[test]
fn pair_classify_reports_two_systems() {
    let (code, report, _) = hcrep(&[
        "pair",
        "--type",
        "A",
        "--rank",
        "2",
        "--mark",
        "2",
        "--classify",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["admissible_count"], 2);
    let systems = report["results"]["admissible_systems"].as_array().unwrap();
    for sys in systems {
        assert!(sys["verdicts"]["passed"].as_bool().unwrap());
        assert_eq!(sys["s"], 1);
        assert_eq!(sys["p_t"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn pair_rejects_empty_and_out_of_range_marks() {
    let (code, _, _) = hcrep(&["pair", "--type", "A", "--rank", "2", "--mark", "9"]);
    assert_eq!(code, 2);
}

#[test]
fn mult_matches_oracle_on_worked_example() {
    let (code, report, _) = hcrep(&[
        "mult", "--type", "A", "--rank", "2", "--mark", "2", "--lambda", "0,0", "--mu", "1,-2",
        "--oracle",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["multiplicity"], "1");
    assert_eq!(report["results"]["oracle_multiplicity"], "1");
    assert_eq!(report["results"]["oracle_agrees"], true);
}

#[test]
fn criteria_reports_three_verdicts() {
    let (code, report, _) = hcrep(&[
        "criteria", "--type", "A", "--rank", "2", "--mark", "2", "--lambda", "1,-3",
    ]);
    assert_eq!(code, 0);
    let results = &report["results"];
    assert!(results["unitarity_necessary"]["holds"].as_bool().unwrap());
    assert!(results["duflo"]["witnesses"].as_array().unwrap().len() == 3);
    assert!(results["irreducibility_sufficient"]["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .all(|w| w["value"].is_string()));
}

#[test]
fn charorbit_rank_one_examples() {
    let (code, report, _) = hcrep(&[
        "charorbit",
        "--type",
        "A",
        "--rank",
        "1",
        "--lambda",
        "0",
        "--mu",
        "-2",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["equal_infinitesimal_character"], true);
    let (_, report, _) = hcrep(&[
        "charorbit",
        "--type",
        "A",
        "--rank",
        "1",
        "--lambda",
        "0",
        "--mu",
        "-1",
    ]);
    assert_eq!(report["results"]["equal_infinitesimal_character"], false);
}

#[test]
fn uea_casimir_chi_values() {
    let (code, report, _) = hcrep(&[
        "uea",
        "--algebra",
        "sl2",
        "--casimir",
        "--chi",
        "--lambda",
        "3",
    ]);
    assert_eq!(code, 0);
    // n²/2 + n at n = 3.
    assert_eq!(report["results"]["chi"], "15/2");
    assert_eq!(report["results"]["casimir_beta"], "h1 + 1/2*h1^2");
}

#[test]
fn cell_small_run_passes() {
    let (code, report, _) = hcrep(&[
        "cell",
        "--pq",
        "1,1",
        "--samples",
        "25",
        "--seed",
        "5",
        "--tol",
        "1e-10",
    ]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["inclusion"]["inside"], 25);
    assert_eq!(
        report["results"]["inclusion"]["failures"]
            .as_array()
            .unwrap()
            .len(),
        0
    );
}

#[test]
fn verify_paper_rejects_bad_profile() {
    let (code, _, _) = hcrep(&["verify-paper", "--profile", "nope"]);
    assert_eq!(code, 2);
}

#[test]
fn output_flag_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("hcrep-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("roots.json");
    let (code, _, _) = hcrep(&[
        "roots",
        "--type",
        "A",
        "--rank",
        "1",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["results"]["rank"], 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn uea_accepts_json_structure_constants() {
    let dir = std::env::temp_dir().join(format!("hcrep-sc-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("sl2.json");
    std::fs::write(
        &path,
        r#"{"cartan": [[2]],
            "brackets": [[2, 0, 1, "1"], [1, 2, 2, "2"], [1, 0, 0, "-2"]]}"#,
    )
    .unwrap();
    let algebra = format!("@{}", path.display());
    let (code, report, _) = hcrep(&["uea", "--algebra", &algebra, "--casimir"]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["casimir_beta"], "h1 + 1/2*h1^2");
    // Broken Jacobi is rejected as a usage error.
    let bad = dir.join("bad.json");
    std::fs::write(
        &bad,
        r#"{"cartan": [[2]],
            "brackets": [[2, 0, 2, "1"], [1, 2, 2, "2"], [1, 0, 0, "-2"]]}"#,
    )
    .unwrap();
    let algebra = format!("@{}", bad.display());
    let (code, _, stderr) = hcrep(&["uea", "--algebra", &algebra, "--casimir"]);
    assert_eq!(code, 2, "stderr: {stderr}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn cartan_file_input() {
    let dir = std::env::temp_dir().join(format!("hcrep-cartan-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c2.json");
    std::fs::write(&path, "[[2,-1],[-2,2]]").unwrap();
    let (code, report, _) = hcrep(&["roots", "--cartan", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(report["results"]["roots"].as_array().unwrap().len(), 8);
    assert_eq!(report["results"]["symmetrizer"], serde_json::json!([1, 2]));
    std::fs::remove_dir_all(&dir).ok();
}
