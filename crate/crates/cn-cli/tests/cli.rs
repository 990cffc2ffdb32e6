//! End-to-end CLI checks: command surfaces, exit codes, record files, and
//! output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::sync::atomic::{AtomicU32, Ordering};

fn cn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_path(tag: &str) -> PathBuf {
    static COUNTER: AtomicU32 = AtomicU32::new(0);
    let n = COUNTER.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!(
        "cn-cli-test-{}-{n}-{tag}.jsonl",
        std::process::id()
    ))
}

#[test]
fn triple_derive_reproduces_the_squarefree_set() {
    let out = cn(&["triple", "--s", "2", "--t", "1", "--derive"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("triple: (3, 4, 5)"));
    assert!(text.contains("area: 6"));
    assert!(text.contains("ac = 15 -> square-free part 15"));
    assert!(text.contains("bc = 20 -> square-free part 5 (square factor 4)"));
    assert!(text.contains("b2-a2 = 7 -> square-free part 7"));
    assert!(text.contains("a2+c2 = 34 -> square-free part 34"));
    assert!(text.contains("b2+c2 = 41 -> square-free part 41"));
    assert!(text.contains("congruent set: {5, 6, 7, 15, 34, 41}"));
}

#[test]
fn triple_rejects_invalid_parameters_with_exit_2() {
    let out = cn(&["triple", "--s", "4", "--t", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("coprime"), "stderr: {err}");
}

#[test]
fn triple_3_2_reports_area_30() {
    let out = cn(&["triple", "--s", "3", "--t", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("triple: (5, 12, 13)"));
    assert!(text.contains("area: 30"));
}

#[test]
fn pell_34_negative_reports_even_period_and_unsolvable() {
    let out = cn(&["pell", "--d", "34", "--negative"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("period = [1, 4, 1, 10] (length 4, even)"));
    assert!(text.contains("unsolvable"));
    assert!(text.contains("necessary condition: satisfied (necessary, not sufficient)"));
}

#[test]
fn pell_2_lists_positive_solutions() {
    let out = cn(&["pell", "--d", "2", "--count", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("solution 1: (3, 2)"));
    assert!(text.contains("solution 2: (17, 12)"));
}

#[test]
fn pell_square_d_exits_2() {
    let out = cn(&["pell", "--d", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn congruent_theorem8_writes_certified_record() {
    let path = temp_path("t8");
    let out = cn(&[
        "congruent",
        "theorem8",
        "--d",
        "10",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let contents = std::fs::read_to_string(&path).unwrap();
    let record: serde_json::Value = serde_json::from_str(contents.trim()).unwrap();
    assert_eq!(record["n"], "15");
    assert_eq!(record["method"], "theorem8");
    assert_eq!(record["status"], "certified");
    assert_eq!(record["params"]["d"], "10");
    assert_eq!(record["certificate"]["n"], "15");
    std::fs::remove_file(&path).ok();
}

#[test]
fn congruent_corollary9_records_3705() {
    let out = cn(&["congruent", "corollary9", "--primes", "5,13", "--out", "-"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["n"], "3705");
    assert_eq!(record["params"]["d"], "130");
    assert_eq!(record["status"], "certified");
}

#[test]
fn congruent_theorem10_wrong_residue_exits_2() {
    let out = cn(&["congruent", "theorem10", "--d", "6"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("2 (mod 4)"), "stderr: {err}");
}

#[test]
fn congruent_theorem8_unsolvable_is_sweep_friendly() {
    let out = cn(&["congruent", "theorem8", "--d", "34", "--out", "-"]);
    assert!(out.status.success(), "unsolvable must still exit 0");
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["status"], "unsolvable");
    assert!(record.get("certificate").is_none());
}

#[test]
fn closing_example_y12_certifies_145() {
    let out = cn(&["congruent", "closing-example", "--y", "12", "--out", "-"]);
    assert!(out.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(record["n"], "145");
    assert_eq!(record["params"]["bonus"], "145");
}

#[test]
fn sweep_pell_neg_30_covers_the_admissible_set() {
    let out = cn(&["sweep", "pell-neg", "--bound", "30", "--out", "-"]);
    assert!(out.status.success());
    let records: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let ds: Vec<&str> = records
        .iter()
        .map(|r| r["params"]["d"].as_str().unwrap())
        .collect();
    assert_eq!(ds, vec!["2", "10", "26"]);
    assert!(records.iter().all(|r| r["status"] == "certified"));
}

#[test]
fn sweep_families_bound_1_lists_b1_b2_discrepancies() {
    let path = temp_path("fam1");
    let out = cn(&[
        "sweep",
        "families",
        "--bound",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("21 entries"));
    assert!(text.contains("discrepancy: B1 k=1: printed 15 vs derived 30"));
    assert!(text.contains("discrepancy: B2 k=1: printed 78 vs derived 156"));
    let contents = std::fs::read_to_string(&path).unwrap();
    assert_eq!(contents.lines().count(), 21);
    std::fs::remove_file(&path).ok();
}

#[test]
fn sweep_families_bound_0_is_empty() {
    let path = temp_path("fam0");
    let out = cn(&[
        "sweep",
        "families",
        "--bound",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let contents = std::fs::read_to_string(&path).unwrap_or_default();
    assert!(contents.is_empty());
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_accepts_sweep_output_roundtrip() {
    let path = temp_path("roundtrip");
    for sweep in [
        ["sweep", "pell-neg", "--bound", "60"],
        ["sweep", "pell-pos", "--bound", "60"],
        ["sweep", "families", "--bound", "4"],
    ] {
        let mut args: Vec<&str> = sweep.to_vec();
        let p = path.to_str().unwrap();
        args.extend(["--out", p]);
        let out = cn(&args);
        assert!(out.status.success());
    }
    let out = cn(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "verify: {}", stdout(&out));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_flags_tampered_hypotenuse_with_exit_1() {
    let path = temp_path("tampered");
    let out = cn(&["congruent", "theorem8", "--d", "10", "--out", "-"]);
    let line = stdout(&out);
    let tampered = line.replace("17/2", "19/2");
    assert_ne!(line, tampered);
    std::fs::write(&path, tampered).unwrap();
    let out = cn(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("pythagoras"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_accepts_bare_certificates() {
    let path = temp_path("bare");
    let out = cn(&["congruent", "theorem10", "--d", "3", "--out", "-"]);
    let record: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    let cert = record["certificate"].clone();
    std::fs::write(&path, format!("{cert}\n")).unwrap();
    let out = cn(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_reports_malformed_json_line_with_exit_2() {
    let path = temp_path("malformed");
    std::fs::write(&path, "{\"n\": \"6\"\nnot json\n").unwrap();
    let out = cn(&["verify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 1"), "stderr: {err}");
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_missing_file_exits_3() {
    let out = cn(&["verify", "/nonexistent/cn-test.jsonl"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn sweep_output_is_byte_identical_across_runs() {
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_cn"))
            .args(["sweep", "pell-pos", "--bound", "40", "--out", "-"])
            .env("CN_THREADS", threads)
            .output()
            .expect("binary runs");
        assert!(out.status.success());
        out.stdout
    };
    // Worker count must not affect the byte stream.
    assert_eq!(run("1"), run("2"));
    assert_eq!(run("2"), run("2"));
    let run_fam = || {
        let out = cn(&["sweep", "families", "--bound", "3", "--out", "-"]);
        assert!(out.status.success());
        out.stdout
    };
    assert_eq!(run_fam(), run_fam());
}

#[test]
fn catalog_schema_matches_golden_files() {
    let cases: [(&[&str], &str); 3] = [
        (
            &["congruent", "theorem8", "--d", "10", "--out", "-"],
            include_str!("golden/theorem8_d10.jsonl"),
        ),
        (
            &["congruent", "closing-example", "--y", "12", "--out", "-"],
            include_str!("golden/closing_y12.jsonl"),
        ),
        (
            &["sweep", "families", "--bound", "1", "--out", "-"],
            include_str!("golden/families_k1.jsonl"),
        ),
    ];
    for (args, golden) in cases {
        let out = cn(args);
        assert!(out.status.success());
        assert_eq!(stdout(&out), golden, "schema drift for {args:?}");
    }
}

#[test]
fn records_append_across_invocations() {
    let path = temp_path("append");
    for d in ["10", "26"] {
        let out = cn(&[
            "congruent",
            "theorem8",
            "--d",
            d,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let contents = std::fs::read_to_string(&path).unwrap();
    assert_eq!(contents.lines().count(), 2);
    std::fs::remove_file(&path).ok();
}
