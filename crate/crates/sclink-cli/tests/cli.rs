//! End-to-end tests driving the compiled `sclink` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

fn sclink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sclink"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Fresh path under the system temp dir; unique per test name.
fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("sclink-cli-{}-{name}", std::process::id()))
}

#[test]
fn spread_construct_then_verify_round_trips() {
    let file = scratch("spread.txt");
    let out = sclink(&[
        "construct",
        "spread",
        "--field",
        "2",
        "--k",
        "2",
        "--n",
        "4",
        "--method",
        "desarguesian",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = sclink(&[
        "verify",
        file.to_str().unwrap(),
        "--claim",
        "size=5",
        "--claim",
        "dim=2",
        "--claim",
        "distance=4",
        "--claim",
        "spread",
        "--claim",
        "maximal",
    ]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches(" pass").count(), 5);
}

#[test]
fn linkage_report_and_code_file() {
    let spread = scratch("link-m.txt");
    let linked = scratch("linked.txt");
    let out = sclink(&[
        "construct",
        "spread",
        "--field",
        "2",
        "--k",
        "2",
        "--n",
        "4",
        "--method",
        "orbit",
        "--output",
        spread.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    // verified run: 5 + 5 * 16 words at distance 4
    let out = sclink(&[
        "--format",
        "json",
        "construct",
        "linkage",
        "--m1",
        spread.to_str().unwrap(),
        "--m2",
        spread.to_str().unwrap(),
        "--rank-code",
        "gabidulin:2,2,4,2",
        "--verify",
        "--output",
        linked.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["N"], 85);
    assert_eq!(report["d"], 4);
    assert_eq!(report["verified"], true);
    let text = std::fs::read_to_string(&linked).unwrap();
    assert!(text.starts_with("2 8 2 85"));

    // without --verify the distance stays a prediction
    let out = sclink(&[
        "--format",
        "json",
        "construct",
        "linkage",
        "--m1",
        spread.to_str().unwrap(),
        "--m2",
        spread.to_str().unwrap(),
        "--rank-code",
        "companion:2,2,4",
        "--output",
        linked.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(report["N"], 85);
    assert_eq!(report["verified"], false);
}

#[test]
fn bounds_reports_the_exact_binary_value() {
    let out = sclink(&["bounds", "--field", "2", "--k", "3", "--n", "8"]);
    assert!(out.status.success());
    let line = stdout(&out);
    assert!(line.contains("construction=33"), "{line}");
    assert!(line.contains("upper=34"), "{line}");
    assert!(line.contains("exact=34"), "{line}");

    // no exact column away from q = 2, k = 3
    let out = sclink(&["bounds", "--field", "3", "--k", "2", "--n", "7"]);
    assert!(out.status.success());
    assert!(!stdout(&out).contains("exact"), "{}", stdout(&out));
}

#[test]
fn failed_claims_exit_nonzero_with_witnesses() {
    let file = scratch("claims.txt");
    let out = sclink(&[
        "construct",
        "partial-spread",
        "--field",
        "2",
        "--k",
        "3",
        "--n",
        "8",
        "--method",
        "etzion-vardy",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));

    let out = sclink(&[
        "verify",
        file.to_str().unwrap(),
        "--claim",
        "size=34",
        "--claim",
        "spread",
    ]);
    assert!(!out.status.success());
    let text = stdout(&out);
    assert!(text.contains("file holds 33"), "{text}");
    assert!(text.contains("uncovered"), "{text}");
}

#[test]
fn tables_match_the_frozen_rows() {
    let out = sclink(&["--format", "json", "table", "largelink"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[0]["linkage"], 315_469);
    assert_eq!(rows[9]["linkage"], 23_322_701);
    assert_eq!(rows[9]["largest_known"], 23_322_701);

    let out = sclink(&["--format", "json", "table", "mrdlinkage"]);
    assert!(out.status.success());
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["link_mrd"], 262_208);
    assert_eq!(rows[2]["extended_lifted_mrd"], 4_260_864);
}

#[test]
fn decode_routes_branches_and_flags_failures() {
    let spec = scratch("three-block.spec");
    let recv = scratch("received.txt");
    std::fs::write(
        &spec,
        "# three-block test instance\n\
         m1 gabidulin:2,2,4,2\n\
         m2 gabidulin:2,2,4,2\n\
         m3 spread:2,2,2\n\
         m4 spread:2,2,2\n",
    )
    .unwrap();
    std::fs::write(
        &recv,
        "2 10 -1 4\n\
         dim 2\n1 0 0 0 0 0 0 0 0 0\n0 1 0 0 0 0 0 0 0 0\n\
         dim 2\n0 0 1 0 1 0 0 0 0 0\n0 0 0 1 0 1 0 0 0 0\n\
         dim 2\n0 0 0 0 0 0 1 0 1 0\n0 0 0 0 0 0 0 1 0 1\n\
         dim 1\n1 0 0 0 0 0 0 0 0 0\n",
    )
    .unwrap();
    let out = sclink(&[
        "--format",
        "json",
        "decode",
        "--code",
        spec.to_str().unwrap(),
        "--received",
        recv.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let rows: Vec<serde_json::Value> = stdout(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let branches: Vec<&str> = rows.iter().map(|r| r["branch"].as_str().unwrap()).collect();
    assert_eq!(branches, ["c", "b", "a", "c"]);
    assert_eq!(rows[3]["distance"], 1);

    // a space far from every codeword must fail the run
    std::fs::write(
        &recv,
        "2 10 -1 1\n\
         dim 2\n1 0 0 0 0 0 1 0 0 0\n0 0 1 0 0 0 0 1 0 0\n",
    )
    .unwrap();
    let out = sclink(&[
        "decode",
        "--code",
        spec.to_str().unwrap(),
        "--received",
        recv.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stdout(&out).contains("no codeword"), "{}", stdout(&out));
}

#[test]
fn badexample_certificate_holds() {
    let out = sclink(&["check", "badexample"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("d_S(V, U) = 2"), "{text}");
    assert!(text.contains("pure erasure): true"), "{text}");
    assert!(text.contains("certificate holds: true"), "{text}");
}

#[test]
fn seed_search_failure_exits_nonzero() {
    // rng seed 0 does not reach 34 words inside a second
    let out = sclink(&["--rng-seed", "0", "search-seed", "--budget-secs", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("no 34-word"), "{}", stderr(&out));
}
