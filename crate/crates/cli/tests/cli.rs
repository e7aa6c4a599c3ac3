use std::path::PathBuf;
use std::process::Command;

use cextdisc::commands;
use cextdisc::input::Problem;
use cextdisc::report::Report;
use cextdisc::scan::{scan_discriminant, ScanOptions, TraceFault};

const TRIVIAL_Z2: &str = r#"{
  "groups": {"N": {"invariant_factors": [2]}, "Q": {"invariant_factors": [2]}},
  "cocycle": {"kind": "zero"},
  "points": {"samples": 6}
}"#;

const HEISENBERG: &str = r#"{
  "name": "heisenberg mod 2",
  "groups": {"N": {"invariant_factors": [2]}, "Q": {"free_rank": 2}},
  "cocycle": {"kind": "bilinear", "entries": [{"i": 0, "j": 1, "value": [1]}]},
  "points": {"explicit": ["-1,2,1/2"], "samples": 8},
  "commands": {"scan": {"max_k": 6, "samples": 4, "tuples": 2, "seed": 7}}
}"#;

const TRIVIAL_Z4_OVER_Z: &str = r#"{
  "groups": {"N": {"free_rank": 1}, "Q": {"invariant_factors": [4]}},
  "cocycle": {"kind": "zero"},
  "points": {"samples": 5}
}"#;

// Q = Z/2 as a table with x^2 the generator of N = Z; the center is N alone
const TABLE_Z2_OVER_Z: &str = r#"{
  "groups": {"N": {"free_rank": 1}, "Q": {"table": [[0, 1], [1, 0]]}},
  "cocycle": {"kind": "table", "values": [[[0], [0]], [[0], [1]]]}
}"#;

const BROKEN_COCYCLE: &str = r#"{
  "groups": {"N": {"invariant_factors": [3]}, "Q": {"table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}},
  "cocycle": {"kind": "table", "values": [[[0], [0], [0]], [[0], [1], [0]], [[0], [0], [0]]]}
}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cextdisc"))
}

fn write_spec(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cextdisc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn report_json_round_trip() {
    for text in [TRIVIAL_Z2, HEISENBERG, TRIVIAL_Z4_OVER_Z] {
        let report = commands::check(&Problem::from_text(text).unwrap()).unwrap();
        let back = Report::from_json(&report.to_json()).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), report.to_json());
    }
    let p = Problem::from_text(HEISENBERG).unwrap();
    let fiber = commands::fiber(&p, "-1,2,1/2").unwrap();
    assert_eq!(Report::from_json(&fiber.to_json()).unwrap(), fiber);
    let orbit = commands::orbit(&p, "1,1,1").unwrap();
    assert_eq!(Report::from_json(&orbit.to_json()).unwrap(), orbit);
}

#[test]
fn spec_round_trip() {
    let p = Problem::from_text(HEISENBERG).unwrap();
    let again = Problem::from_text(&p.spec.to_json()).unwrap();
    assert_eq!(again.spec, p.spec);
}

#[test]
fn trivial_cocycle_gives_basic_fibers() {
    let report = commands::check(&Problem::from_text(TRIVIAL_Z2).unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.problem.degree, 2);
    assert!(!report.fibers.is_empty());
    assert!(report.fibers.iter().all(|f| f.irrep_dim == 1 && f.commutative && f.block_count == 2));
    let cases = report.cases.unwrap();
    assert_eq!(cases.rows.len(), 1);
    assert_eq!(cases.rows[0].label, "I");
}

#[test]
fn trivial_finite_over_integers() {
    let report = commands::check(&Problem::from_text(TRIVIAL_Z4_OVER_Z).unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.problem.degree, 4);
    assert_eq!(report.problem.maxspec, "Gm");
    assert!(report.fibers.iter().all(|f| f.irrep_dim == 1 && f.block_count == 4));
    let orbits = report.orbits.unwrap();
    assert!(orbits.classes.iter().all(|c| c.counit_orbit));
}

#[test]
fn heisenberg_has_two_cases() {
    let report = commands::check(&Problem::from_text(HEISENBERG).unwrap()).unwrap();
    assert!(report.passed(), "{:?}", report.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    assert_eq!(report.problem.degree, 4);
    let cases = report.cases.unwrap();
    assert_eq!(cases.rows.len(), 2);
    assert_eq!((cases.rows[0].irrep_dim, cases.rows[0].block_count), (1, 4));
    assert_eq!((cases.rows[1].irrep_dim, cases.rows[1].block_count), (2, 1));
    assert_eq!(cases.rows[1].stabilizer_invariants, vec![2, 2]);
    let scan = report.scan.unwrap();
    assert!(scan.consistent);
    assert!(scan.rows.iter().any(|r| r.point == "-1,2,1/2"));
}

#[test]
fn table_base_group() {
    let report = commands::check(&Problem::from_text(TABLE_Z2_OVER_Z).unwrap()).unwrap();
    assert!(report.passed());
    assert_eq!(report.problem.degree, 2);
    assert!(report.notes.iter().any(|n| n.contains("not abelian")) || report.cases.is_some());
}

#[test]
fn fault_injection_is_caught() {
    let p = Problem::from_text(HEISENBERG).unwrap();
    let opts = ScanOptions { max_k: 5, samples: 4, tuples: 2, seed: 1, fault: None };
    assert!(scan_discriminant(&p, &opts).unwrap().consistent);
    let faulty = ScanOptions { fault: Some(TraceFault::ShiftByIdentityCoefficient), ..opts };
    let scan = scan_discriminant(&p, &faulty).unwrap();
    assert!(!scan.consistent);
    assert!(scan.counterexample.is_some());
}

#[test]
fn exit_codes() {
    let good = write_spec("heisenberg.json", HEISENBERG);
    let status = bin().args(["check"]).arg(&good).output().unwrap();
    assert_eq!(status.status.code(), Some(0), "{}", String::from_utf8_lossy(&status.stderr));

    let out = bin().args(["--format", "json", "fiber"]).arg(&good).args(["--point", "-1,1,1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let report = Report::from_json(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.fibers[0].irrep_dim, 2);

    let bad_json = write_spec("bad.json", "{\"groups\": ");
    assert_eq!(bin().arg("check").arg(&bad_json).output().unwrap().status.code(), Some(2));
    let bad_point = bin().arg("fiber").arg(&good).args(["--point", "1,1"]).output().unwrap();
    assert_eq!(bad_point.status.code(), Some(2));
    assert_eq!(bin().arg("frobnicate").output().unwrap().status.code(), Some(2));
    assert_eq!(bin().arg("scan").arg(&good).output().unwrap().status.code(), Some(2));

    let broken = write_spec("broken.json", BROKEN_COCYCLE);
    let out = bin().arg("check").arg(&broken).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("identity fails at"));
}

#[test]
fn thread_cap_is_honoured() {
    let good = write_spec("heisenberg-threads.json", HEISENBERG);
    let out = bin().env("CEXTDISC_THREADS", "1").arg("table").arg(&good).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| II "));
}
