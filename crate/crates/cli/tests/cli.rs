use std::path::{Path, PathBuf};
use std::process::Command;

use calogero_cli::catalog::{default_config, CATALOG};
use calogero_cli::config::{Scenario, ScenarioConfig};
use calogero_cli::report::VerificationReport;
use calogero_cli::runner::run_scenario;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_calogero"));
    c.env("CALOGERO_WORKERS", "1");
    c
}

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn golden_path(s: Scenario) -> PathBuf {
    manifest(&format!("tests/golden/{}.json", s.name()))
}

/// Set UPDATE_GOLDEN=1 to rewrite the fixtures.
#[test]
fn catalog_matches_golden_reports() {
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    for e in &CATALOG {
        let json = run_scenario(&default_config(e.scenario)).unwrap().without_timing().to_json();
        let path = golden_path(e.scenario);
        if update {
            std::fs::write(&path, &json).unwrap();
            continue;
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(json, golden, "{} drifted from its golden report", e.scenario.name());
        let r = VerificationReport::from_json(&golden).unwrap();
        assert_eq!(r.symmetry, run_symmetry(e.scenario));
    }
}

fn run_symmetry(s: Scenario) -> &'static str {
    match s {
        Scenario::BlStandard => "twisted half-loop, order 2",
        Scenario::G2ThreeSpins => "shifted twisted half-loop, order 2",
        Scenario::I2mTwoSpins => "shifted twisted half-loop, order 6",
        _ => "half-loop",
    }
}

#[test]
fn list_shows_every_scenario() {
    let out = bin().arg("list").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    for e in &CATALOG {
        assert!(text.contains(e.scenario.name()));
    }
}

#[test]
fn passing_run_exits_zero() {
    let out = bin().args(["verify", "bl_standard", "--k", "1,1", "--cutoff", "5"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("symmetry: twisted half-loop, order 2"));
    assert!(text.contains("0 failed"));
}

#[test]
fn failing_check_exits_one_with_defect() {
    let out = bin().args(["verify", "g2_three_spins", "--k", "1,1", "--cutoff", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    let fail = text.lines().position(|l| l.starts_with("FAIL  hamiltonian.printed")).expect("printed formula fails");
    assert!(text.lines().nth(fail + 1).unwrap().trim_start().starts_with("k=(1,1)"));
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    std::fs::write(&path, "scenario = bl_orbit\nk = 0.5,1\n").unwrap();
    let out = bin().args(["verify", path.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("k"));
    let out = bin().args(["verify", "no_such_scenario"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_is_reproducible_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let conf = manifest("scenarios/bl_orbit.conf");
    let mut outputs = Vec::new();
    for (i, workers) in ["1", "3"].iter().enumerate() {
        let out = dir.path().join(format!("r{i}.json"));
        let status = bin()
            .env("CALOGERO_WORKERS", workers)
            .args(["report", conf.to_str().unwrap(), "--format", "json", "--no-timing", "--cutoff", "5", "--out"])
            .arg(&out)
            .status()
            .unwrap();
        assert_eq!(status.code(), Some(0));
        outputs.push(std::fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let r = VerificationReport::from_json(&outputs[0]).unwrap();
    assert_eq!(r.to_json(), outputs[0]);
    assert!(r.all_passed());
    assert_eq!(r.scenario["cutoff"], "5");
}

#[test]
fn timing_is_the_only_nondeterminism() {
    let mut cfg = default_config(Scenario::BlOrbit);
    cfg.cutoff = 4;
    let a = run_scenario(&cfg).unwrap();
    let b = run_scenario(&cfg).unwrap();
    assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
}

#[test]
fn shipped_scenario_files_parse() {
    for entry in std::fs::read_dir(manifest("scenarios")).unwrap() {
        let path = entry.unwrap().path();
        let cfg = ScenarioConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(cfg.cutoff >= 2);
    }
}

#[test]
fn dihedral_order_four_scenario() {
    let cfg = ScenarioConfig::load(&manifest("scenarios/i2m_m4.conf")).unwrap();
    let r = run_scenario(&cfg).unwrap();
    assert!(r.all_passed(), "{}", r.to_text());
    assert_eq!(r.symmetry, "shifted twisted half-loop, order 4");
}

#[test]
fn text_report_goes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.txt");
    let status = bin()
        .args(["report", "custom", "--format", "text", "--cutoff", "3", "--k", "1,1", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("scenario: "));
    assert!(text.contains("summary: "));
}
