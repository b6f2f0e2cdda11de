use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn derivlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivlab")).args(args).env_remove("DERIVLAB_BUDGET").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

fn write_fixture(name: &str) -> PathBuf {
    let path = scratch(&format!("{name}.json"));
    let out = derivlab(&["fixture", name, "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

#[test]
fn bundled_fixtures_validate() {
    for name in ["z3_gl1_f3", "s3_gl2_f5", "zl_coprime", "ordinary_toy"] {
        let path = write_fixture(name);
        let out = derivlab(&["validate", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(report(&out)["valid"], true);
    }
}

#[test]
fn fixture_to_stdout_matches_file() {
    let path = write_fixture("z3_gl1_f3");
    let out = derivlab(&["fixture", "z3_gl1_f3"]);
    assert_eq!(out.stdout, std::fs::read(path).unwrap());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["group"]["permutations"], serde_json::json!([[1, 2, 0]]));
}

#[test]
fn unknown_fixture_exits_2() {
    let out = derivlab(&["fixture", "no_such_fixture"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no_such_fixture"));
}

#[test]
fn tangent_on_z3_counts_three() {
    let path = write_fixture("z3_gl1_f3");
    let out = derivlab(&["run", path.to_str().unwrap(), "--task", "tangent"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let tasks = r["tasks"].as_array().unwrap();
    assert_eq!(tasks.len(), 1);
    assert_eq!(tasks[0]["verdict"], "Pass");
    assert_eq!(tasks[0]["details"]["framed_lifts"], 3);
    assert_eq!(tasks[0]["details"]["z1_size"], 3);
}

#[test]
fn star_and_doldkan_pass_on_every_fixture() {
    for name in ["z3_gl1_f3", "s3_gl2_f5", "zl_coprime", "ordinary_toy"] {
        let path = write_fixture(name);
        let out = derivlab(&["run", path.to_str().unwrap(), "--task", "star", "--task", "doldkan-roundtrip"]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        for t in report(&out)["tasks"].as_array().unwrap() {
            assert_eq!(t["verdict"], "Pass", "{name}: {t}");
            if t["task"] == "doldkan-roundtrip" {
                let rows = t["details"]["complexes"].as_array().unwrap();
                assert!(rows.iter().all(|c| c["roundtrip"] == true && c["homotopy_matches_homology"] == true));
            }
        }
    }
}

#[test]
fn budget_from_environment_makes_deform_inconclusive() {
    let path = write_fixture("s3_gl2_f5");
    let out = Command::new(env!("CARGO_BIN_EXE_derivlab"))
        .args(["run", path.to_str().unwrap(), "--task", "deform"])
        .env("DERIVLAB_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let t = &report(&out)["tasks"][0];
    assert_eq!(t["verdict"], "Inconclusive");
    assert!(t["error"].as_str().unwrap().contains("budget"));
}

#[test]
fn report_to_file_and_thread_count_independent() {
    let path = write_fixture("ordinary_toy");
    let dest = scratch("ordinary_toy.report.json");
    let mut reports = Vec::new();
    for threads in ["1", "3"] {
        let out = Command::new(env!("CARGO_BIN_EXE_derivlab"))
            .args(["run", path.to_str().unwrap(), "--out", dest.to_str().unwrap()])
            .env("RAYON_NUM_THREADS", threads)
            .env_remove("DERIVLAB_BUDGET")
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0));
        assert!(out.stdout.is_empty());
        reports.push(std::fs::read(&dest).unwrap());
    }
    assert_eq!(reports[0], reports[1]);
}

#[test]
fn timings_are_opt_in() {
    let path = write_fixture("z3_gl1_f3");
    let plain = report(&derivlab(&["run", path.to_str().unwrap(), "--task", "cohomology"]));
    assert!(plain["tasks"][0].get("millis").is_none());
    let timed = report(&derivlab(&["run", path.to_str().unwrap(), "--task", "cohomology", "--timings"]));
    assert!(timed["tasks"][0]["millis"].is_u64());
}

#[test]
fn validation_errors_exit_2() {
    let path = write_fixture("s3_gl2_f5");
    let mut v: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    v["rings"]["bad"] = serde_json::json!({
        "p": 3, "e": 1, "rank": 3,
        // basis 1, x, y with x^2 = y, y^2 = x, xy = yx = 0
        "mul": [
            [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
            [[0, 1, 0], [0, 0, 1], [0, 0, 0]],
            [[0, 0, 1], [0, 0, 0], [0, 1, 0]]
        ],
        "one": [1, 0, 0]
    });
    v["representations"]["rho_eps"]["ring"] = "missing".into();
    let bad = scratch("invalid.json");
    std::fs::write(&bad, serde_json::to_vec(&v).unwrap()).unwrap();
    for cmd in ["validate", "run"] {
        let out = derivlab(&[cmd, bad.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2));
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains("not associative"), "{err}");
        assert!(err.contains("missing"), "{err}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn malformed_json_exits_2() {
    let bad = scratch("malformed.json");
    std::fs::write(&bad, "{ not json").unwrap();
    let out = derivlab(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}
