use std::path::PathBuf;
use std::process::Command;

use isobessel::harness::*;

fn workspace_file(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .join(rel)
}

fn exact_config(n: usize) -> RunConfig {
    RunConfig {
        n,
        nu: (0..n).map(|i| [(n - i) as f64 + 1.0, 0.0]).collect(),
        eta_bits: vec![false; n],
        suites: vec![Suite::ExactAlgebra, Suite::Uniqueness],
        ..RunConfig::default()
    }
}

#[test]
fn default_config_file_matches_default() {
    let c = RunConfig::load(&workspace_file("config/default.toml")).unwrap();
    assert_eq!(c, RunConfig::default());
    assert_eq!(RunConfig::from_toml(&c.to_toml()).unwrap(), c);
}

#[test]
fn invalid_configs_are_rejected() {
    let base = RunConfig::default();
    let cases: Vec<(RunConfig, &str)> = vec![
        (
            RunConfig {
                n: 1,
                nu: vec![[1.0, 0.0]],
                eta_bits: vec![false],
                ..base.clone()
            },
            "n must",
        ),
        (
            RunConfig {
                tol: 0.0,
                ..base.clone()
            },
            "tol",
        ),
        (
            RunConfig {
                suites: vec![],
                ..base.clone()
            },
            "no suites",
        ),
        (
            RunConfig {
                nu: vec![[1.0, 0.0]],
                ..base.clone()
            },
            "nu has 1",
        ),
        (
            RunConfig {
                a: vec!["1".into(), "x".into(), "0".into()],
                ..base.clone()
            },
            "rational",
        ),
    ];
    for (c, msg) in cases {
        let err = c.validate().unwrap_err().to_string();
        assert!(err.contains(msg), "{err:?} lacks {msg:?}");
    }
    let unknown = base.to_toml().replace("n = 2", "n = 2\nbogus = 1");
    assert!(RunConfig::from_toml(&unknown).is_err());
    let bad_suite = base.to_toml().replace("\"stabilizer\"", "\"stabiliser\"");
    assert!(RunConfig::from_toml(&bad_suite).is_err());
}

#[test]
fn rationals_parse() {
    assert_eq!(
        parse_rational("-1/2").unwrap(),
        isobessel::linalg::rat(-1, 2)
    );
    assert_eq!(
        parse_rational("0.125").unwrap(),
        isobessel::linalg::rat(1, 8)
    );
    assert_eq!(parse_rational("-3").unwrap(), isobessel::linalg::rat(-3, 1));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("1e3").is_err());
}

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            format!("\"{}\"", s.name())
        );
    }
}

#[test]
fn report_round_trips_and_validates() {
    let report = run(&exact_config(2), false);
    assert!(report.all_pass());
    let text = report.to_jsonl();
    assert_eq!(Report::from_jsonl(&text).unwrap(), report);

    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(workspace_file("docs/report.schema.json")).unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(validator.is_valid(&v), "{line}");
    }
    let mut broken: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    broken["status"] = "maybe".into();
    assert!(!validator.is_valid(&broken));
}

#[test]
fn every_check_appears_once() {
    let report = run(&exact_config(3), false);
    let mut ids: Vec<&str> = report.records.iter().map(|r| r.check_id.as_str()).collect();
    let total = ids.len();
    ids.sort_unstable();
    ids.dedup();
    assert_eq!(ids.len(), total);
    assert_eq!(report.summary.total, total);
}

#[test]
fn numerical_suites_skip_above_rank_two() {
    let mut c = exact_config(3);
    c.suites = vec![Suite::Equivariance];
    let report = run(&c, false);
    assert!(report.records.iter().all(|r| r.status == Status::Skipped));
    assert!(report.all_pass());
}

#[test]
fn parallel_run_matches_sequential() {
    let c = exact_config(2);
    let a = run(&c, false).without_runtimes().to_jsonl();
    let b = run(&c, true).without_runtimes().to_jsonl();
    assert_eq!(a, b);
}

fn verify() -> Command {
    Command::new(env!("CARGO_BIN_EXE_verify"))
}

#[test]
fn cli_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.toml");
    std::fs::write(&good, exact_config(2).to_toml()).unwrap();
    let out = dir.path().join("report.jsonl");
    let status = verify()
        .args([
            "--config",
            good.to_str().unwrap(),
            "--suite",
            "exact-algebra",
            "--seed",
            "7",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let report = Report::from_jsonl(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.summary.seed, 7);
    assert_eq!(report.summary.suites, vec![Suite::ExactAlgebra]);

    let rank_one = dir.path().join("rank_one.toml");
    std::fs::write(
        &rank_one,
        exact_config(2).to_toml().replace("n = 2", "n = 1"),
    )
    .unwrap();
    let status = verify()
        .args(["--config", rank_one.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));

    let status = verify()
        .args(["--config", good.to_str().unwrap(), "--suite", "nonsense"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));

    let status = verify()
        .args(["--config", "/nonexistent.toml"])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    // A character vector that is not isotropic fails every check that
    // needs the datum.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    let mut c = exact_config(2);
    c.a = vec!["1".into(), "1".into(), "1".into()];
    std::fs::write(&path, c.to_toml()).unwrap();
    let out = verify()
        .args(["--config", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let report = Report::from_jsonl(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let failed = report
        .records
        .iter()
        .find(|r| r.status == Status::Fail)
        .unwrap();
    assert!(!failed.lhs.is_empty());
}
