use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use wsnlife_core::lifetime::LifetimeReport;
use wsnlife_core::{BatchSummary, CycleRecord, SimulationResult};

fn wsnlife(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsnlife")).args(args).output().expect("spawn wsnlife")
}

fn run_to(dir: &Path, args: &[&str]) -> Output {
    let mut all: Vec<&str> = args.to_vec();
    let out = dir.to_str().unwrap();
    all.extend(["--out", out]);
    wsnlife(&all)
}

#[test]
fn run_writes_all_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run_to(tmp.path(), &["run", "--preset", "scenario1", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    for f in ["timeseries.csv", "snapshots.csv", "report.json", "config.json"] {
        assert!(tmp.path().join(f).exists(), "{f}");
    }
    let report: LifetimeReport =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("report.json")).unwrap()).unwrap();
    let csv = fs::read_to_string(tmp.path().join("timeseries.csv")).unwrap();
    // header plus cycle 0 through the death cycle
    assert_eq!(csv.lines().count() as u64, report.death_cycle + 2);
    assert_eq!(report.death_cycle, 35);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(wsnlife(&["run", "--preset", "nosuch"]).status.code(), Some(1));
    assert_eq!(wsnlife(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(wsnlife(&["run", "--preset", "scenario1", "--bogus"]).status.code(), Some(1));
    assert_eq!(wsnlife(&["run"]).status.code(), Some(1));
    let o = wsnlife(&["batch", "--preset", "scenario1", "--replicas", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn config_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("bad.json");
    fs::write(&cfg, r#"{"sink_probability":1.5}"#).unwrap();
    let o = run_to(tmp.path(), &["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("sink_probability"));

    fs::write(&cfg, r#"{"radius":3}"#).unwrap();
    let o = run_to(tmp.path(), &["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("radius"));

    let o = run_to(tmp.path(), &["run", "--config", tmp.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_run_matches_preset_run() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("s1.json");
    fs::write(&cfg, r#"{"n_sensors":150,"width":3000,"height":3000,"sink_probability":0.156,"seed":42}"#).unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    assert_eq!(run_to(&a, &["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(run_to(&b, &["run", "--preset", "scenario1", "--seed", "42"]).status.code(), Some(0));
    for f in ["timeseries.csv", "snapshots.csv", "report.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
}

#[test]
fn json_timeseries_round_trips() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run_to(tmp.path(), &["run", "--preset", "scenario2", "--seed", "3", "--format", "json"]).status.code(), Some(0));
    let text = fs::read_to_string(tmp.path().join("timeseries.json")).unwrap();
    let records: Vec<CycleRecord> = serde_json::from_str(&text).unwrap();
    let cfg = wsnlife_core::NetworkConfig { seed: 3, ..wsnlife_core::preset("scenario2").unwrap().config };
    let result = wsnlife_core::run_simulation(&cfg).unwrap();
    assert_eq!(records, result.records);
}

#[test]
fn full_result_round_trips_through_json() {
    let cfg = wsnlife_core::NetworkConfig { seed: 11, ..wsnlife_core::preset("scenario4").unwrap().config };
    let result = wsnlife_core::run_simulation(&cfg).unwrap();
    let text = serde_json::to_string(&result).unwrap();
    let back: SimulationResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, result);
}

#[test]
fn snapshots_cover_both_phases_and_agree_with_series() {
    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(run_to(tmp.path(), &["run", "--preset", "scenario3", "--seed", "5"]).status.code(), Some(0));
    let snaps = fs::read_to_string(tmp.path().join("snapshots.csv")).unwrap();
    let rows: Vec<Vec<&str>> = snaps.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 100);
    assert_eq!(rows.iter().filter(|r| r[0] == "initial").count(), 50);
    let final_alive = rows.iter().filter(|r| r[0] == "final" && r[6] == "true").count();

    let series = fs::read_to_string(tmp.path().join("timeseries.csv")).unwrap();
    let last: Vec<&str> = series.lines().last().unwrap().split(',').collect();
    assert_eq!(final_alive, last[2].parse::<usize>().unwrap());
}

#[test]
fn single_node_snapshot() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("one.json");
    fs::write(&cfg, r#"{"n_sensors":1}"#).unwrap();
    assert_eq!(run_to(tmp.path(), &["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(0));
    let snaps = fs::read_to_string(tmp.path().join("snapshots.csv")).unwrap();
    assert_eq!(snaps.lines().count(), 3);
}

#[test]
fn batch_is_reproducible_across_invocations() {
    let tmp = tempfile::tempdir().unwrap();
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    let args = ["batch", "--preset", "scenario2", "--replicas", "100", "--seed", "7"];
    assert_eq!(run_to(&a, &args).status.code(), Some(0));
    assert_eq!(run_to(&b, &args).status.code(), Some(0));
    let sa = fs::read(a.join("summary.json")).unwrap();
    assert_eq!(sa, fs::read(b.join("summary.json")).unwrap());
    assert_eq!(fs::read(a.join("replicas.csv")).unwrap(), fs::read(b.join("replicas.csv")).unwrap());
    let summary: BatchSummary = serde_json::from_slice(&sa).unwrap();
    assert_eq!(summary.replicas, 100);
    assert_eq!(summary.base_seed, 7);
}

#[test]
fn presets_lists_all_scenarios() {
    let o = wsnlife(&["presets"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    for name in ["scenario1", "scenario2", "scenario3", "scenario4"] {
        assert!(text.contains(name));
    }
    assert!(text.contains("3000 x 3000"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(wsnlife(&["--help"]).status.code(), Some(0));
}
