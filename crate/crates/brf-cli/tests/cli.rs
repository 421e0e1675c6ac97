//! End-to-end checks of the `brf` binary: exit codes, stdout contracts,
//! and byte-stable artifacts.

use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn brf(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brf"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("exit code")
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).expect("artifact exists")
}

#[test]
fn synth_is_deterministic_per_seed() {
    let tmp = TempDir::new().unwrap();
    let args = ["synth", "--out", "a.csv", "--snr", "12", "--seed", "9"];
    assert_eq!(exit_code(&brf(tmp.path(), &args)), 0);
    let first_signal = read(tmp.path(), "a.csv");
    let first_sidecar = read(tmp.path(), "a.csv.meta.json");

    assert_eq!(exit_code(&brf(tmp.path(), &args)), 0);
    assert_eq!(read(tmp.path(), "a.csv"), first_signal);
    assert_eq!(read(tmp.path(), "a.csv.meta.json"), first_sidecar);

    let other = ["synth", "--out", "b.csv", "--snr", "12", "--seed", "10"];
    assert_eq!(exit_code(&brf(tmp.path(), &other)), 0);
    assert_ne!(read(tmp.path(), "b.csv"), first_signal);
}

#[test]
fn synth_sidecar_records_the_recipe() {
    let tmp = TempDir::new().unwrap();
    let out = brf(
        tmp.path(),
        &["synth", "--out", "s.csv", "--snr", "6", "--seed", "4"],
    );
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("realized snr:"));

    let sidecar: serde_json::Value =
        serde_json::from_slice(&read(tmp.path(), "s.csv.meta.json")).unwrap();
    assert_eq!(sidecar["schema_version"], "1.0.0");
    assert_eq!(sidecar["n_samples"], 20480);
    assert_eq!(sidecar["config"]["seed"], 4);
    assert_eq!(sidecar["config"]["snr_db"], 6.0);
    assert_eq!(sidecar["config"]["snr_convention"], "rms-ratio");
    assert_eq!(sidecar["config"]["tones"].as_array().unwrap().len(), 11);
    let realized = sidecar["realized_snr_db"].as_f64().unwrap();
    assert!((realized - 6.0).abs() < 0.1);
}

#[test]
fn synth_accepts_custom_tones() {
    let tmp = TempDir::new().unwrap();
    let out = brf(
        tmp.path(),
        &["synth", "--out", "tone.csv", "--tones", "700:0.9,2300:0.5:1.5"],
    );
    assert_eq!(exit_code(&out), 0);

    let gate = brf(tmp.path(), &["gate", "tone.csv"]);
    assert_eq!(exit_code(&gate), 0);
    assert!(stdout(&gate).contains("RELEVANT"));
}

#[test]
fn synth_rejects_malformed_tones() {
    let tmp = TempDir::new().unwrap();
    let out = brf(tmp.path(), &["synth", "--out", "x.csv", "--tones", "700:a"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn gate_reports_entropy_and_verdict() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "sig.csv", "--snr", "12", "--seed", "7"],
    );
    let out = brf(tmp.path(), &["gate", "sig.csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("s_base = 0."));
    assert!(text.contains("s_base_db = -"));
    assert!(text.contains(" dB"));
    assert!(text.contains("RELEVANT"));
}

#[test]
fn gate_flags_noise_dominated_signals() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "noisy.csv", "--snr", "0", "--seed", "3"],
    );
    let out = brf(tmp.path(), &["gate", "noisy.csv"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stdout(&out).contains("IRRELEVANT"));
}

#[test]
fn gate_missing_file_is_an_io_error() {
    let tmp = TempDir::new().unwrap();
    let out = brf(tmp.path(), &["gate", "absent.csv"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("error:"));
}

#[test]
fn gate_needs_a_sample_rate_from_somewhere() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(tmp.path().join("bare.csv"), "0.0\n1.0\n0.0\n-1.0\n").unwrap();
    let out = brf(tmp.path(), &["gate", "bare.csv"]);
    assert_eq!(exit_code(&out), 2);

    let with_fs = brf(tmp.path(), &["gate", "bare.csv", "--fs", "4"]);
    assert!([0, 3].contains(&exit_code(&with_fs)));
}

#[test]
fn analyze_ranks_the_informative_half_first() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "sig.csv", "--snr", "12", "--seed", "7"],
    );
    let out = brf(tmp.path(), &["analyze", "sig.csv", "--out", "report.json"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("RELEVANT"));
    assert!(text.contains("band relevance ranking"));
    assert!(text.contains("1: 0:5120"));

    let report: serde_json::Value =
        serde_json::from_slice(&read(tmp.path(), "report.json")).unwrap();
    assert_eq!(report["schema_version"], "1.0.0");
    assert_eq!(report["gate"]["relevant"], true);
    assert_eq!(report["metadata"]["source"], "sig.csv");
    assert_eq!(report["levels"].as_array().unwrap().len(), 9);
}

#[test]
fn analyze_trims_unreachable_levels() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "sig.csv", "--snr", "24", "--seed", "1"],
    );
    let out = brf(
        tmp.path(),
        &["analyze", "sig.csv", "--out", "report.json", "--max-level", "13"],
    );
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("trimmed"));

    let report: serde_json::Value =
        serde_json::from_slice(&read(tmp.path(), "report.json")).unwrap();
    assert_eq!(report["metadata"]["level_trimmed"], true);
    assert_eq!(report["metadata"]["max_level"], 12);
    assert_eq!(report["levels"].as_array().unwrap().len(), 13);
}

#[test]
fn analyze_noise_writes_an_empty_report_and_exits_3() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "noisy.csv", "--snr", "0", "--seed", "3"],
    );
    let out = brf(
        tmp.path(),
        &[
            "analyze",
            "noisy.csv",
            "--out",
            "report.json",
            "--heatmap",
            "heat.csv",
        ],
    );
    assert_eq!(exit_code(&out), 3);
    assert!(stdout(&out).contains("signal classified as noise"));

    let report: serde_json::Value =
        serde_json::from_slice(&read(tmp.path(), "report.json")).unwrap();
    assert_eq!(report["gate"]["relevant"], false);
    assert_eq!(report["levels"].as_array().unwrap().len(), 0);
    assert_eq!(read(tmp.path(), "heat.csv"), b"irrelevant\n");
}

#[test]
fn analyze_artifacts_are_byte_stable() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "sig.csv", "--snr", "12", "--seed", "2"],
    );
    let args = [
        "analyze",
        "sig.csv",
        "--out",
        "report.json",
        "--heatmap",
        "heat.csv",
        "--svg",
        "heat.svg",
    ];
    assert_eq!(exit_code(&brf(tmp.path(), &args)), 0);
    let report = read(tmp.path(), "report.json");
    let heatmap = read(tmp.path(), "heat.csv");
    let svg = read(tmp.path(), "heat.svg");

    assert_eq!(exit_code(&brf(tmp.path(), &args)), 0);
    assert_eq!(read(tmp.path(), "report.json"), report);
    assert_eq!(read(tmp.path(), "heat.csv"), heatmap);
    assert_eq!(read(tmp.path(), "heat.svg"), svg);
    assert!(svg.starts_with(b"<svg"));
}

#[test]
fn compare_emits_per_level_agreement() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "sig.csv", "--snr", "12", "--seed", "7"],
    );
    brf(tmp.path(), &["analyze", "sig.csv", "--out", "report.json"]);

    let table = brf(tmp.path(), &["compare", "report.json"]);
    assert_eq!(exit_code(&table), 0);
    assert!(stdout(&table).starts_with("level  va       pa\n"));

    let csv = brf(tmp.path(), &["compare", "report.json", "--csv"]);
    let text = stdout(&csv);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "level,va_percent,pa_percent");
    assert_eq!(lines[1], "0,100,100");
    assert_eq!(lines.len(), 10);
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 3);
        for value in &fields[1..] {
            let percent: f64 = value.parse().unwrap();
            assert!((0.0..=100.0).contains(&percent));
        }
    }
}

#[test]
fn compare_scores_a_noise_report_as_zero() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "noisy.csv", "--snr", "0", "--seed", "3"],
    );
    brf(tmp.path(), &["analyze", "noisy.csv", "--out", "report.json"]);

    let out = brf(tmp.path(), &["compare", "report.json", "--csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    for (level, line) in lines[1..].iter().enumerate() {
        assert_eq!(*line, format!("{level},0,0"));
    }
}

#[test]
fn compare_rejects_future_schema_majors() {
    let tmp = TempDir::new().unwrap();
    std::fs::write(
        tmp.path().join("future.json"),
        "{\"schema_version\": \"2.0.0\"}\n",
    )
    .unwrap();
    let out = brf(tmp.path(), &["compare", "future.json"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("2.0.0"));
}

#[test]
fn quiet_silences_stdout_but_not_exit_codes() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "noisy.csv", "--snr", "0", "--seed", "3", "--quiet"],
    );
    let out = brf(tmp.path(), &["gate", "noisy.csv", "--quiet"]);
    assert_eq!(exit_code(&out), 3);
    assert!(stdout(&out).is_empty());
}

#[test]
fn usage_errors_exit_2() {
    let tmp = TempDir::new().unwrap();
    let out = brf(tmp.path(), &["analyze", "sig.csv"]);
    assert_eq!(exit_code(&out), 2);

    let out = brf(tmp.path(), &["frobnicate"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn version_carries_the_report_schema() {
    let tmp = TempDir::new().unwrap();
    let out = brf(tmp.path(), &["--version"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("report schema 1.0.0"));
}

#[test]
fn wav_round_trip_feeds_the_same_analysis() {
    let tmp = TempDir::new().unwrap();
    brf(
        tmp.path(),
        &["synth", "--out", "sig.wav", "--snr", "24", "--seed", "5"],
    );
    assert!(tmp.path().join("sig.wav.meta.json").exists());
    let out = brf(tmp.path(), &["analyze", "sig.wav", "--out", "report.json"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout(&out).contains("1: 0:5120"));
}
