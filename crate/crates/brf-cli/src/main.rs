//! `brf`: frequency-band relevance analysis from the command line.
//!
//! Subcommands cover the whole workflow: `synth` renders seeded test
//! signals, `gate` asks whether a signal has structure worth analyzing,
//! `analyze` scores and ranks bands into a JSON report (plus optional
//! heatmaps), and `compare` measures how far the relevance ranking strays
//! from a plain loudness ranking.
//!
//! Exit codes: 0 success (and, for gate/analyze, a relevant signal),
//! 1 input or I/O trouble, 2 bad flags or configuration, 3 a signal the
//! gate classified as noise.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use brf_core::brf::{self, AnalysisReport};
use brf_core::io::{self, HeatmapKind, SignalFile, SynthSidecar};
use brf_core::rankmetrics::{position_analysis, values_analysis, RankingPair};
use brf_core::signal::Signal;
use brf_core::synth::{self, SnrConvention, SynthConfig, Tone};
use brf_core::Error;

const EXIT_IRRELEVANT: u8 = 3;

fn version_string() -> String {
    format!(
        "{} (report schema {})",
        env!("CARGO_PKG_VERSION"),
        io::REPORT_SCHEMA_VERSION
    )
}

#[derive(Parser)]
#[command(
    name = "brf",
    version = version_string(),
    about = "Selects informative frequency bands in vibration signals by spectral entropy"
)]
struct Cli {
    /// Suppress informational output; files and exit codes only.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Renders a seeded synthetic signal to CSV or WAV.
    Synth(SynthArgs),
    /// Classifies a signal as structured or noise by its spectral entropy.
    Gate(GateArgs),
    /// Scores and ranks frequency bands, writing a JSON report.
    Analyze(AnalyzeArgs),
    /// Compares a report's relevance ranking against its rms ranking.
    Compare(CompareArgs),
}

#[derive(Args)]
struct SynthArgs {
    /// Output signal path; `.wav` writes 16-bit PCM, anything else CSV.
    #[arg(long)]
    out: PathBuf,

    /// `case1` for the built-in eleven-tone set with seeded amplitudes,
    /// or a list like `30:0.8,700:1:1.57` (`hz[:amplitude[:phase]]`).
    #[arg(long, default_value = "case1", value_parser = parse_tone_set)]
    tones: ToneSet,

    /// Target SNR in dB, or `none` for the clean tone sum.
    #[arg(long, default_value = "none", value_parser = parse_snr)]
    snr: SnrArg,

    /// How the SNR number maps to a noise scale.
    #[arg(long, default_value = "rms-ratio", value_parser = parse_convention)]
    snr_convention: SnrConvention,

    #[arg(long, default_value_t = synth::CASE1_DURATION_S)]
    duration: f64,

    #[arg(long, default_value_t = synth::CASE1_SAMPLE_RATE_HZ)]
    fs: f64,

    /// Seed driving the amplitude draw and the noise.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Lower bound for drawn `case1` amplitudes; 0 allows the full (0, 1].
    #[arg(long, default_value_t = synth::CASE1_AMPLITUDE_FLOOR)]
    amp_floor: f64,
}

#[derive(Args)]
struct GateArgs {
    /// Signal file; `.wav` reads as WAV, anything else as CSV.
    signal: PathBuf,

    /// Sample rate override (required for CSV without a `# fs=` header).
    #[arg(long)]
    fs: Option<f64>,

    /// Channel of a multi-channel WAV.
    #[arg(long, default_value_t = 0)]
    channel: usize,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Signal file; `.wav` reads as WAV, anything else as CSV.
    signal: PathBuf,

    /// Where the JSON report goes.
    #[arg(long)]
    out: PathBuf,

    /// Sample rate override (required for CSV without a `# fs=` header).
    #[arg(long)]
    fs: Option<f64>,

    /// Channel of a multi-channel WAV.
    #[arg(long, default_value_t = 0)]
    channel: usize,

    /// Deepest decomposition level; trimmed if the record is too short.
    #[arg(long, default_value_t = brf::DEFAULT_MAX_LEVEL)]
    max_level: u32,

    /// Ranking depth per level.
    #[arg(long, default_value_t = brf::DEFAULT_TOP_N)]
    top: usize,

    /// Also write a heatmap grid as CSV.
    #[arg(long)]
    heatmap: Option<PathBuf>,

    /// Which value fills the heatmaps.
    #[arg(long, default_value = "brf", value_parser = parse_heatmap_kind)]
    heatmap_kind: HeatmapKind,

    /// Also write a heatmap as SVG.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    /// Report written by `brf analyze`.
    report: PathBuf,

    /// Compare only the first N entries of each ranking.
    #[arg(long, default_value_t = brf::DEFAULT_TOP_N)]
    top: usize,

    /// Emit `level,va_percent,pa_percent` CSV instead of a table.
    #[arg(long)]
    csv: bool,
}

#[derive(Clone)]
enum ToneSet {
    Case1,
    Custom(Vec<Tone>),
}

#[derive(Clone, Copy)]
struct SnrArg(Option<f64>);

fn parse_tone_set(text: &str) -> Result<ToneSet, String> {
    if text == "case1" {
        return Ok(ToneSet::Case1);
    }
    let mut tones = Vec::new();
    for part in text.split(',') {
        let fields: Vec<&str> = part.split(':').collect();
        if fields.is_empty() || fields.len() > 3 {
            return Err(format!("bad tone {part:?}, expected hz[:amplitude[:phase]]"));
        }
        let parse = |name: &str, value: &str| {
            value
                .trim()
                .parse::<f64>()
                .map_err(|e| format!("bad tone {name} {value:?}: {e}"))
        };
        tones.push(Tone {
            frequency_hz: parse("frequency", fields[0])?,
            amplitude: fields.get(1).map(|v| parse("amplitude", v)).transpose()?.unwrap_or(1.0),
            phase_rad: fields.get(2).map(|v| parse("phase", v)).transpose()?.unwrap_or(0.0),
        });
    }
    Ok(ToneSet::Custom(tones))
}

fn parse_snr(text: &str) -> Result<SnrArg, String> {
    if text == "none" {
        return Ok(SnrArg(None));
    }
    text.parse::<f64>()
        .map(|db| SnrArg(Some(db)))
        .map_err(|e| format!("bad snr {text:?}, expected a dB value or `none`: {e}"))
}

fn parse_convention(text: &str) -> Result<SnrConvention, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

fn parse_heatmap_kind(text: &str) -> Result<HeatmapKind, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = cli.quiet;
    let result = match cli.command {
        Command::Synth(args) => run_synth(args, quiet),
        Command::Gate(args) => run_gate(args, quiet),
        Command::Analyze(args) => run_analyze(args, quiet),
        Command::Compare(args) => run_compare(args, quiet),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) => 2,
                _ => 1,
            })
        }
    }
}

fn run_synth(args: SynthArgs, quiet: bool) -> Result<u8, Error> {
    let tones = match args.tones {
        ToneSet::Case1 => synth::case1_tones(args.seed, args.amp_floor)?,
        ToneSet::Custom(tones) => tones,
    };
    let config = SynthConfig {
        tones,
        duration_s: args.duration,
        sample_rate_hz: args.fs,
        snr_db: args.snr.0,
        snr_convention: args.snr_convention,
        seed: args.seed,
    };
    let output = synth::synthesize(&config)?;

    if is_wav(&args.out) {
        io::write_signal_wav(&output.signal, &args.out)?;
    } else {
        io::write_signal_csv(&output.signal, &args.out)?;
    }
    let sidecar_path = sidecar_path(&args.out);
    io::write_synth_sidecar(
        &SynthSidecar {
            schema_version: io::REPORT_SCHEMA_VERSION.into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            n_samples: output.signal.len(),
            noise_scale: output.noise_scale,
            realized_snr_db: output.realized_snr_db,
            config,
        },
        &sidecar_path,
    )?;

    if !quiet {
        println!(
            "wrote {} ({} samples at {} Hz)",
            args.out.display(),
            output.signal.len(),
            output.signal.sample_rate_hz()
        );
        if let (Some(realized), Some(target)) = (output.realized_snr_db, args.snr.0) {
            println!("realized snr: {realized:.2} dB (target {target})");
        }
        println!("sidecar: {}", sidecar_path.display());
    }
    Ok(0)
}

fn run_gate(args: GateArgs, quiet: bool) -> Result<u8, Error> {
    let signal = read_signal(&args.signal, args.fs, args.channel)?;
    let verdict = brf::gate(&signal.spectrum())?;
    if !quiet {
        println!("s_base = {:.6}", verdict.s_base);
        println!("s_base_db = {} dB", fmt_db(verdict.s_base_db));
        println!(
            "{}",
            if verdict.relevant {
                "RELEVANT"
            } else {
                "IRRELEVANT"
            }
        );
    }
    Ok(if verdict.relevant { 0 } else { EXIT_IRRELEVANT })
}

fn run_analyze(args: AnalyzeArgs, quiet: bool) -> Result<u8, Error> {
    let signal = read_signal(&args.signal, args.fs, args.channel)?;
    let mut report = brf::analyze(&signal, args.max_level, args.top)?;
    report.metadata.source = Some(args.signal.display().to_string());

    io::write_report(&report, &args.out)?;
    if let Some(path) = &args.heatmap {
        io::write_heatmap_csv(&report, args.heatmap_kind, path)?;
    }
    if let Some(path) = &args.svg {
        io::write_heatmap_svg(&report, args.heatmap_kind, path)?;
    }

    if !quiet {
        print_analysis(&args, &report);
    }
    Ok(if report.is_relevant() {
        0
    } else {
        EXIT_IRRELEVANT
    })
}

fn print_analysis(args: &AnalyzeArgs, report: &AnalysisReport) {
    println!(
        "signal: {} (fs = {} Hz, N = {})",
        args.signal.display(),
        report.metadata.sample_rate_hz,
        report.metadata.n_samples
    );
    println!(
        "gate: s_base = {:.6}, s_base_db = {} dB -> {}",
        report.gate.s_base,
        fmt_db(report.gate.s_base_db),
        if report.gate.relevant {
            "RELEVANT"
        } else {
            "IRRELEVANT"
        }
    );
    if report.metadata.level_trimmed {
        println!(
            "note: level depth trimmed from {} to {} for this record length",
            report.metadata.requested_level, report.metadata.max_level
        );
    }
    if !report.is_relevant() {
        println!("signal classified as noise");
    } else {
        println!();
        println!(
            "band relevance ranking (top {} per level)",
            report.metadata.top_n
        );
        for level in &report.levels {
            println!("level {}: {}", level.level, ranking_row(&level.ranking));
        }
        println!();
        println!("band rms ranking (top {} per level)", report.metadata.top_n);
        for ranking in &report.rms_rankings {
            println!("level {}: {}", ranking.level, ranking_row(&ranking.bands));
        }
    }
    println!("report: {}", args.out.display());
    if let Some(path) = &args.heatmap {
        println!("heatmap: {}", path.display());
    }
    if let Some(path) = &args.svg {
        println!("svg: {}", path.display());
    }
}

fn run_compare(args: CompareArgs, quiet: bool) -> Result<u8, Error> {
    let report = io::read_report(&args.report)?;
    let mut rows: Vec<(u32, f64, f64)> = Vec::new();
    if report.is_relevant() {
        for level in &report.levels {
            let rms = report
                .rms_rankings
                .iter()
                .find(|r| r.level == level.level)
                .map(|r| r.bands.clone())
                .unwrap_or_default();
            let pair = RankingPair::new(level.level, level.ranking.clone(), rms, args.top)?;
            rows.push((level.level, values_analysis(&pair), position_analysis(&pair)));
        }
    } else {
        for level in 0..=report.metadata.max_level {
            rows.push((level, 0.0, 0.0));
        }
    }

    if !quiet {
        if args.csv {
            println!("level,va_percent,pa_percent");
            for (level, va, pa) in &rows {
                println!("{level},{},{}", fmt_percent(*va), fmt_percent(*pa));
            }
        } else {
            println!("level  va       pa");
            for (level, va, pa) in &rows {
                println!(
                    "{level:<5}  {:<7}  {} %",
                    format!("{} %", fmt_percent(*va)),
                    fmt_percent(*pa)
                );
            }
        }
    }
    Ok(0)
}

fn read_signal(path: &Path, fs: Option<f64>, channel: usize) -> Result<Signal, Error> {
    let mut file = SignalFile::from_path(path);
    file.fs_override_hz = fs;
    file.channel = channel;
    io::read_signal(&file).map_err(|e| match e {
        Error::Io(inner) => Error::Io(std::io::Error::new(
            inner.kind(),
            format!("{}: {inner}", path.display()),
        )),
        other => other,
    })
}

fn is_wav(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("wav"))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn ranking_row(bands: &[brf_core::bands::BandSpec]) -> String {
    if bands.is_empty() {
        return "(no relevant bands)".into();
    }
    bands
        .iter()
        .enumerate()
        .map(|(i, band)| format!("{}: {}", i + 1, band.label()))
        .collect::<Vec<_>>()
        .join("  ")
}

fn fmt_db(value: f64) -> String {
    if value.is_finite() {
        format!("{value:.4}")
    } else if value > 0.0 {
        "+inf".into()
    } else {
        "-inf".into()
    }
}

fn fmt_percent(value: f64) -> String {
    if (value - value.round()).abs() < 1e-9 {
        format!("{:.0}", value.round())
    } else {
        format!("{value:.1}")
    }
}
