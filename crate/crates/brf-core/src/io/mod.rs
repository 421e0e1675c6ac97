//! Signal ingestion and artifact serialization.
//!
//! Signals come in as single-column CSV (optional `# fs=<hz>` header, one
//! amplitude per line) or integer-PCM WAV.  Out go analysis reports as
//! stable pretty-printed JSON, heatmap grids as CSV or SVG, and synthesis
//! sidecars describing how a generated signal was made.

mod heatmap;
mod report;

pub use heatmap::{
    heatmap_matrix, write_heatmap_csv, write_heatmap_svg, HeatmapKind, HeatmapMatrix,
};
pub use report::{
    parse_report, read_report, report_to_string, write_report, REPORT_SCHEMA_VERSION,
};

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Signal;
use crate::synth::SynthConfig;

/// On-disk signal formats this crate reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalFormat {
    Csv,
    Wav,
}

/// Where and how to read a signal.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalFile {
    pub path: PathBuf,
    pub format: SignalFormat,
    /// Channel to take from a multi-channel file; CSV is always channel 0.
    pub channel: usize,
    /// Overrides (CSV) or replaces (WAV) the file's own sample rate.
    pub fs_override_hz: Option<f64>,
}

impl SignalFile {
    /// Describes a file, inferring the format from its extension
    /// (`.wav` in any casing reads as WAV, everything else as CSV).
    pub fn from_path<P: Into<PathBuf>>(path: P) -> Self {
        let path = path.into();
        let format = match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("wav") => SignalFormat::Wav,
            _ => SignalFormat::Csv,
        };
        Self {
            path,
            format,
            channel: 0,
            fs_override_hz: None,
        }
    }
}

/// Reads a signal per its file description.
pub fn read_signal(file: &SignalFile) -> Result<Signal> {
    match file.format {
        SignalFormat::Csv => {
            if file.channel != 0 {
                return Err(Error::Config(format!(
                    "csv signals are single-channel, channel {} does not exist",
                    file.channel
                )));
            }
            read_csv(&file.path, file.fs_override_hz)
        }
        SignalFormat::Wav => read_wav(&file.path, file.channel, file.fs_override_hz),
    }
}

fn read_csv(path: &Path, fs_override_hz: Option<f64>) -> Result<Signal> {
    let reader = BufReader::new(File::open(path)?);
    let mut header_fs: Option<f64> = None;
    let mut samples = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if let Some(comment) = text.strip_prefix('#') {
            if header_fs.is_none() {
                if let Some(value) = comment.trim().strip_prefix("fs=") {
                    header_fs = Some(value.trim().parse::<f64>().map_err(|e| Error::Parse {
                        line: line_no,
                        msg: format!("bad sample rate {value:?}: {e}"),
                    })?);
                }
            }
            continue;
        }
        samples.push(text.parse::<f64>().map_err(|e| Error::Parse {
            line: line_no,
            msg: format!("bad amplitude {text:?}: {e}"),
        })?);
    }
    let fs = fs_override_hz.or(header_fs).ok_or_else(|| {
        Error::Config("sample rate missing: add a `# fs=<hz>` header or pass --fs".into())
    })?;
    Signal::new(samples, fs)
}

fn read_wav(path: &Path, channel: usize, fs_override_hz: Option<f64>) -> Result<Signal> {
    let mut reader = hound::WavReader::open(path).map_err(wav_error)?;
    let spec = reader.spec();
    if spec.sample_format != hound::SampleFormat::Int {
        return Err(Error::Format(
            "wav holds IEEE-float samples, only integer PCM is read".into(),
        ));
    }
    if !(9..=32).contains(&spec.bits_per_sample) {
        return Err(Error::Format(format!(
            "unsupported wav bit depth {}",
            spec.bits_per_sample
        )));
    }
    let channels = spec.channels as usize;
    if channel >= channels {
        return Err(Error::Config(format!(
            "channel {channel} does not exist, file has {channels}"
        )));
    }
    let scale = 1.0 / (1u64 << (spec.bits_per_sample - 1)) as f64;
    let mut samples = Vec::new();
    for (i, sample) in reader.samples::<i32>().enumerate() {
        if i % channels == channel {
            samples.push(sample.map_err(wav_error)? as f64 * scale);
        }
    }
    let fs = fs_override_hz.unwrap_or(spec.sample_rate as f64);
    Signal::new(samples, fs)
}

fn wav_error(e: hound::Error) -> Error {
    match e {
        hound::Error::IoError(io) => Error::Io(io),
        other => Error::Format(other.to_string()),
    }
}

/// Writes a signal as CSV: a `# fs=<hz>` header, then one amplitude per
/// line, losslessly round-trippable.
pub fn write_signal_csv(signal: &Signal, path: &Path) -> Result<()> {
    let mut out = String::with_capacity(signal.len() * 20);
    out.push_str(&format!("# fs={}\n", signal.sample_rate_hz()));
    for sample in signal.samples() {
        out.push_str(&format!("{sample}\n"));
    }
    std::fs::write(path, out)?;
    Ok(())
}

/// Writes a signal as 16-bit PCM mono WAV, clamping amplitudes to [-1, 1].
///
/// The sample rate must be a whole number of hertz.
pub fn write_signal_wav(signal: &Signal, path: &Path) -> Result<()> {
    let fs = signal.sample_rate_hz();
    if (fs - fs.round()).abs() > 1e-9 || fs.round() > u32::MAX as f64 {
        return Err(Error::Config(format!(
            "wav needs a whole sample rate in hertz, got {fs}"
        )));
    }
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate: fs.round() as u32,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec).map_err(wav_error)?;
    for &sample in signal.samples() {
        let scaled = (sample * 32768.0).round().clamp(-32768.0, 32767.0) as i16;
        writer.write_sample(scaled).map_err(wav_error)?;
    }
    writer.finalize().map_err(wav_error)?;
    Ok(())
}

/// Companion metadata written next to a synthesized signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthSidecar {
    pub schema_version: String,
    pub tool_version: String,
    pub config: SynthConfig,
    pub n_samples: usize,
    pub noise_scale: Option<f64>,
    pub realized_snr_db: Option<f64>,
}

/// Writes a synthesis sidecar as pretty JSON.
pub fn write_synth_sidecar(sidecar: &SynthSidecar, path: &Path) -> Result<()> {
    let json = serde_json::to_string_pretty(sidecar)
        .map_err(|e| Error::Config(format!("sidecar serialization failed: {e}")))?;
    let mut file = File::create(path)?;
    file.write_all(json.as_bytes())?;
    file.write_all(b"\n")?;
    Ok(())
}
