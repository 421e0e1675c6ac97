//! Seeded synthetic vibration signals: tone sums plus calibrated Gaussian
//! noise.
//!
//! Everything random flows from one `u64` seed through ChaCha8, whose
//! output is stable across platforms, so a seed fully determines a signal.
//! The seed feeds separate derived streams for the amplitude draw and for
//! each noise realization, which lets one amplitude draw be reused under
//! several noise severities.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::signal::Signal;

/// The eleven-tone test set: a spread of low, mid, and high tones with a
/// cluster between 2300 and 2800 Hz.
pub const CASE1_TONE_FREQS_HZ: [f64; 11] = [
    30.0, 120.0, 500.0, 700.0, 750.0, 2300.0, 2450.0, 2600.0, 2700.0, 2800.0, 3450.0,
];

pub const CASE1_SAMPLE_RATE_HZ: f64 = 20480.0;
pub const CASE1_DURATION_S: f64 = 1.0;

/// Default lower bound for drawn amplitudes, keeping every tone loud
/// enough to matter; pass 0 to allow the full (0, 1] range.
pub const CASE1_AMPLITUDE_FLOOR: f64 = 0.05;

const STREAM_AMPLITUDES: u64 = 0;
const STREAM_NOISE_BASE: u64 = 1;

fn stream_seed(seed: u64, stream: u64) -> u64 {
    seed ^ 0x9E3779B97F4A7C15u64.wrapping_mul(stream.wrapping_add(1))
}

/// One sinusoidal component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tone {
    pub frequency_hz: f64,
    pub amplitude: f64,
    pub phase_rad: f64,
}

/// How a target SNR number translates into a noise scale.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SnrConvention {
    /// The dB number is ten times the log of the rms ratio:
    /// `snr = 10 log10(rms_signal / rms_noise)`.  The default.
    #[default]
    RmsRatio,
    /// The dB number is the usual power ratio:
    /// `snr = 20 log10(rms_signal / rms_noise)`.
    Power,
}

impl std::fmt::Display for SnrConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SnrConvention::RmsRatio => "rms-ratio",
            SnrConvention::Power => "power",
        })
    }
}

impl std::str::FromStr for SnrConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rms-ratio" => Ok(SnrConvention::RmsRatio),
            "power" => Ok(SnrConvention::Power),
            other => Err(Error::Config(format!(
                "unknown snr convention {other:?}, expected rms-ratio or power"
            ))),
        }
    }
}

/// Recipe for one synthetic signal.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SynthConfig {
    pub tones: Vec<Tone>,
    pub duration_s: f64,
    pub sample_rate_hz: f64,
    /// Target SNR for added noise; `None` leaves the tone sum clean.
    pub snr_db: Option<f64>,
    pub snr_convention: SnrConvention,
    pub seed: u64,
}

impl SynthConfig {
    /// Checks the recipe and returns the sample count it implies.
    ///
    /// `duration_s * sample_rate_hz` must be whole (within 1e-9), at least
    /// 2; every tone needs an amplitude in (0, 1] and a frequency below
    /// half the sample rate.
    pub fn sample_count(&self) -> Result<usize> {
        if !self.sample_rate_hz.is_finite() || self.sample_rate_hz <= 0.0 {
            return Err(Error::Config(format!(
                "sample rate must be finite and positive, got {}",
                self.sample_rate_hz
            )));
        }
        if !self.duration_s.is_finite() || self.duration_s <= 0.0 {
            return Err(Error::Config(format!(
                "duration must be finite and positive, got {}",
                self.duration_s
            )));
        }
        let exact = self.duration_s * self.sample_rate_hz;
        if (exact - exact.round()).abs() > 1e-9 {
            return Err(Error::Config(format!(
                "duration times sample rate must be a whole sample count, got {exact}"
            )));
        }
        let n = exact.round() as usize;
        if n < 2 {
            return Err(Error::Config(format!(
                "need at least 2 samples, got {n}"
            )));
        }
        if self.tones.is_empty() {
            return Err(Error::Config("tone list must not be empty".into()));
        }
        let nyquist = self.sample_rate_hz / 2.0;
        for (i, tone) in self.tones.iter().enumerate() {
            if !tone.frequency_hz.is_finite()
                || tone.frequency_hz < 0.0
                || tone.frequency_hz >= nyquist
            {
                return Err(Error::Config(format!(
                    "tone {i} frequency {} Hz must lie in [0, {nyquist})",
                    tone.frequency_hz
                )));
            }
            if !tone.amplitude.is_finite() || tone.amplitude <= 0.0 || tone.amplitude > 1.0 {
                return Err(Error::Config(format!(
                    "tone {i} amplitude {} must lie in (0, 1]",
                    tone.amplitude
                )));
            }
            if !tone.phase_rad.is_finite() {
                return Err(Error::Config(format!("tone {i} phase must be finite")));
            }
        }
        Ok(n)
    }
}

/// The clean sum of the configured tones.
pub fn tone_sum(config: &SynthConfig) -> Result<Signal> {
    let n = config.sample_count()?;
    let fs = config.sample_rate_hz;
    let samples = (0..n)
        .map(|i| {
            let t = i as f64 / fs;
            config
                .tones
                .iter()
                .map(|tone| tone.amplitude * (2.0 * PI * tone.frequency_hz * t + tone.phase_rad).sin())
                .sum()
        })
        .collect();
    Signal::new(samples, fs)
}

/// A signal with calibrated noise mixed in.
#[derive(Debug, Clone, PartialEq)]
pub struct NoisedSignal {
    pub signal: Signal,
    /// The factor the unit Gaussian sequence was scaled by.
    pub noise_scale: f64,
    /// The SNR the finite noise realization actually produced, under the
    /// same convention that set the scale.
    pub realized_snr_db: f64,
}

/// Adds seeded white Gaussian noise scaled for a target SNR.
///
/// The noise stream is seeded with `noise_seed` exactly as given; callers
/// that derive several realizations from one master seed pick the streams.
pub fn add_noise(
    signal: &Signal,
    snr_db: f64,
    convention: SnrConvention,
    noise_seed: u64,
) -> Result<NoisedSignal> {
    if !snr_db.is_finite() {
        return Err(Error::Config(format!("target snr must be finite, got {snr_db}")));
    }
    let rms_signal = signal.rms();
    if rms_signal == 0.0 {
        return Err(Error::InvalidSignal(
            "cannot set an snr against a silent signal".into(),
        ));
    }
    let noise_scale = match convention {
        SnrConvention::RmsRatio => rms_signal / 10f64.powf(snr_db / 10.0),
        SnrConvention::Power => rms_signal / 10f64.powf(snr_db / 20.0),
    };

    let mut rng = ChaCha8Rng::seed_from_u64(noise_seed);
    let noise: Vec<f64> = (0..signal.len())
        .map(|_| noise_scale * rng.sample::<f64, _>(StandardNormal))
        .collect();
    let rms_noise = (noise.iter().map(|x| x * x).sum::<f64>() / noise.len() as f64).sqrt();
    let realized_snr_db = match convention {
        SnrConvention::RmsRatio => 10.0 * (rms_signal / rms_noise).log10(),
        SnrConvention::Power => 20.0 * (rms_signal / rms_noise).log10(),
    };

    let samples = signal
        .samples()
        .iter()
        .zip(&noise)
        .map(|(x, n)| x + n)
        .collect();
    Ok(NoisedSignal {
        signal: Signal::new(samples, signal.sample_rate_hz())?,
        noise_scale,
        realized_snr_db,
    })
}

/// Output of [`synthesize`]: the signal plus what the noise stage did.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthOutput {
    pub signal: Signal,
    pub noise_scale: Option<f64>,
    pub realized_snr_db: Option<f64>,
}

/// Renders a recipe end to end: tone sum, then noise when an SNR is set.
pub fn synthesize(config: &SynthConfig) -> Result<SynthOutput> {
    let clean = tone_sum(config)?;
    match config.snr_db {
        None => Ok(SynthOutput {
            signal: clean,
            noise_scale: None,
            realized_snr_db: None,
        }),
        Some(snr_db) => {
            let noised = add_noise(
                &clean,
                snr_db,
                config.snr_convention,
                stream_seed(config.seed, STREAM_NOISE_BASE),
            )?;
            Ok(SynthOutput {
                signal: noised.signal,
                noise_scale: Some(noised.noise_scale),
                realized_snr_db: Some(noised.realized_snr_db),
            })
        }
    }
}

/// The eleven test tones with amplitudes drawn uniformly from
/// `(amplitude_floor, 1]` by the seed's amplitude stream, phases zero.
pub fn case1_tones(seed: u64, amplitude_floor: f64) -> Result<Vec<Tone>> {
    if !(0.0..1.0).contains(&amplitude_floor) {
        return Err(Error::Config(format!(
            "amplitude floor must lie in [0, 1), got {amplitude_floor}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, STREAM_AMPLITUDES));
    Ok(CASE1_TONE_FREQS_HZ
        .iter()
        .map(|&frequency_hz| {
            let u: f64 = rng.random();
            Tone {
                frequency_hz,
                amplitude: 1.0 - u * (1.0 - amplitude_floor),
                phase_rad: 0.0,
            }
        })
        .collect())
}

/// Noise severity grades for the test corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseSeverity {
    Low,
    Medium,
    High,
    Mixed,
}

impl NoiseSeverity {
    pub const ALL: [NoiseSeverity; 4] = [
        NoiseSeverity::Low,
        NoiseSeverity::Medium,
        NoiseSeverity::High,
        NoiseSeverity::Mixed,
    ];

    /// Target SNR of this grade; `mixed` means noise as strong as the
    /// signal.
    pub fn snr_db(self) -> f64 {
        match self {
            NoiseSeverity::Low => 24.0,
            NoiseSeverity::Medium => 12.0,
            NoiseSeverity::High => 6.0,
            NoiseSeverity::Mixed => 0.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NoiseSeverity::Low => "low",
            NoiseSeverity::Medium => "medium",
            NoiseSeverity::High => "high",
            NoiseSeverity::Mixed => "mixed",
        }
    }
}

/// One corpus signal: a severity grade applied to the shared tone draw.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusMember {
    pub severity: NoiseSeverity,
    pub target_snr_db: f64,
    pub realized_snr_db: f64,
    pub noise_scale: f64,
    pub signal: Signal,
}

/// The four-severity test corpus for one seed: one amplitude draw, four
/// independent noise realizations at 24, 12, 6, and 0 dB.
pub fn case1_corpus(seed: u64) -> Result<[CorpusMember; 4]> {
    case1_corpus_with(seed, CASE1_AMPLITUDE_FLOOR, SnrConvention::default())
}

/// [`case1_corpus`] with explicit amplitude floor and SNR convention.
pub fn case1_corpus_with(
    seed: u64,
    amplitude_floor: f64,
    convention: SnrConvention,
) -> Result<[CorpusMember; 4]> {
    let config = SynthConfig {
        tones: case1_tones(seed, amplitude_floor)?,
        duration_s: CASE1_DURATION_S,
        sample_rate_hz: CASE1_SAMPLE_RATE_HZ,
        snr_db: None,
        snr_convention: convention,
        seed,
    };
    let clean = tone_sum(&config)?;
    let mut members = Vec::with_capacity(4);
    for (i, severity) in NoiseSeverity::ALL.into_iter().enumerate() {
        let noised = add_noise(
            &clean,
            severity.snr_db(),
            convention,
            stream_seed(seed, STREAM_NOISE_BASE + i as u64),
        )?;
        members.push(CorpusMember {
            severity,
            target_snr_db: severity.snr_db(),
            realized_snr_db: noised.realized_snr_db,
            noise_scale: noised.noise_scale,
            signal: noised.signal,
        });
    }
    Ok(members.try_into().expect("exactly four severities"))
}
