//! Time series and one-sided energy spectra.
//!
//! The spectrum convention used everywhere downstream: a real signal of N
//! samples yields M = floor(N/2) + 1 bins, and bin i holds
//! `|X_i|^2 * c_i / N^2` with `c_i = 1` for DC and (even N) Nyquist and
//! `c_i = 2` for every other bin.  Under this scaling the bin energies sum
//! to the mean square of the time samples, so band energies and time-domain
//! rms live on the same scale.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::bands::{self, BandSpec};
use crate::error::{Error, Result};

/// A uniformly sampled real-valued signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal {
    samples: Vec<f64>,
    sample_rate_hz: f64,
}

impl Signal {
    /// Wraps samples taken at `sample_rate_hz`.
    ///
    /// Rejects fewer than two samples, a non-positive or non-finite rate,
    /// and any non-finite sample.
    pub fn new(samples: Vec<f64>, sample_rate_hz: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidSignal(format!(
                "need at least 2 samples, got {}",
                samples.len()
            )));
        }
        if !sample_rate_hz.is_finite() || sample_rate_hz <= 0.0 {
            return Err(Error::InvalidSignal(format!(
                "sample rate must be finite and positive, got {sample_rate_hz}"
            )));
        }
        if let Some(i) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::InvalidSignal(format!(
                "non-finite sample at index {i}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate_hz,
        })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate_hz
    }

    /// Time-domain rms, `sqrt(mean(x^2))`.
    pub fn rms(&self) -> f64 {
        let sum_sq: f64 = self.samples.iter().map(|x| x * x).sum();
        (sum_sq / self.samples.len() as f64).sqrt()
    }

    /// One-sided energy spectrum of the full record, rectangular window,
    /// single frame.
    pub fn spectrum(&self) -> Spectrum {
        let n = self.samples.len();
        let mut buf: Vec<Complex<f64>> = self
            .samples
            .iter()
            .map(|&x| Complex::new(x, 0.0))
            .collect();
        let mut planner = FftPlanner::<f64>::new();
        planner.plan_fft_forward(n).process(&mut buf);

        let m = n / 2 + 1;
        let scale = 1.0 / (n as f64 * n as f64);
        let has_nyquist = n.is_multiple_of(2);
        let mut bin_energy = Vec::with_capacity(m);
        for (i, value) in buf.iter().take(m).enumerate() {
            let one_sided = if i == 0 || (has_nyquist && i == n / 2) {
                1.0
            } else {
                2.0
            };
            bin_energy.push(value.norm_sqr() * one_sided * scale);
        }

        Spectrum {
            bin_energy,
            bin_width_hz: self.sample_rate_hz / n as f64,
            nyquist_hz: self.sample_rate_hz / 2.0,
            n_samples: n,
        }
    }
}

/// One-sided energy spectrum whose bin energies sum to the source signal's
/// mean square.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    bin_energy: Vec<f64>,
    bin_width_hz: f64,
    nyquist_hz: f64,
    n_samples: usize,
}

impl Spectrum {
    /// Builds a spectrum directly from bin energies, for callers that
    /// already have one (or tests that need an exact shape).
    ///
    /// `bin_energy.len()` must equal `floor(n_samples / 2) + 1` and every
    /// energy must be finite and non-negative.
    pub fn from_bin_energy(
        bin_energy: Vec<f64>,
        bin_width_hz: f64,
        n_samples: usize,
    ) -> Result<Self> {
        let m = n_samples / 2 + 1;
        if n_samples < 2 || bin_energy.len() != m {
            return Err(Error::InvalidSignal(format!(
                "expected {m} bins for {n_samples} samples, got {}",
                bin_energy.len()
            )));
        }
        if !bin_width_hz.is_finite() || bin_width_hz <= 0.0 {
            return Err(Error::InvalidSignal(format!(
                "bin width must be finite and positive, got {bin_width_hz}"
            )));
        }
        if let Some(i) = bin_energy.iter().position(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::InvalidSignal(format!(
                "bin energy at index {i} must be finite and non-negative"
            )));
        }
        Ok(Self {
            bin_energy,
            bin_width_hz,
            nyquist_hz: n_samples as f64 * bin_width_hz / 2.0,
            n_samples,
        })
    }

    pub fn bin_energy(&self) -> &[f64] {
        &self.bin_energy
    }

    pub fn bin_count(&self) -> usize {
        self.bin_energy.len()
    }

    pub fn bin_width_hz(&self) -> f64 {
        self.bin_width_hz
    }

    pub fn nyquist_hz(&self) -> f64 {
        self.nyquist_hz
    }

    /// Length of the time record this spectrum came from.
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    /// Whether the last bin sits exactly at the Nyquist frequency (even N).
    pub fn has_nyquist_bin(&self) -> bool {
        self.n_samples.is_multiple_of(2)
    }

    /// Sum of all bin energies (the mean square of the source record).
    pub fn total_energy(&self) -> f64 {
        self.bin_energy.iter().sum()
    }

    /// rms over the whole spectrum.
    pub fn total_rms(&self) -> f64 {
        self.total_energy().sqrt()
    }

    /// rms over one band, `sqrt(sum of the band's bin energies)`.
    ///
    /// A band that maps to no bins at all is rejected; a single-bin band is
    /// fine here (entropy is where two bins become mandatory).
    pub fn band_rms(&self, band: &BandSpec) -> Result<f64> {
        let range = bands::checked_range(self, band, 1)?;
        let energy: f64 = self.bin_energy[range].iter().sum();
        Ok(energy.sqrt())
    }
}

/// Amplitude ratio in decibels against a reference of 1.0.
///
/// `value` must be non-negative; zero maps to negative infinity.
pub fn rms_db(value: f64) -> f64 {
    debug_assert!(value >= 0.0, "rms must be non-negative, got {value}");
    if value == 0.0 {
        f64::NEG_INFINITY
    } else {
        20.0 * value.log10()
    }
}
