//! Spectral entropy of band energy distributions.
//!
//! Entropy is computed on the band's own energy distribution (each bin's
//! energy over the band total) and normalized by `ln n` for the band's bin
//! count n, so every band scores in [0, 1] regardless of width: 1 means the
//! energy is spread evenly (noise-like), 0 means it sits in a single bin
//! (a pure tone).

use crate::bands::{self, BandSpec};
use crate::error::{Error, Result};
use crate::signal::Spectrum;

/// Normalized energy distribution of one band.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyDistribution {
    probabilities: Vec<f64>,
}

impl EnergyDistribution {
    /// Normalizes raw non-negative energies into a distribution.
    ///
    /// Needs at least two entries and a positive total.
    pub fn from_energies(energies: &[f64]) -> Result<Self> {
        if energies.len() < 2 {
            return Err(Error::InvalidDistribution(format!(
                "need at least 2 entries, got {}",
                energies.len()
            )));
        }
        if let Some(i) = energies.iter().position(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::InvalidDistribution(format!(
                "energy at index {i} must be finite and non-negative"
            )));
        }
        let total: f64 = energies.iter().sum();
        if total <= 0.0 {
            return Err(Error::InvalidDistribution(
                "total energy must be positive".into(),
            ));
        }
        Ok(Self {
            probabilities: energies.iter().map(|e| e / total).collect(),
        })
    }

    /// Wraps an already-normalized probability vector.
    ///
    /// The entries must be non-negative and sum to 1 within 1e-12.
    pub fn from_probabilities(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.len() < 2 {
            return Err(Error::InvalidDistribution(format!(
                "need at least 2 entries, got {}",
                probabilities.len()
            )));
        }
        if let Some(i) = probabilities
            .iter()
            .position(|p| !p.is_finite() || *p < 0.0)
        {
            return Err(Error::InvalidDistribution(format!(
                "probability at index {i} must be finite and non-negative"
            )));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Self { probabilities })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Number of bins behind the distribution.
    pub fn bin_count(&self) -> usize {
        self.probabilities.len()
    }
}

/// Energy distribution of one band of a spectrum.
///
/// Errors if the band covers fewer than two bins or carries no energy.
pub fn energy_distribution(spectrum: &Spectrum, band: &BandSpec) -> Result<EnergyDistribution> {
    let range = bands::band_slice(spectrum, band)?;
    let slice = &spectrum.bin_energy()[range];
    let total: f64 = slice.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroEnergyBand {
            f_lo_hz: band.f_lo_hz,
            f_hi_hz: band.f_hi_hz,
        });
    }
    Ok(EnergyDistribution {
        probabilities: slice.iter().map(|e| e / total).collect(),
    })
}

/// Normalized spectral entropy, `-(sum p ln p) / ln n`, in [0, 1].
///
/// Zero-probability bins contribute nothing (`0 ln 0 := 0`).
pub fn spectral_entropy(dist: &EnergyDistribution) -> f64 {
    let n = dist.bin_count() as f64;
    let sum: f64 = dist
        .probabilities
        .iter()
        .map(|&p| if p > 0.0 { p * p.ln() } else { 0.0 })
        .sum();
    (-sum / n.ln()).clamp(0.0, 1.0)
}

/// Entropy on the decibel scale, `10 log10(s)`.
///
/// `s` must lie in [0, 1]; zero maps to negative infinity and 1 to 0 dB.
pub fn entropy_db(s: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&s), "entropy must be in [0, 1], got {s}");
    if s == 0.0 {
        f64::NEG_INFINITY
    } else {
        10.0 * s.log10()
    }
}
