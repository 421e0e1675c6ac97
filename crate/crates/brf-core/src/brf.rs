//! Gate verdicts, band scores, and the band relevance factor.
//!
//! The full-spectrum entropy first gates the signal: at or above -3 dB the
//! spectrum is noise-like and no band analysis is attempted.  For a gated
//! (relevant) signal every dyadic band is scored as if the signal had been
//! band-pass filtered to it:
//!
//! * correction factor: baseline rms minus band rms, in dB, the energy the
//!   filtering removed;
//! * entropy difference factor: 3 dB plus baseline entropy minus band
//!   entropy, positive when the band is tonally cleaner than the whole;
//! * band relevance factor (BRF): their quotient, so entropy gain is paid
//!   for by the energy thrown away.
//!
//! A band is relevant when its entropy difference is non-negative and its
//! BRF is positive.  Per level, BRFs are normalized to [-1, 1] and band rms
//! to [0, 1] for display, and bands with positive BRF are ranked.

use serde::{Deserialize, Serialize};

use crate::bands::{self, BandSpec};
use crate::entropy::{self, EnergyDistribution};
use crate::error::{Error, Result};
use crate::sentinel::{db_value, opt_db_value};
use crate::signal::{rms_db, Signal, Spectrum};

/// Full-spectrum entropy at or above this level classifies the signal as
/// noise.
pub const GATE_THRESHOLD_DB: f64 = -3.0;

/// Shift added to the entropy difference so a band matching the baseline
/// entropy still scores +3 dB.
pub const ENTROPY_SHIFT_DB: f64 = 3.0;

/// Floor for the correction factor when a band holds essentially all the
/// signal energy, keeping the BRF quotient finite.
pub const RMS_DIFF_FLOOR_DB: f64 = 1e-12;

/// Default deepest decomposition level.
pub const DEFAULT_MAX_LEVEL: u32 = 8;

/// Default ranking depth per level.
pub const DEFAULT_TOP_N: usize = 5;

/// Outcome of the full-spectrum entropy gate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GateVerdict {
    /// Normalized full-spectrum entropy in [0, 1].
    pub s_base: f64,
    /// The same entropy in dB; negative infinity for a one-bin spectrum.
    #[serde(with = "db_value")]
    pub s_base_db: f64,
    /// Whether the signal carries enough structure to analyze.
    pub relevant: bool,
}

/// Scores of one band at one level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandScore {
    pub band: BandSpec,
    /// rms of the band's share of the spectrum.
    pub rms_band: f64,
    /// Correction factor: baseline rms dB minus band rms dB, never
    /// negative; positive infinity for a band with zero energy.
    #[serde(with = "db_value")]
    pub rms_diff_db: f64,
    /// Band entropy in [0, 1]; absent for a zero-energy band.
    pub s_filtered: Option<f64>,
    /// Entropy difference factor in dB; absent for a zero-energy band.
    #[serde(with = "opt_db_value")]
    pub s_diff_db: Option<f64>,
    /// Band relevance factor.
    #[serde(with = "db_value")]
    pub brf: f64,
    /// Whether this band is informative: non-negative entropy difference
    /// and positive BRF.
    pub relevant: bool,
}

/// All band scores of one decomposition level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelResult {
    pub level: u32,
    /// One score per band, in band order.
    pub scores: Vec<BandScore>,
    /// BRFs scaled to [-1, 1]: positives against the level's best, each
    /// negative against the worst.
    pub brf_normalized: Vec<f64>,
    /// Band rms scaled to [0, 1] against the level's loudest band.
    pub rms_normalized: Vec<f64>,
    /// Bands with positive BRF, best first, capped at the configured depth.
    pub ranking: Vec<BandSpec>,
}

/// A per-level ranking by plain band rms, the energy-only baseline the BRF
/// ranking is compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelRanking {
    pub level: u32,
    pub bands: Vec<BandSpec>,
}

/// Provenance and shape of one analysis run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportMetadata {
    /// Where the signal came from, when known.
    pub source: Option<String>,
    pub sample_rate_hz: f64,
    pub n_samples: usize,
    /// The level depth the caller asked for.
    pub requested_level: u32,
    /// The depth actually analyzed.
    pub max_level: u32,
    /// Set when the requested depth had to be reduced to keep at least two
    /// bins in every band.
    pub level_trimmed: bool,
    pub top_n: usize,
}

/// Complete outcome of analyzing one signal.
///
/// When the gate fails, `levels` and `rms_rankings` are empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub gate: GateVerdict,
    pub levels: Vec<LevelResult>,
    pub rms_rankings: Vec<LevelRanking>,
    pub metadata: ReportMetadata,
}

impl AnalysisReport {
    pub fn level(&self, level: u32) -> Option<&LevelResult> {
        self.levels.iter().find(|l| l.level == level)
    }

    pub fn is_relevant(&self) -> bool {
        self.gate.relevant
    }
}

fn passes_gate(s_base_db: f64) -> bool {
    s_base_db < GATE_THRESHOLD_DB
}

/// Builds a gate verdict from an already-computed full-spectrum entropy.
pub fn gate_verdict_from_entropy(s_base: f64) -> GateVerdict {
    let s_base_db = entropy::entropy_db(s_base);
    GateVerdict {
        s_base,
        s_base_db,
        relevant: passes_gate(s_base_db),
    }
}

/// Applies the full-spectrum entropy gate.
///
/// Errors if the spectrum carries no energy at all.
pub fn gate(spectrum: &Spectrum) -> Result<GateVerdict> {
    let full = BandSpec::full(spectrum.nyquist_hz());
    let dist = entropy::energy_distribution(spectrum, &full).map_err(|e| match e {
        Error::ZeroEnergyBand { .. } => Error::InvalidSignal("signal carries no energy".into()),
        other => other,
    })?;
    Ok(gate_verdict_from_entropy(entropy::spectral_entropy(&dist)))
}

/// Correction factor: baseline rms dB minus band rms dB, clamped at zero.
///
/// A band with no energy at all (band rms dB of negative infinity) maps to
/// positive infinity.
pub fn correction_factor(rms_base_db: f64, rms_filtered_db: f64) -> f64 {
    if rms_filtered_db == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    (rms_base_db - rms_filtered_db).max(0.0)
}

/// Entropy difference factor: 3 dB plus baseline entropy dB minus band
/// entropy dB.
///
/// When both entropies are zero (both dB values negative infinity) the
/// difference is taken as zero, so a lone tone's own band scores +3 dB.
pub fn entropy_difference_factor(s_base_db: f64, s_filtered_db: f64) -> f64 {
    if s_base_db == f64::NEG_INFINITY && s_filtered_db == f64::NEG_INFINITY {
        return ENTROPY_SHIFT_DB;
    }
    ENTROPY_SHIFT_DB + s_base_db - s_filtered_db
}

/// Band relevance factor: entropy difference over the correction factor,
/// with the correction factor floored to keep the quotient finite.
///
/// A zero-energy band (infinite correction factor) scores zero.
pub fn band_relevance_factor(s_diff_db: f64, rms_diff_db: f64) -> f64 {
    if rms_diff_db == f64::INFINITY {
        return 0.0;
    }
    s_diff_db / rms_diff_db.max(RMS_DIFF_FLOOR_DB)
}

fn score_band(
    spectrum: &Spectrum,
    band: BandSpec,
    rms_base_db: f64,
    s_base_db: f64,
) -> Result<BandScore> {
    let range = bands::band_slice(spectrum, &band)?;
    let slice = &spectrum.bin_energy()[range];
    let energy: f64 = slice.iter().sum();
    if energy <= 0.0 {
        return Ok(BandScore {
            band,
            rms_band: 0.0,
            rms_diff_db: f64::INFINITY,
            s_filtered: None,
            s_diff_db: None,
            brf: 0.0,
            relevant: false,
        });
    }

    let rms_band = energy.sqrt();
    let rms_diff_db = correction_factor(rms_base_db, rms_db(rms_band));

    let dist = EnergyDistribution::from_energies(slice)?;
    let s_filtered = entropy::spectral_entropy(&dist);
    let s_filtered_db = entropy::entropy_db(s_filtered);
    let s_diff_db = entropy_difference_factor(s_base_db, s_filtered_db);

    let brf = band_relevance_factor(s_diff_db, rms_diff_db);
    Ok(BandScore {
        band,
        rms_band,
        rms_diff_db,
        s_filtered: Some(s_filtered),
        s_diff_db: Some(s_diff_db),
        brf,
        relevant: s_diff_db >= 0.0 && brf > 0.0,
    })
}

/// Scales a level's BRFs into [-1, 1] and its band rms into [0, 1].
///
/// Positive BRFs divide by the level's largest positive BRF, negative ones
/// by the magnitude of its most negative, zeros stay zero; an infinite best
/// maps to exactly 1 (or -1) while finite values against it map to 0.
pub fn normalize_level(scores: &[BandScore]) -> (Vec<f64>, Vec<f64>) {
    let max_pos = scores
        .iter()
        .map(|s| s.brf)
        .filter(|b| *b > 0.0)
        .fold(f64::NEG_INFINITY, f64::max);
    let min_neg = scores
        .iter()
        .map(|s| s.brf)
        .filter(|b| *b < 0.0)
        .fold(f64::INFINITY, f64::min);

    let brf_normalized = scores
        .iter()
        .map(|s| {
            let v = if s.brf > 0.0 {
                if s.brf == f64::INFINITY {
                    1.0
                } else if max_pos == f64::INFINITY {
                    0.0
                } else {
                    s.brf / max_pos
                }
            } else if s.brf < 0.0 {
                if s.brf == f64::NEG_INFINITY {
                    -1.0
                } else if min_neg == f64::NEG_INFINITY {
                    0.0
                } else {
                    s.brf / -min_neg
                }
            } else {
                0.0
            };
            if v == 0.0 {
                0.0
            } else {
                v
            }
        })
        .collect();

    let max_rms = scores.iter().map(|s| s.rms_band).fold(0.0, f64::max);
    let rms_normalized = scores
        .iter()
        .map(|s| if max_rms > 0.0 { s.rms_band / max_rms } else { 0.0 })
        .collect();

    (brf_normalized, rms_normalized)
}

fn brf_ranking(scores: &[BandScore], top_n: usize) -> Vec<BandSpec> {
    let mut picked: Vec<&BandScore> = scores.iter().filter(|s| s.brf > 0.0).collect();
    picked.sort_by(|a, b| {
        b.brf
            .partial_cmp(&a.brf)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.band.index.cmp(&b.band.index))
    });
    picked.truncate(top_n);
    picked.iter().map(|s| s.band).collect()
}

fn rms_ranking(scores: &[BandScore], top_n: usize) -> Vec<BandSpec> {
    let mut all: Vec<&BandScore> = scores.iter().collect();
    all.sort_by(|a, b| {
        b.rms_band
            .partial_cmp(&a.rms_band)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.band.index.cmp(&b.band.index))
    });
    all.truncate(top_n);
    all.iter().map(|s| s.band).collect()
}

/// Runs the whole pipeline: gate, then per-level band scores, normalized
/// values, and rankings for levels 0 through `requested_level`.
///
/// A requested depth beyond what the record length supports is trimmed to
/// the deepest level that keeps two bins per band, flagged in the metadata.
/// When the gate fails the report carries the verdict and metadata only.
pub fn analyze(signal: &Signal, requested_level: u32, top_n: usize) -> Result<AnalysisReport> {
    if top_n == 0 {
        return Err(Error::Config("ranking depth must be at least 1".into()));
    }

    let spectrum = signal.spectrum();
    let supported = bands::max_level(signal.len());
    let (max_level, level_trimmed) = if requested_level > supported {
        (supported, true)
    } else {
        (requested_level, false)
    };

    let gate = gate(&spectrum)?;
    let metadata = ReportMetadata {
        source: None,
        sample_rate_hz: signal.sample_rate_hz(),
        n_samples: signal.len(),
        requested_level,
        max_level,
        level_trimmed,
        top_n,
    };
    let mut report = AnalysisReport {
        gate,
        levels: Vec::new(),
        rms_rankings: Vec::new(),
        metadata,
    };
    if !gate.relevant {
        return Ok(report);
    }

    let rms_base_db = rms_db(spectrum.total_rms());
    let s_base_db = gate.s_base_db;
    for level in 0..=max_level {
        let scores = bands::bands_at_level(&spectrum, level)?
            .into_iter()
            .map(|band| score_band(&spectrum, band, rms_base_db, s_base_db))
            .collect::<Result<Vec<_>>>()?;
        let (brf_normalized, rms_normalized) = normalize_level(&scores);
        let ranking = brf_ranking(&scores, top_n);
        report.rms_rankings.push(LevelRanking {
            level,
            bands: rms_ranking(&scores, top_n),
        });
        report.levels.push(LevelResult {
            level,
            scores,
            brf_normalized,
            rms_normalized,
            ranking,
        });
    }
    Ok(report)
}
