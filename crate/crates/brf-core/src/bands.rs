//! Dyadic band tiling of the one-sided spectrum.
//!
//! Level k splits [0, nyquist] into 2^k equal-width bands.  Bands are
//! half-open in frequency, `[f_lo, f_hi)`, except that the last band of a
//! level also owns the Nyquist frequency itself.  Bin membership is decided
//! in integer arithmetic: bin i of an N-sample spectrum belongs to band
//! (k, idx) iff `idx * N <= i * 2^(k+1) < (idx + 1) * N`, so every bin lands
//! in exactly one band per level and band edges never wobble with rounding.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signal::Spectrum;

/// One band of a dyadic decomposition level.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSpec {
    pub level: u32,
    pub index: u32,
    pub f_lo_hz: f64,
    pub f_hi_hz: f64,
}

impl BandSpec {
    /// Band `index` of `2^level` equal bands over [0, nyquist].
    ///
    /// Panics if `level > 31` or `index` is out of range; both indicate a
    /// caller bug, not a data condition.
    pub fn new(level: u32, index: u32, nyquist_hz: f64) -> Self {
        assert!(level <= 31, "level must be at most 31, got {level}");
        let count = 1u64 << level;
        assert!(
            (index as u64) < count,
            "index {index} out of range for level {level}"
        );
        let width = nyquist_hz / count as f64;
        let f_hi_hz = if index as u64 == count - 1 {
            nyquist_hz
        } else {
            (index + 1) as f64 * width
        };
        Self {
            level,
            index,
            f_lo_hz: index as f64 * width,
            f_hi_hz,
        }
    }

    /// The whole spectrum as a single band (level 0).
    pub fn full(nyquist_hz: f64) -> Self {
        Self::new(0, 0, nyquist_hz)
    }

    /// Whether this is the last band of its level (the one that also owns
    /// the Nyquist frequency).
    pub fn is_last_of_level(&self) -> bool {
        self.index as u64 == (1u64 << self.level) - 1
    }

    /// Half-open membership test, `f_lo <= f < f_hi`, with the Nyquist
    /// frequency itself counted into the last band of the level.
    pub fn contains_frequency(&self, freq_hz: f64) -> bool {
        freq_hz >= self.f_lo_hz
            && (freq_hz < self.f_hi_hz || (self.is_last_of_level() && freq_hz == self.f_hi_hz))
    }

    /// Compact `lo:hi` label, e.g. `680:720` or `0:1562.5`.
    pub fn label(&self) -> String {
        format!("{}:{}", self.f_lo_hz, self.f_hi_hz)
    }
}

/// All `2^level` bands of one level over [0, nyquist].
///
/// Pure geometry; no check against any particular spectrum.  Panics if
/// `level > 31`.
pub fn dyadic_bands(nyquist_hz: f64, level: u32) -> Vec<BandSpec> {
    assert!(level <= 31, "level must be at most 31, got {level}");
    (0..1u64 << level)
        .map(|i| BandSpec::new(level, i as u32, nyquist_hz))
        .collect()
}

/// Deepest level at which every band of an N-sample spectrum still covers
/// at least two bins.
pub fn max_level(n_samples: usize) -> u32 {
    let mut level = 0;
    while level < 31 && min_bins_at(n_samples, level + 1) >= 2 {
        level += 1;
    }
    level
}

/// The bands of one level, checked against the spectrum's resolution.
pub fn bands_at_level(spectrum: &Spectrum, level: u32) -> Result<Vec<BandSpec>> {
    let max = max_level(spectrum.n_samples());
    if level > max {
        return Err(Error::LevelTooDeep {
            requested: level,
            max,
        });
    }
    Ok(dyadic_bands(spectrum.nyquist_hz(), level))
}

/// The spectrum bin range a band covers.
///
/// Errors if the band is not on this spectrum's dyadic grid or covers fewer
/// than two bins.
pub fn band_slice(spectrum: &Spectrum, band: &BandSpec) -> Result<Range<usize>> {
    checked_range(spectrum, band, 2)
}

pub(crate) fn checked_range(
    spectrum: &Spectrum,
    band: &BandSpec,
    min_bins: usize,
) -> Result<Range<usize>> {
    let expected = BandSpec::new(band.level, band.index, spectrum.nyquist_hz());
    let tol = 1e-9 * spectrum.nyquist_hz();
    if (band.f_lo_hz - expected.f_lo_hz).abs() > tol
        || (band.f_hi_hz - expected.f_hi_hz).abs() > tol
    {
        return Err(Error::Config(format!(
            "band {} does not lie on the dyadic grid of a spectrum with nyquist {} Hz",
            band.label(),
            spectrum.nyquist_hz()
        )));
    }
    let range = bin_range(spectrum.n_samples(), band.level, band.index);
    if range.is_empty() {
        return Err(Error::ZeroWidthBand {
            f_lo_hz: band.f_lo_hz,
            f_hi_hz: band.f_hi_hz,
        });
    }
    if range.len() < min_bins {
        return Err(Error::DegenerateBand {
            f_lo_hz: band.f_lo_hz,
            f_hi_hz: band.f_hi_hz,
        });
    }
    Ok(range)
}

/// Bin range of band (level, index) on an N-sample spectrum, by the integer
/// membership rule.  The last band of a level extends through the final bin.
pub(crate) fn bin_range(n_samples: usize, level: u32, index: u32) -> Range<usize> {
    let m = n_samples / 2 + 1;
    let n = n_samples as u128;
    let d = 1u128 << (level + 1);
    let lo = (index as u128 * n).div_ceil(d).min(m as u128) as usize;
    let hi = if index as u64 == (1u64 << level) - 1 {
        m
    } else {
        ((index as u128 + 1) * n).div_ceil(d).min(m as u128) as usize
    };
    lo..hi
}

fn min_bins_at(n_samples: usize, level: u32) -> usize {
    let mut min = usize::MAX;
    for index in 0..1u64 << level {
        let range = bin_range(n_samples, level, index as u32);
        min = min.min(range.len());
        if min < 2 {
            break;
        }
    }
    min
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::Signal;

    fn spectrum_for(n: usize, fs: f64) -> Spectrum {
        Signal::new(vec![1.0; n], fs).unwrap().spectrum()
    }

    #[test]
    fn level_zero_is_the_full_range() {
        let bands = dyadic_bands(10240.0, 0);
        assert_eq!(bands.len(), 1);
        assert_eq!(bands[0].f_lo_hz, 0.0);
        assert_eq!(bands[0].f_hi_hz, 10240.0);
        assert_eq!(bands[0].label(), "0:10240");
    }

    #[test]
    fn level_one_splits_at_half_nyquist() {
        let bands = dyadic_bands(10240.0, 1);
        assert_eq!(bands.len(), 2);
        assert_eq!((bands[0].f_lo_hz, bands[0].f_hi_hz), (0.0, 5120.0));
        assert_eq!((bands[1].f_lo_hz, bands[1].f_hi_hz), (5120.0, 10240.0));
    }

    #[test]
    fn fractional_band_edges_stay_exact() {
        let bands = dyadic_bands(12500.0, 3);
        assert_eq!(bands.len(), 8);
        for (i, band) in bands.iter().enumerate() {
            assert_eq!(band.f_lo_hz, i as f64 * 1562.5);
        }
        assert_eq!(bands[0].label(), "0:1562.5");
        assert_eq!(bands[7].f_hi_hz, 12500.0);
    }

    #[test]
    fn lower_half_band_covers_bins_up_to_but_not_including_the_edge() {
        let band = BandSpec::new(1, 0, 10240.0);
        let range = bin_range(20480, band.level, band.index);
        assert_eq!(range, 0..5120);
    }

    #[test]
    fn last_band_includes_the_nyquist_bin() {
        let band = BandSpec::new(1, 1, 10240.0);
        let range = bin_range(20480, band.level, band.index);
        assert_eq!(range, 5120..10241);
    }

    #[test]
    fn each_level_partitions_every_bin_exactly_once() {
        for &n in &[20480usize, 4096, 1001] {
            let m = n / 2 + 1;
            let deepest = max_level(n).min(8);
            for level in 0..=deepest {
                let mut covered = vec![0u8; m];
                for index in 0..1u32 << level {
                    for i in bin_range(n, level, index) {
                        covered[i] += 1;
                    }
                }
                assert!(
                    covered.iter().all(|&c| c == 1),
                    "level {level} over {n} samples does not partition the bins"
                );
            }
        }
    }

    #[test]
    fn child_bands_tile_their_parent() {
        let n = 20480;
        for level in 0..8 {
            for index in 0..1u32 << level {
                let parent = bin_range(n, level, index);
                let left = bin_range(n, level + 1, 2 * index);
                let right = bin_range(n, level + 1, 2 * index + 1);
                assert_eq!(parent.start, left.start);
                assert_eq!(left.end, right.start);
                assert_eq!(right.end, parent.end);
            }
        }
    }

    #[test]
    fn max_level_keeps_two_bins_per_band() {
        assert_eq!(max_level(20480), 12);
        let worst = (0..1u32 << 12)
            .map(|i| bin_range(20480, 12, i).len())
            .min()
            .unwrap();
        assert_eq!(worst, 2);
        let too_deep = (0..1u32 << 13)
            .map(|i| bin_range(20480, 13, i).len())
            .min()
            .unwrap();
        assert!(too_deep < 2);
    }

    #[test]
    fn max_level_small_records() {
        assert_eq!(max_level(2), 0);
        assert_eq!(max_level(4), 0);
        assert_eq!(max_level(8), 1);
    }

    #[test]
    fn bands_at_level_rejects_too_deep_levels() {
        let spectrum = spectrum_for(20480, 20480.0);
        assert!(bands_at_level(&spectrum, 12).is_ok());
        match bands_at_level(&spectrum, 13) {
            Err(Error::LevelTooDeep { requested, max }) => {
                assert_eq!(requested, 13);
                assert_eq!(max, 12);
            }
            other => panic!("expected LevelTooDeep, got {other:?}"),
        }
    }

    #[test]
    fn band_slice_rejects_degenerate_bands() {
        let spectrum = spectrum_for(8, 8.0);
        let band = BandSpec::new(2, 0, spectrum.nyquist_hz());
        assert!(matches!(
            band_slice(&spectrum, &band),
            Err(Error::DegenerateBand { .. })
        ));
    }

    #[test]
    fn band_slice_rejects_mismatched_grid() {
        let spectrum = spectrum_for(20480, 20480.0);
        let foreign = BandSpec::new(1, 0, 12500.0);
        assert!(matches!(
            band_slice(&spectrum, &foreign),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn tone_on_band_edge_belongs_to_the_upper_band() {
        let bands = dyadic_bands(10240.0, 8);
        assert_eq!(bands[2].label(), "80:120");
        assert!(!bands[2].contains_frequency(120.0));
        assert_eq!(bands[3].label(), "120:160");
        assert!(bands[3].contains_frequency(120.0));
    }

    #[test]
    fn nyquist_belongs_to_the_last_band_only() {
        let bands = dyadic_bands(10240.0, 2);
        assert!(!bands[2].contains_frequency(10240.0));
        assert!(bands[3].contains_frequency(10240.0));
        assert!(!bands[3].contains_frequency(10240.1));
    }

    #[test]
    fn level_eight_band_for_a_known_tone() {
        let bands = dyadic_bands(10240.0, 8);
        let hit = bands.iter().find(|b| b.contains_frequency(700.0)).unwrap();
        assert_eq!(hit.label(), "680:720");
    }
}
