//! Band relevance analysis for rotating-machinery vibration signals.
//!
//! The library answers two questions about a measured vibration signal:
//!
//! * does the signal carry structured (harmonic) content at all, or is it
//!   indistinguishable from broadband noise? (`brf::gate`)
//! * which frequency bands carry that structure? (`brf::analyze`)
//!
//! Both rest on the spectral entropy of the one-sided energy spectrum.  A
//! band whose energy distribution is peakier than the whole spectrum tightens
//! entropy when the rest of the spectrum is filtered away; the band relevance
//! factor (BRF) normalizes that entropy gain by the energy the filtering
//! removed, so that a quiet band hosting a clean tone can outrank a loud band
//! of smeared noise.
//!
//! Pipeline: [`signal`] turns samples into an energy spectrum, [`bands`]
//! tiles the spectrum into dyadic half-open bands, [`entropy`] scores energy
//! distributions, [`brf`] combines them into gate verdicts and per-band
//! scores, [`rankmetrics`] compares rankings, [`synth`] builds seeded test
//! signals, and [`io`] reads signals and writes reports and heatmaps.

pub mod bands;
pub mod brf;
pub mod entropy;
mod error;
pub mod io;
pub mod rankmetrics;
mod sentinel;
pub mod signal;
pub mod synth;

pub use error::{Error, Result};
