//! Analysis report serialization.
//!
//! Reports are pretty-printed JSON with a fixed key order, so the same
//! analysis always serializes to the same bytes.  A schema version gates
//! readers: any report whose major version differs from this build's is
//! refused rather than misread.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::brf::{AnalysisReport, GateVerdict, LevelRanking, LevelResult, ReportMetadata};
use crate::error::{Error, Result};

/// Schema version stamped into every report this build writes.
pub const REPORT_SCHEMA_VERSION: &str = "1.0.0";

const SUPPORTED_MAJOR: u32 = 1;

#[derive(Serialize)]
struct ReportFileRef<'a> {
    schema_version: &'a str,
    tool_version: &'a str,
    gate: &'a GateVerdict,
    levels: &'a [LevelResult],
    rms_rankings: &'a [LevelRanking],
    metadata: &'a ReportMetadata,
}

#[derive(Deserialize)]
struct ReportFile {
    gate: GateVerdict,
    levels: Vec<LevelResult>,
    rms_rankings: Vec<LevelRanking>,
    metadata: ReportMetadata,
}

/// Serializes a report to its canonical JSON text.
pub fn report_to_string(report: &AnalysisReport) -> Result<String> {
    let file = ReportFileRef {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        gate: &report.gate,
        levels: &report.levels,
        rms_rankings: &report.rms_rankings,
        metadata: &report.metadata,
    };
    let mut json = serde_json::to_string_pretty(&file)
        .map_err(|e| Error::Config(format!("report serialization failed: {e}")))?;
    json.push('\n');
    Ok(json)
}

/// Writes a report as canonical JSON.
pub fn write_report(report: &AnalysisReport, path: &Path) -> Result<()> {
    std::fs::write(path, report_to_string(report)?)?;
    Ok(())
}

/// Parses a report from JSON text, refusing foreign schema majors.
pub fn parse_report(text: &str) -> Result<AnalysisReport> {
    let head: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let found = head
        .get("schema_version")
        .and_then(|v| v.as_str())
        .ok_or_else(|| Error::Format("report lacks a schema_version field".into()))?;
    let major = found
        .split('.')
        .next()
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| Error::Format(format!("malformed schema version {found:?}")))?;
    if major != SUPPORTED_MAJOR {
        return Err(Error::SchemaVersion {
            found: found.to_string(),
            expected: SUPPORTED_MAJOR,
        });
    }
    let file: ReportFile = serde_json::from_str(text).map_err(json_error)?;
    Ok(AnalysisReport {
        gate: file.gate,
        levels: file.levels,
        rms_rankings: file.rms_rankings,
        metadata: file.metadata,
    })
}

/// Reads a report file written by [`write_report`].
pub fn read_report(path: &Path) -> Result<AnalysisReport> {
    parse_report(&std::fs::read_to_string(path)?)
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    }
}
