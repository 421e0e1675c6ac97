//! Level-by-band heatmap grids, as CSV or standalone SVG.
//!
//! Every analyzed level is stretched onto the deepest level's band grid:
//! the level-k value of a band repeats across the `2^(K-k)` deepest-level
//! columns it spans, giving a K+1 row by 2^K column matrix that shows how
//! relevance sharpens as bands narrow.  A report whose gate failed renders
//! as a one-line `irrelevant` marker instead.

use std::path::Path;

use crate::brf::AnalysisReport;
use crate::error::{Error, Result};

/// Which per-band value fills the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatmapKind {
    /// Normalized band relevance, in [-1, 1].
    Brf,
    /// Normalized band rms, in [0, 1].
    Rms,
}

impl std::fmt::Display for HeatmapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            HeatmapKind::Brf => "brf",
            HeatmapKind::Rms => "rms",
        })
    }
}

impl std::str::FromStr for HeatmapKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brf" => Ok(HeatmapKind::Brf),
            "rms" => Ok(HeatmapKind::Rms),
            other => Err(Error::Config(format!(
                "unknown heatmap kind {other:?}, expected brf or rms"
            ))),
        }
    }
}

/// The expanded grid behind a heatmap.
#[derive(Debug, Clone, PartialEq)]
pub struct HeatmapMatrix {
    pub kind: HeatmapKind,
    /// The level each row shows, shallowest first.
    pub levels: Vec<u32>,
    /// Edges of the deepest level's bands, one per column.
    pub band_edges: Vec<(f64, f64)>,
    /// One row per level, stretched to the deepest level's columns.
    pub rows: Vec<Vec<f64>>,
}

/// Expands a report into a heatmap grid; `None` when the gate failed and
/// there are no levels to show.
pub fn heatmap_matrix(report: &AnalysisReport, kind: HeatmapKind) -> Option<HeatmapMatrix> {
    let deepest = report.levels.last()?;
    let k_max = deepest.level;
    let cols = 1usize << k_max;
    let band_edges = deepest
        .scores
        .iter()
        .map(|s| (s.band.f_lo_hz, s.band.f_hi_hz))
        .collect();

    let mut levels = Vec::with_capacity(report.levels.len());
    let mut rows = Vec::with_capacity(report.levels.len());
    for level in &report.levels {
        let values = match kind {
            HeatmapKind::Brf => &level.brf_normalized,
            HeatmapKind::Rms => &level.rms_normalized,
        };
        let shift = k_max - level.level;
        rows.push((0..cols).map(|j| values[j >> shift]).collect());
        levels.push(level.level);
    }
    Some(HeatmapMatrix {
        kind,
        levels,
        band_edges,
        rows,
    })
}

/// Writes the heatmap as CSV: a band-edge header row, then one value row
/// per level.  A gate-failed report writes the single line `irrelevant`.
pub fn write_heatmap_csv(report: &AnalysisReport, kind: HeatmapKind, path: &Path) -> Result<()> {
    let text = match heatmap_matrix(report, kind) {
        None => "irrelevant\n".to_string(),
        Some(matrix) => {
            let header: Vec<String> = matrix
                .band_edges
                .iter()
                .map(|(lo, hi)| format!("{lo}:{hi}"))
                .collect();
            let mut out = header.join(",");
            out.push('\n');
            for row in &matrix.rows {
                let cells: Vec<String> = row.iter().map(|v| format!("{v}")).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
    };
    std::fs::write(path, text)?;
    Ok(())
}

/// Writes the heatmap as a standalone SVG.
pub fn write_heatmap_svg(report: &AnalysisReport, kind: HeatmapKind, path: &Path) -> Result<()> {
    let svg = match heatmap_matrix(report, kind) {
        None => irrelevant_svg(),
        Some(matrix) => render_svg(&matrix, report.metadata.sample_rate_hz / 2.0),
    };
    std::fs::write(path, svg)?;
    Ok(())
}

const LEFT: f64 = 64.0;
const TOP: f64 = 40.0;
const RIGHT: f64 = 16.0;
const PLOT_W: f64 = 896.0;
const CELL_H: f64 = 28.0;
const AXIS_H: f64 = 28.0;
const LEGEND_H: f64 = 44.0;

fn irrelevant_svg() -> String {
    let mut svg = String::new();
    svg.push_str(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"120\" \
         viewBox=\"0 0 480 120\">\n",
    );
    svg.push_str("  <rect width=\"480\" height=\"120\" fill=\"white\"/>\n");
    svg.push_str(
        "  <text x=\"240\" y=\"64\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"16\" fill=\"#444\">signal classified as noise</text>\n",
    );
    svg.push_str("</svg>\n");
    svg
}

fn render_svg(matrix: &HeatmapMatrix, nyquist_hz: f64) -> String {
    let rows = matrix.rows.len();
    let cols = matrix.band_edges.len();
    let cell_w = PLOT_W / cols as f64;
    let width = LEFT + PLOT_W + RIGHT;
    let height = TOP + rows as f64 * CELL_H + AXIS_H + LEGEND_H;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {width:.0} {height:.0}\" font-family=\"sans-serif\">\n"
    ));
    svg.push_str(&format!(
        "  <rect width=\"{width:.0}\" height=\"{height:.0}\" fill=\"white\"/>\n"
    ));

    let title = match matrix.kind {
        HeatmapKind::Brf => "normalized band relevance by level",
        HeatmapKind::Rms => "normalized band rms by level",
    };
    svg.push_str(&format!(
        "  <text x=\"{LEFT:.2}\" y=\"24\" font-size=\"15\" fill=\"#222\">{title}</text>\n"
    ));

    for (r, row) in matrix.rows.iter().enumerate() {
        let y = TOP + r as f64 * CELL_H;
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" font-size=\"12\" \
             fill=\"#444\">level {}</text>\n",
            LEFT - 8.0,
            y + CELL_H / 2.0 + 4.0,
            matrix.levels[r]
        ));
        for (j, &value) in row.iter().enumerate() {
            let (red, green, blue) = cell_color(matrix.kind, value);
            svg.push_str(&format!(
                "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{CELL_H:.2}\" \
                 fill=\"rgb({red},{green},{blue})\" shape-rendering=\"crispEdges\"/>\n",
                LEFT + j as f64 * cell_w,
                y,
                cell_w,
            ));
        }
    }

    let axis_y = TOP + rows as f64 * CELL_H + 18.0;
    for i in 0..=4 {
        let fraction = i as f64 / 4.0;
        let anchor = match i {
            0 => "start",
            4 => "end",
            _ => "middle",
        };
        svg.push_str(&format!(
            "  <text x=\"{:.2}\" y=\"{axis_y:.2}\" text-anchor=\"{anchor}\" font-size=\"11\" \
             fill=\"#444\">{} Hz</text>\n",
            LEFT + fraction * PLOT_W,
            format_hz(fraction * nyquist_hz)
        ));
    }

    let legend_y = TOP + rows as f64 * CELL_H + AXIS_H + 8.0;
    let (lo_label, hi_label) = match matrix.kind {
        HeatmapKind::Brf => ("-1", "+1"),
        HeatmapKind::Rms => ("0", "1"),
    };
    let steps = 5;
    for i in 0..steps {
        let t = i as f64 / (steps - 1) as f64;
        let value = match matrix.kind {
            HeatmapKind::Brf => 2.0 * t - 1.0,
            HeatmapKind::Rms => t,
        };
        let (red, green, blue) = cell_color(matrix.kind, value);
        svg.push_str(&format!(
            "  <rect x=\"{:.2}\" y=\"{legend_y:.2}\" width=\"24\" height=\"12\" \
             fill=\"rgb({red},{green},{blue})\" stroke=\"#ccc\" stroke-width=\"0.5\"/>\n",
            LEFT + i as f64 * 24.0
        ));
    }
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\" \
         fill=\"#444\">{lo_label}</text>\n",
        LEFT + 12.0,
        legend_y + 26.0
    ));
    svg.push_str(&format!(
        "  <text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"11\" \
         fill=\"#444\">{hi_label}</text>\n",
        LEFT + steps as f64 * 24.0 - 12.0,
        legend_y + 26.0
    ));

    svg.push_str("</svg>\n");
    svg
}

fn cell_color(kind: HeatmapKind, value: f64) -> (u8, u8, u8) {
    const WHITE: (u8, u8, u8) = (255, 255, 255);
    const BLUE: (u8, u8, u8) = (33, 102, 172);
    const RED: (u8, u8, u8) = (178, 24, 43);
    match kind {
        HeatmapKind::Brf => {
            let v = value.clamp(-1.0, 1.0);
            if v >= 0.0 {
                blend(WHITE, BLUE, v)
            } else {
                blend(WHITE, RED, -v)
            }
        }
        HeatmapKind::Rms => blend(WHITE, BLUE, value.clamp(0.0, 1.0)),
    }
}

fn blend(from: (u8, u8, u8), to: (u8, u8, u8), t: f64) -> (u8, u8, u8) {
    let channel = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * t).round() as u8;
    (
        channel(from.0, to.0),
        channel(from.1, to.1),
        channel(from.2, to.2),
    )
}

fn format_hz(value: f64) -> String {
    if (value - value.round()).abs() < 1e-9 {
        format!("{}", value.round())
    } else {
        format!("{value}")
    }
}
