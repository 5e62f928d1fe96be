//! JSON, CSV and text renderings of a [`ScanResult`].
//!
//! Exact-mode numbers are always `"p/q"` strings in lowest terms; float-mode
//! numbers are JSON numbers. Output is a pure function of the result, so a
//! fixed config always yields the same bytes (wall time is only written when
//! explicitly requested).

use std::fmt::Write as _;
use std::str::FromStr;

use bgap_core::{FloatGapReport, GapReport, Rational};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::scan::{CellValues, MinValue, ScanResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Exact(Rational),
    Float(f64),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellRow {
    pub x: Num,
    pub y: Num,
    pub gap1: Num,
    pub gap2: Num,
    pub gap3: Num,
    pub gap4: Num,
    pub residual: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinGap4Row {
    pub value: Num,
    pub x: Num,
    pub y: Num,
}

/// The JSON document written by `bgap scan`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub n: usize,
    pub function: String,
    pub grid: usize,
    pub mode: String,
    pub cells: Vec<CellRow>,
    pub min_gap4: MinGap4Row,
    pub convex_input: bool,
    pub equality_cells: usize,
    pub total_cells: usize,
    /// `null` unless timing was requested.
    pub runtime_ms: Option<u64>,
}

fn exact_row(rep: &GapReport) -> CellRow {
    let e = |r: &Rational| Num::Exact(r.clone());
    CellRow {
        x: e(&rep.x),
        y: e(&rep.y),
        gap1: e(&rep.gap1),
        gap2: e(&rep.gap2),
        gap3: e(&rep.gap3),
        gap4: e(&rep.gap4),
        residual: e(&rep.identity_residual),
    }
}

fn float_row(rep: &FloatGapReport) -> CellRow {
    CellRow {
        x: Num::Float(rep.x),
        y: Num::Float(rep.y),
        gap1: Num::Float(rep.gap1),
        gap2: Num::Float(rep.gap2),
        gap3: Num::Float(rep.gap3),
        gap4: Num::Float(rep.gap4),
        residual: Num::Float(rep.identity_residual),
    }
}

impl ScanReport {
    pub fn from_result(result: &ScanResult, with_timing: bool) -> Self {
        let cfg = &result.config;
        let cells = result
            .cells
            .iter()
            .map(|c| match &c.values {
                CellValues::Exact(rep) => exact_row(rep),
                CellValues::Float(rep) => float_row(rep),
            })
            .collect();
        let (mx, my) = (cfg.point(result.min_gap4.i), cfg.point(result.min_gap4.j));
        let min_gap4 = match &result.min_gap4.value {
            MinValue::Exact(v) => MinGap4Row {
                value: Num::Exact(v.clone()),
                x: Num::Exact(mx),
                y: Num::Exact(my),
            },
            MinValue::Float(v) => MinGap4Row {
                value: Num::Float(*v),
                x: Num::Float(mx.to_f64()),
                y: Num::Float(my.to_f64()),
            },
        };
        ScanReport {
            n: cfg.n,
            function: cfg.function.to_string(),
            grid: cfg.grid,
            mode: cfg.mode.to_string(),
            cells,
            min_gap4,
            convex_input: result.convex_input,
            equality_cells: result.equality_cells,
            total_cells: result.total_cells,
            runtime_ms: with_timing.then_some(result.wall_time.as_millis() as u64),
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

fn float_field(v: f64) -> String {
    format!("{v:?}")
}

/// One header row plus one row per cell. Float mode appends the integer grid
/// indices `i, j` (with `x = i/G`, `y = j/G`) for heatmap plotting.
pub fn to_csv(result: &ScanResult) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let float = result
        .cells
        .first()
        .is_some_and(|c| matches!(c.values, CellValues::Float(_)));
    let mut header = vec!["x", "y", "gap1", "gap2", "gap3", "gap4", "residual"];
    if float {
        header.extend(["i", "j"]);
    }
    w.write_record(&header).map_err(csv_err)?;
    for cell in &result.cells {
        let row: Vec<String> = match &cell.values {
            CellValues::Exact(r) => [
                &r.x,
                &r.y,
                &r.gap1,
                &r.gap2,
                &r.gap3,
                &r.gap4,
                &r.identity_residual,
            ]
            .iter()
            .map(ToString::to_string)
            .collect(),
            CellValues::Float(r) => {
                let mut row: Vec<String> =
                    [r.x, r.y, r.gap1, r.gap2, r.gap3, r.gap4, r.identity_residual]
                        .into_iter()
                        .map(float_field)
                        .collect();
                row.push(cell.i.to_string());
                row.push(cell.j.to_string());
                row
            }
        };
        w.write_record(&row).map_err(csv_err)?;
    }
    w.into_inner()
        .map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

pub fn to_text(result: &ScanResult, with_timing: bool) -> String {
    let cfg = &result.config;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, function = {}, grid = {}, mode = {}",
        cfg.n, cfg.function, cfg.grid, cfg.mode
    );
    let _ = writeln!(
        out,
        "cells: {}, equality cells: {}",
        result.total_cells, result.equality_cells
    );
    let (mx, my) = (cfg.point(result.min_gap4.i), cfg.point(result.min_gap4.j));
    let value = match &result.min_gap4.value {
        MinValue::Exact(v) => v.to_string(),
        MinValue::Float(v) => float_field(*v),
    };
    let _ = writeln!(out, "min gap4: {value} at (x = {mx}, y = {my})");
    let _ = writeln!(out, "convex input: {}", result.convex_input);
    let verdict = match (&result.min_gap4.value, result.convex_input) {
        (MinValue::Float(_), _) => "none (float mode)".to_string(),
        (_, false) => "none (input is not convex)".to_string(),
        _ => {
            let v = result.violations();
            if v.is_empty() {
                "gap4 >= 0 on every cell, all exact relations hold".to_string()
            } else {
                format!("{} violation(s)", v.len())
            }
        }
    };
    let _ = writeln!(out, "verdict: {verdict}");
    if with_timing {
        let _ = writeln!(out, "runtime: {} ms", result.wall_time.as_millis());
    }
    out
}
