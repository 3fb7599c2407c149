//! Report records and their CSV/JSON serializations.

use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

/// One (sequence, method) score row. Average rows leave the per-sequence
/// dimension fields empty.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub sequence: String,
    pub method: String,
    pub cqm: f64,
    pub psnr_y: f64,
    pub psnr_u: f64,
    pub psnr_v: f64,
    pub capped: bool,
    pub seconds: f64,
    pub n_frames: Option<usize>,
    pub width: Option<usize>,
    pub height: Option<usize>,
}

/// Per-sequence decomposition diagnostics, written alongside the score
/// report so sources of drift against published numbers can be traced.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceDiagnostics {
    pub sequence: String,
    pub n_frames: usize,
    pub width: usize,
    pub height: usize,
    pub rank: usize,
    pub mode_index: usize,
    pub abs_mu: f64,
    pub sigma_re: f64,
    pub sigma_im: f64,
}

/// Evaluation record printed by the `evaluate` subcommand.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvaluateReport {
    pub psnr_y: f64,
    pub psnr_u: f64,
    pub psnr_v: f64,
    pub cqm: f64,
    pub capped: bool,
}

impl EvaluateReport {
    pub fn from_core(report: &dmdbg_core::CqmReportF64) -> Self {
        Self {
            psnr_y: report.psnr_y,
            psnr_u: report.psnr_u,
            psnr_v: report.psnr_v,
            cqm: report.cqm,
            capped: report.capped,
        }
    }
}

pub fn write_csv(rows: &[BenchRow], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| {
        CliError::Report(format!("cannot open {}: {e}", path.display()))
    })?;
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| CliError::Report(e.to_string()))?;
    }
    writer.flush().map_err(|e| CliError::io(path, e))?;
    Ok(())
}

pub fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let body =
        serde_json::to_string_pretty(value).map_err(|e| CliError::Report(e.to_string()))?;
    std::fs::write(path, body + "\n").map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_header_is_pinned() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        let rows = vec![BenchRow {
            sequence: "Seq".into(),
            method: "DMD".into(),
            cqm: 41.5,
            psnr_y: 40.0,
            psnr_u: 50.0,
            psnr_v: 55.0,
            capped: false,
            seconds: 0.25,
            n_frames: Some(40),
            width: Some(64),
            height: Some(48),
        }];
        write_csv(&rows, &path).unwrap();
        let body = std::fs::read_to_string(&path).unwrap();
        let header = body.lines().next().unwrap();
        assert_eq!(
            header,
            "sequence,method,cqm,psnr_y,psnr_u,psnr_v,capped,seconds,n_frames,width,height"
        );
    }

    #[test]
    fn evaluate_report_uses_camel_case_keys() {
        let report = EvaluateReport {
            psnr_y: 1.0,
            psnr_u: 2.0,
            psnr_v: 3.0,
            cqm: 4.0,
            capped: true,
        };
        let json = serde_json::to_value(&report).unwrap();
        assert!(json.get("psnrY").is_some());
        assert!(json.get("psnrU").is_some());
        assert!(json.get("psnrV").is_some());
        assert!(json.get("cqm").is_some());
        assert!(json.get("capped").is_some());
    }
}
