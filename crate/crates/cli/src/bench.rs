//! Dataset benchmarking: walk a tree of sequences, extract backgrounds with
//! every configured method, score them against ground truth, and emit the
//! score report plus per-sequence diagnostics.

use std::path::{Path, PathBuf};
use std::time::Instant;

use dmdbg_core::imaging::{
    load_sequence, natural_cmp, reinhard_transfer, statistical_mode_image, FrameSequence,
};
use dmdbg_core::metrics::cqm_rgb8;
use image::RgbImage;

use crate::baseline::median_baseline;
use crate::cli::ReportFormatArg;
use crate::error::{CliError, Result};
use crate::pipeline::{extract_background, ColorSource, ColorTransfer, ExtractConfig};
use crate::report::{write_csv, write_json, BenchRow, SequenceDiagnostics};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub dataset_root: PathBuf,
    pub output_dir: PathBuf,
    pub sequences: Option<Vec<String>>,
    pub format: Option<ReportFormatArg>,
    pub extract: ExtractConfig<f64>,
}

#[derive(Debug)]
pub struct BenchOutput {
    /// Per-(sequence, method) rows, ordered by sequence then method, with
    /// the per-method average rows appended.
    pub rows: Vec<BenchRow>,
    pub diagnostics: Vec<SequenceDiagnostics>,
}

/// Sequence directories under the root, natural-sorted by name.
fn discover_sequences(root: &Path, filter: Option<&[String]>) -> Result<Vec<(String, PathBuf)>> {
    let entries = std::fs::read_dir(root).map_err(|e| CliError::io(root, e))?;
    let mut found = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(root, e))?;
        let path = entry.path();
        if path.is_dir() && path.join("input").is_dir() {
            let name = entry.file_name().to_string_lossy().into_owned();
            if let Some(wanted) = filter {
                if !wanted.iter().any(|w| w == &name) {
                    continue;
                }
            }
            found.push((name, path));
        }
    }
    if found.is_empty() {
        return Err(CliError::io(
            root,
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no sequence directories with an input/ subdirectory",
            ),
        ));
    }
    found.sort_by(|a, b| natural_cmp(&a.0, &b.0));
    Ok(found)
}

/// First ground-truth image under `<seq>/GT/`, by natural sort.
fn find_ground_truth(seq_dir: &Path) -> Option<PathBuf> {
    let gt_dir = seq_dir.join("GT");
    let entries = std::fs::read_dir(&gt_dir).ok()?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.is_file()
                && p.extension()
                    .and_then(|e| e.to_str())
                    .map(|e| {
                        matches!(
                            e.to_ascii_lowercase().as_str(),
                            "png" | "jpg" | "jpeg" | "bmp"
                        )
                    })
                    .unwrap_or(false)
        })
        .collect();
    files.sort_by(|a, b| {
        natural_cmp(
            a.file_name().and_then(|n| n.to_str()).unwrap_or(""),
            b.file_name().and_then(|n| n.to_str()).unwrap_or(""),
        )
    });
    files.into_iter().next()
}

fn score_row(
    sequence: &str,
    method: &str,
    gt: &RgbImage,
    bg: &RgbImage,
    seconds: f64,
    seq: &FrameSequence,
) -> Result<BenchRow> {
    let report = cqm_rgb8::<f64>(gt, bg)?;
    Ok(BenchRow {
        sequence: sequence.to_string(),
        method: method.to_string(),
        cqm: report.cqm,
        psnr_y: report.psnr_y,
        psnr_u: report.psnr_u,
        psnr_v: report.psnr_v,
        capped: report.capped,
        seconds,
        n_frames: Some(seq.frame_count()),
        width: Some(seq.pixel_cols()),
        height: Some(seq.pixel_rows()),
    })
}

fn save_png(img: &RgbImage, path: &Path) -> Result<()> {
    img.save(path)
        .map_err(|e| CliError::io(path, std::io::Error::other(e)))
}

fn average_rows(rows: &[BenchRow]) -> Vec<BenchRow> {
    let mut methods: Vec<&str> = Vec::new();
    for row in rows {
        if !methods.contains(&row.method.as_str()) {
            methods.push(&row.method);
        }
    }
    methods.sort_unstable();
    methods
        .iter()
        .map(|method| {
            let group: Vec<&BenchRow> = rows.iter().filter(|r| &r.method == method).collect();
            let count = group.len() as f64;
            let mean = |f: fn(&BenchRow) -> f64| group.iter().map(|r| f(r)).sum::<f64>() / count;
            BenchRow {
                sequence: "Average".into(),
                method: method.to_string(),
                cqm: mean(|r| r.cqm),
                psnr_y: mean(|r| r.psnr_y),
                psnr_u: mean(|r| r.psnr_u),
                psnr_v: mean(|r| r.psnr_v),
                capped: group.iter().any(|r| r.capped),
                seconds: mean(|r| r.seconds),
                n_frames: None,
                width: None,
                height: None,
            }
        })
        .collect()
}

/// Run the benchmark over a dataset tree and write backgrounds and reports.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutput> {
    let sequences = discover_sequences(&cfg.dataset_root, cfg.sequences.as_deref())?;
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;

    let mut rows: Vec<BenchRow> = Vec::new();
    let mut diagnostics = Vec::new();
    for (name, dir) in &sequences {
        let Some(gt_path) = find_ground_truth(dir) else {
            log::warn!("sequence {name}: no ground-truth image under GT/, skipped");
            continue;
        };
        let gt = image::open(&gt_path)
            .map_err(|e| CliError::Core(dmdbg_core::Error::Image {
                path: gt_path.clone(),
                source: e,
            }))?
            .to_rgb8();
        let seq = load_sequence(&dir.join("input"), None)?;

        // decomposition once; color transfer reuses the selected mode
        let started = Instant::now();
        let base_cfg = ExtractConfig {
            color_transfer: ColorTransfer::Off,
            ..cfg.extract.clone()
        };
        let outcome = extract_background(&seq, &base_cfg)?;
        let dmd_seconds = started.elapsed().as_secs_f64();
        let dmd_img = outcome.dmd.image.to_rgb8_unit();

        let seq_out = cfg.output_dir.join(name);
        std::fs::create_dir_all(&seq_out).map_err(|e| CliError::io(&seq_out, e))?;
        save_png(&dmd_img, &seq_out.join("dmd.png"))?;
        rows.push(score_row(name, "DMD", &gt, &dmd_img, dmd_seconds, &seq)?);

        if cfg.extract.color_transfer.enabled() {
            let ct_started = Instant::now();
            let source = match cfg.extract.color_source {
                ColorSource::StatisticalMode => statistical_mode_image(&seq),
                ColorSource::Median => median_baseline(&seq),
            };
            let ct = reinhard_transfer(&source, &outcome.dmd)?;
            let ct_seconds = dmd_seconds + ct_started.elapsed().as_secs_f64();
            let ct_img = ct.image.to_rgb8_unit();
            save_png(&ct_img, &seq_out.join("dmd_ct.png"))?;
            rows.push(score_row(name, "DMD_CT", &gt, &ct_img, ct_seconds, &seq)?);
        }

        let med_started = Instant::now();
        let median = median_baseline(&seq);
        let med_seconds = med_started.elapsed().as_secs_f64();
        save_png(&median, &seq_out.join("median.png"))?;
        rows.push(score_row(name, "Median", &gt, &median, med_seconds, &seq)?);

        diagnostics.push(SequenceDiagnostics {
            sequence: name.clone(),
            n_frames: seq.frame_count(),
            width: seq.pixel_cols(),
            height: seq.pixel_rows(),
            rank: outcome.rank,
            mode_index: outcome.dmd.mode_index,
            abs_mu: outcome.dmd.abs_mu,
            sigma_re: outcome.sigma.re,
            sigma_im: outcome.sigma.im,
        });
        log::info!(
            "sequence {name}: N={} rank={} mode={} |mu|={:.3e}",
            seq.frame_count(),
            outcome.rank,
            outcome.dmd.mode_index,
            outcome.dmd.abs_mu
        );
    }

    if rows.is_empty() {
        return Err(CliError::io(
            &cfg.dataset_root,
            std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no sequence produced any result (missing ground truths?)",
            ),
        ));
    }

    rows.sort_by(|a, b| {
        natural_cmp(&a.sequence, &b.sequence).then_with(|| a.method.cmp(&b.method))
    });
    let averages = average_rows(&rows);
    rows.extend(averages);

    let write_csv_report = !matches!(cfg.format, Some(ReportFormatArg::Json));
    let write_json_report = !matches!(cfg.format, Some(ReportFormatArg::Csv));
    if write_csv_report {
        write_csv(&rows, &cfg.output_dir.join("report.csv"))?;
    }
    if write_json_report {
        write_json(&rows, &cfg.output_dir.join("report.json"))?;
    }
    write_json(&diagnostics, &cfg.output_dir.join("diagnostics.json"))?;

    Ok(BenchOutput { rows, diagnostics })
}
