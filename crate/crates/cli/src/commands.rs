//! Subcommand implementations behind the argument parsing.

use dmdbg_core::imaging::load_sequence;
use dmdbg_core::metrics::cqm_rgb8;

use crate::bench::{run_bench, BenchConfig};
use crate::cli::{BenchArgs, EvaluateArgs, ExtractArgs, SynthArgs};
use crate::error::{CliError, Result};
use crate::pipeline::extract_background;
use crate::report::{write_json, EvaluateReport};
use crate::synth::{generate, write_sequence};

pub fn run_extract(args: &ExtractArgs) -> Result<()> {
    let seq = load_sequence(&args.input, None)?;
    let cfg = args.knobs.to_config();
    let outcome = extract_background(&seq, &cfg)?;

    std::fs::create_dir_all(&args.output).map_err(|e| CliError::io(&args.output, e))?;
    let dmd_path = args.output.join("dmd.png");
    outcome
        .dmd
        .image
        .to_rgb8_unit()
        .save(&dmd_path)
        .map_err(|e| CliError::io(&dmd_path, std::io::Error::other(e)))?;
    println!(
        "selected mode {} with |mu| = {:.6e} (rank {}, {} frames)",
        outcome.dmd.mode_index, outcome.dmd.abs_mu, outcome.rank, outcome.n_frames
    );
    println!("wrote {}", dmd_path.display());
    if let Some(ct) = &outcome.dmd_ct {
        let ct_path = args.output.join("dmd_ct.png");
        ct.image
            .to_rgb8_unit()
            .save(&ct_path)
            .map_err(|e| CliError::io(&ct_path, std::io::Error::other(e)))?;
        println!("wrote {}", ct_path.display());
    }
    Ok(())
}

pub fn run_evaluate(args: &EvaluateArgs) -> Result<()> {
    let open = |path: &std::path::Path| -> Result<image::RgbImage> {
        Ok(image::open(path)
            .map_err(|e| {
                CliError::Core(dmdbg_core::Error::Image {
                    path: path.to_path_buf(),
                    source: e,
                })
            })?
            .to_rgb8())
    };
    let gt = open(&args.gt)?;
    let bg = open(&args.input)?;
    let report = EvaluateReport::from_core(&cqm_rgb8::<f64>(&gt, &bg)?);
    let body = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Report(e.to_string()))?;
    println!("{body}");
    if let Some(out) = &args.output {
        write_json(&report, out)?;
    }
    Ok(())
}

pub fn run_bench_cmd(args: &BenchArgs) -> Result<()> {
    let cfg = BenchConfig {
        dataset_root: args.dataset.clone(),
        output_dir: args.output.clone(),
        sequences: args.sequences.clone(),
        format: args.format,
        extract: args.knobs.to_config(),
    };
    let output = run_bench(&cfg)?;
    println!("sequence,method,cqm_db");
    for row in &output.rows {
        println!("{},{},{:.2}", row.sequence, row.method, row.cqm);
    }
    println!("reports written to {}", args.output.display());
    Ok(())
}

pub fn run_synth(args: &SynthArgs) -> Result<()> {
    let out = generate(
        args.kind.into(),
        args.frames,
        args.width,
        args.height,
        args.seed,
    )?;
    write_sequence(&out, &args.output)?;
    println!(
        "wrote {} frames and GT to {}",
        out.frames.len(),
        args.output.display()
    );
    if let Some(max) = out.max_occlusion {
        println!(
            "max per-pixel occlusion: {max} of {} frames",
            out.frames.len()
        );
    }
    if let Some(flicker) = out.flicker {
        println!(
            "flicker: {} cycles/frame, |mu| = {:.6}, region rows {}..{} cols {}..{}",
            flicker.cycles_per_frame,
            flicker.mu_magnitude,
            flicker.region.0,
            flicker.region.1,
            flicker.region.2,
            flicker.region.3
        );
    }
    Ok(())
}
