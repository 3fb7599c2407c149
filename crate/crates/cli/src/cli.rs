//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dmdbg_core::imaging::{ModeRealization, Normalization};

use crate::pipeline::{ColorSource, ColorTransfer};
use crate::synth::SynthKind;

#[derive(Parser, Debug)]
#[command(
    name = "dmdbg",
    version,
    about = "Color scene-background extraction from image sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Extract a background image from a directory of frames.
    Extract(ExtractArgs),
    /// Score a background image against a ground-truth image (CQM).
    Evaluate(EvaluateArgs),
    /// Run extraction and evaluation over a whole dataset tree.
    Bench(BenchArgs),
    /// Generate a synthetic sequence with known ground truth.
    Synth(SynthArgs),
}

#[derive(Args, Debug, Clone)]
pub struct PipelineKnobs {
    /// Relative rank tolerance on the Gram spectrum, in (0, 1).
    #[arg(long, default_value_t = 1e-10)]
    pub rank_tol: f64,

    /// Time step between frames.
    #[arg(long, default_value_t = 1.0)]
    pub delta_t: f64,

    /// Whether to also produce the color-transferred background.
    #[arg(long, value_enum, default_value_t = ColorTransferArg::Both)]
    pub color_transfer: ColorTransferArg,

    /// Min-max normalization of the mode image.
    #[arg(long, value_enum, default_value_t = NormalizationArg::PerChannel)]
    pub normalization: NormalizationArg,

    /// How the complex mode becomes real pixel values.
    #[arg(long, value_enum, default_value_t = ModeRealizationArg::Magnitude)]
    pub mode_realization: ModeRealizationArg,

    /// Color-source image for the transfer step.
    #[arg(long, value_enum, default_value_t = ColorSourceArg::Mode)]
    pub color_source: ColorSourceArg,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    /// Directory holding the input frames.
    #[arg(long)]
    pub input: PathBuf,

    /// Directory for the extracted background image(s).
    #[arg(long)]
    pub output: PathBuf,

    #[command(flatten)]
    pub knobs: PipelineKnobs,
}

#[derive(Args, Debug)]
pub struct EvaluateArgs {
    /// Ground-truth image.
    #[arg(long)]
    pub gt: PathBuf,

    /// Background image to score.
    #[arg(long)]
    pub input: PathBuf,

    /// Optional path for the JSON report (also printed to stdout).
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Dataset root: <root>/<Sequence>/input/*.png and <root>/<Sequence>/GT/.
    #[arg(long)]
    pub dataset: PathBuf,

    /// Output directory for backgrounds and reports.
    #[arg(long)]
    pub output: PathBuf,

    /// Comma-separated sequence name filter.
    #[arg(long, value_delimiter = ',')]
    pub sequences: Option<Vec<String>>,

    /// Report format; both CSV and JSON are written when omitted.
    #[arg(long, value_enum)]
    pub format: Option<ReportFormatArg>,

    #[command(flatten)]
    pub knobs: PipelineKnobs,
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Kind of sequence to generate.
    #[arg(value_enum)]
    pub kind: SynthKindArg,

    /// Output directory (creates input/ and GT/ inside).
    #[arg(long)]
    pub output: PathBuf,

    #[arg(long, default_value_t = 40)]
    pub frames: usize,

    #[arg(long, default_value_t = 64)]
    pub width: usize,

    #[arg(long, default_value_t = 48)]
    pub height: usize,

    /// RNG seed; identical seeds give byte-identical directories.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorTransferArg {
    On,
    Off,
    Both,
}

impl From<ColorTransferArg> for ColorTransfer {
    fn from(v: ColorTransferArg) -> Self {
        match v {
            ColorTransferArg::On => ColorTransfer::On,
            ColorTransferArg::Off => ColorTransfer::Off,
            ColorTransferArg::Both => ColorTransfer::Both,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalizationArg {
    PerChannel,
    Joint,
}

impl From<NormalizationArg> for Normalization {
    fn from(v: NormalizationArg) -> Self {
        match v {
            NormalizationArg::PerChannel => Normalization::PerChannel,
            NormalizationArg::Joint => Normalization::Joint,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeRealizationArg {
    Magnitude,
    Real,
}

impl From<ModeRealizationArg> for ModeRealization {
    fn from(v: ModeRealizationArg) -> Self {
        match v {
            ModeRealizationArg::Magnitude => ModeRealization::Magnitude,
            ModeRealizationArg::Real => ModeRealization::RealPart,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColorSourceArg {
    /// Per-pixel temporal statistical mode of the sequence.
    Mode,
    /// Per-pixel temporal median of the sequence.
    Median,
}

impl From<ColorSourceArg> for ColorSource {
    fn from(v: ColorSourceArg) -> Self {
        match v {
            ColorSourceArg::Mode => ColorSource::StatisticalMode,
            ColorSourceArg::Median => ColorSource::Median,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormatArg {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthKindArg {
    Static,
    MovingSquare,
    TwoMode,
}

impl From<SynthKindArg> for SynthKind {
    fn from(v: SynthKindArg) -> Self {
        match v {
            SynthKindArg::Static => SynthKind::Static,
            SynthKindArg::MovingSquare => SynthKind::MovingSquare,
            SynthKindArg::TwoMode => SynthKind::TwoMode,
        }
    }
}

impl PipelineKnobs {
    pub fn to_config(&self) -> crate::pipeline::ExtractConfig {
        crate::pipeline::ExtractConfig {
            rank_tol: self.rank_tol,
            delta_t: self.delta_t,
            color_transfer: self.color_transfer.into(),
            normalization: self.normalization.into(),
            realization: self.mode_realization.into(),
            color_source: self.color_source.into(),
        }
    }
}
