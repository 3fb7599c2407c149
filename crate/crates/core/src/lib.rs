//! Color scene-background extraction from image sequences.
//!
//! An image sequence is stacked into a snapshot matrix (red, green, and
//! blue planes of each frame concatenated into one column), decomposed into
//! dynamic modes via a thin SVD of the time-shifted snapshot blocks, and
//! the mode whose Fourier frequency sits at the origin of the complex plane
//! is normalized into a color background image. A statistical color
//! transfer can re-anchor that image to the palette of the original
//! sequence, and the CQM metric scores results against ground truth.
//!
//! The numerical core is generic over the scalar type through the
//! [`Real`] trait (`f32` or `f64`); concrete aliases are exported at the
//! crate root. All operations are pure functions of their inputs, and the
//! block-parallel products are partitioned independently of the thread
//! count, so results are reproducible bit for bit.

pub mod chunked;
mod companion;
mod dmd;
mod eigen;
mod error;
pub mod imaging;
pub mod metrics;
mod scalar;
mod snapshot;
mod svd;

pub use companion::companion_oracle;
pub use dmd::{
    decompose, dynamic_mode_column, dynamic_modes, fourier_frequencies, reduced_operator,
    select_background_mode, select_mode_index, DmdResult, ModeSelection,
};
pub use eigen::{cmod, eigen_reduced};
pub use error::{Error, Result};
pub use scalar::{abs, from_u8, from_usize, quantize_unit, Real};
pub use snapshot::{split_snapshots, SnapshotMatrix, SnapshotSplit};
pub use svd::{orthonormality_defect, snapshot_svd, ThinSvd, DEFAULT_RANK_TOL};

/// Default time step between frames.
pub const DEFAULT_DELTA_T: f64 = 1.0;

// Concrete aliases for the two supported scalar types.
pub type SnapshotMatrixF64 = SnapshotMatrix<f64>;
pub type SnapshotMatrixF32 = SnapshotMatrix<f32>;
pub type ThinSvdF64 = ThinSvd<f64>;
pub type ThinSvdF32 = ThinSvd<f32>;
pub type DmdResultF64 = DmdResult<f64>;
pub type DmdResultF32 = DmdResult<f32>;
pub type ModeSelectionF64 = ModeSelection<f64>;
pub type BackgroundModelF64 = imaging::BackgroundModel<f64>;
pub type BackgroundModelF32 = imaging::BackgroundModel<f32>;
pub type CqmReportF64 = metrics::CqmReport<f64>;
pub type CqmReportF32 = metrics::CqmReport<f32>;
