//! Stacking frames into snapshot columns and back.
//!
//! Column layout: red plane in row-major scanline order occupies rows
//! `0..mn`, green `mn..2mn`, blue `2mn..3mn`. The order is fixed so outputs
//! are byte-reproducible; stacking then unstacking an 8-bit frame is the
//! identity.

use nalgebra::{Complex, DMatrix, DVector};

use crate::eigen::cmod;
use crate::error::{Error, Result};
use crate::scalar::{from_u8, Real};
use crate::snapshot::SnapshotMatrix;

use super::{ChannelPlanes, FrameSequence};

/// How a complex mode vector is turned into real pixel values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModeRealization {
    /// Elementwise magnitude (default).
    #[default]
    Magnitude,
    /// Real part only, kept for comparison.
    RealPart,
}

/// Stack a frame sequence into the snapshot matrix.
pub fn build_data_matrix<T: Real>(seq: &FrameSequence) -> Result<SnapshotMatrix<T>> {
    let m = seq.pixel_rows();
    let n = seq.pixel_cols();
    let mn = m * n;
    let mut values = DMatrix::<T>::zeros(3 * mn, seq.frame_count());
    for (j, frame) in seq.frames().iter().enumerate() {
        let raw = frame.as_raw(); // row-major interleaved RGB
        let mut col = values.column_mut(j);
        for ch in 0..3 {
            for p in 0..mn {
                col[ch * mn + p] = from_u8(raw[p * 3 + ch]);
            }
        }
    }
    SnapshotMatrix::from_matrix(values, m, n)
}

/// Split a stacked `3mn` vector back into its three `m×n` planes.
pub fn unstack_vector<T: Real>(v: &DVector<T>, m: usize, n: usize) -> Result<ChannelPlanes<T>> {
    let mn = m * n;
    if v.len() != 3 * mn {
        return Err(Error::DimensionMismatch(format!(
            "stacked vector must have 3*m*n = {} entries, got {}",
            3 * mn,
            v.len()
        )));
    }
    let plane = |ch: usize| DMatrix::from_fn(m, n, |i, j| v[ch * mn + i * n + j]);
    Ok(ChannelPlanes {
        r: plane(0),
        g: plane(1),
        b: plane(2),
    })
}

/// Map a complex mode vector to real values, elementwise.
pub fn realize_mode_vector<T: Real>(
    v: &DVector<Complex<T>>,
    realization: ModeRealization,
) -> DVector<T> {
    match realization {
        ModeRealization::Magnitude => DVector::from_fn(v.len(), |i, _| cmod(v[i])),
        ModeRealization::RealPart => DVector::from_fn(v.len(), |i, _| v[i].re),
    }
}
