//! Snapshot matrix of a color image sequence and its one-step split.
//!
//! A sequence of `N` frames of `m`×`n` pixels becomes a real matrix with
//! `3·m·n` rows and `N` columns: each column is one frame with its red plane
//! vectorized in row-major scanline order, followed by the green plane, then
//! the blue plane. The block order is fixed so that a snapshot column can be
//! turned back into an image bit-exactly.

use nalgebra::{DMatrix, DMatrixView};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Stacked-RGB data matrix with its layout metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotMatrix<T: Real> {
    values: DMatrix<T>,
    m: usize,
    n: usize,
}

impl<T: Real> SnapshotMatrix<T> {
    /// Wrap an existing matrix, checking the `3·m·n` row layout.
    pub fn from_matrix(values: DMatrix<T>, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter(
                "pixel dimensions must be positive".into(),
            ));
        }
        if values.nrows() != 3 * m * n {
            return Err(Error::DimensionMismatch(format!(
                "snapshot matrix must have 3*m*n = {} rows, got {}",
                3 * m * n,
                values.nrows()
            )));
        }
        if values.ncols() == 0 {
            return Err(Error::SequenceTooShort { needed: 1, got: 0 });
        }
        Ok(Self { values, m, n })
    }

    pub fn values(&self) -> &DMatrix<T> {
        &self.values
    }

    /// Pixel rows of every frame.
    pub fn pixel_rows(&self) -> usize {
        self.m
    }

    /// Pixel columns of every frame.
    pub fn pixel_cols(&self) -> usize {
        self.n
    }

    /// Number of frames (columns).
    pub fn frame_count(&self) -> usize {
        self.values.ncols()
    }

    /// Stacked vector length `3·m·n`.
    pub fn stacked_len(&self) -> usize {
        self.values.nrows()
    }

    pub fn column(&self, j: usize) -> nalgebra::DVectorView<'_, T> {
        self.values.column(j)
    }
}

/// The two time-shifted snapshot blocks of the linear propagation model:
/// `p1` holds frames `1..N-1` and `p2` frames `2..N`, so column `k` of `p2`
/// is the successor of column `k` of `p1`.
#[derive(Debug)]
pub struct SnapshotSplit<'a, T: Real> {
    pub p1: DMatrixView<'a, T>,
    pub p2: DMatrixView<'a, T>,
}

/// Split a snapshot matrix into its overlapping past/future column blocks.
///
/// Requires at least two frames; both views have `N-1` columns and borrow
/// the snapshot storage without copying.
pub fn split_snapshots<T: Real>(p: &SnapshotMatrix<T>) -> Result<SnapshotSplit<'_, T>> {
    let n = p.frame_count();
    if n < 2 {
        return Err(Error::SequenceTooShort { needed: 2, got: n });
    }
    Ok(SnapshotSplit {
        p1: p.values.columns(0, n - 1),
        p2: p.values.columns(1, n - 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snapshot_from_columns(cols: &[Vec<f64>]) -> SnapshotMatrix<f64> {
        let rows = cols[0].len();
        let values = DMatrix::from_fn(rows, cols.len(), |i, j| cols[j][i]);
        // rows = 3*m*n with m=n=1 when rows == 3
        assert_eq!(rows, 3);
        SnapshotMatrix::from_matrix(values, 1, 1).unwrap()
    }

    #[test]
    fn split_produces_shifted_blocks() {
        let c1 = vec![1.0, 1.0, 1.0];
        let c2 = vec![2.0, 2.0, 2.0];
        let c3 = vec![3.0, 3.0, 3.0];
        let p = snapshot_from_columns(&[c1.clone(), c2.clone(), c3.clone()]);
        let split = split_snapshots(&p).unwrap();
        assert_eq!(split.p1.ncols(), 2);
        assert_eq!(split.p2.ncols(), 2);
        assert_eq!(split.p1.column(0).as_slice(), &c1[..]);
        assert_eq!(split.p1.column(1).as_slice(), &c2[..]);
        assert_eq!(split.p2.column(0).as_slice(), &c2[..]);
        assert_eq!(split.p2.column(1).as_slice(), &c3[..]);
    }

    #[test]
    fn split_minimal_two_frames() {
        let p = snapshot_from_columns(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]]);
        let split = split_snapshots(&p).unwrap();
        assert_eq!(split.p1.ncols(), 1);
        assert_eq!(split.p2.ncols(), 1);
    }

    #[test]
    fn split_rejects_single_frame() {
        let p = snapshot_from_columns(&[vec![1.0, 2.0, 3.0]]);
        match split_snapshots(&p) {
            Err(Error::SequenceTooShort { needed: 2, got: 1 }) => {}
            other => panic!("expected SequenceTooShort, got {other:?}"),
        }
    }

    #[test]
    fn recombining_split_columns_is_lossless() {
        let cols: Vec<Vec<f64>> = (0..5)
            .map(|j| (0..3).map(|i| (i * 10 + j) as f64).collect())
            .collect();
        let p = snapshot_from_columns(&cols);
        let split = split_snapshots(&p).unwrap();
        // p1 plus the last column of p2 reproduces the snapshot bit-exactly
        let mut rebuilt = DMatrix::zeros(3, 5);
        rebuilt.columns_mut(0, 4).copy_from(&split.p1);
        rebuilt.column_mut(4).copy_from(&split.p2.column(3));
        assert_eq!(&rebuilt, p.values());
    }
}
