//! Companion (shift) matrix route to the snapshot spectrum.
//!
//! Instead of projecting onto singular vectors, the last frame is expressed
//! as a least-squares combination of the earlier ones; the combination
//! coefficients fill the last column of a shift matrix whose eigenvalues
//! approximate the propagation spectrum. This is the small cross-check
//! decomposition used by the test suites: on full-rank data its nonzero
//! eigenvalues agree with those of the SVD-reduced operator.

use nalgebra::{Complex, DMatrix, DVector, Schur};

use crate::error::{Error, Result};
use crate::scalar::{from_usize, Real};
use crate::snapshot::SnapshotSplit;

/// Companion matrix of a snapshot split together with its eigenvalues.
///
/// Needs at least two history columns (`N ≥ 3` frames). The coefficient
/// vector solves `min ‖P₁·c - p_N‖₂` (minimum-norm when underdetermined);
/// the matrix has ones on the subdiagonal and `c` as its last column.
pub fn companion_oracle<T: Real>(
    split: &SnapshotSplit<'_, T>,
) -> Result<(DMatrix<T>, Vec<Complex<T>>)> {
    let k = split.p1.ncols();
    if k < 2 {
        return Err(Error::SequenceTooShort {
            needed: 3,
            got: k + 1,
        });
    }
    let p_last = split.p2.column(k - 1).into_owned();

    let svd = split
        .p1
        .into_owned()
        .try_svd(true, true, T::default_epsilon(), 10_000 * k)
        .ok_or_else(|| Error::Numerical("SVD for least squares did not converge".into()))?;
    let s_max = svd.singular_values.max();
    let eps = s_max * from_usize::<T>(split.p1.nrows().max(k)) * T::default_epsilon();
    let c: DVector<T> = svd
        .solve(&p_last, eps)
        .map_err(|e| Error::Numerical(format!("least-squares solve failed: {e}")))?
        .column(0)
        .into_owned();

    let mut h = DMatrix::zeros(k, k);
    for i in 1..k {
        h[(i, i - 1)] = T::one();
    }
    for i in 0..k {
        h[(i, k - 1)] = c[i];
    }

    let schur = Schur::try_new(h.clone(), T::default_epsilon(), 200 * k + 1_000)
        .ok_or_else(|| Error::Numerical("companion Schur iteration did not converge".into()))?;
    let eig = schur.complex_eigenvalues().iter().copied().collect();
    Ok((h, eig))
}
