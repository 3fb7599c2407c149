//! Thin SVD of the first snapshot block via the method of snapshots.
//!
//! The snapshot block is extremely tall (`3·m·n` rows, a few hundred
//! columns), so the factorization goes through the small Gram matrix
//! `P₁ᵀP₁`: its eigenvectors are the right singular vectors, the square
//! roots of its eigenvalues are the singular values, and the left factor is
//! recovered as `U = P₁·V·Σ⁻¹`.

use nalgebra::{DMatrix, DVector, Dyn, Matrix, SymmetricEigen};

use crate::chunked;
use crate::error::{Error, Result};
use crate::scalar::{abs, Real};

/// Rank-truncated SVD factors `P₁ ≈ U·diag(S)·Vᵀ`.
///
/// `u` has orthonormal columns (`3·m·n` × `r`), `s` is strictly positive and
/// non-increasing, and `v` has orthonormal columns (`N-1` × `r`).
#[derive(Debug, Clone)]
pub struct ThinSvd<T: Real> {
    pub u: DMatrix<T>,
    pub s: DVector<T>,
    pub v: DMatrix<T>,
}

impl<T: Real> ThinSvd<T> {
    /// Retained rank.
    pub fn rank(&self) -> usize {
        self.s.len()
    }

    /// Columns of `v` scaled by `1/sᵢ`; the factor shared by the reduced
    /// operator and the mode reconstruction.
    pub(crate) fn v_s_inv(&self) -> DMatrix<T> {
        let mut w = self.v.clone();
        for (j, mut col) in w.column_iter_mut().enumerate() {
            col /= self.s[j];
        }
        w
    }
}

/// Default relative rank tolerance.
pub const DEFAULT_RANK_TOL: f64 = 1e-10;

/// Thin SVD of a snapshot block with relative rank truncation.
///
/// `rank_tol` is applied to the Gram spectrum: eigenvalues at or below
/// `rank_tol·λ_max` are discarded. Working on the Gram eigenvalues rather
/// than on the singular values themselves matters because squaring pushes
/// the floating-point noise floor of an exactly rank-deficient block (for
/// instance a fully static sequence) up to about `√ε·s_max`, where a
/// singular-value threshold of `1e-10` would keep pure noise directions.
/// The effective singular-value cutoff is therefore `√rank_tol·s_max`.
pub fn snapshot_svd<T, S>(p1: &Matrix<T, Dyn, Dyn, S>, rank_tol: T) -> Result<ThinSvd<T>>
where
    T: Real,
    S: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
{
    if rank_tol <= T::zero() || rank_tol >= T::one() {
        return Err(Error::InvalidParameter(format!(
            "rank tolerance must lie in (0, 1), got {rank_tol:?}"
        )));
    }
    if p1.is_empty() {
        return Err(Error::DegenerateInput("empty snapshot block".into()));
    }
    for v in p1.iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite("snapshot block entry".into()));
        }
    }

    let gram = chunked::tr_mul(p1, p1);
    let k = gram.nrows();
    let eigen = SymmetricEigen::try_new(gram, T::default_epsilon(), 10_000 * k.max(8))
        .ok_or_else(|| Error::Numerical("symmetric eigensolver did not converge".into()))?;

    // Descending eigenvalue order, stable under ties.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .expect("finite eigenvalues")
    });

    let lambda_max = eigen.eigenvalues[order[0]].max(T::zero());
    if lambda_max == T::zero() {
        return Err(Error::DegenerateInput(
            "all-zero snapshot block has no retainable singular value".into(),
        ));
    }
    let cutoff = rank_tol * lambda_max;
    let retained: Vec<usize> = order
        .into_iter()
        .filter(|&i| eigen.eigenvalues[i] > cutoff)
        .collect();
    let r = retained.len();

    let mut s = DVector::zeros(r);
    let mut v = DMatrix::zeros(k, r);
    for (dst, &src) in retained.iter().enumerate() {
        s[dst] = eigen.eigenvalues[src].sqrt();
        v.column_mut(dst).copy_from(&eigen.eigenvectors.column(src));
    }

    // U = P1 · V · Σ⁻¹ (tall product, block-parallel).
    let mut w = v.clone();
    for (j, mut col) in w.column_iter_mut().enumerate() {
        col /= s[j];
    }
    let u = chunked::mul(p1, &w);

    Ok(ThinSvd { u, s, v })
}

/// Max-norm orthonormality defect `‖AᵀA - I‖_max`, used by the tests and by
/// callers that want to audit a decomposition.
pub fn orthonormality_defect<T: Real>(a: &DMatrix<T>) -> T {
    let gram = chunked::tr_mul(a, a);
    let r = gram.nrows();
    let mut worst = T::zero();
    for i in 0..r {
        for j in 0..r {
            let target = if i == j { T::one() } else { T::zero() };
            worst = worst.max(abs(gram[(i, j)] - target));
        }
    }
    worst
}
