//! Deterministic block-parallel products for tall matrices.
//!
//! Snapshot matrices have a few hundred thousand rows and only a few hundred
//! columns, so the expensive products (`AᵀB` and `A·B` with tall `A`) are
//! split into fixed row blocks that are processed in parallel. The block
//! partition never depends on the thread count and the partial results are
//! reduced in block order, so the output is bit-identical regardless of how
//! many rayon workers are available.

use nalgebra::{DMatrix, Dyn, Matrix};
use rayon::prelude::*;

use crate::scalar::Real;

/// Row-block size used by the chunked products.
pub const ROW_BLOCK: usize = 8192;

fn row_blocks(nrows: usize) -> Vec<(usize, usize)> {
    let mut blocks = Vec::with_capacity(nrows.div_ceil(ROW_BLOCK));
    let mut start = 0;
    while start < nrows {
        let len = ROW_BLOCK.min(nrows - start);
        blocks.push((start, len));
        start += len;
    }
    blocks
}

/// `aᵀ · b` where `a` and `b` share their (tall) row dimension.
pub fn tr_mul<T, Sa, Sb>(
    a: &Matrix<T, Dyn, Dyn, Sa>,
    b: &Matrix<T, Dyn, Dyn, Sb>,
) -> DMatrix<T>
where
    T: Real,
    Sa: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
    Sb: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
{
    assert_eq!(a.nrows(), b.nrows(), "tr_mul: row counts must match");
    let blocks = row_blocks(a.nrows());
    if blocks.len() <= 1 {
        return a.transpose() * b;
    }
    let partials: Vec<DMatrix<T>> = blocks
        .par_iter()
        .map(|&(start, len)| a.rows(start, len).transpose() * b.rows(start, len))
        .collect();
    // Sequential reduction in block order keeps the summation deterministic.
    let mut acc = DMatrix::zeros(a.ncols(), b.ncols());
    for p in partials {
        acc += p;
    }
    acc
}

/// `a · b` with tall `a`; output rows are computed block-wise in parallel.
pub fn mul<T, Sa, Sb>(a: &Matrix<T, Dyn, Dyn, Sa>, b: &Matrix<T, Dyn, Dyn, Sb>) -> DMatrix<T>
where
    T: Real,
    Sa: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
    Sb: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
{
    assert_eq!(a.ncols(), b.nrows(), "mul: inner dimensions must match");
    let blocks = row_blocks(a.nrows());
    if blocks.len() <= 1 {
        return a * b;
    }
    let parts: Vec<(usize, DMatrix<T>)> = blocks
        .par_iter()
        .map(|&(start, len)| (start, a.rows(start, len) * b))
        .collect();
    let mut out = DMatrix::zeros(a.nrows(), b.ncols());
    for (start, block) in parts {
        out.rows_mut(start, block.nrows()).copy_from(&block);
    }
    out
}
