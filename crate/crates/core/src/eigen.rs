//! Eigendecomposition of the reduced (small, real, non-symmetric) operator.
//!
//! Eigenvalues come from the real Schur form. Eigenvectors are recovered by
//! inverse iteration on the Hessenberg form: one Hessenberg reduction is
//! shared by all modes, each complex shift is factored with adjacent-row
//! partial pivoting in `O(r²)`, and the result is back-transformed through
//! the orthogonal similarity. Eigenpairs are returned in descending
//! eigenvalue-magnitude order (ties keep their pre-sort order), eigenvectors
//! have unit 2-norm, and each vector's phase is fixed so that its largest
//! component is real and positive, which keeps repeated runs bit-identical.

use nalgebra::{Complex, DMatrix, DVector, Hessenberg, Schur};

use crate::error::{Error, Result};
use crate::scalar::{abs, Real};

/// `|z|` without the `Float` bound that `Complex::norm` would demand.
#[inline]
pub fn cmod<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}

fn inf_norm<T: Real>(h: &DMatrix<T>) -> T {
    let mut worst = T::zero();
    for i in 0..h.nrows() {
        let mut row = T::zero();
        for j in 0..h.ncols() {
            row += abs(h[(i, j)]);
        }
        worst = worst.max(row);
    }
    worst
}

/// LU factorization of `H - shift·I` for upper Hessenberg `H`, with
/// adjacent-row partial pivoting. Near-zero pivots are replaced by a tiny
/// multiple of the matrix scale so that inverse iteration can proceed even
/// when the shift is (numerically) an exact eigenvalue.
struct HessenbergLu<T: Real> {
    lu: DMatrix<Complex<T>>,
    multipliers: Vec<Complex<T>>,
    swapped: Vec<bool>,
}

impl<T: Real> HessenbergLu<T> {
    fn factor(hess: &DMatrix<T>, shift: Complex<T>, scale: T) -> Self {
        let r = hess.nrows();
        let mut lu = DMatrix::from_fn(r, r, |i, j| {
            let mut z = Complex::new(hess[(i, j)], T::zero());
            if i == j {
                z -= shift;
            }
            z
        });
        let tiny = T::default_epsilon() * scale.max(T::one());
        let mut multipliers = Vec::with_capacity(r.saturating_sub(1));
        let mut swapped = Vec::with_capacity(r.saturating_sub(1));
        for k in 0..r.saturating_sub(1) {
            let swap = lu[(k + 1, k)].norm_sqr() > lu[(k, k)].norm_sqr();
            swapped.push(swap);
            if swap {
                lu.swap_rows(k, k + 1);
            }
            if lu[(k, k)].norm_sqr() == T::zero() {
                lu[(k, k)] = Complex::new(tiny, T::zero());
            }
            let mult = lu[(k + 1, k)] / lu[(k, k)];
            multipliers.push(mult);
            for j in k..r {
                let upd = lu[(k, j)] * mult;
                lu[(k + 1, j)] -= upd;
            }
        }
        let last = r - 1;
        if lu[(last, last)].norm_sqr() == T::zero() {
            lu[(last, last)] = Complex::new(tiny, T::zero());
        }
        Self {
            lu,
            multipliers,
            swapped,
        }
    }

    fn solve_in_place(&self, b: &mut DVector<Complex<T>>) {
        let r = b.len();
        for k in 0..r.saturating_sub(1) {
            if self.swapped[k] {
                b.swap_rows(k, k + 1);
            }
            let upd = b[k] * self.multipliers[k];
            b[k + 1] -= upd;
        }
        for k in (0..r).rev() {
            let mut acc = b[k];
            for j in (k + 1)..r {
                acc -= self.lu[(k, j)] * b[j];
            }
            b[k] = acc / self.lu[(k, k)];
        }
    }
}

fn cnorm<T: Real>(v: &DVector<Complex<T>>) -> T {
    let mut acc = T::zero();
    for z in v.iter() {
        acc += z.norm_sqr();
    }
    acc.sqrt()
}

/// Multiply each component so the largest-magnitude entry becomes real and
/// positive; ties pick the lowest index.
fn fix_phase<T: Real>(v: &mut DVector<Complex<T>>) {
    let mut best = 0;
    let mut best_mag = T::zero();
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_mag {
            best_mag = m;
            best = i;
        }
    }
    if best_mag == T::zero() {
        return;
    }
    let mag = best_mag.sqrt();
    let rot = Complex::new(v[best].re / mag, -v[best].im / mag);
    for z in v.iter_mut() {
        *z *= rot;
    }
}

fn residual<T: Real>(h: &DMatrix<T>, sigma: Complex<T>, v: &DVector<Complex<T>>) -> T {
    let r = h.nrows();
    let mut acc = T::zero();
    for i in 0..r {
        let mut hv = Complex::new(T::zero(), T::zero());
        for j in 0..r {
            hv += Complex::new(h[(i, j)], T::zero()) * v[j];
        }
        acc += (hv - sigma * v[i]).norm_sqr();
    }
    acc.sqrt()
}

fn deterministic_start<T: Real>(r: usize, attempt: usize) -> DVector<Complex<T>> {
    let mut v = DVector::from_element(r, Complex::new(T::one(), T::zero()));
    if attempt > 0 {
        for i in 0..r {
            let bump = T::from_usize((i * (attempt + 1)) % 7 + 1).unwrap()
                / T::from_usize(8).unwrap();
            v[i] = Complex::new(T::one() + bump, T::zero());
        }
    }
    let n = cnorm(&v);
    v /= Complex::new(n, T::zero());
    v
}

/// Full eigendecomposition of a real square matrix.
///
/// Returns the eigenvalues sorted by descending magnitude (stable under
/// ties) and the matching unit-norm eigenvectors as matrix columns. Each
/// eigenpair satisfies `‖H·ω - σ·ω‖₂ ≤ 1e-8·max(1, ‖H‖)`; if an eigenvector
/// cannot be resolved to that accuracy the whole call fails with a
/// diagnostic instead of returning a silently bad pair.
pub fn eigen_reduced<T: Real>(
    h: &DMatrix<T>,
) -> Result<(Vec<Complex<T>>, DMatrix<Complex<T>>)> {
    let r = h.nrows();
    if r == 0 || h.ncols() != r {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square non-empty matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    for v in h.iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite("reduced operator entry".into()));
        }
    }
    if r == 1 {
        let sigma = vec![Complex::new(h[(0, 0)], T::zero())];
        let omega = DMatrix::from_element(1, 1, Complex::new(T::one(), T::zero()));
        return Ok((sigma, omega));
    }

    let schur = Schur::try_new(h.clone(), T::default_epsilon(), 200 * r + 1_000)
        .ok_or_else(|| {
            Error::Numerical(format!(
                "Schur iteration did not converge for a {r}x{r} operator"
            ))
        })?;
    let raw = schur.complex_eigenvalues();

    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by(|&a, &b| {
        raw[b]
            .norm_sqr()
            .partial_cmp(&raw[a].norm_sqr())
            .expect("finite eigenvalues")
    });

    let (q, hess) = Hessenberg::new(h.clone()).unpack();
    let h_norm = inf_norm(h);
    let scale = h_norm.max(T::one());
    let accept = scale * T::from_f64(1e-8).unwrap();
    // typical inverse-iteration residuals are O(ε·‖H‖); 1e-8 is the contract
    let eps = T::default_epsilon();

    let mut sigma = Vec::with_capacity(r);
    let mut omega = DMatrix::from_element(r, r, Complex::new(T::zero(), T::zero()));

    for (col, &idx) in order.iter().enumerate() {
        let lambda = raw[idx];
        let mut best: Option<(T, DVector<Complex<T>>)> = None;
        for attempt in 0..4 {
            let bump = eps * scale * T::from_usize(attempt * attempt).unwrap();
            let shift = lambda + Complex::new(bump, bump);
            let lu = HessenbergLu::factor(&hess, shift, scale + cmod(lambda));
            let mut x = deterministic_start::<T>(r, attempt);
            for _ in 0..4 {
                lu.solve_in_place(&mut x);
                let growth = cnorm(&x);
                if growth == T::zero() || !growth.is_finite() {
                    x = deterministic_start::<T>(r, attempt + 1);
                    continue;
                }
                x /= Complex::new(growth, T::zero());
                if growth > T::one() / (eps * T::from_usize(100).unwrap()) {
                    break;
                }
            }
            // back-transform through the Hessenberg similarity
            let re = &q * x.map(|z| z.re);
            let im = &q * x.map(|z| z.im);
            let mut w = DVector::from_fn(r, |i, _| Complex::new(re[i], im[i]));
            let n = cnorm(&w);
            if n == T::zero() || !n.is_finite() {
                continue;
            }
            w /= Complex::new(n, T::zero());
            let res = residual(h, lambda, &w);
            if best.as_ref().is_none_or(|(b, _)| res < *b) {
                best = Some((res, w));
            }
            if res <= accept {
                break;
            }
        }
        let (res, mut w) =
            best.ok_or_else(|| Error::Numerical("inverse iteration produced no vector".into()))?;
        if res > accept {
            return Err(Error::Numerical(format!(
                "eigenpair {col} residual {res:?} exceeds tolerance {accept:?} \
                 (eigenvalue {lambda:?})",
                lambda = raw[idx]
            )));
        }
        fix_phase(&mut w);
        omega.column_mut(col).copy_from(&w);
        sigma.push(lambda);
    }

    Ok((sigma, omega))
}
