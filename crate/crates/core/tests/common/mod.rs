//! Shared brute-force oracles for the integration suites.
//!
//! Everything here is deliberately independent of the library's own
//! factorization paths: the SVD oracle is a from-scratch one-sided Jacobi,
//! the eigenvalue oracle goes through the characteristic polynomial, and
//! the propagation-operator oracle materializes the explicit pseudoinverse
//! product that the library never forms.

use nalgebra::{Complex, DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// One-sided Jacobi (Hestenes) SVD: rotate column pairs until mutually
/// orthogonal, then read off norms. Returns `(u, s, v)` with singular
/// values sorted in descending order; near-zero columns are dropped.
pub fn jacobi_svd(a: &DMatrix<f64>, drop_tol: f64) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let mut w = a.clone();
    let n = w.ncols();
    let mut v = DMatrix::<f64>::identity(n, n);
    let eps = 1e-15;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let cp = w.column(p).into_owned();
                let cq = w.column(q).into_owned();
                let alpha = cp.dot(&cp);
                let beta = cq.dot(&cq);
                let gamma = cp.dot(&cq);
                if gamma.abs() <= eps * (alpha * beta).sqrt() || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..w.nrows() {
                    let wp = w[(i, p)];
                    let wq = w[(i, q)];
                    w[(i, p)] = c * wp - s * wq;
                    w[(i, q)] = s * wp + c * wq;
                }
                for i in 0..n {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)];
                    v[(i, p)] = c * vp - s * vq;
                    v[(i, q)] = s * vp + c * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut cols: Vec<(f64, usize)> = (0..n).map(|j| (w.column(j).norm(), j)).collect();
    cols.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let s_max = cols[0].0;
    let kept: Vec<(f64, usize)> = cols
        .into_iter()
        .filter(|(s, _)| *s > drop_tol * s_max)
        .collect();
    let r = kept.len();
    let mut u = DMatrix::zeros(w.nrows(), r);
    let mut s = DVector::zeros(r);
    let mut v_out = DMatrix::zeros(n, r);
    for (dst, (norm, src)) in kept.into_iter().enumerate() {
        s[dst] = norm;
        u.column_mut(dst).copy_from(&(w.column(src) / norm));
        v_out.column_mut(dst).copy_from(&v.column(src));
    }
    (u, s, v_out)
}

/// Characteristic polynomial coefficients by Faddeev–LeVerrier:
/// `λⁿ + c[n-1]·λⁿ⁻¹ + … + c[0]`.
pub fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let mut coeffs = vec![0.0; n];
    let mut m = a.clone();
    for k in 1..=n {
        let c = -m.trace() / k as f64;
        coeffs[n - k] = c;
        if k < n {
            let mut shifted = m.clone();
            for i in 0..n {
                shifted[(i, i)] += c;
            }
            m = a * shifted;
        }
    }
    coeffs
}

/// Durand–Kerner root finding on a monic polynomial given by `char_poly`
/// coefficients.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    let eval = |z: Complex<f64>| {
        let mut acc = Complex::new(1.0, 0.0);
        for k in (0..n).rev() {
            acc = acc * z + Complex::new(coeffs[k], 0.0);
        }
        acc
    };
    // scale-aware spread of starting points
    let radius = 1.0 + coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
    let seed = Complex::new(0.4, 0.9);
    let mut roots: Vec<Complex<f64>> = (0..n)
        .map(|i| seed.powu(i as u32 + 1) * Complex::new(radius, 0.0))
        .collect();
    for _ in 0..600 {
        let mut max_step = 0.0_f64;
        for i in 0..n {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-13 {
            break;
        }
    }
    roots
}

/// Explicit least-squares propagation operator `P₂·pinv(P₁)`, the route the
/// library avoids on purpose.
pub fn pinv_operator(p1: &DMatrix<f64>, p2: &DMatrix<f64>) -> DMatrix<f64> {
    let svd = p1.clone().svd(true, true);
    let eps = svd.singular_values.max() * 1e-12;
    let pinv = svd.pseudo_inverse(eps).expect("pseudo-inverse");
    p2 * pinv
}

/// Largest pairwise distance between two spectra treated as multisets.
///
/// Values are ordered deterministically (by real part, then imaginary) and
/// then paired greedily by nearest neighbour. A plain lexicographic zip
/// would swap members of a conjugate pair whenever the two routes disagree
/// about the real part at the last-digit level, reporting a spurious gap of
/// twice the imaginary part.
pub fn spectrum_distance(a: &[Complex<f64>], b: &[Complex<f64>]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra sizes differ");
    let mut sa = a.to_vec();
    sa.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap()
            .then(x.im.partial_cmp(&y.im).unwrap())
    });
    let mut remaining: Vec<Complex<f64>> = b.to_vec();
    let mut worst = 0.0_f64;
    for x in sa {
        let (idx, dist) = remaining
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .min_by(|(_, d1), (_, d2)| d1.partial_cmp(d2).unwrap())
            .expect("non-empty spectrum");
        worst = worst.max(dist);
        remaining.swap_remove(idx);
    }
    worst
}

/// Random snapshot sequence with the one-step shift structure: a tall
/// matrix whose overlapping column blocks form `P₁`/`P₂`. Regenerates until
/// the history block has full column rank.
pub fn random_sequence(rng: &mut ChaCha8Rng, rows: usize, frames: usize) -> DMatrix<f64> {
    loop {
        let p = DMatrix::from_fn(rows, frames, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        let p1 = p.columns(0, frames - 1).into_owned();
        let (_, s, _) = jacobi_svd(&p1, 1e-300);
        if s.len() == frames - 1 && s[s.len() - 1] > 1e-6 * s[0] {
            return p;
        }
    }
}
