//! Reduced operator, dynamic modes, Fourier frequencies, and
//! background-mode selection.
//!
//! The full propagation operator between consecutive snapshots is never
//! materialized: for image sequences it would be a `3mn × 3mn` matrix
//! (230400² already for 240×320 frames). Everything happens in the rank-`r`
//! subspace of the thin SVD, and only the requested mode columns are lifted
//! back to pixel space.

use nalgebra::{Complex, DMatrix, DVector, Dyn, Matrix};

use crate::chunked;
use crate::eigen::{cmod, eigen_reduced};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::snapshot::SnapshotMatrix;
use crate::svd::{snapshot_svd, ThinSvd};

/// Reduced propagation operator `Ĥ = Uᵀ·P₂·V·Σ⁻¹` (`r × r`).
pub fn reduced_operator<T, S>(
    svd: &ThinSvd<T>,
    p2: &Matrix<T, Dyn, Dyn, S>,
) -> Result<DMatrix<T>>
where
    T: Real,
    S: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
{
    if svd.u.nrows() != p2.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "U has {} rows but P2 has {}",
            svd.u.nrows(),
            p2.nrows()
        )));
    }
    if svd.v.nrows() != p2.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "V has {} rows but P2 has {} columns",
            svd.v.nrows(),
            p2.ncols()
        )));
    }
    let ut_p2 = chunked::tr_mul(&svd.u, p2); // r × (N-1)
    Ok(ut_p2 * svd.v_s_inv())
}

/// All dynamic modes `Ψ = P₂·V·Σ⁻¹·ω` (`3mn × r`, complex).
pub fn dynamic_modes<T, S>(
    p2: &Matrix<T, Dyn, Dyn, S>,
    svd: &ThinSvd<T>,
    omega: &DMatrix<Complex<T>>,
) -> Result<DMatrix<Complex<T>>>
where
    T: Real,
    S: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
{
    if svd.v.nrows() != p2.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "V has {} rows but P2 has {} columns",
            svd.v.nrows(),
            p2.ncols()
        )));
    }
    if omega.nrows() != svd.rank() {
        return Err(Error::DimensionMismatch(format!(
            "omega has {} rows but the SVD rank is {}",
            omega.nrows(),
            svd.rank()
        )));
    }
    let w = svd.v_s_inv(); // (N-1) × r
    let b_re = &w * omega.map(|z| z.re);
    let b_im = &w * omega.map(|z| z.im);
    let psi_re = chunked::mul(p2, &b_re);
    let psi_im = chunked::mul(p2, &b_im);
    Ok(DMatrix::from_fn(psi_re.nrows(), psi_re.ncols(), |i, j| {
        Complex::new(psi_re[(i, j)], psi_im[(i, j)])
    }))
}

/// Single mode column `ψⱼ = P₂·V·Σ⁻¹·ωⱼ` without forming the full mode
/// matrix; what the extraction pipeline uses once a mode has been selected.
pub fn dynamic_mode_column<T, S>(
    p2: &Matrix<T, Dyn, Dyn, S>,
    svd: &ThinSvd<T>,
    omega_col: &DVector<Complex<T>>,
) -> Result<DVector<Complex<T>>>
where
    T: Real,
    S: nalgebra::storage::Storage<T, Dyn, Dyn> + Sync,
{
    if omega_col.len() != svd.rank() {
        return Err(Error::DimensionMismatch(format!(
            "omega column length {} does not match rank {}",
            omega_col.len(),
            svd.rank()
        )));
    }
    if svd.v.nrows() != p2.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "V has {} rows but P2 has {} columns",
            svd.v.nrows(),
            p2.ncols()
        )));
    }
    let w = svd.v_s_inv();
    let b_re = &w * omega_col.map(|z| z.re);
    let b_im = &w * omega_col.map(|z| z.im);
    let re = chunked::mul(p2, &DMatrix::from_column_slice(b_re.len(), 1, b_re.as_slice()));
    let im = chunked::mul(p2, &DMatrix::from_column_slice(b_im.len(), 1, b_im.as_slice()));
    Ok(DVector::from_fn(re.nrows(), |i, _| {
        Complex::new(re[(i, 0)], im[(i, 0)])
    }))
}

/// Fourier frequency of each eigenvalue: `μⱼ = ln(σⱼ)/δt` with the principal
/// complex logarithm. A zero eigenvalue has no logarithm and yields `None`.
pub fn fourier_frequencies<T: Real>(
    sigma: &[Complex<T>],
    delta_t: T,
) -> Result<Vec<Option<Complex<T>>>> {
    if delta_t <= T::zero() {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {delta_t:?}"
        )));
    }
    Ok(sigma
        .iter()
        .map(|&s| {
            if s.norm_sqr() == T::zero() {
                None
            } else {
                // principal branch: ln|σ| + i·arg(σ), arg ∈ (-π, π]
                let modulus = cmod(s);
                let arg = s.im.atan2(s.re);
                Some(Complex::new(modulus.ln() / delta_t, arg / delta_t))
            }
        })
        .collect())
}

/// Everything the decomposition produces for one sequence.
#[derive(Debug, Clone)]
pub struct DmdResult<T: Real> {
    /// Reduced operator `Ĥ` (`r × r`).
    pub htilde: DMatrix<T>,
    /// Eigenvalues, descending magnitude.
    pub sigma: Vec<Complex<T>>,
    /// Unit-norm eigenvectors of `Ĥ`, one column per eigenvalue.
    pub omega: DMatrix<Complex<T>>,
    /// Dynamic modes, one column per eigenvalue (`3mn × r`).
    pub psi: DMatrix<Complex<T>>,
    /// Fourier frequency per mode; `None` marks a zero eigenvalue.
    pub mu: Vec<Option<Complex<T>>>,
    /// Time step used for the frequencies.
    pub delta_t: T,
    /// Retained singular values of the first snapshot block.
    pub singular_values: DVector<T>,
}

impl<T: Real> DmdResult<T> {
    /// Truncation rank `r`.
    pub fn rank(&self) -> usize {
        self.sigma.len()
    }
}

/// A selected background mode.
#[derive(Debug, Clone)]
pub struct ModeSelection<T: Real> {
    /// Index into the mode ordering of [`DmdResult`].
    pub index: usize,
    /// `|μ|` of the selected mode.
    pub abs_mu: T,
    /// The selected mode column of `Ψ`.
    pub background_vector: DVector<Complex<T>>,
}

/// Index and `|μ|` of the valid mode with the smallest frequency magnitude.
///
/// Modes with zero eigenvalue carry no frequency and are excluded. Ties
/// resolve to the lowest index, which after the descending-|σ| ordering
/// means the strongest mode wins.
pub fn select_mode_index<T: Real>(mu: &[Option<Complex<T>>]) -> Result<(usize, T)> {
    let mut best: Option<(usize, T)> = None;
    for (i, m) in mu.iter().enumerate() {
        if let Some(f) = m {
            let mag = cmod(*f);
            if best.map_or(true, |(_, b)| mag < b) {
                best = Some((i, mag));
            }
        }
    }
    best.ok_or(Error::NoBackgroundMode)
}

/// Pick the background mode: the valid mode whose Fourier frequency is
/// closest to the origin of the complex plane.
pub fn select_background_mode<T: Real>(dmd: &DmdResult<T>) -> Result<ModeSelection<T>> {
    let (index, abs_mu) = select_mode_index(&dmd.mu)?;
    Ok(ModeSelection {
        index,
        abs_mu,
        background_vector: dmd.psi.column(index).into_owned(),
    })
}

/// Run the whole decomposition chain on a snapshot matrix: split, thin SVD,
/// reduced operator, eigenpairs, modes, frequencies.
pub fn decompose<T: Real>(
    p: &SnapshotMatrix<T>,
    rank_tol: T,
    delta_t: T,
) -> Result<(ThinSvd<T>, DmdResult<T>)> {
    let split = crate::snapshot::split_snapshots(p)?;
    let svd = snapshot_svd(&split.p1, rank_tol)?;
    let htilde = reduced_operator(&svd, &split.p2)?;
    let (sigma, omega) = eigen_reduced(&htilde)?;
    let psi = dynamic_modes(&split.p2, &svd, &omega)?;
    let mu = fourier_frequencies(&sigma, delta_t)?;
    let singular_values = svd.s.clone();
    Ok((
        svd,
        DmdResult {
            htilde,
            sigma,
            omega,
            psi,
            mu,
            delta_t,
            singular_values,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn static_snapshot(n_frames: usize) -> SnapshotMatrix<f64> {
        let col = [3.0, 7.0, 11.0];
        let values = DMatrix::from_fn(3, n_frames, |i, _| col[i]);
        SnapshotMatrix::from_matrix(values, 1, 1).unwrap()
    }

    #[test]
    fn static_sequence_reduced_operator_is_identity() {
        let p = static_snapshot(6);
        let split = crate::snapshot::split_snapshots(&p).unwrap();
        let svd = snapshot_svd(&split.p1, 1e-10).unwrap();
        assert_eq!(svd.rank(), 1);
        let h = reduced_operator(&svd, &split.p2).unwrap();
        assert!((h[(0, 0)] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn doubling_signal_gives_operator_two() {
        // frames 1, 2, 4, 8 on a single "pixel" channel triple
        let values = DMatrix::from_fn(3, 4, |_, j| (1u32 << j) as f64);
        let p = SnapshotMatrix::from_matrix(values, 1, 1).unwrap();
        let split = crate::snapshot::split_snapshots(&p).unwrap();
        let svd = snapshot_svd(&split.p1, 1e-10).unwrap();
        let h = reduced_operator(&svd, &split.p2).unwrap();
        assert_eq!(h.nrows(), 1);
        assert!((h[(0, 0)] - 2.0).abs() < 1e-10, "got {}", h[(0, 0)]);
        // the single mode is a nonzero scalar multiple of the frame direction
        let (sigma, omega) = eigen_reduced(&h).unwrap();
        let psi = dynamic_modes(&split.p2, &svd, &omega).unwrap();
        assert_eq!(psi.ncols(), 1);
        assert!(cmod(psi[(0, 0)]) > 0.0);
        assert!((sigma[0].re - 2.0).abs() < 1e-10);
    }

    #[test]
    fn frequencies_follow_principal_log() {
        let sigma = vec![
            Complex::new(1.0_f64, 0.0),
            Complex::new(std::f64::consts::E, 0.0),
            Complex::new(0.0, 1.0),
            Complex::new(0.0, 0.0),
        ];
        let mu = fourier_frequencies(&sigma, 1.0).unwrap();
        let m0 = mu[0].unwrap();
        assert!(cmod(m0) < 1e-15);
        let m1 = mu[1].unwrap();
        assert!((m1.re - 1.0).abs() < 1e-12 && m1.im.abs() < 1e-15);
        let m2 = mu[2].unwrap();
        assert!(m2.re.abs() < 1e-15);
        assert!((m2.im - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!((cmod(m2) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
        assert!(mu[3].is_none());
    }

    #[test]
    fn frequencies_reject_nonpositive_time_step() {
        let sigma = vec![Complex::new(1.0_f64, 0.0)];
        assert!(matches!(
            fourier_frequencies(&sigma, 0.0),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn selection_prefers_exact_zero() {
        let mu = vec![
            Some(Complex::new(0.0_f64, 0.0)),
            Some(Complex::new(0.0, 1.2)),
            Some(Complex::new(0.5, 0.0)),
        ];
        let (idx, mag) = select_mode_index(&mu).unwrap();
        assert_eq!(idx, 0);
        assert_eq!(mag, 0.0);
    }

    #[test]
    fn selection_breaks_magnitude_ties_by_lowest_index() {
        let mu = vec![
            Some(Complex::new(0.1_f64, 0.0)),
            Some(Complex::new(0.0, -0.1)),
        ];
        let (idx, _) = select_mode_index(&mu).unwrap();
        assert_eq!(idx, 0);
    }

    #[test]
    fn selection_skips_invalid_modes() {
        let mu = vec![None, Some(Complex::new(0.3_f64, 0.0))];
        let (idx, _) = select_mode_index(&mu).unwrap();
        assert_eq!(idx, 1);
        assert!(matches!(
            select_mode_index::<f64>(&[None, None]),
            Err(Error::NoBackgroundMode)
        ));
    }

    #[test]
    fn reduced_operator_checks_shapes() {
        let p = static_snapshot(4);
        let split = crate::snapshot::split_snapshots(&p).unwrap();
        let svd = snapshot_svd(&split.p1, 1e-10).unwrap();
        let bad = DMatrix::<f64>::zeros(5, 3);
        assert!(matches!(
            reduced_operator(&svd, &bad),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn decompose_full_chain_on_static_input() {
        let p = static_snapshot(8);
        let (_, dmd) = decompose(&p, 1e-10, 1.0).unwrap();
        assert_eq!(dmd.rank(), 1);
        assert!((dmd.sigma[0].re - 1.0).abs() < 1e-10);
        let sel = select_background_mode(&dmd).unwrap();
        assert_eq!(sel.index, 0);
        assert!(sel.abs_mu < 1e-10);
        // mode parallel to the constant frame vector
        let frame = [3.0, 7.0, 11.0];
        let mode: Vec<f64> = sel.background_vector.iter().map(|z| cmod(*z)).collect();
        let dot: f64 = mode.iter().zip(frame).map(|(a, b)| a * b).sum();
        let nm: f64 = mode.iter().map(|a| a * a).sum::<f64>().sqrt();
        let nf: f64 = frame.iter().map(|a| a * a).sum::<f64>().sqrt();
        assert!(dot / (nm * nf) > 1.0 - 1e-10);
    }
}
