//! Color quality measure: reversible YUV transform, per-plane PSNR, and
//! their weighted combination.
//!
//! The luminance/chrominance transform is the reversible integer-friendly
//! family `Y = (R + 2G + B)/4, U = B - G, V = R - G`, computed here in real
//! arithmetic (no flooring) so it inverts exactly. The combination weights
//! reflect the human rod/cone ratio: 0.9449 on luminance, 0.0551 split over
//! the chrominance planes.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::imaging::RealImage;
use crate::scalar::{from_usize, Real};

/// PSNR value reported for identical planes (zero MSE has no finite PSNR).
pub const PSNR_CAP_DB: f64 = 100.0;

/// Luminance weight.
pub const LUMINANCE_WEIGHT: f64 = 0.9449;

/// Chrominance weight.
pub const CHROMINANCE_WEIGHT: f64 = 0.0551;

/// Weight pair used by [`cqm`]; checked to sum to one at construction.
#[derive(Debug, Clone, Copy)]
pub struct CqmWeights<T: Real> {
    pub luminance: T,
    pub chrominance: T,
}

impl<T: Real> CqmWeights<T> {
    pub fn new(luminance: T, chrominance: T) -> Result<Self> {
        let sum = luminance + chrominance;
        let tol = T::from_f64(1e-12).unwrap();
        if crate::scalar::abs(sum - T::one()) > tol {
            return Err(Error::InvalidParameter(format!(
                "CQM weights must sum to 1, got {sum:?}"
            )));
        }
        Ok(Self {
            luminance,
            chrominance,
        })
    }
}

impl<T: Real> Default for CqmWeights<T> {
    fn default() -> Self {
        Self::new(
            T::from_f64(LUMINANCE_WEIGHT).unwrap(),
            T::from_f64(CHROMINANCE_WEIGHT).unwrap(),
        )
        .expect("default weights sum to 1")
    }
}

/// Luminance and chrominance planes of one image.
#[derive(Debug, Clone)]
pub struct YuvPlanes<T: Real> {
    pub y: DMatrix<T>,
    pub u: DMatrix<T>,
    pub v: DMatrix<T>,
}

/// Reversible YUV transform of a `0..=255`-scaled real image.
pub fn rct_yuv<T: Real>(image: &RealImage<T>) -> YuvPlanes<T> {
    let m = image.pixel_rows();
    let n = image.pixel_cols();
    let four = from_usize::<T>(4);
    let two = from_usize::<T>(2);
    let mut y = DMatrix::zeros(m, n);
    let mut u = DMatrix::zeros(m, n);
    let mut v = DMatrix::zeros(m, n);
    for row in 0..m {
        for col in 0..n {
            let r = image.get(row, col, 0);
            let g = image.get(row, col, 1);
            let b = image.get(row, col, 2);
            y[(row, col)] = (r + two * g + b) / four;
            u[(row, col)] = b - g;
            v[(row, col)] = r - g;
        }
    }
    YuvPlanes { y, u, v }
}

/// Exact inverse of [`rct_yuv`]: `G = Y - (U+V)/4, R = V + G, B = U + G`.
pub fn yuv_to_rgb<T: Real>(planes: &YuvPlanes<T>) -> RealImage<T> {
    let four = from_usize::<T>(4);
    RealImage::from_fn(planes.y.nrows(), planes.y.ncols(), |row, col, ch| {
        let g = planes.y[(row, col)] - (planes.u[(row, col)] + planes.v[(row, col)]) / four;
        match ch {
            0 => planes.v[(row, col)] + g,
            1 => g,
            _ => planes.u[(row, col)] + g,
        }
    })
}

/// Peak signal-to-noise ratio between two equally shaped planes, in dB.
///
/// Returns the value and whether the zero-MSE cap was applied.
pub fn psnr<T: Real>(a: &DMatrix<T>, b: &DMatrix<T>, peak: T) -> Result<(T, bool)> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(format!(
            "plane shapes differ: {:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    if a.is_empty() {
        return Err(Error::DimensionMismatch("empty planes".into()));
    }
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        let d = *x - *y;
        acc += d * d;
    }
    let mse = acc / from_usize::<T>(a.len());
    if mse == T::zero() {
        return Ok((T::from_f64(PSNR_CAP_DB).unwrap(), true));
    }
    let ten = from_usize::<T>(10);
    Ok((ten * (peak * peak / mse).log10(), false))
}

/// CQM evaluation of one image pair.
#[derive(Debug, Clone, Copy)]
pub struct CqmReport<T: Real> {
    pub psnr_y: T,
    pub psnr_u: T,
    pub psnr_v: T,
    pub cqm: T,
    /// True when any plane hit the zero-MSE cap.
    pub capped: bool,
    pub weights: CqmWeights<T>,
}

/// Color quality measure between a ground-truth image and a background
/// model, both on the `0..=255` scale.
pub fn cqm<T: Real>(ground_truth: &RealImage<T>, background: &RealImage<T>) -> Result<CqmReport<T>> {
    cqm_weighted(ground_truth, background, CqmWeights::default())
}

pub fn cqm_weighted<T: Real>(
    ground_truth: &RealImage<T>,
    background: &RealImage<T>,
    weights: CqmWeights<T>,
) -> Result<CqmReport<T>> {
    if (ground_truth.pixel_rows(), ground_truth.pixel_cols())
        != (background.pixel_rows(), background.pixel_cols())
    {
        return Err(Error::DimensionMismatch(format!(
            "ground truth is {}x{} but background is {}x{}",
            ground_truth.pixel_rows(),
            ground_truth.pixel_cols(),
            background.pixel_rows(),
            background.pixel_cols()
        )));
    }
    let gt = rct_yuv(ground_truth);
    let bg = rct_yuv(background);
    let peak = from_usize::<T>(255);
    let (psnr_y, cap_y) = psnr(&gt.y, &bg.y, peak)?;
    let (psnr_u, cap_u) = psnr(&gt.u, &bg.u, peak)?;
    let (psnr_v, cap_v) = psnr(&gt.v, &bg.v, peak)?;
    let two = from_usize::<T>(2);
    let cqm = psnr_y * weights.luminance + (psnr_u + psnr_v) / two * weights.chrominance;
    Ok(CqmReport {
        psnr_y,
        psnr_u,
        psnr_v,
        cqm,
        capped: cap_y || cap_u || cap_v,
        weights,
    })
}

/// Convenience for 8-bit images.
pub fn cqm_rgb8<T: Real>(
    ground_truth: &image::RgbImage,
    background: &image::RgbImage,
) -> Result<CqmReport<T>> {
    cqm(
        &RealImage::from_rgb8_scaled(ground_truth),
        &RealImage::from_rgb8_scaled(background),
    )
}
