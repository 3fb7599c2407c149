//! Min-max normalization of a mode image to `[0, 1]`.

use crate::error::{Error, Result};
use crate::scalar::Real;

use super::{ChannelPlanes, RealImage};

/// Whether min-max scaling runs per channel or jointly over all three.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Each channel scaled by its own range (default).
    #[default]
    PerChannel,
    /// One range shared by all three channels.
    Joint,
}

fn plane_min_max<T: Real>(plane: &nalgebra::DMatrix<T>) -> Result<(T, T)> {
    let mut lo = plane[(0, 0)];
    let mut hi = lo;
    for &v in plane.iter() {
        if !v.is_finite() {
            return Err(Error::NonFinite("mode image plane".into()));
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

/// Scale mode planes to `[0, 1]`. A constant channel (or a constant image in
/// joint mode) has no range and maps to neutral 0.5.
pub fn normalize_mode_image<T: Real>(
    planes: &ChannelPlanes<T>,
    normalization: Normalization,
) -> Result<RealImage<T>> {
    let m = planes.pixel_rows();
    let n = planes.pixel_cols();
    let half = T::from_f64(0.5).unwrap();

    let ranges: [(T, T); 3] = match normalization {
        Normalization::PerChannel => [
            plane_min_max(&planes.r)?,
            plane_min_max(&planes.g)?,
            plane_min_max(&planes.b)?,
        ],
        Normalization::Joint => {
            let (r_lo, r_hi) = plane_min_max(&planes.r)?;
            let (g_lo, g_hi) = plane_min_max(&planes.g)?;
            let (b_lo, b_hi) = plane_min_max(&planes.b)?;
            let lo = r_lo.min(g_lo).min(b_lo);
            let hi = r_hi.max(g_hi).max(b_hi);
            [(lo, hi); 3]
        }
    };

    Ok(RealImage::from_fn(m, n, |row, col, ch| {
        let (lo, hi) = ranges[ch];
        if hi == lo {
            half
        } else {
            (planes.plane(ch)[(row, col)] - lo) / (hi - lo)
        }
    }))
}
