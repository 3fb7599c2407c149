//! Scalar abstraction for the numerical pipeline.
//!
//! Everything numeric in this crate is generic over [`Real`], which is any
//! IEEE floating-point type nalgebra can factorize and num-traits can convert
//! to and from primitive integers. In practice that means `f32` or `f64`;
//! concrete aliases for both live at the crate root.

use nalgebra::{ComplexField, RealField};
use num_traits::{FloatConst, ToPrimitive};

/// Floating-point scalar usable by every decomposition and image transform
/// in this crate.
///
/// `FromPrimitive` comes in through `ComplexField`, so `Real` adds only the
/// constants and the primitive-directed conversions on top of nalgebra's
/// field requirements.
pub trait Real: RealField + FloatConst + ToPrimitive + Copy {}

impl Real for f32 {}
impl Real for f64 {}

/// `|x|` for a generic scalar.
///
/// `T: RealField` sees two `abs` methods (`ComplexField::abs` and
/// `Signed::abs`), which makes plain method syntax ambiguous; call this
/// instead.
#[inline]
pub fn abs<T: Real>(x: T) -> T {
    ComplexField::abs(x)
}

/// Convert an exact small integer to `T`. Panics only if `T` cannot hold the
/// value, which cannot happen for the 8-bit and dimension-sized inputs this
/// crate feeds it.
#[inline]
pub fn from_usize<T: Real>(v: usize) -> T {
    T::from_usize(v).expect("usize value representable in scalar type")
}

#[inline]
pub fn from_u8<T: Real>(v: u8) -> T {
    T::from_u8(v).expect("u8 always representable")
}

/// Quantize a `[0, 1]` value to `u8`, rounding half away from zero.
#[inline]
pub fn quantize_unit<T: Real>(x: T) -> u8 {
    let scaled = (x * from_usize::<T>(255)).round();
    let clamped = scaled.clamp(T::zero(), from_usize::<T>(255));
    clamped.to_u8().unwrap_or(255)
}
