use std::fmt;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar used throughout the crate: `f32` or `f64`.
///
/// The physical pipeline multiplies by ħ² ≈ 1.1e-68, which is below the `f32`
/// range, so quantities that carry ħ (temperatures, spectra, bounds) are only
/// meaningful in `f64`. Special functions, geometry and the dimensionless
/// parts of the diffusion constants work in either precision.
pub trait Real:
    Float + FloatConst + FromPrimitive + fmt::Debug + fmt::Display + fmt::LowerExp + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("integer representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
