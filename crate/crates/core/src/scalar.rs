//! Real scalar abstraction shared by every numeric module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type the library is generic over: `f32` or `f64`.
///
/// The tolerance hooks are scaled to the precision of the type. The `f64`
/// values are the ones the identity checks are pinned to; the `f32` values
/// are roughly the square root of the relative machine epsilon ratio.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Entrywise tolerance for exact identities and the eigensolver default.
    fn tight_tol() -> Self;
    /// Threshold for positivity verdicts and inequality violations.
    fn loose_tol() -> Self;
    /// Allowed deviation of a direction vector from unit norm.
    fn norm_tol() -> Self;

    /// Converts an `f64` literal. Panics only if the target cannot represent it.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f64 {
    fn tight_tol() -> Self {
        1e-12
    }
    fn loose_tol() -> Self {
        1e-10
    }
    fn norm_tol() -> Self {
        1e-9
    }
}

impl Real for f32 {
    fn tight_tol() -> Self {
        2e-6
    }
    fn loose_tol() -> Self {
        1e-5
    }
    fn norm_tol() -> Self {
        1e-5
    }
}

/// Converts degrees to radians.
pub fn deg<T: Real>(degrees: T) -> T {
    degrees.to_radians()
}
