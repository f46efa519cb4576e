//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// The numeric core is written once against this trait. Tolerances that
/// depend on machine precision are exposed as associated functions so that
/// defaults stay meaningful for both widths.
pub trait Scalar:
    RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Relative threshold below which a singular value counts as zero.
    fn rank_tol() -> Self;

    /// Default relative residual tolerance for the nonlinear solvers.
    fn solver_tol() -> Self;

    /// Converts an `f64` literal, panicking only if the target cannot hold it.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// `self > 0`; false for NaN.
    #[inline]
    fn is_positive(self) -> bool {
        self > Self::zero()
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn rank_tol() -> Self {
        1e-9
    }

    fn solver_tol() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    fn rank_tol() -> Self {
        1e-4
    }

    fn solver_tol() -> Self {
        1e-4
    }
}

/// Signed square: `x²` for `x ≥ 0`, `-x²` otherwise.
#[inline]
pub fn signed_square<T: Scalar>(x: T) -> T {
    if x >= T::zero() {
        x * x
    } else {
        -(x * x)
    }
}

/// Inverse of [`signed_square`].
#[inline]
pub fn signed_sqrt<T: Scalar>(s: T) -> T {
    if s >= T::zero() {
        s.sqrt()
    } else {
        -(-s).sqrt()
    }
}
