//! Scalar domains: exact Laurent polynomials and rational functions in the
//! bracket variable `A`, double-precision complex values, and quaternions.

mod laurent;
mod quaternion;
mod rational;

pub use laurent::LaurentPoly;
pub(crate) use laurent::write_poly;
pub use quaternion::{add3, cross, dot, norm3, scale3, Quaternion, Vec3};
pub use rational::RationalFn;

use std::ops::{Add, Mul, Neg, Sub};

pub use num_complex::Complex64;
use num_traits::{One, Zero};

/// Default tolerance for numerical matrix identities.
pub const MATRIX_TOL: f64 = 1e-10;

/// Coefficient ring for Temperley-Lieb elements.
pub trait Scalar:
    Clone
    + Zero
    + One
    + Send
    + Sync
    + std::fmt::Debug
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + Neg<Output = Self>
{
    /// True when the value should be treated as zero (exact for symbolic
    /// rings, thresholded for floating point).
    fn negligible(&self) -> bool {
        self.is_zero()
    }
}

/// A [`Scalar`] with division, needed for Jones-Wenzl coefficients.
pub trait FieldScalar: Scalar {
    fn try_div(&self, rhs: &Self) -> Option<Self>;
}

impl Scalar for LaurentPoly {}

impl Scalar for RationalFn {}

impl FieldScalar for RationalFn {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
}

impl Scalar for Complex64 {
    fn negligible(&self) -> bool {
        self.norm() < 1e-13
    }
}

impl FieldScalar for Complex64 {
    fn try_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.negligible() {
            None
        } else {
            Some(self / rhs)
        }
    }
}

/// `e^{iθ}`.
pub fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// `δ = -A² - A⁻²` at a numeric `A`.
pub fn loop_value(a: Complex64) -> Complex64 {
    -(a * a) - (a * a).inv()
}
