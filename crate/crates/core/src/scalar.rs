//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating point scalar: `f32` or `f64`.
///
/// The tolerances carried here are the defaults used when a caller does not
/// pass one explicitly. They are expressed in the natural unit of each
/// quantity (radians for angles, units of `ħ²/2m = L₀ = 1` for energies).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Root tolerance for energies.
    fn default_tol() -> Self;
    /// Tolerance for comparing angles modulo 2π.
    fn angle_tol() -> Self;
    /// Tolerance for unitarity and other matrix identities.
    fn matrix_tol() -> Self;

    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Real for f64 {
    fn default_tol() -> Self {
        1e-10
    }
    fn angle_tol() -> Self {
        1e-9
    }
    fn matrix_tol() -> Self {
        1e-10
    }
}

impl Real for f32 {
    fn default_tol() -> Self {
        1e-4
    }
    fn angle_tol() -> Self {
        1e-4
    }
    fn matrix_tol() -> Self {
        1e-4
    }
}

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let mut r = theta % tau;
    if r < T::zero() {
        r += tau;
    }
    if r >= tau {
        r -= tau;
    }
    r
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn circular_distance<T: Real>(a: T, b: T) -> T {
    let d = wrap_angle(a - b);
    d.min(T::TAU() - d)
}

/// Reduce an angle into `(-π, π]`.
pub fn wrap_signed<T: Real>(theta: T) -> T {
    let r = wrap_angle(theta);
    if r > T::PI() {
        r - T::TAU()
    } else {
        r
    }
}
