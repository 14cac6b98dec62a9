use serde::{Deserialize, Serialize};

use crate::scalar::Real;

/// Homogeneous boundary condition `a·φ + b·φ′ = 0`, kept projectively so that
/// Dirichlet (`b = 0`) and Neumann (`a = 0`) are ordinary values.
///
/// For the self-adjoint conditions used here `(a, b)` is real up to an
/// overall phase, so the real representative is stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RobinCondition<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> RobinCondition<T> {
    /// Panics if both coefficients vanish.
    pub fn new(a: T, b: T) -> Self {
        assert!(!(a == T::zero() && b == T::zero()), "Robin condition needs (a, b) != (0, 0)");
        Self { a, b }
    }

    pub fn dirichlet() -> Self {
        Self::new(T::one(), T::zero())
    }

    pub fn neumann() -> Self {
        Self::new(T::zero(), T::one())
    }

    /// `φ + L φ′ = 0`; `L = ±∞` gives Neumann.
    pub fn from_length(length: T) -> Self {
        if length.is_infinite() {
            Self::neumann()
        } else {
            Self::new(T::one(), length)
        }
    }

    /// Length `L = b/a`, infinite for Neumann.
    pub fn length(&self) -> T {
        if self.a == T::zero() {
            T::infinity()
        } else {
            self.b / self.a
        }
    }

    pub fn is_dirichlet(&self) -> bool {
        self.b == T::zero()
    }

    pub fn is_neumann(&self) -> bool {
        self.a == T::zero()
    }

    /// Same coefficients rescaled to unit length with `a ≥ 0`.
    pub fn normalized(&self) -> Self {
        let n = (self.a * self.a + self.b * self.b).sqrt();
        let s = if self.a < T::zero() || (self.a == T::zero() && self.b < T::zero()) { -n } else { n };
        Self { a: self.a / s, b: self.b / s }
    }

    /// Projective equality within `tol`.
    pub fn projectively_eq(&self, other: &Self, tol: T) -> bool {
        let x = self.normalized();
        let y = other.normalized();
        (x.a * y.b - x.b * y.a).abs() <= tol
    }

    /// Residual `a·φ + b·φ′` for given value and derivative.
    pub fn residual(&self, value: T, slope: T) -> T {
        self.a * value + self.b * slope
    }

    pub fn cast<U: Real>(&self) -> RobinCondition<U> {
        RobinCondition { a: U::lit(self.a.as_f64()), b: U::lit(self.b.as_f64()) }
    }
}

/// Channel condition for the eigenphase `θ`: `(sin θ/2, L₀ cos θ/2)`.
///
/// The half-angle values are taken as `cos((π − θ)/2)` and `sin((π − θ)/2)`,
/// which makes `θ = π` land exactly on Dirichlet and `θ = 0` exactly on
/// Neumann. No infinite length is ever formed.
pub fn robin_from_angle<T: Real>(theta: T, l0: T) -> RobinCondition<T> {
    let phase = (T::PI() - theta) * T::half();
    let (sn, cs) = phase.sin_cos();
    // cos(π/2) is not zero in floating point; keep Neumann and Dirichlet exact
    let snap = |x: T| if x.abs() <= T::lit(4.0) * T::epsilon() { T::zero() } else { x };
    RobinCondition { a: snap(cs), b: l0 * snap(sn) }
}

/// `L = L₀ cot(θ/2)`, with `θ = 0` mapped to `+∞`.
pub fn length_from_angle<T: Real>(theta: T, l0: T) -> T {
    robin_from_angle(theta, l0).length()
}

/// Inverse of [`length_from_angle`] into `[0, 2π)`.
pub fn angle_from_length<T: Real>(length: T, l0: T) -> T {
    if length.is_infinite() {
        T::zero()
    } else {
        // cot(θ/2) = L/L₀  ⇒  θ/2 = atan2(L₀, L) ∈ (0, π)
        T::two() * l0.atan2(length)
    }
}
