//! 2×2 unitary algebra, the `(θ₊, θ₋, μ, ν)` parametrization of U(2) and the
//! Robin form of the boundary condition
//! `(U − I)Φ + iL₀(U + I)Φ′ = 0` at the missing point `x = 0`.
//!
//! Boundary vectors are `Φ = (φ(0₊), φ(0₋))` and `Φ′ = (φ′(0₊), −φ′(0₋))`.

mod matrix;
mod params;
mod robin;

pub use matrix::{hermitian_eigen, ComplexMatrix2, Vector2};
pub use params::{canonicalize, mat_from_params, params_from_mat, params_from_mat_tol, sigma_of_v, PointInteraction};
pub use robin::{angle_from_length, length_from_angle, robin_from_angle, RobinCondition};

use num_complex::Complex;

use crate::scalar::Real;

/// Residual of `(U − I)Φ + iL₀(U + I)Φ′` relative to `|Φ| + L₀|Φ′|`.
pub fn boundary_residual<T: Real>(u: &ComplexMatrix2<T>, l0: T, phi: Vector2<T>, dphi: Vector2<T>) -> T {
    let id = ComplexMatrix2::identity();
    let a = (*u - id).apply(phi);
    let b = (*u + id).apply(dphi);
    let i = Complex::new(T::zero(), l0);
    let r0 = a[0] + i * b[0];
    let r1 = a[1] + i * b[1];
    let scale = (phi[0].norm_sqr() + phi[1].norm_sqr()).sqrt() + l0 * (dphi[0].norm_sqr() + dphi[1].norm_sqr()).sqrt();
    let res = (r0.norm_sqr() + r1.norm_sqr()).sqrt();
    if scale > T::zero() {
        res / scale
    } else {
        res
    }
}
