use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix2;
use super::robin::{robin_from_angle, RobinCondition};
use crate::error::Result;
use crate::scalar::{circular_distance, wrap_angle, Real};

/// Canonical parameters `(θ₊, θ₋, μ, ν)` of a point interaction,
/// `U = V⁻¹ diag(e^{iθ₊}, e^{iθ₋}) V` with `V = e^{iμσ₂/2} e^{iνσ₃/2}`.
///
/// The set of tuples covers U(2) twice: `(θ₊, θ₋, μ, ν)` and
/// `(θ₋, θ₊, π − μ, ν + π)` give the same matrix. [`canonicalize`] picks the
/// representative with `θ₊ ≥ θ₋`. Which eigenphase is called `θ₊` is a
/// convention of this crate; spectra are symmetric in the pair.
///
/// `l0` is the global length scale and defaults to one. It is serialized
/// only when it differs from one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct PointInteraction<T> {
    pub theta_plus: T,
    pub theta_minus: T,
    pub mu: T,
    pub nu: T,
    #[serde(default = "unit_length", skip_serializing_if = "is_unit_length")]
    pub l0: T,
}

fn unit_length<T: Real>() -> T {
    T::one()
}

fn is_unit_length<T: Real>(x: &T) -> bool {
    *x == T::one()
}

impl<T: Real> PointInteraction<T> {
    pub fn new(theta_plus: T, theta_minus: T, mu: T, nu: T) -> Self {
        Self { theta_plus, theta_minus, mu, nu, l0: T::one() }
    }

    pub fn with_l0(mut self, l0: T) -> Self {
        assert!(l0 > T::zero(), "L0 must be positive");
        self.l0 = l0;
        self
    }

    /// Self-dual interaction `U = e^{iθ} I`.
    pub fn self_dual(theta: T) -> Self {
        Self::new(theta, theta, T::zero(), T::zero())
    }

    /// Build from the channel lengths `L± = L₀ cot(θ±/2)`; `±∞` is Neumann.
    pub fn from_lengths(l_plus: T, l_minus: T, mu: T, nu: T) -> Self {
        let one = T::one();
        Self::new(super::robin::angle_from_length(l_plus, one), super::robin::angle_from_length(l_minus, one), mu, nu)
    }

    /// `ξ = (θ₊ + θ₋)/2`.
    pub fn xi(&self) -> T {
        (self.theta_plus + self.theta_minus) * T::half()
    }

    /// `ρ = (θ₊ − θ₋)/2`.
    pub fn rho(&self) -> T {
        (self.theta_plus - self.theta_minus) * T::half()
    }

    pub fn lengths(&self) -> [T; 2] {
        let [p, m] = self.channel_conditions();
        [p.length(), m.length()]
    }

    /// Robin data of the two channels, `[+, −]`.
    pub fn channel_conditions(&self) -> [RobinCondition<T>; 2] {
        [robin_from_angle(self.theta_plus, self.l0), robin_from_angle(self.theta_minus, self.l0)]
    }

    /// Unit vector `(sin μ cos ν, sin μ sin ν, cos μ)` on the isospectral sphere.
    pub fn axis(&self) -> [T; 3] {
        let (sm, cm) = self.mu.sin_cos();
        let (sn, cn) = self.nu.sin_cos();
        [sm * cn, sm * sn, cm]
    }

    /// `V = e^{iμσ₂/2} e^{iνσ₃/2}`.
    pub fn v_matrix(&self) -> ComplexMatrix2<T> {
        let half = T::half();
        let zero = T::zero();
        let one = T::one();
        ComplexMatrix2::exp_i_axis(self.mu * half, [zero, one, zero])
            * ComplexMatrix2::exp_i_axis(self.nu * half, [zero, zero, one])
    }

    pub fn d_matrix(&self) -> ComplexMatrix2<T> {
        ComplexMatrix2::diag(
            Complex::from_polar(T::one(), self.theta_plus),
            Complex::from_polar(T::one(), self.theta_minus),
        )
    }

    pub fn is_self_dual(&self) -> bool {
        circular_distance(self.theta_plus, self.theta_minus) <= T::angle_tol()
    }

    /// Same eigenphases, new position on the isospectral sphere.
    pub fn with_sphere(&self, mu: T, nu: T) -> Self {
        Self { mu, nu, ..*self }
    }

    pub fn cast<U: Real>(&self) -> PointInteraction<U> {
        PointInteraction {
            theta_plus: U::lit(self.theta_plus.as_f64()),
            theta_minus: U::lit(self.theta_minus.as_f64()),
            mu: U::lit(self.mu.as_f64()),
            nu: U::lit(self.nu.as_f64()),
            l0: U::lit(self.l0.as_f64()),
        }
    }
}

/// `U = V⁻¹ D V`.
pub fn mat_from_params<T: Real>(p: &PointInteraction<T>) -> ComplexMatrix2<T> {
    let v = p.v_matrix();
    v.adjoint() * p.d_matrix() * v
}

/// `σ(V) = V⁻¹ σ₃ V = (sin μ cos ν) σ₁ + (sin μ sin ν) σ₂ + (cos μ) σ₃`.
pub fn sigma_of_v<T: Real>(p: &PointInteraction<T>) -> ComplexMatrix2<T> {
    ComplexMatrix2::from_pauli_coeffs(p.axis())
}

/// Recover canonical parameters from a unitary matrix.
///
/// Writes `U = √det U · (a₀ I + i a⃗·σ⃗)` with a unit quaternion `(a₀, a⃗)`, so the
/// eigenphases are `arg √det U ± atan2(|a⃗|, a₀)` and the eigen-axis `a⃗/|a⃗|`
/// fixes `(μ, ν)`. At the poles of the sphere `ν` is set to zero, and for
/// self-dual input `μ = ν = 0`.
pub fn params_from_mat<T: Real>(u: &ComplexMatrix2<T>, l0: T) -> Result<PointInteraction<T>> {
    params_from_mat_tol(u, l0, T::matrix_tol())
}

pub fn params_from_mat_tol<T: Real>(u: &ComplexMatrix2<T>, l0: T, tol: T) -> Result<PointInteraction<T>> {
    u.check_unitary(tol)?;
    let q = u.det().sqrt();
    let w = u.scale(q.inv());
    let h = T::half();
    let a0 = ((w.m[0][0] + w.m[1][1]) * h).re;
    let a3 = ((w.m[0][0] - w.m[1][1]) * h).im;
    let a1 = ((w.m[0][1] + w.m[1][0]) * h).im;
    let a2 = ((w.m[0][1] - w.m[1][0]) * h).re;
    let a_norm = (a1 * a1 + a2 * a2 + a3 * a3).sqrt();
    let rho = a_norm.atan2(a0);
    let xi = q.arg();
    let theta_plus = wrap_angle(xi + rho);
    let theta_minus = wrap_angle(xi - rho);

    let (mu, nu) = if a_norm <= T::epsilon() {
        (T::zero(), T::zero())
    } else {
        let mu = (a1 * a1 + a2 * a2).sqrt().atan2(a3);
        let nu = if mu.sin() <= T::lit(1e3) * T::epsilon() { T::zero() } else { wrap_angle(a2.atan2(a1)) };
        (mu, nu)
    };
    let p = PointInteraction { theta_plus, theta_minus, mu, nu, l0 };
    let mut c = canonicalize(&p);
    if c.mu.sin() <= T::lit(1e3) * T::epsilon() {
        c.nu = T::zero();
    }
    Ok(c)
}

/// Deterministic representative of the double cover.
///
/// Angles are wrapped (`θ±, ν ∈ [0, 2π)`, `μ ∈ [0, π]`); if `θ₊ < θ₋` the
/// swap–antipode identification is applied; a self-dual pair (eigenphases
/// within the angle tolerance) collapses to `μ = ν = 0`.
pub fn canonicalize<T: Real>(p: &PointInteraction<T>) -> PointInteraction<T> {
    let pi = T::PI();
    let mut tp = wrap_angle(p.theta_plus);
    let mut tm = wrap_angle(p.theta_minus);
    let mut mu = wrap_angle(p.mu);
    let mut nu = wrap_angle(p.nu);
    if mu > pi {
        mu = T::TAU() - mu;
        nu = wrap_angle(nu + pi);
    }
    if circular_distance(tp, tm) <= T::angle_tol() {
        let t = tp.max(tm);
        return PointInteraction { theta_plus: t, theta_minus: t, mu: T::zero(), nu: T::zero(), l0: p.l0 };
    }
    if tp < tm {
        std::mem::swap(&mut tp, &mut tm);
        mu = pi - mu;
        nu = wrap_angle(nu + pi);
    }
    PointInteraction { theta_plus: tp, theta_minus: tm, mu, nu, l0: p.l0 }
}
