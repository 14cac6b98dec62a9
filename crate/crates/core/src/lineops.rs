//! Bound states and scattering on the full line `ℝ ∖ {0}`.
//!
//! Units: `ħ²/2m = 1`, so `E = k²` for scattering and `E = −κ²` for bound
//! states. All formulas are evaluated projectively in the channel Robin data
//! `(a±, b±) = (sin θ±/2, L₀ cos θ±/2)`, which keeps Neumann channels
//! (`L± = ∞`) finite.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::u2core::PointInteraction;
use crate::wavefunction::GridWavefunction;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Channel {
    Plus,
    Minus,
}

/// `φ(x) = A⁻ e^{κx}` for `x < 0`, `B⁺ e^{−κx}` for `x > 0`, normalized
/// to `|A⁻|² + |B⁺|² = 2κ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundState<T> {
    pub kappa: T,
    pub energy: T,
    pub coeff_plus: Complex<T>,
    pub coeff_minus: Complex<T>,
    pub channel: Channel,
}

impl<T: Real> BoundState<T> {
    /// Value and derivative at `x`.
    pub fn eval(&self, x: T) -> (Complex<T>, Complex<T>) {
        if x > T::zero() || (x == T::zero() && x.is_sign_positive()) {
            let e = (-self.kappa * x).exp();
            (self.coeff_plus * e, self.coeff_plus * (-self.kappa * e))
        } else {
            let e = (self.kappa * x).exp();
            (self.coeff_minus * e, self.coeff_minus * (self.kappa * e))
        }
    }

    /// Sample on `[−extent, extent]` with analytic boundary data.
    pub fn to_grid(&self, extent: T, n: usize) -> GridWavefunction<T> {
        let plus = |x: T| {
            let e = (-self.kappa * x).exp();
            (self.coeff_plus * e, self.coeff_plus * (-self.kappa * e))
        };
        let minus = |x: T| {
            let e = (self.kappa * x).exp();
            (self.coeff_minus * e, self.coeff_minus * (self.kappa * e))
        };
        GridWavefunction::sample(extent, n, plus, minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    /// Incident from `x > 0`, travelling left.
    Plus,
    /// Incident from `x < 0`, travelling right.
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringData<T> {
    pub k: T,
    pub r: Complex<T>,
    pub t: Complex<T>,
    pub side: Side,
}

impl<T: Real> ScatteringData<T> {
    pub fn reflection_prob(&self) -> T {
        self.r.norm_sqr()
    }

    pub fn transmission_prob(&self) -> T {
        self.t.norm_sqr()
    }

    /// Scattering solution (without the `1/√2π` prefactor) as a grid function.
    ///
    /// Side `+`: `e^{−ikx} + r e^{ikx}` on `x > 0`, `t e^{−ikx}` on `x < 0`.
    /// Side `−`: `e^{ikx} + r e^{−ikx}` on `x < 0`, `t e^{ikx}` on `x > 0`.
    pub fn to_grid(&self, extent: T, n: usize) -> GridWavefunction<T> {
        let k = self.k;
        let i = Complex::new(T::zero(), T::one());
        let one = Complex::new(T::one(), T::zero());
        let wave = move |amp_out: Complex<T>, amp_in: Complex<T>, sign_in: T| {
            // amp_in e^{i sign_in k x} + amp_out e^{−i sign_in k x}
            move |x: T| {
                let ein = Complex::from_polar(T::one(), sign_in * k * x);
                let eout = ein.conj();
                let v = amp_in * ein + amp_out * eout;
                let d = i * k * sign_in * (amp_in * ein - amp_out * eout);
                (v, d)
            }
        };
        let zero = Complex::new(T::zero(), T::zero());
        match self.side {
            Side::Plus => {
                GridWavefunction::sample(extent, n, wave(self.r, one, -T::one()), wave(zero, self.t, -T::one()))
            }
            Side::Minus => {
                GridWavefunction::sample(extent, n, wave(zero, self.t, T::one()), wave(self.r, one, T::one()))
            }
        }
    }
}

/// Normalizable states on the line: one per channel with `0 < L± < ∞`, at
/// `κ = 1/L±`.
///
/// Coefficients `(B⁺, A⁻)` are `√(2κ)·(e^{−iν} cos μ/2, sin μ/2)` for the `+`
/// channel and `√(2κ)·(−e^{−iν} sin μ/2, cos μ/2)` for the `−` channel.
pub fn bound_states<T: Real>(p: &PointInteraction<T>) -> Vec<BoundState<T>> {
    let [rp, rm] = p.channel_conditions();
    let (s, c) = (p.mu * T::half()).sin_cos();
    let phase = Complex::from_polar(T::one(), -p.nu);
    let mut out = Vec::with_capacity(2);
    for (robin, channel) in [(rp, Channel::Plus), (rm, Channel::Minus)] {
        // φ + Lφ′ = 0 with e^{−κx}: 1 − κL = 0  ⇒  κ = a/b
        if robin.a > T::zero() && robin.b > T::zero() {
            let kappa = robin.a / robin.b;
            let norm = (T::two() * kappa).sqrt();
            let (bp, am) = match channel {
                Channel::Plus => (phase * (norm * c), Complex::new(norm * s, T::zero())),
                Channel::Minus => (phase * (-norm * s), Complex::new(norm * c, T::zero())),
            };
            out.push(BoundState { kappa, energy: -kappa * kappa, coeff_plus: bp, coeff_minus: am, channel });
        }
    }
    out.sort_by(|x, y| x.energy.partial_cmp(&y.energy).unwrap());
    out
}

/// Reflection and transmission amplitudes at wavenumber `k > 0`.
///
/// Side `+` uses
/// `r = −(1 + k²L₊L₋ − ik(L₊ − L₋) cos μ) / ((1 + ikL₊)(1 + ikL₋))`,
/// `t = ik(L₊ − L₋) sin μ e^{iν} / ((1 + ikL₊)(1 + ikL₋))`,
/// multiplied through by `a₊a₋`. Side `−` is the same expression with
/// `(L₊, L₋, μ, ν) → (L₋, L₊, μ, π − ν)`.
pub fn scattering<T: Real>(p: &PointInteraction<T>, k: T, side: Side) -> ScatteringData<T> {
    assert!(k > T::zero(), "wavenumber must be positive");
    let [rp, rm] = p.channel_conditions();
    let (ap, bp, am, bm, nu) = match side {
        Side::Plus => (rp.a, rp.b, rm.a, rm.b, p.nu),
        Side::Minus => (rm.a, rm.b, rp.a, rp.b, T::PI() - p.nu),
    };
    let (sin_mu, cos_mu) = p.mu.sin_cos();
    let i = Complex::new(T::zero(), T::one());
    let den = Complex::new(ap, k * bp) * Complex::new(am, k * bm);
    // (L₊ − L₋)·a₊a₋ = b₊a₋ − a₊b₋
    let diff = bp * am - ap * bm;
    let r_num = Complex::new(ap * am + k * k * bp * bm, -k * diff * cos_mu);
    let t_num = i * (k * diff * sin_mu) * Complex::from_polar(T::one(), nu);
    ScatteringData { k, r: -(r_num / den), t: t_num / den, side }
}

/// `φ(x) ↦ e^{iν/2} φ(x)` for `x > 0` and `e^{−iν/2} φ(x)` for `x < 0`.
///
/// A solution for parameters with sphere angle `ν` becomes a solution for
/// `ν = 0`; `gauge_shift(w, −δ)` moves a solution from `ν` to `ν + δ`.
pub fn gauge_shift<T: Real>(w: &GridWavefunction<T>, nu: T) -> GridWavefunction<T> {
    let half = nu * T::half();
    w.phase_halves(Complex::from_polar(T::one(), half), Complex::from_polar(T::one(), -half))
}

/// One row of a `k` sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow<T> {
    pub k: T,
    pub r: Complex<T>,
    pub t: Complex<T>,
}

/// `steps` evenly spaced wavenumbers on `[k_min, k_max]`.
pub fn k_sweep<T: Real>(p: &PointInteraction<T>, k_min: T, k_max: T, steps: usize, side: Side) -> Vec<SweepRow<T>> {
    assert!(k_min > T::zero() && k_max >= k_min && steps >= 1);
    (0..steps)
        .map(|j| {
            let k = if steps == 1 {
                k_min
            } else {
                k_min + (k_max - k_min) * T::lit(j as f64) / T::lit((steps - 1) as f64)
            };
            let s = scattering(p, k, side);
            SweepRow { k, r: s.r, t: s.t }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::u2core::{mat_from_params, PointInteraction};
    use std::f64::consts::{FRAC_PI_2, PI};

    type P = PointInteraction<f64>;

    #[test]
    fn two_bound_states() {
        let p = P::from_lengths(1.0, 2.0, 0.3, 0.4);
        let b = bound_states(&p);
        assert_eq!(b.len(), 2);
        assert!((b[0].kappa - 1.0).abs() < 1e-12 && (b[0].energy + 1.0).abs() < 1e-12);
        assert!((b[1].kappa - 0.5).abs() < 1e-12 && (b[1].energy + 0.25).abs() < 1e-12);
        for s in &b {
            let n = s.coeff_plus.norm_sqr() + s.coeff_minus.norm_sqr();
            assert!((n - 2.0 * s.kappa).abs() < 1e-12);
        }
    }

    #[test]
    fn one_or_no_bound_state() {
        let b = bound_states(&P::from_lengths(1.0, -1.0, 0.0, 0.0));
        assert_eq!(b.len(), 1);
        assert!((b[0].kappa - 1.0).abs() < 1e-12);
        assert!(bound_states(&P::from_lengths(-1.0, -3.0, 0.2, 0.0)).is_empty());
        // Dirichlet and Neumann channels carry no normalizable state
        assert!(bound_states(&P::new(PI, 0.0, 0.5, 0.5)).is_empty());
    }

    #[test]
    fn bound_states_satisfy_boundary_condition() {
        let p = P::from_lengths(0.7, 1.9, 1.1, 2.5);
        let u = mat_from_params(&p);
        for s in bound_states(&p) {
            let w = s.to_grid(10.0, 50);
            assert!(w.origin_residual(&u, 1.0) < 1e-12, "{}", w.origin_residual(&u, 1.0));
        }
    }

    #[test]
    fn separated_interaction_does_not_transmit() {
        let p = P::new(1.0, 2.5, 0.0, 0.7);
        for &k in &[0.1, 1.0, 7.0] {
            assert_eq!(scattering(&p, k, Side::Plus).t, Complex::new(0.0, 0.0));
        }
    }

    #[test]
    fn self_dual_reflects_totally() {
        let p = P::new(2.0, 2.0, 0.9, 1.3);
        for &k in &[0.2, 1.0, 3.0] {
            let s = scattering(&p, k, Side::Plus);
            assert!((s.r.norm() - 1.0).abs() < 1e-14);
            assert!(s.t.norm() < 1e-15);
        }
    }

    #[test]
    fn free_point_is_transparent() {
        let p = P::new(PI, 0.0, FRAC_PI_2, 0.0);
        for &k in &[0.3, 1.0, 5.0] {
            for side in [Side::Plus, Side::Minus] {
                let s = scattering(&p, k, side);
                assert!(s.r.norm() < 1e-15);
                assert!((s.t.norm() - 1.0).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn both_sides_satisfy_boundary_condition() {
        let p = P::new(0.8, 4.1, 1.2, 2.2);
        let u = mat_from_params(&p);
        for side in [Side::Plus, Side::Minus] {
            for &k in &[0.4, 1.7] {
                let s = scattering(&p, k, side);
                let w = s.to_grid(3.0, 20);
                let res = w.origin_residual(&u, 1.0);
                assert!(res < 1e-12, "{side:?} k={k}: {res}");
            }
        }
    }

    #[test]
    fn gauge_shift_group_property() {
        let p = P::new(0.8, 4.1, 1.2, 2.2);
        let w = scattering(&p, 1.0, Side::Plus).to_grid(2.0, 10);
        assert!(gauge_shift(&w, 0.0).max_abs_diff(&w) == 0.0);
        let twice = gauge_shift(&gauge_shift(&w, 0.4), 0.4);
        assert!(twice.max_abs_diff(&gauge_shift(&w, 0.8)) < 1e-14);
    }

    #[test]
    fn gauge_shift_moves_solutions_between_nu() {
        let p = P::new(0.8, 4.1, 1.2, 2.2);
        let delta = 0.9;
        let q = p.with_sphere(p.mu, p.nu + delta);
        let w = bound_states(&p)[0].to_grid(5.0, 20);
        let shifted = gauge_shift(&w, -delta);
        assert!(shifted.origin_residual(&mat_from_params(&q), 1.0) < 1e-12);
    }
}
