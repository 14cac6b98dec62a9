//! Complex wavefunctions sampled on the two half-intervals `[−l, 0)` and
//! `(0, l]`, together with their one-sided boundary data.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::u2core::{boundary_residual, ComplexMatrix2, RobinCondition, Vector2};

/// One-sided limits at `0±` and values at `±l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryData<T> {
    /// `[φ(0₊), φ(0₋)]`
    pub origin: [Complex<T>; 2],
    /// `[φ′(0₊), φ′(0₋)]`
    pub origin_slope: [Complex<T>; 2],
    /// `[φ(l), φ(−l)]`
    pub edge: [Complex<T>; 2],
    /// `[φ′(l), φ′(−l)]`
    pub edge_slope: [Complex<T>; 2],
}

impl<T: Real> BoundaryData<T> {
    /// `Φ = (φ(0₊), φ(0₋))`
    pub fn phi(&self) -> Vector2<T> {
        self.origin
    }

    /// `Φ′ = (φ′(0₊), −φ′(0₋))`
    pub fn dphi(&self) -> Vector2<T> {
        [self.origin_slope[0], -self.origin_slope[1]]
    }

    /// `Ψ = (φ(l), φ(−l))`
    pub fn psi(&self) -> Vector2<T> {
        self.edge
    }

    /// `Ψ′ = (φ′(l), −φ′(−l))`
    pub fn dpsi(&self) -> Vector2<T> {
        [self.edge_slope[0], -self.edge_slope[1]]
    }

    /// Inverse of the `(Φ, Φ′, Ψ, Ψ′)` packing.
    pub fn from_vectors(phi: Vector2<T>, dphi: Vector2<T>, psi: Vector2<T>, dpsi: Vector2<T>) -> Self {
        Self { origin: phi, origin_slope: [dphi[0], -dphi[1]], edge: psi, edge_slope: [dpsi[0], -dpsi[1]] }
    }

    fn map(&self, pos: Complex<T>, neg: Complex<T>) -> Self {
        Self {
            origin: [self.origin[0] * pos, self.origin[1] * neg],
            origin_slope: [self.origin_slope[0] * pos, self.origin_slope[1] * neg],
            edge: [self.edge[0] * pos, self.edge[1] * neg],
            edge_slope: [self.edge_slope[0] * pos, self.edge_slope[1] * neg],
        }
    }

    fn combine(&self, other: &Self, a: Complex<T>, b: Complex<T>) -> Self {
        let f = |x: [Complex<T>; 2], y: [Complex<T>; 2]| [x[0] * a + y[0] * b, x[1] * a + y[1] * b];
        Self {
            origin: f(self.origin, other.origin),
            origin_slope: f(self.origin_slope, other.origin_slope),
            edge: f(self.edge, other.edge),
            edge_slope: f(self.edge_slope, other.edge_slope),
        }
    }
}

/// Samples on uniform cell-centred grids, `n` points per half. The points sit
/// at `±(j + ½)h` with `h = l/n`, so `x = 0` and `x = ±l` are never evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridWavefunction<T> {
    pub n: usize,
    pub l: T,
    /// Ascending, on `[−l, 0)`.
    pub xs_neg: Vec<T>,
    /// Ascending, on `(0, l]`.
    pub xs_pos: Vec<T>,
    pub neg: Vec<Complex<T>>,
    pub pos: Vec<Complex<T>>,
    pub boundary: BoundaryData<T>,
}

/// Cell-centred grid points on `(0, l]`.
pub fn half_grid<T: Real>(l: T, n: usize) -> Vec<T> {
    let h = l / T::lit(n as f64);
    (0..n).map(|j| (T::lit(j as f64) + T::half()) * h).collect()
}

impl<T: Real> GridWavefunction<T> {
    /// Sample analytic half-line solutions.
    ///
    /// `pos(x)` and `neg(x)` return `(φ, φ′)` and are evaluated on their own
    /// half including the limiting points `0` and `±l`.
    pub fn sample<P, N>(l: T, n: usize, pos: P, neg: N) -> Self
    where
        P: Fn(T) -> (Complex<T>, Complex<T>),
        N: Fn(T) -> (Complex<T>, Complex<T>),
    {
        assert!(n >= 3, "need at least three points per half");
        let xs_pos = half_grid(l, n);
        let xs_neg: Vec<T> = xs_pos.iter().rev().map(|&x| -x).collect();
        let pos_vals = xs_pos.iter().map(|&x| pos(x).0).collect();
        let neg_vals = xs_neg.iter().map(|&x| neg(x).0).collect();
        let (p0, dp0) = pos(T::zero());
        let (n0, dn0) = neg(T::zero());
        let (pl, dpl) = pos(l);
        let (nl, dnl) = neg(-l);
        Self {
            n,
            l,
            xs_neg,
            xs_pos,
            neg: neg_vals,
            pos: pos_vals,
            boundary: BoundaryData {
                origin: [p0, n0],
                origin_slope: [dp0, dn0],
                edge: [pl, nl],
                edge_slope: [dpl, dnl],
            },
        }
    }

    /// Build from raw samples, estimating the boundary data by quadratic
    /// extrapolation from the three nearest points.
    pub fn from_samples(l: T, neg: Vec<Complex<T>>, pos: Vec<Complex<T>>) -> Self {
        let n = pos.len();
        assert_eq!(neg.len(), n, "both halves need the same number of points");
        assert!(n >= 3, "need at least three points per half");
        let h = l / T::lit(n as f64);
        let xs_pos = half_grid(l, n);
        let xs_neg: Vec<T> = xs_pos.iter().rev().map(|&x| -x).collect();
        // values at t = ½, 3⁄2, 5⁄2 grid units from the end point
        let value = |f: [Complex<T>; 3]| (f[0] * T::lit(15.0) - f[1] * T::lit(10.0) + f[2] * T::lit(3.0)) / T::lit(8.0);
        let slope = |f: [Complex<T>; 3]| (f[0] * T::lit(-2.0) + f[1] * T::lit(3.0) - f[2]) / h;
        let near_zero_pos = [pos[0], pos[1], pos[2]];
        let near_zero_neg = [neg[n - 1], neg[n - 2], neg[n - 3]];
        let near_l_pos = [pos[n - 1], pos[n - 2], pos[n - 3]];
        let near_l_neg = [neg[0], neg[1], neg[2]];
        let boundary = BoundaryData {
            origin: [value(near_zero_pos), value(near_zero_neg)],
            // moving away from 0 is +x on the right, −x on the left
            origin_slope: [slope(near_zero_pos), -slope(near_zero_neg)],
            edge: [value(near_l_pos), value(near_l_neg)],
            edge_slope: [-slope(near_l_pos), slope(near_l_neg)],
        };
        Self { n, l, xs_neg, xs_pos, neg, pos, boundary }
    }

    pub fn step(&self) -> T {
        self.l / T::lit(self.n as f64)
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        self.xs_neg.len() == self.xs_pos.len()
            && self.xs_neg.iter().zip(self.xs_pos.iter().rev()).all(|(&a, &b)| (a + b).abs() <= tol)
    }

    /// `⟨self, other⟩ = h Σ conj(self) · other` over both halves.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        assert_eq!(self.n, other.n, "grids differ");
        let sum = self
            .neg
            .iter()
            .zip(&other.neg)
            .chain(self.pos.iter().zip(&other.pos))
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b);
        sum * self.step()
    }

    pub fn norm(&self) -> T {
        self.inner(self).re.max(T::zero()).sqrt()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        let mut out = self.clone();
        out.neg.iter_mut().for_each(|z| *z *= s);
        out.pos.iter_mut().for_each(|z| *z *= s);
        out.boundary = self.boundary.map(s, s);
        out
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        if n > T::zero() {
            self.scale(Complex::new(T::one() / n, T::zero()))
        } else {
            self.clone()
        }
    }

    /// Multiply the right half by `pos` and the left half by `neg`.
    pub fn phase_halves(&self, pos: Complex<T>, neg: Complex<T>) -> Self {
        let mut out = self.clone();
        out.pos.iter_mut().for_each(|z| *z *= pos);
        out.neg.iter_mut().for_each(|z| *z *= neg);
        out.boundary = self.boundary.map(pos, neg);
        out
    }

    /// `a·self + b·other`.
    pub fn lin_comb(&self, a: Complex<T>, other: &Self, b: Complex<T>) -> Self {
        assert_eq!(self.n, other.n, "grids differ");
        let mut out = self.clone();
        for (z, w) in out.neg.iter_mut().zip(&other.neg) {
            *z = *z * a + w * b;
        }
        for (z, w) in out.pos.iter_mut().zip(&other.pos) {
            *z = *z * a + w * b;
        }
        out.boundary = self.boundary.combine(&other.boundary, a, b);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let one = Complex::new(T::one(), T::zero());
        self.lin_comb(one, other, -one)
    }

    /// Largest pointwise modulus over samples and boundary data.
    pub fn max_abs(&self) -> T {
        let b = &self.boundary;
        self.neg
            .iter()
            .chain(&self.pos)
            .chain(b.origin.iter())
            .chain(b.origin_slope.iter())
            .chain(b.edge.iter())
            .chain(b.edge_slope.iter())
            .fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.sub(other).max_abs()
    }

    /// Relative residual of the point-interaction condition at `x = 0`.
    pub fn origin_residual(&self, u: &ComplexMatrix2<T>, l0: T) -> T {
        boundary_residual(u, l0, self.boundary.phi(), self.boundary.dphi())
    }

    /// Relative residual of `φ(l) + Lφ′(l) = 0`, `φ(−l) − Lφ′(−l) = 0`.
    pub fn edge_residual(&self, edge: &RobinCondition<T>) -> T {
        let e = edge.normalized();
        let b = &self.boundary;
        let r0 = b.edge[0] * e.a + b.edge_slope[0] * e.b;
        let r1 = b.edge[1] * e.a - b.edge_slope[1] * e.b;
        let scale = b.edge.iter().chain(b.edge_slope.iter()).fold(T::zero(), |acc, z| acc.max(z.norm()));
        let r = r0.norm().max(r1.norm());
        if scale > T::zero() {
            r / scale
        } else {
            r
        }
    }

    /// `max |−φ″ − Eφ| / ((1 + |E|) max |φ|)` with a fourth-order central
    /// stencil on the interior points of each half.
    pub fn fd_residual(&self, energy: T) -> T {
        let h2 = self.step() * self.step();
        let c = [T::lit(-1.0 / 12.0), T::lit(4.0 / 3.0), T::lit(-5.0 / 2.0), T::lit(4.0 / 3.0), T::lit(-1.0 / 12.0)];
        let mut worst = T::zero();
        let mut scale = T::zero();
        for half in [&self.neg, &self.pos] {
            for z in half.iter() {
                scale = scale.max(z.norm());
            }
            for j in 2..half.len().saturating_sub(2) {
                let mut d2 = Complex::new(T::zero(), T::zero());
                for (k, ck) in c.iter().enumerate() {
                    d2 += half[j + k - 2] * *ck;
                }
                let r = -(d2 / h2) - half[j] * energy;
                worst = worst.max(r.norm());
            }
        }
        let scale = scale * (T::one() + energy.abs());
        if scale > T::zero() {
            worst / scale
        } else {
            worst
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type W = GridWavefunction<f64>;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn grid_is_offset_and_symmetric() {
        let w = W::sample(2.0, 4, |x| (c(x), c(1.0)), |x| (c(x), c(1.0)));
        assert_eq!(w.xs_pos, vec![0.25, 0.75, 1.25, 1.75]);
        assert_eq!(w.xs_neg, vec![-1.75, -1.25, -0.75, -0.25]);
        assert!(w.is_symmetric(0.0));
    }

    #[test]
    fn midpoint_norm_of_constant() {
        let w = W::sample(1.5, 50, |_| (c(1.0), c(0.0)), |_| (c(1.0), c(0.0)));
        assert!((w.norm() - 3.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn extrapolated_boundary_data_is_exact_for_quadratics() {
        let f = |x: f64| 1.0 + 2.0 * x - 0.5 * x * x;
        let n = 10;
        let xs = half_grid(1.0, n);
        let pos: Vec<_> = xs.iter().map(|&x| c(f(x))).collect();
        let neg: Vec<_> = xs.iter().rev().map(|&x| c(f(-x))).collect();
        let w = W::from_samples(1.0, neg, pos);
        let b = w.boundary;
        assert!((b.origin[0].re - 1.0).abs() < 1e-12);
        assert!((b.origin[1].re - 1.0).abs() < 1e-12);
        assert!((b.origin_slope[0].re - 2.0).abs() < 1e-11);
        assert!((b.origin_slope[1].re - 2.0).abs() < 1e-11);
        assert!((b.edge[0].re - f(1.0)).abs() < 1e-12);
        assert!((b.edge[1].re - f(-1.0)).abs() < 1e-12);
        assert!((b.edge_slope[0].re - 1.0).abs() < 1e-11);
        assert!((b.edge_slope[1].re - 3.0).abs() < 1e-11);
    }

    #[test]
    fn fd_residual_small_for_sine() {
        let k = 2.0;
        let w = W::sample(
            std::f64::consts::PI,
            400,
            |x| (c((k * x).sin()), c(k * (k * x).cos())),
            |x| (c((k * x).sin()), c(k * (k * x).cos())),
        );
        assert!(w.fd_residual(k * k) < 1e-6);
        assert!(w.fd_residual(k * k + 0.1) > 1e-2);
    }
}
