//! Brute-force check: second-order finite differences for `−d²/dx²` on both
//! halves, coupled at the origin through ghost points that impose the
//! interaction condition and closed at `±l` by the edge condition.
//!
//! Unknowns sit at `±(j + ½)h`, left half first (ascending) then right half.
//! In that ordering the two points next to the origin are neighbours, so the
//! whole operator is a hermitian tridiagonal matrix and its eigenvalues are
//! counted with a Sturm sequence.

use super::{merge_levels, BoxConfig, LevelChannel, Spectrum};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::u2core::{ComplexMatrix2, PointInteraction};
use num_complex::Complex;

/// Real symmetric tridiagonal matrix given by its diagonal and the moduli of
/// its off-diagonal (a hermitian tridiagonal matrix is unitarily similar to
/// one with `|offdiag|`).
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> Tridiagonal<T> {
    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: T) -> usize {
        let tiny = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = T::one();
        for i in 0..self.diag.len() {
            let off2 = if i == 0 { T::zero() } else { self.off[i - 1] * self.off[i - 1] };
            q = self.diag[i] - x - if i == 0 { T::zero() } else { off2 / q };
            if q == T::zero() {
                q = -tiny;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval.
    pub fn bounds(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let r =
                (if i > 0 { self.off[i - 1] } else { T::zero() }) + (if i + 1 < n { self.off[i] } else { T::zero() });
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Eigenvalue `k` (0-based, ascending) by bisection.
    pub fn eigenvalue(&self, k: usize) -> T {
        let (mut lo, mut hi) = self.bounds();
        let scale = lo.abs().max(hi.abs()).max(T::one());
        for _ in 0..300 {
            if hi - lo <= T::lit(4.0) * T::epsilon() * scale {
                break;
            }
            let mid = lo + (hi - lo) * T::half();
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        lo + (hi - lo) * T::half()
    }
}

/// Ghost-point factor `g = t·w` for the condition `a φ + b ∂φ = 0` on the
/// face between ghost `g` and first unknown `w`, with `φ ≈ (g + w)/2` and
/// `∂φ ≈ (w − g)/h` the derivative pointing into the domain.
fn ghost_factor<T: Real>(a: T, b: T, h: T) -> Result<T> {
    let den = a * T::half() - b / h;
    if den.abs() <= T::lit(1e-12) * (a.abs() + b.abs() / h) {
        return Err(Error::InvalidArgument(format!(
            "finite-difference ghost point is singular (Robin length equals h/2 = {})",
            h * T::half()
        )));
    }
    Ok(-(a * T::half() + b / h) / den)
}

/// Assemble the discretized operator.
pub fn fd_matrix<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>, n: usize) -> Result<Tridiagonal<T>> {
    if n < 64 {
        return Err(Error::InvalidArgument(format!("finite-difference oracle needs n >= 64, got {n}")));
    }
    bx.validate()?;
    let h = bx.l / T::lit(n as f64);
    let h2 = h * h;
    let two = T::two();

    // origin: Φ ≈ (G + W)/2, Φ′ ≈ (W − G)/h, and channel by channel
    // a (VΦ) + b (VΦ′) = 0 gives G = V† diag(t) V W
    let [rp, rm] = p.channel_conditions();
    let tp = ghost_factor(rp.a, rp.b, h)?;
    let tm = ghost_factor(rm.a, rm.b, h)?;
    let v = p.v_matrix();
    let t = v.adjoint() * ComplexMatrix2::diag(Complex::new(tp, T::zero()), Complex::new(tm, T::zero())) * v;

    // edge: φ(±l) ± Lφ′(±l) = 0, where the inward derivative is ∓φ′(±l)
    let edge = bx.edge.normalized();
    let te = ghost_factor(edge.a, -edge.b, h)?;

    let size = 2 * n;
    let mut diag = vec![two / h2; size];
    let mut off = vec![T::one() / h2; size - 1];
    diag[0] = (two - te) / h2;
    diag[size - 1] = (two - te) / h2;
    // left neighbour of the origin is index n − 1, right neighbour is n
    diag[n - 1] = (two - t.m[1][1].re) / h2;
    diag[n] = (two - t.m[0][0].re) / h2;
    off[n - 1] = t.m[0][1].norm() / h2;
    Ok(Tridiagonal { diag, off })
}

/// The `count` lowest eigenvalues of the discretized operator.
pub fn fd_lowest<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>, n: usize, count: usize) -> Result<Vec<T>> {
    let m = fd_matrix(p, bx, n)?;
    Ok((0..count.min(2 * n)).map(|k| m.eigenvalue(k)).collect())
}

/// Finite-difference spectrum in the configured window, merged like
/// [`super::box_spectrum`]. Channel tags are not resolved.
pub fn fd_oracle<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>, n: usize) -> Result<Spectrum<T>> {
    let m = fd_matrix(p, bx, n)?;
    let k0 = m.count_below(bx.e_min);
    let k1 = m.count_below(bx.e_max);
    let tagged = (k0..k1).map(|k| (m.eigenvalue(k), LevelChannel::Unlabelled)).collect();
    Ok(merge_levels(tagged, bx.merge_tol()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxspec::box_lowest;
    use crate::u2core::RobinCondition;
    use std::f64::consts::PI;

    type P = PointInteraction<f64>;

    #[test]
    fn sturm_count_on_known_matrix() {
        // 1D Dirichlet Laplacian eigenvalues 2 − 2cos(jπ/(n+1))
        let n = 10;
        let m = Tridiagonal { diag: vec![2.0; n], off: vec![1.0f64; n - 1] };
        for j in 0..n {
            let want = 2.0 - 2.0 * ((j + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((m.eigenvalue(j) - want).abs() < 1e-13);
        }
    }

    #[test]
    fn dirichlet_ground_state() {
        let p = P::new(PI, PI, 0.0, 0.0);
        let e = fd_lowest(&p, &BoxConfig::default(), 2000, 1).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-5, "{}", e[0]);
    }

    #[test]
    fn self_dual_pairs() {
        let p = P::self_dual(1.3);
        let s = fd_oracle(&p, &BoxConfig { e_max: 50.0, ..BoxConfig::default() }, 400).unwrap();
        assert!(s.levels.iter().all(|l| l.multiplicity == 2));
    }

    #[test]
    fn second_order_convergence() {
        let p = P::new(4.2, 1.3, 0.9, 2.0);
        let bx = BoxConfig { edge: RobinCondition::from_length(0.4), ..BoxConfig::default() };
        let exact = box_lowest(&p, &bx, 6).unwrap();
        let err = |n| {
            let fd = fd_lowest(&p, &bx, n, 6).unwrap();
            fd.iter().zip(&exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        };
        let (e1, e2) = (err(250), err(500));
        let order = (e1 / e2).log2();
        assert!((order - 2.0).abs() < 0.2, "order {order} ({e1}, {e2})");
    }
}
