//! Single-channel Robin problem `−u″ = E u` on `(0, l]` with
//! `a_c u(0) + b_c u′(0) = 0` and `a_e u(l) + b_e u′(l) = 0`.
//!
//! Levels are located with the Prüfer angle `θ(x) = atan2(u, u′)` of the
//! solution started at the origin. `θ(l; E)` is continuous and strictly
//! increasing in `E`, and level `n` is the unique solution of
//! `θ(l; E) = θ_e + nπ`, so every root in a window is found by index and
//! none can be skipped.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::u2core::RobinCondition;

/// `C(E, x)` and `S(E, x)` with `C(0) = 1, C′(0) = 0, S(0) = 0, S′(0) = 1`,
/// multiplied by `e^{−κx}` when `E < 0` so that nothing overflows. Returns
/// `(C, S, C′, S′)` with the same scaling.
pub(crate) fn fundamental<T: Real>(e: T, x: T) -> (T, T, T, T) {
    if e > T::zero() {
        let k = e.sqrt();
        let (s, c) = (k * x).sin_cos();
        (c, s / k, -k * s, c)
    } else if e < T::zero() {
        let kappa = (-e).sqrt();
        let q = (-T::two() * kappa * x).exp();
        let ch = (T::one() + q) * T::half();
        let sh = (T::one() - q) * T::half();
        // sinh(κx)/κ, taken from its series when κx is small
        let s = if kappa * x < T::lit(1e-4) {
            let z = kappa * x;
            x * (T::one() + z * z / T::lit(6.0)) * (-z).exp()
        } else {
            sh / kappa
        };
        (ch, s, kappa * sh, ch)
    } else {
        (T::one(), x, T::zero(), T::one())
    }
}

/// Solution satisfying the edge condition, evaluated at distance `y = l − x`
/// from the edge: `(u, u′)` with `u′ = du/dx`.
pub(crate) fn edge_solution<T: Real>(edge: &RobinCondition<T>, e: T, y: T) -> (T, T) {
    let (c, s, dc, ds) = fundamental(e, y);
    // u(l) = b_e, u′(l) = −a_e; along y the slope flips sign
    let u = edge.b * c + edge.a * s;
    let du_dy = edge.b * dc + edge.a * ds;
    (u, -du_dy)
}

/// Unscaled channel function
/// `f(E) = C(l)(a_c b_e − b_c a_e) + S(l)(a_c a_e + b_c b_e E)`; its zeros are
/// the levels of the channel.
pub fn channel_function<T: Real>(origin: &RobinCondition<T>, edge: &RobinCondition<T>, l: T, e: T) -> T {
    let (c, s) = if e > T::zero() {
        let k = e.sqrt();
        let (sn, cs) = (k * l).sin_cos();
        (cs, sn / k)
    } else if e < T::zero() {
        let kappa = (-e).sqrt();
        ((kappa * l).cosh(), (kappa * l).sinh() / kappa)
    } else {
        (T::one(), l)
    };
    c * (origin.a * edge.b - origin.b * edge.a) + s * (origin.a * edge.a + origin.b * edge.b * e)
}

fn mod_pi<T: Real>(x: T) -> T {
    let pi = T::PI();
    let r = x % pi;
    if r < T::zero() {
        r + pi
    } else if r >= pi {
        r - pi
    } else {
        r
    }
}

/// Prüfer angle `θ(l; E)` of the solution with `u(0) = b_c`, `u′(0) = −a_c`,
/// starting from `θ(0) ∈ [0, π)`.
pub fn prufer_angle<T: Real>(origin: &RobinCondition<T>, l: T, e: T) -> T {
    let (a, b) = (origin.a, origin.b);
    let pi = T::PI();
    if e > T::zero() {
        // scaled angle ψ with kφ = R sin ψ, φ′ = R cos ψ advances linearly
        let k = e.sqrt();
        let psi = mod_pi((k * b).atan2(-a)) + k * l;
        let m = (psi / pi).floor();
        let r = psi - m * pi;
        m * pi + mod_pi(r.sin().atan2(k * r.cos()))
    } else {
        let (c, s, dc, ds) = fundamental(e, l);
        let phi = b * c - a * s;
        let dphi = b * dc - a * ds;
        // S/C is increasing on (0, l], so φ = b C − a S vanishes there at most once
        let crosses = a != T::zero() && {
            let ratio = b / a;
            ratio > T::zero() && ratio * c <= s
        };
        let base = mod_pi(phi.atan2(dphi));
        if crosses {
            pi + base
        } else {
            base
        }
    }
}

/// Target angle `θ_e ∈ (0, π]` with `tan θ_e = −b_e/a_e`.
pub fn edge_angle<T: Real>(edge: &RobinCondition<T>) -> T {
    let t = mod_pi(edge.b.atan2(-edge.a));
    if t <= T::zero() {
        T::PI()
    } else {
        t
    }
}

/// One channel of the box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelProblem<T> {
    pub origin: RobinCondition<T>,
    pub edge: RobinCondition<T>,
    pub l: T,
}

impl<T: Real> ChannelProblem<T> {
    pub fn new(origin: RobinCondition<T>, edge: RobinCondition<T>, l: T) -> Self {
        Self { origin: origin.normalized(), edge: edge.normalized(), l }
    }

    /// `(θ(l; E) − θ_e)/π`; level `n` sits where this equals `n`.
    pub fn index_function(&self, e: T) -> T {
        (prufer_angle(&self.origin, self.l, e) - edge_angle(&self.edge)) / T::PI()
    }

    /// Number of levels strictly below `e`.
    pub fn count_below(&self, e: T) -> usize {
        let x = self.index_function(e).ceil();
        if x <= T::zero() {
            0
        } else {
            x.to_usize().unwrap_or(usize::MAX)
        }
    }

    /// Energy below every level of the channel.
    pub fn lower_bound(&self) -> Result<T> {
        let mut e = -T::one();
        for _ in 0..2000 {
            if self.count_below(e) == 0 {
                return Ok(e);
            }
            e *= T::two();
            if !e.is_finite() {
                break;
            }
        }
        Err(Error::InvalidArgument("channel has no lower bound below the float range".into()))
    }

    /// Energy above the first `count` levels.
    pub fn upper_bound(&self, count: usize) -> Result<T> {
        let mut e = T::one();
        for _ in 0..2000 {
            if self.count_below(e) >= count {
                return Ok(e);
            }
            e *= T::two();
            if !e.is_finite() {
                break;
            }
        }
        Err(Error::InvalidArgument(format!("could not bracket {count} levels")))
    }

    /// Level `n` inside a bracket known to contain it.
    pub fn solve_level(&self, n: usize, lo: T, hi: T, tol: T) -> Result<T> {
        let target = T::lit(n as f64);
        let g = |e: T| self.index_function(e) - target;
        refine_root(g, lo, hi, tol)
    }

    /// Every level in `[e_min, e_max]`, ascending.
    pub fn levels_in(&self, e_min: T, e_max: T, tol: T) -> Result<Vec<T>> {
        let n0 = self.count_below(e_min);
        let n1 = self.count_below(e_max);
        let mut out = Vec::with_capacity(n1.saturating_sub(n0));
        let mut lo = e_min;
        for n in n0..n1 {
            let e = self.solve_level(n, lo, e_max, tol)?;
            out.push(e);
            lo = e;
        }
        Ok(out)
    }

    /// The `count` lowest levels regardless of any window.
    pub fn lowest(&self, count: usize, tol: T) -> Result<Vec<T>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let lo = self.lower_bound()?;
        let hi = self.upper_bound(count)?;
        let mut out = Vec::with_capacity(count);
        let mut a = lo;
        for n in 0..count {
            let e = self.solve_level(n, a, hi, tol)?;
            out.push(e);
            a = e;
        }
        Ok(out)
    }
}

/// All levels of one channel in `[e_min, e_max]`.
pub fn channel_spectrum<T: Real>(
    origin: &RobinCondition<T>,
    edge: &RobinCondition<T>,
    l: T,
    window: (T, T),
    tol: T,
) -> Result<Vec<T>> {
    if !(l > T::zero()) {
        return Err(Error::InvalidBox(format!("half-length must be positive, got {l}")));
    }
    if !(window.0 < window.1) || !window.0.is_finite() || !window.1.is_finite() {
        return Err(Error::InvalidBox(format!("bad energy window [{}, {}]", window.0, window.1)));
    }
    if !(tol > T::zero()) {
        return Err(Error::InvalidBox(format!("tolerance must be positive, got {tol}")));
    }
    ChannelProblem::new(*origin, *edge, l).levels_in(window.0, window.1, tol)
}

/// The `count` lowest levels of one channel.
pub fn channel_lowest<T: Real>(
    origin: &RobinCondition<T>,
    edge: &RobinCondition<T>,
    l: T,
    count: usize,
    tol: T,
) -> Result<Vec<T>> {
    ChannelProblem::new(*origin, *edge, l).lowest(count, tol)
}

/// Root of an increasing-through-zero function on a sign-changing bracket:
/// regula falsi with the Illinois modification, interleaved with plain
/// bisection so the bracket at least halves every third step.
///
/// Stops when the bracket is narrower than `tol` (or a few ulps of the root).
pub fn refine_root<T: Real, F: Fn(T) -> T>(f: F, lo: T, hi: T, tol: T) -> Result<T> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NonConvergence { lo: lo.as_f64(), hi: hi.as_f64(), tol: tol.as_f64(), iterations: 0 });
    }
    let max_iter = 400;
    let mut side = 0i8;
    for it in 0..max_iter {
        let width = b - a;
        let floor = T::lit(8.0) * T::epsilon() * (a.abs().max(b.abs()));
        if width <= tol.max(floor) {
            return Ok(a + width * T::half());
        }
        let mut x = if it % 3 == 2 { a + width * T::half() } else { (a * fb - b * fa) / (fb - fa) };
        if !(x > a && x < b) {
            x = a + width * T::half();
        }
        let fx = f(x);
        if fx == T::zero() {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
            if side == -1 {
                fb *= T::half();
            }
            side = -1;
        } else {
            b = x;
            fb = fx;
            if side == 1 {
                fa *= T::half();
            }
            side = 1;
        }
    }
    Err(Error::NonConvergence { lo: a.as_f64(), hi: b.as_f64(), tol: tol.as_f64(), iterations: max_iter })
}
