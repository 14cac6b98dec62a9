//! Closed paths in parameter space: level continuation around a cycle and the
//! geometric phase of a band as a discrete Wilson loop.

use std::fmt::Write as _;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::boxspec::{box_lowest_tagged, channel_lowest, eigenfunction, BoxConfig};
use crate::error::{Error, Result};
use crate::scalar::{wrap_signed, Real};
use crate::u2core::{mat_from_params, PointInteraction};
use crate::wavefunction::GridWavefunction;

/// Largest allowed Frobenius distance between `U` at adjacent nodes.
pub const MAX_STEP: f64 = 0.5;

/// Tolerance for `U(first) = U(last)`.
pub const CLOSURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CycleKind {
    /// Only the eigenphases move.
    Torus,
    /// Eigenphases fixed, the point moves on the isospectral sphere.
    Sphere,
    Mixed,
}

/// Discretized closed path; the last node repeats the first in `U(2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct ParameterCycle<T> {
    pub nodes: Vec<PointInteraction<T>>,
    pub kind: CycleKind,
}

impl<T: Real> ParameterCycle<T> {
    /// Checks closure and the step bound, and that a sphere cycle keeps its
    /// eigenphases.
    pub fn new(nodes: Vec<PointInteraction<T>>, kind: CycleKind) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidArgument("a cycle needs at least two nodes".into()));
        }
        let first = mat_from_params(&nodes[0]);
        let last = mat_from_params(nodes.last().unwrap());
        let residual = (first - last).norm();
        if residual > T::lit(CLOSURE_TOL) {
            return Err(Error::OpenCycle { residual: residual.as_f64() });
        }
        for (k, w) in nodes.windows(2).enumerate() {
            let d = (mat_from_params(&w[0]) - mat_from_params(&w[1])).norm();
            if d > T::lit(MAX_STEP) {
                return Err(Error::InvalidArgument(format!("step {k} moves U by {d}, more than {MAX_STEP}")));
            }
        }
        if kind == CycleKind::Sphere {
            let (tp, tm) = (nodes[0].theta_plus, nodes[0].theta_minus);
            if nodes.iter().any(|n| n.theta_plus != tp || n.theta_minus != tm) {
                return Err(Error::InvalidArgument("sphere cycle must keep theta_plus and theta_minus fixed".into()));
            }
        }
        Ok(Self { nodes, kind })
    }

    /// `θ₊: 0 → 2π` at fixed `(θ₋, μ, ν)`.
    pub fn theta_plus_loop(theta_minus: T, mu: T, nu: T, steps: usize) -> Result<Self> {
        let nodes = (0..=steps)
            .map(|k| {
                let t = T::TAU() * T::lit(k as f64) / T::lit(steps as f64);
                PointInteraction::new(t, theta_minus, mu, nu)
            })
            .collect();
        Self::new(nodes, CycleKind::Torus)
    }

    /// `ν: 0 → 2π` at fixed `(θ₊, θ₋, μ₀)`, enclosing the cap around the north
    /// pole counterclockwise.
    pub fn nu_circle(theta_plus: T, theta_minus: T, mu0: T, steps: usize) -> Result<Self> {
        let nodes = (0..=steps)
            .map(|k| {
                let nu = T::TAU() * T::lit(k as f64) / T::lit(steps as f64);
                PointInteraction::new(theta_plus, theta_minus, mu0, nu)
            })
            .collect();
        Self::new(nodes, CycleKind::Sphere)
    }

    /// Sphere cycle through the given `(μ, ν)` points; the first is repeated
    /// at the end.
    pub fn sphere_polygon(theta_plus: T, theta_minus: T, points: &[(T, T)]) -> Result<Self> {
        let mut nodes: Vec<_> =
            points.iter().map(|&(mu, nu)| PointInteraction::new(theta_plus, theta_minus, mu, nu)).collect();
        if let Some(&f) = nodes.first() {
            nodes.push(f);
        }
        Self::new(nodes, CycleKind::Sphere)
    }

    /// Constant cycle.
    pub fn point(p: PointInteraction<T>, steps: usize) -> Result<Self> {
        Self::new(vec![p; steps.max(1) + 1], CycleKind::Sphere)
    }

    pub fn reversed(&self) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        Self { nodes, kind: self.kind }
    }

    pub fn steps(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Every second node, keeping the closure. Needs an even step count.
    pub fn halved(&self) -> Result<Self> {
        if !self.steps().is_multiple_of(2) || self.steps() < 2 {
            return Err(Error::InvalidArgument("halving needs an even number of steps".into()));
        }
        Ok(Self { nodes: self.nodes.iter().step_by(2).copied().collect(), kind: self.kind })
    }
}

/// Per-channel continuation around a cycle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelTracking<T> {
    pub n_levels: usize,
    /// `[+, −]`: the lowest `n_levels` channel energies at every node.
    pub curves: [Vec<Vec<T>>; 2],
    /// `[+, −]`: index offset chosen at every step (level `i` continues as
    /// level `i + offset`).
    pub offsets: [Vec<i64>; 2],
    /// `[+, −]`: accumulated offset around the whole cycle.
    pub shift: [i64; 2],
}

impl<T: Real> LevelTracking<T> {
    /// Where level `i` of a channel ends up after one traversal; `None` if it
    /// left through the bottom of the spectrum.
    pub fn permutation(&self, channel: usize) -> Vec<Option<usize>> {
        (0..self.n_levels)
            .map(|i| {
                let j = i as i64 + self.shift[channel];
                if j >= 0 {
                    Some(j as usize)
                } else {
                    None
                }
            })
            .collect()
    }

    /// `step,channel,level_index,energy`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("step,channel,level_index,energy\n");
        for (c, name) in ["plus", "minus"].iter().enumerate() {
            for (step, levels) in self.curves[c].iter().enumerate() {
                for (k, e) in levels.iter().enumerate() {
                    let _ = writeln!(s, "{step},{name},{k},{e:.16e}");
                }
            }
        }
        s
    }
}

/// Follow the levels of each channel around the cycle.
///
/// Inside one channel levels never cross, so continuation preserves order and
/// only the index offset between adjacent nodes has to be decided: `0`, or
/// `∓1` when the lowest level leaves to or arrives from `−∞`. The offset is
/// chosen by comparing all levels above the lowest one, which move slowly even
/// when the lowest diverges. A best match worse than half the local gap is
/// reported as [`Error::TrackingAmbiguity`].
pub fn track_levels<T: Real>(c: &ParameterCycle<T>, bx: &BoxConfig<T>, n_levels: usize) -> Result<LevelTracking<T>> {
    bx.validate()?;
    if n_levels == 0 {
        return Err(Error::InvalidArgument("need at least one level to track".into()));
    }
    let k = n_levels + 3;
    let mut full: [Vec<Vec<T>>; 2] = [Vec::new(), Vec::new()];
    for node in &c.nodes {
        let [rp, rm] = node.channel_conditions();
        full[0].push(channel_lowest(&rp, &bx.edge, bx.l, k, bx.tol)?);
        full[1].push(channel_lowest(&rm, &bx.edge, bx.l, k, bx.tol)?);
    }
    let mut offsets: [Vec<i64>; 2] = [Vec::new(), Vec::new()];
    let mut shift = [0i64; 2];
    for ch in 0..2 {
        for step in 0..c.steps() {
            let (a, b) = (&full[ch][step], &full[ch][step + 1]);
            let s = match_offset(a, b, step)?;
            offsets[ch].push(s);
            shift[ch] += s;
        }
    }
    let curves = [
        full[0].iter().map(|v| v[..n_levels].to_vec()).collect(),
        full[1].iter().map(|v| v[..n_levels].to_vec()).collect(),
    ];
    Ok(LevelTracking { n_levels, curves, offsets, shift })
}

fn match_offset<T: Real>(a: &[T], b: &[T], step: usize) -> Result<i64> {
    let k = a.len() as i64;
    let mismatch = |s: i64| {
        let mut worst = T::zero();
        for i in 1..k {
            let j = i + s;
            if j >= 1 && j < k {
                worst = worst.max((a[i as usize] - b[j as usize]).abs());
            }
        }
        worst
    };
    let mut best = (0i64, T::infinity());
    for s in [0i64, -1, 1] {
        let m = mismatch(s);
        if m < best.1 {
            best = (s, m);
        }
    }
    let gap = b[1..].windows(2).map(|w| w[1] - w[0]).fold(T::infinity(), |g, d| g.min(d));
    if !(best.1 < gap * T::half()) {
        return Err(Error::TrackingAmbiguity { step, mismatch: best.1.as_f64(), gap: gap.as_f64() });
    }
    Ok(best.0)
}

/// Phase report of [`berry_phase`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BerryPhase<T> {
    /// In `(−π, π]`.
    pub phase: T,
    /// `|φ(N) − φ(N/2)|/3`, the Richardson estimate for a second-order error.
    pub estimated_error: T,
    /// Enclosed solid angle for sphere cycles.
    pub solid_angle: Option<T>,
    pub steps: usize,
}

/// Multiple of the merge tolerance a band must keep from its neighbours.
pub const DEGENERACY_MARGIN: f64 = 10.0;

/// `−arg Π ⟨f_i, f_{i+1}⟩` with `f_N = f_0`.
fn wilson_loop<T: Real>(c: &ParameterCycle<T>, band: usize, bx: &BoxConfig<T>, n: usize) -> Result<T> {
    let margin = T::lit(DEGENERACY_MARGIN) * bx.merge_tol();
    let mut states: Vec<GridWavefunction<T>> = Vec::with_capacity(c.steps());
    for (step, node) in c.nodes[..c.steps()].iter().enumerate() {
        let levels = box_lowest_tagged(node, bx, band + 2)?;
        let e = levels[band].0;
        let mut gap = (levels[band + 1].0 - e).abs();
        if band > 0 {
            gap = gap.min((e - levels[band - 1].0).abs());
        }
        if gap <= margin {
            return Err(Error::DegeneracyOnPath { step, gap: gap.as_f64() });
        }
        let mut fs = eigenfunction(node, bx, e, n)?;
        if fs.len() != 1 {
            return Err(Error::DegeneracyOnPath { step, gap: 0.0 });
        }
        states.push(fs.remove(0));
    }
    let mut prod = Complex::new(T::one(), T::zero());
    let m = states.len();
    for i in 0..m {
        let next = (i + 1) % m;
        let o = states[i].inner(&states[next]);
        if o.norm() < T::half() {
            return Err(Error::OverlapCollapse { step: i, next, overlap: o.norm().as_f64() });
        }
        prod *= o / o.norm();
    }
    Ok(wrap_signed(-prod.arg()))
}

/// Geometric phase of box level `band` (0-based, counted with multiplicity)
/// around the cycle, with eigenfunctions on `n` points per half.
pub fn berry_phase<T: Real>(c: &ParameterCycle<T>, band: usize, bx: &BoxConfig<T>, n: usize) -> Result<BerryPhase<T>> {
    bx.validate()?;
    let phase = wilson_loop(c, band, bx, n)?;
    let estimated_error = match c.halved() {
        Ok(h) if h.steps() >= 2 => wrap_signed(phase - wilson_loop(&h, band, bx, n)?).abs() / T::lit(3.0),
        _ => T::zero(),
    };
    let solid_angle = if c.kind == CycleKind::Sphere { Some(solid_angle(c)?) } else { None };
    Ok(BerryPhase { phase, estimated_error, solid_angle, steps: c.steps() })
}

/// Signed spherical area enclosed by the path of `(sin μ cos ν, sin μ sin ν,
/// cos μ)`, as a sum of triangles with the north pole (counterclockwise seen
/// from outside is positive).
pub fn solid_angle<T: Real>(c: &ParameterCycle<T>) -> Result<T> {
    if c.kind != CycleKind::Sphere {
        return Err(Error::WrongCycleKind { expected: "sphere" });
    }
    let pole = [T::zero(), T::zero(), T::one()];
    let dot = |a: [T; 3], b: [T; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross =
        |a: [T; 3], b: [T; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    let mut total = T::zero();
    for w in c.nodes.windows(2) {
        let (a, b) = (w[0].axis(), w[1].axis());
        let num = dot(pole, cross(a, b));
        let den = T::one() + dot(pole, a) + dot(a, b) + dot(b, pole);
        total += T::two() * num.atan2(den);
    }
    Ok(total)
}
