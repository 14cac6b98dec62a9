//! Secular determinants of the two-sided box problem.
//!
//! At energy `E` both halves carry a multiple of the same edge solution `u`,
//! `φ(x) = α u(x)` for `x > 0` and `φ(x) = β u(−x)` for `x < 0`, so
//! `Φ = (α, β) u(0)` and `Φ′ = (α, β) u′(0)`. The interaction condition then
//! becomes a 2×2 linear system for `(α, β)`.

use num_complex::Complex;

use super::channel::{edge_solution, refine_root};
use super::BoxConfig;
use crate::error::Result;
use crate::scalar::Real;
use crate::u2core::{ComplexMatrix2, PointInteraction};

/// `(u(0), u′(0))` of the edge solution, scaled by `e^{−κl}` below zero.
pub(crate) fn origin_data<T: Real>(bx: &BoxConfig<T>, e: T) -> (T, T) {
    edge_solution(&bx.edge.normalized(), e, bx.l)
}

/// `M(E) = diag(a)·V·diag(u₊(0₊), u₋(0₋)) + diag(b)·V·diag(u₊′(0₊), −u₋′(0₋))`
/// built from the channel Robin data `(a±, b±)` and the diagonalizing `V`.
///
/// Uses unscaled edge solutions, so it grows like `e^{2κl}` below zero.
pub fn secular_matrix<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>, e: T) -> ComplexMatrix2<T> {
    let (u0, du0) = unscaled_origin_data(bx, e);
    let [rp, rm] = p.channel_conditions();
    let v = p.v_matrix();
    let a = ComplexMatrix2::diag(Complex::new(rp.a, T::zero()), Complex::new(rm.a, T::zero()));
    let b = ComplexMatrix2::diag(Complex::new(rp.b, T::zero()), Complex::new(rm.b, T::zero()));
    let vals = ComplexMatrix2::diag(Complex::new(u0, T::zero()), Complex::new(u0, T::zero()));
    let slopes = ComplexMatrix2::diag(Complex::new(du0, T::zero()), Complex::new(du0, T::zero()));
    a * v * vals + b * v * slopes
}

fn unscaled_origin_data<T: Real>(bx: &BoxConfig<T>, e: T) -> (T, T) {
    let (u0, du0) = origin_data(bx, e);
    if e < T::zero() {
        let g = ((-e).sqrt() * bx.l).exp();
        (u0 * g, du0 * g)
    } else {
        (u0, du0)
    }
}

/// `det M(E)`; vanishes exactly at the box levels.
pub fn secular_det<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>, e: T) -> Complex<T> {
    secular_matrix(p, bx, e).det()
}

/// `M_U(E) = u(0)(U − I) + iL₀ u′(0)(U + I)`, the interaction condition written
/// directly in terms of `U` without diagonalizing it. Scaled by `e^{−κl}`
/// below zero.
pub fn secular_matrix_u<T: Real>(u: &ComplexMatrix2<T>, l0: T, bx: &BoxConfig<T>, e: T) -> ComplexMatrix2<T> {
    let (u0, du0) = origin_data(bx, e);
    let id = ComplexMatrix2::identity();
    (*u - id).scale_re(u0) + (*u + id).scale(Complex::new(T::zero(), l0 * du0))
}

/// `det M_U(E)`.
pub fn secular_det_u<T: Real>(u: &ComplexMatrix2<T>, l0: T, bx: &BoxConfig<T>, e: T) -> Complex<T> {
    secular_matrix_u(u, l0, bx, e).det()
}

/// Real form of `det M_U` divided by `√det U` and by `u(0)² + L₀²u′(0)²`.
/// Bounded by 4 in magnitude.
fn reduced_det<T: Real>(u: &ComplexMatrix2<T>, root_det: Complex<T>, l0: T, bx: &BoxConfig<T>, e: T) -> T {
    let (u0, du0) = origin_data(bx, e);
    let d = secular_det_u(u, l0, bx, e) / root_det;
    d.re / (u0 * u0 + l0 * l0 * du0 * du0)
}

/// Scan points: geometric in `κ` below zero, `E = 0`, then steps of
/// `π/(64 l)` in `k` above zero.
fn scan_grid<T: Real>(bx: &BoxConfig<T>) -> Vec<T> {
    let mut grid = Vec::new();
    let l = bx.l;
    if bx.e_min < T::zero() {
        let kappa_max = (-bx.e_min).sqrt();
        let kappa_min = (T::lit(1e-3) / l).min(kappa_max);
        let ratio = T::lit(1.02);
        let mut kappa = kappa_max;
        while kappa > kappa_min {
            grid.push(-kappa * kappa);
            kappa /= ratio;
        }
    }
    if bx.e_min <= T::zero() && bx.e_max >= T::zero() {
        grid.push(T::zero());
    }
    let k_start = if bx.e_min > T::zero() { bx.e_min.sqrt() } else { T::zero() };
    let k_end = if bx.e_max > T::zero() { bx.e_max.sqrt() } else { T::zero() };
    let dk = T::PI() / (T::lit(64.0) * l);
    let mut j = 1usize;
    loop {
        let k = k_start + dk * T::lit(j as f64);
        if k >= k_end {
            break;
        }
        grid.push(k * k);
        j += 1;
    }
    if bx.e_min > T::zero() || grid.first() != Some(&bx.e_min) {
        grid.insert(0, bx.e_min);
    }
    if bx.e_max > *grid.last().unwrap() {
        grid.push(bx.e_max);
    }
    grid
}

/// Minimizer of `f` on `[a, b]` by golden-section search.
fn golden_min<T: Real, F: Fn(T) -> T>(f: F, mut a: T, mut b: T) -> (T, T) {
    let g = T::lit(0.618_033_988_749_894_9);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if (b - a) <= T::lit(4.0) * T::epsilon() * (a.abs() + b.abs() + T::one()) {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Box levels in the configured window found from `det M_U` alone, with
/// double roots listed twice.
///
/// Sign changes on the scan grid are refined by bracketing. A local minimum
/// of `|det|` without a sign change is followed down to its extremum: a
/// crossing there yields two roots, a touching zero a double root.
pub fn secular_roots<T: Real>(u: &ComplexMatrix2<T>, l0: T, bx: &BoxConfig<T>) -> Result<Vec<T>> {
    bx.validate()?;
    u.check_unitary(T::matrix_tol())?;
    let root_det = u.det().sqrt();
    let f = |e: T| reduced_det(u, root_det, l0, bx, e);
    let grid = scan_grid(bx);
    let vals: Vec<T> = grid.iter().map(|&e| f(e)).collect();
    let tol = bx.tol;
    let touch = T::lit(1e3) * T::epsilon();
    let mut roots = Vec::new();
    for j in 0..grid.len() - 1 {
        let (fa, fb) = (vals[j], vals[j + 1]);
        if fa == T::zero() {
            roots.push(grid[j]);
            continue;
        }
        if fa.signum() != fb.signum() && fb != T::zero() {
            roots.push(refine_root(f, grid[j], grid[j + 1], tol)?);
        }
    }
    if let Some(&last) = vals.last() {
        if last == T::zero() {
            roots.push(*grid.last().unwrap());
        }
    }
    for j in 1..grid.len() - 1 {
        let (fa, fm, fb) = (vals[j - 1], vals[j], vals[j + 1]);
        let same = fa.signum() == fm.signum() && fm.signum() == fb.signum();
        if !same || fm == T::zero() || !(fm.abs() < fa.abs() && fm.abs() <= fb.abs()) {
            continue;
        }
        let s = fm.signum();
        let (x, fx) = golden_min(|e| s * f(e), grid[j - 1], grid[j + 1]);
        if fx < T::zero() {
            roots.push(refine_root(f, grid[j - 1], x, tol)?);
            roots.push(refine_root(f, x, grid[j + 1], tol)?);
        } else if fx <= touch {
            // double root: locate the zero of the derivative
            let h = T::lit(1e-6) * (T::one() + x.abs());
            let d = |e: T| s * (f(e + h) - f(e - h));
            let (a, b) = (grid[j - 1] + h, grid[j + 1] - h);
            let e = if d(a) < T::zero() && d(b) > T::zero() { refine_root(d, a, b, tol)? } else { x };
            roots.push(e);
            roots.push(e);
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

/// Secular roots of a parametrized interaction.
pub fn secular_roots_of<T: Real>(p: &PointInteraction<T>, bx: &BoxConfig<T>) -> Result<Vec<T>> {
    secular_roots(&crate::u2core::mat_from_params(p), p.l0, bx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxspec::{box_spectrum, BoxConfig};
    use crate::u2core::{mat_from_params, RobinCondition};
    use std::f64::consts::PI;

    type P = PointInteraction<f64>;

    fn small_box() -> BoxConfig<f64> {
        BoxConfig { e_max: 60.0, e_min: -50.0, ..BoxConfig::default() }
    }

    #[test]
    fn v_form_factorizes_into_channel_functions() {
        let p = P::new(2.0, 0.7, 1.1, 0.4);
        let bx = small_box();
        let [rp, rm] = p.channel_conditions();
        let edge = bx.edge;
        for &e in &[-3.0, 0.0, 0.5, 7.3] {
            let d = secular_det(&p, &bx, e);
            let fp = super::super::channel::channel_function(&rp, &edge, bx.l, e);
            let fm = super::super::channel::channel_function(&rm, &edge, bx.l, e);
            assert!((d - Complex::new(fp * fm, 0.0)).norm() < 1e-10 * (1.0 + (fp * fm).abs()), "{e}");
        }
    }

    #[test]
    fn u_form_matches_v_form_up_to_phase() {
        let p = P::new(2.0, 0.7, 1.1, 0.4);
        let bx = small_box();
        let u = mat_from_params(&p);
        for &e in &[0.5, 7.3, 20.0] {
            let dv = secular_det(&p, &bx, e);
            let du = secular_det_u(&u, 1.0, &bx, e);
            let expect = dv * Complex::from_polar(-4.0, p.xi());
            assert!((du - expect).norm() < 1e-10 * (1.0 + du.norm()), "{e}: {du} vs {expect}");
        }
    }

    #[test]
    fn secular_roots_match_channel_union() {
        let bx = small_box();
        for p in [P::new(2.0, 0.7, 1.1, 0.4), P::new(5.9, 3.3, 2.5, 4.0), P::new(PI, 0.0, 0.0, 0.0)] {
            let roots = secular_roots_of(&p, &bx).unwrap();
            let spec: Vec<f64> = box_spectrum(&p, &bx).unwrap().energies();
            assert_eq!(roots.len(), spec.len(), "{p:?}: {roots:?} vs {spec:?}");
            for (a, b) in roots.iter().zip(&spec) {
                assert!((a - b).abs() < 1e-8, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn self_dual_double_roots_are_found() {
        let bx = BoxConfig::<f64> { e_max: 30.0, ..BoxConfig::default() };
        let u = ComplexMatrix2::identity().scale_re(-1.0);
        let roots = secular_roots(&u, 1.0, &bx).unwrap();
        let expect = [1.0, 1.0, 4.0, 4.0, 9.0, 9.0, 16.0, 16.0, 25.0, 25.0];
        assert_eq!(roots.len(), expect.len(), "{roots:?}");
        for (a, b) in roots.iter().zip(&expect) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn determinant_vanishes_only_at_levels() {
        let p = P::new(1.3, 4.4, 0.8, 2.0);
        let bx = BoxConfig { e_max: 60.0, edge: RobinCondition::from_length(0.5), ..BoxConfig::default() };
        let levels = box_spectrum(&p, &bx).unwrap().energies();
        for e in &levels {
            let d = secular_det(&p, &bx, *e).norm();
            assert!(d < 1e-8, "{e}: {d}");
        }
        for w in levels.windows(2) {
            let mid = 0.5 * (w[0] + w[1]);
            assert!(secular_det(&p, &bx, mid).norm() > 1e-3, "{mid}");
        }
    }
}
