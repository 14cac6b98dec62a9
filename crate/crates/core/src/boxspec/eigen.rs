use num_complex::Complex;

use super::channel::edge_solution;
use super::secular::{origin_data, secular_matrix_u};
use super::BoxConfig;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::u2core::{mat_from_params, ComplexMatrix2, PointInteraction, Vector2};
use crate::wavefunction::GridWavefunction;

/// Normalized singular values of `M_U(E)` above this count as nonzero.
pub const NULL_THRESHOLD: f64 = 1e-6;

/// Null vectors `(α, β)` of `M_U(E)` and the relative singular values.
pub fn null_amplitudes<T: Real>(u: &ComplexMatrix2<T>, l0: T, bx: &BoxConfig<T>, e: T) -> (Vec<Vector2<T>>, [T; 2]) {
    let m = secular_matrix_u(u, l0, bx, e);
    let (u0, du0) = origin_data(bx, e);
    // ‖U ± I‖ ≤ 2
    let scale = T::two() * (u0.abs() + l0 * du0.abs());
    let (s, w) = m.svd_right();
    let rel = [s[0] / scale, s[1] / scale];
    let thr = T::lit(NULL_THRESHOLD);
    let mut out = Vec::new();
    if rel[1] <= thr {
        out.push(w[1]);
        if rel[0] <= thr {
            out.push(w[0]);
        }
    }
    (out, rel)
}

/// Eigenfunction(s) at the level `E`, sampled on `n` cell-centred points per
/// half and normalized to unit grid norm. A doubly degenerate level yields an
/// orthonormal pair.
pub fn eigenfunction<T: Real>(
    p: &PointInteraction<T>,
    bx: &BoxConfig<T>,
    e: T,
    n: usize,
) -> Result<Vec<GridWavefunction<T>>> {
    eigenfunction_u(&mat_from_params(p), p.l0, bx, e, n)
}

/// As [`eigenfunction`] for a raw unitary matrix.
pub fn eigenfunction_u<T: Real>(
    u: &ComplexMatrix2<T>,
    l0: T,
    bx: &BoxConfig<T>,
    e: T,
    n: usize,
) -> Result<Vec<GridWavefunction<T>>> {
    bx.validate()?;
    let (amps, rel) = null_amplitudes(u, l0, bx, e);
    if amps.is_empty() {
        return Err(Error::NotAnEigenvalue { energy: e.as_f64(), residual: rel[1].as_f64() });
    }
    let edge = bx.edge.normalized();
    let l = bx.l;
    // edge_solution carries e^{−κ(l−x)}; bring every point to the common e^{−κl}
    let kappa = if e < T::zero() { (-e).sqrt() } else { T::zero() };
    let profile = |x: T| {
        let (v, d) = edge_solution(&edge, e, l - x);
        let g = (-kappa * x).exp();
        (Complex::new(v * g, T::zero()), Complex::new(d * g, T::zero()))
    };
    Ok(amps
        .iter()
        .map(|ab| {
            let (alpha, beta) = (ab[0], ab[1]);
            let w = GridWavefunction::sample(
                l,
                n,
                |x| {
                    let (v, d) = profile(x);
                    (v * alpha, d * alpha)
                },
                |x| {
                    // u(−x) on the left, so d/dx picks up a sign
                    let (v, d) = profile(-x);
                    (v * beta, -d * beta)
                },
            );
            w.normalized()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxspec::box_spectrum;
    use std::f64::consts::PI;

    type P = PointInteraction<f64>;

    #[test]
    fn dirichlet_level_is_a_sine() {
        let p = P::new(PI, 0.0, 0.0, 0.0);
        let bx = BoxConfig::default();
        let fs = eigenfunction(&p, &bx, 4.0, 200).unwrap();
        assert_eq!(fs.len(), 1);
        let f = &fs[0];
        // + channel with μ = 0 lives on x > 0: sin 2x normalized on (0, π)
        let norm = (2.0 / PI).sqrt();
        let phase = f.pos[10] / Complex::new(norm * (2.0 * f.xs_pos[10]).sin(), 0.0);
        for (x, z) in f.xs_pos.iter().zip(&f.pos) {
            let want = phase * norm * (2.0 * x).sin();
            assert!((z - want).norm() < 1e-3, "{x}");
        }
        assert!(f.neg.iter().all(|z| z.norm() < 1e-12));
        let u = mat_from_params(&p);
        assert!(f.origin_residual(&u, 1.0) < 1e-8);
    }

    #[test]
    fn self_dual_pair_is_orthonormal() {
        let p = P::self_dual(2.0);
        let bx = BoxConfig { e_max: 30.0, ..BoxConfig::default() };
        let spec = box_spectrum(&p, &bx).unwrap();
        let lvl = spec.levels[1];
        assert_eq!(lvl.multiplicity, 2);
        let fs = eigenfunction(&p, &bx, lvl.energy, 300).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs[0].inner(&fs[1]).norm() < 1e-8);
        assert!((fs[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenfunctions_satisfy_all_conditions() {
        let p = P::new(4.0, 1.0, 1.2, 2.8);
        let bx =
            BoxConfig { e_max: 60.0, edge: crate::u2core::RobinCondition::from_length(0.7), ..BoxConfig::default() };
        let u = mat_from_params(&p);
        for lvl in box_spectrum(&p, &bx).unwrap().levels {
            for f in eigenfunction(&p, &bx, lvl.energy, 400).unwrap() {
                assert!(f.origin_residual(&u, 1.0) < 1e-8);
                assert!(f.edge_residual(&bx.edge) < 1e-8);
                assert!(f.fd_residual(lvl.energy) < 1e-6, "{}: {}", lvl.energy, f.fd_residual(lvl.energy));
            }
        }
    }

    #[test]
    fn non_level_is_rejected() {
        let p = P::new(4.0, 1.0, 1.2, 2.8);
        let err = eigenfunction(&p, &BoxConfig::default(), 3.3, 100).unwrap_err();
        assert!(matches!(err, Error::NotAnEigenvalue { .. }));
    }

    #[test]
    fn separated_level_lives_on_one_half() {
        let p = P::new(2.5, 1.0, 0.0, 0.0);
        let bx = BoxConfig { e_max: 20.0, ..BoxConfig::default() };
        for lvl in box_spectrum(&p, &bx).unwrap().levels {
            let f = &eigenfunction(&p, &bx, lvl.energy, 100).unwrap()[0];
            let left: f64 = f.neg.iter().map(|z| z.norm()).fold(0.0, f64::max);
            let right: f64 = f.pos.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(left.min(right) < 1e-10, "{}: {left} {right}", lvl.energy);
        }
    }
}
