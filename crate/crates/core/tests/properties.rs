use std::f64::consts::{PI, TAU};

use num_complex::Complex;
use proptest::prelude::*;

use u2point::boxspec::{box_lowest, secular_det};
use u2point::symmetry::ConjugationMatrix;
use u2point::{
    boundary_conjugation, canonicalize, duality_map, mat_from_params, params_from_mat, parity_apply, scattering,
    BoxConfig, ComplexMatrix2, GridWavefunction, Interaction, ParityOperator, Side,
};

fn interaction() -> impl Strategy<Value = Interaction> {
    (0.0..TAU, 0.0..TAU, -1.0f64..1.0, 0.0..TAU).prop_map(|(tp, tm, cm, nu)| Interaction::new(tp, tm, cm.acos(), nu))
}

fn unit_vector() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..1.0, 0.0..TAU).prop_map(|(z, phi)| {
        let s = (1.0 - z * z).sqrt();
        [s * phi.cos(), s * phi.sin(), z]
    })
}

fn grid() -> impl Strategy<Value = GridWavefunction<f64>> {
    (prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 32), prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 32))
        .prop_map(|(a, b)| {
            let c = |v: Vec<(f64, f64)>| v.into_iter().map(|(x, y)| Complex::new(x, y)).collect();
            GridWavefunction::from_samples(1.0, c(a), c(b))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parameters_round_trip(p in interaction()) {
        let u = mat_from_params(&p);
        prop_assert!(u.unitarity_residual() < 1e-13);
        let q = params_from_mat(&u, 1.0).unwrap();
        prop_assert!((mat_from_params(&q) - u).norm() < 1e-10);
        let c = canonicalize(&p);
        prop_assert!((mat_from_params(&c) - u).norm() < 1e-10);
        prop_assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn scattering_is_unitary_on_both_sides(p in interaction(), k in 0.01f64..80.0) {
        for side in [Side::Plus, Side::Minus] {
            let s = scattering(&p, k, side);
            prop_assert!((s.reflection_prob() + s.transmission_prob() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn duality_preserves_the_spectrum(p in interaction()) {
        let bx = BoxConfig::default();
        let a = box_lowest(&p, &bx, 8).unwrap();
        let b = box_lowest(&duality_map(&p), &bx, 8).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-9);
        }
        let twice = duality_map(&duality_map(&p));
        prop_assert!((mat_from_params(&twice) - mat_from_params(&p)).norm() < 1e-10);
    }

    #[test]
    fn secular_determinant_vanishes_at_levels(p in interaction()) {
        let bx = BoxConfig::default();
        for e in box_lowest(&p, &bx, 6).unwrap() {
            // relative to the size of the entries at this energy
            let grow = if e < 0.0 { ((-e).sqrt() * bx.l).cosh() } else { 1.0 };
            let scale = (1.0 + e.abs()) * grow * grow;
            prop_assert!(secular_det(&p, &bx, e).norm() / scale < 1e-7, "E = {}", e);
        }
    }

    #[test]
    fn parities_are_involutions(c in unit_vector(), f in grid()) {
        let p = ParityOperator::new(c).unwrap();
        let twice = parity_apply(&p, &parity_apply(&p, &f).unwrap()).unwrap();
        prop_assert!(twice.max_abs_diff(&f) < 1e-12);
        let pf = parity_apply(&p, &f).unwrap();
        prop_assert!((pf.norm() - f.norm()).abs() < 1e-12);
    }

    #[test]
    fn conjugations_compose(a in unit_vector(), x in 0.0..PI, b in unit_vector(), y in 0.0..PI, p in interaction(), f in grid()) {
        let w1 = ComplexMatrix2::exp_i_axis(x, a);
        let w2 = ComplexMatrix2::exp_i_axis(y, b);
        let u = mat_from_params(&p);
        let seq = boundary_conjugation(&boundary_conjugation(&u, &w2).unwrap(), &w1).unwrap();
        let once = boundary_conjugation(&u, &(w1 * w2)).unwrap();
        prop_assert!((seq - once).norm() < 1e-12);
        let g1 = ConjugationMatrix::new(w1).unwrap();
        let g2 = ConjugationMatrix::new(w2).unwrap();
        let g12 = ConjugationMatrix::new(w1 * w2).unwrap();
        let lhs = g1.apply(&g2.apply(&f).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&g12.apply(&f).unwrap()) < 1e-12);
    }

    #[test]
    fn single_precision_follows_double(p in interaction()) {
        let bx = BoxConfig::default();
        let bx32 = BoxConfig::<f32>::default();
        let a = box_lowest(&p, &bx, 4).unwrap();
        let b = box_lowest(&p.cast::<f32>(), &bx32, 4).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - *y as f64).abs() < 1e-3 * (1.0 + x.abs()), "{} vs {}", x, y);
        }
    }
}
