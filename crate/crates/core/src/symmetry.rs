//! Parity operators `𝒫ⱼ`, general boundary conjugations `ℱ_W`, the duality
//! operators and predicates for the distinguished subfamilies.
//!
//! `ℱ_W` acts on wavefunctions by
//! `(ℱ_W ψ)(x) = W₁₁ψ(x) + W₁₂ψ(−x)` for `x > 0` and
//! `(ℱ_W ψ)(x) = W₂₁ψ(−x) + W₂₂ψ(x)` for `x < 0`,
//! which sends the boundary vectors `Φ, Φ′` to `WΦ, WΦ′`. A solution for `U`
//! therefore becomes a solution for `W U W⁻¹`. The parities are the special
//! cases `W = σⱼ`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::u2core::{canonicalize, ComplexMatrix2, PointInteraction};
use crate::wavefunction::{BoundaryData, GridWavefunction};

/// `𝒫 = Σ cⱼ 𝒫ⱼ` with a real unit vector `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParityOperator<T> {
    pub c: [T; 3],
}

impl<T: Real> ParityOperator<T> {
    /// Fails with [`Error::BadSigma`] unless `|c| = 1` within the matrix
    /// tolerance.
    pub fn new(c: [T; 3]) -> Result<Self> {
        let n2 = c[0] * c[0] + c[1] * c[1] + c[2] * c[2];
        let dev = (n2 - T::one()).abs();
        if dev > T::matrix_tol() {
            return Err(Error::BadSigma { residual: dev.as_f64() });
        }
        Ok(Self { c })
    }

    /// Rescale an arbitrary nonzero vector to unit length.
    pub fn from_direction(c: [T; 3]) -> Result<Self> {
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        if !(n > T::zero()) {
            return Err(Error::BadSigma { residual: 1.0 });
        }
        Ok(Self { c: [c[0] / n, c[1] / n, c[2] / n] })
    }

    /// `𝒫ⱼ`, `j ∈ {1, 2, 3}`.
    pub fn basis(j: usize) -> Self {
        let mut c = [T::zero(); 3];
        assert!((1..=3).contains(&j), "parity index must be 1, 2 or 3");
        c[j - 1] = T::one();
        Self { c }
    }

    /// `σ = Σ cⱼ σⱼ`.
    pub fn sigma(&self) -> ComplexMatrix2<T> {
        ComplexMatrix2::from_pauli_coeffs(self.c)
    }

    pub fn apply(&self, w: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
        parity_apply(self, w)
    }
}

/// Unitary `W` realizing `U ↦ W U W⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjugationMatrix<T> {
    pub w: ComplexMatrix2<T>,
}

impl<T: Real> ConjugationMatrix<T> {
    pub fn new(w: ComplexMatrix2<T>) -> Result<Self> {
        w.check_unitary(T::matrix_tol())?;
        Ok(Self { w })
    }

    pub fn apply(&self, f: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
        conjugation_apply(&self.w, f)
    }
}

fn map_boundary<T: Real>(w: &ComplexMatrix2<T>, b: &BoundaryData<T>) -> BoundaryData<T> {
    BoundaryData::from_vectors(w.apply(b.phi()), w.apply(b.dphi()), w.apply(b.psi()), w.apply(b.dpsi()))
}

/// `ℱ_W ψ` on a grid symmetric about the origin.
pub fn conjugation_apply<T: Real>(w: &ComplexMatrix2<T>, f: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
    let tol = T::lit(64.0) * T::epsilon() * f.l.abs().max(T::one());
    if !f.is_symmetric(tol) {
        return Err(Error::AsymmetricGrid);
    }
    let n = f.pos.len();
    let mut out = f.clone();
    for j in 0..n {
        // pos[j] sits at x_j, neg[n − 1 − j] at −x_j
        let right = f.pos[j];
        let left = f.neg[n - 1 - j];
        out.pos[j] = w.m[0][0] * right + w.m[0][1] * left;
        out.neg[n - 1 - j] = w.m[1][0] * right + w.m[1][1] * left;
    }
    out.boundary = map_boundary(w, &f.boundary);
    Ok(out)
}

/// `𝒫ψ = c₁ψ(−x) + ic₂[Θ(−x) − Θ(x)]ψ(−x) + c₃[Θ(x) − Θ(−x)]ψ(x)`.
pub fn parity_apply<T: Real>(p: &ParityOperator<T>, f: &GridWavefunction<T>) -> Result<GridWavefunction<T>> {
    conjugation_apply(&p.sigma(), f)
}

fn check_sigma<T: Real>(sigma: &ComplexMatrix2<T>) -> Result<()> {
    let sq = (*sigma * *sigma - ComplexMatrix2::identity()).norm();
    let herm = (*sigma - sigma.adjoint()).norm();
    let r = sq.max(herm);
    if r > T::matrix_tol() {
        return Err(Error::BadSigma { residual: r.as_f64() });
    }
    Ok(())
}

/// `σ U σ` for a hermitian involution `σ`.
pub fn conjugate_u<T: Real>(u: &ComplexMatrix2<T>, sigma: &ComplexMatrix2<T>) -> Result<ComplexMatrix2<T>> {
    check_sigma(sigma)?;
    Ok(*sigma * *u * *sigma)
}

/// `W U W⁻¹`.
pub fn boundary_conjugation<T: Real>(u: &ComplexMatrix2<T>, w: &ComplexMatrix2<T>) -> Result<ComplexMatrix2<T>> {
    w.check_unitary(T::matrix_tol())?;
    Ok(*w * *u * w.adjoint())
}

/// Result of [`invariant_parity`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InvariantParity<T> {
    /// The unique (up to sign) parity commuting with `H_U`; the sign is fixed
    /// by making the first nonzero component of `c` positive.
    Parity { operator: ParityOperator<T> },
    /// `U ∝ I`: every parity leaves `U` invariant.
    SelfDual,
}

/// Parity `𝒫(V)` with `σ(V) U σ(V) = U`.
pub fn invariant_parity<T: Real>(p: &PointInteraction<T>) -> InvariantParity<T> {
    if p.is_self_dual() {
        return InvariantParity::SelfDual;
    }
    let snap = T::lit(16.0) * T::epsilon();
    let mut c = p.axis();
    for x in c.iter_mut() {
        if x.abs() <= snap {
            *x = T::zero();
        }
    }
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    let first = c.iter().copied().find(|x| *x != T::zero()).unwrap_or(T::one());
    let s = if first < T::zero() { -n } else { n };
    let c = [c[0] / s, c[1] / s, c[2] / s];
    InvariantParity::Parity { operator: ParityOperator { c } }
}

/// `σ_𝒟 = V⁻¹(cos φ σ₁ + sin φ σ₂)V`, the generator of the duality operators.
pub fn duality_sigma<T: Real>(p: &PointInteraction<T>, phi: T) -> ComplexMatrix2<T> {
    let v = p.v_matrix();
    let (s, c) = phi.sin_cos();
    v.adjoint() * ComplexMatrix2::from_pauli_coeffs([c, s, T::zero()]) * v
}

/// `𝒟 = Σ c′ⱼ 𝒫ⱼ` with `σ_𝒟 = Σ c′ⱼ σⱼ`; anticommutes with the invariant parity.
pub fn duality_operator<T: Real>(p: &PointInteraction<T>, phi: T) -> ParityOperator<T> {
    ParityOperator { c: duality_sigma(p, phi).pauli_coeffs() }
}

/// Parameters of `σ_𝒟 U σ_𝒟 = V⁻¹ D(θ₋, θ₊) V`, canonicalized. The result is
/// the same for every member `φ` of the duality family, so `φ` is not an
/// argument. Applying the map twice returns `canonicalize(p)`.
pub fn duality_map<T: Real>(p: &PointInteraction<T>) -> PointInteraction<T> {
    canonicalize(&PointInteraction { theta_plus: p.theta_minus, theta_minus: p.theta_plus, ..*p })
}

/// `U ∝ I` within the matrix tolerance.
pub fn is_self_dual<T: Real>(u: &ComplexMatrix2<T>) -> Result<bool> {
    u.check_unitary(T::matrix_tol())?;
    let half_trace = u.trace() * T::half();
    let r = (*u - ComplexMatrix2::identity().scale(half_trace)).norm();
    Ok(r <= T::matrix_tol())
}

/// Scale invariance: both `det(U − I)` and `det(U + I)` vanish, that is the
/// eigenvalues are `{1, −1}`.
pub fn is_scale_invariant<T: Real>(u: &ComplexMatrix2<T>) -> Result<bool> {
    u.check_unitary(T::matrix_tol())?;
    let id = ComplexMatrix2::identity();
    let tol = T::matrix_tol();
    Ok((*u - id).det().norm() <= tol && (*u + id).det().norm() <= tol)
}

/// `‖σ U σ − U‖ < tol`.
pub fn in_invariant_subfamily<T: Real>(u: &ComplexMatrix2<T>, sigma: &ComplexMatrix2<T>) -> Result<bool> {
    u.check_unitary(T::matrix_tol())?;
    let c = conjugate_u(u, sigma)?;
    Ok((c - *u).norm() < T::matrix_tol())
}

/// Member `e^{iξ} e^{iρσ}` of the subfamily left invariant by `σ`.
pub fn invariant_subfamily_member<T: Real>(xi: T, rho: T, sigma: &ComplexMatrix2<T>) -> Result<ComplexMatrix2<T>> {
    check_sigma(sigma)?;
    let i = Complex::new(T::zero(), T::one());
    let rot = ComplexMatrix2::identity().scale_re(rho.cos()) + sigma.scale(i * rho.sin());
    Ok(rot.scale(Complex::from_polar(T::one(), xi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::u2core::mat_from_params;
    use std::f64::consts::FRAC_PI_2;

    type M = ComplexMatrix2<f64>;
    type W = GridWavefunction<f64>;
    type P = PointInteraction<f64>;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn exp_right() -> W {
        W::sample(3.0, 30, |x| (c((-x).exp()), c(-(-x).exp())), |_| (c(0.0), c(0.0)))
    }

    #[test]
    fn p1_reflects() {
        let w = exp_right();
        let r = parity_apply(&ParityOperator::basis(1), &w).unwrap();
        for (x, z) in w.xs_neg.iter().zip(&r.neg) {
            assert!((z - c(x.exp())).norm() < 1e-14);
        }
        assert!(r.pos.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn p3_on_constant() {
        let w = W::sample(1.0, 10, |_| (c(1.0), c(0.0)), |_| (c(1.0), c(0.0)));
        let r = parity_apply(&ParityOperator::basis(3), &w).unwrap();
        assert!(r.pos.iter().all(|z| *z == c(1.0)));
        assert!(r.neg.iter().all(|z| *z == c(-1.0)));
    }

    #[test]
    fn asymmetric_grid_is_rejected() {
        let mut w = exp_right();
        w.xs_neg[0] -= 0.1;
        assert_eq!(parity_apply(&ParityOperator::basis(1), &w).unwrap_err(), Error::AsymmetricGrid);
    }

    #[test]
    fn conjugated_solution_solves_conjugated_problem() {
        let p = P::new(0.8, 4.1, 1.2, 2.2);
        let u = mat_from_params(&p);
        let w = crate::lineops::scattering(&p, 1.3, crate::lineops::Side::Plus).to_grid(2.0, 20);
        let par = ParityOperator::from_direction([0.3, -0.5, 0.8]).unwrap();
        let moved = parity_apply(&par, &w).unwrap();
        let u2 = conjugate_u(&u, &par.sigma()).unwrap();
        assert!(moved.origin_residual(&u2, 1.0) < 1e-12);
    }

    #[test]
    fn conjugate_u_examples() {
        let d = M::diag(Complex::from_polar(1.0, 0.3), Complex::from_polar(1.0, 1.9));
        let s = conjugate_u(&d, &M::pauli(1)).unwrap();
        assert!((s - M::diag(d.m[1][1], d.m[0][0])).norm() < 1e-15);
        let scalar = M::identity().scale(Complex::from_polar(1.0, 0.7));
        let sig = ParityOperator::from_direction([1.0, 2.0, -0.5]).unwrap().sigma();
        assert!((conjugate_u(&scalar, &sig).unwrap() - scalar).norm() < 1e-14);
        assert!(matches!(conjugate_u(&d, &M::identity().scale_re(2.0)), Err(Error::BadSigma { .. })));
    }

    #[test]
    fn boundary_conjugation_composes() {
        let u = mat_from_params(&P::new(0.4, 2.0, 1.0, 0.3));
        assert!((boundary_conjugation(&u, &M::identity()).unwrap() - u).norm() < 1e-15);
        let w1 = mat_from_params(&P::new(1.0, 2.5, 0.4, 1.0));
        let w2 = mat_from_params(&P::new(3.0, 0.5, 2.4, 5.0));
        let both = boundary_conjugation(&u, &(w1 * w2)).unwrap();
        let seq = boundary_conjugation(&boundary_conjugation(&u, &w2).unwrap(), &w1).unwrap();
        assert!((both - seq).norm() < 1e-14);
        assert!(
            (boundary_conjugation(&u, &M::pauli(2)).unwrap() - conjugate_u(&u, &M::pauli(2)).unwrap()).norm() < 1e-15
        );
        assert!(matches!(boundary_conjugation(&u, &M::identity().scale_re(1.5)), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn invariant_parity_examples() {
        let p = crate::u2core::params_from_mat(&M::pauli(3), 1.0).unwrap();
        assert_eq!(invariant_parity(&p), InvariantParity::Parity { operator: ParityOperator { c: [0.0, 0.0, 1.0] } });
        match invariant_parity(&P::new(2.0, 1.0, FRAC_PI_2, 0.0)) {
            InvariantParity::Parity { operator } => {
                assert!((operator.c[0] - 1.0).abs() < 1e-15 && operator.c[1] == 0.0 && operator.c[2] == 0.0)
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(invariant_parity(&P::self_dual(1.0)), InvariantParity::SelfDual);
    }

    #[test]
    fn invariant_parity_commutes_with_u() {
        let p = P::new(4.0, 1.0, 2.1, 5.0);
        let u = mat_from_params(&p);
        if let InvariantParity::Parity { operator } = invariant_parity(&p) {
            assert!(in_invariant_subfamily(&u, &operator.sigma()).unwrap());
        } else {
            panic!();
        }
    }

    #[test]
    fn duality_swaps_eigenphases() {
        let p = P::new(4.0, 1.0, 2.1, 5.0);
        let u = mat_from_params(&p);
        let q = duality_map(&p);
        for phi in [0.0, 1.0, 4.0] {
            let s = duality_sigma(&p, phi);
            assert!((mat_from_params(&q) - conjugate_u(&u, &s).unwrap()).norm() < 1e-13);
        }
        let back = duality_map(&q);
        assert!((mat_from_params(&back) - u).norm() < 1e-13);
        assert_eq!(duality_map(&P::self_dual(2.0)), P::self_dual(2.0));
    }

    #[test]
    fn predicates() {
        let s3 = M::pauli(3);
        assert!(is_scale_invariant(&s3).unwrap());
        assert!(is_scale_invariant(&M::pauli(1)).unwrap());
        assert!(!is_self_dual(&s3).unwrap());
        let e = M::identity().scale(Complex::from_polar(1.0, 0.4));
        assert!(is_self_dual(&e).unwrap());
        assert!(!is_scale_invariant(&e).unwrap());
        for j in 1..=3 {
            assert!(in_invariant_subfamily(&e, &M::pauli(j)).unwrap());
        }
        let diag = M::diag(Complex::from_polar(1.0, 0.2), Complex::from_polar(1.0, 2.0));
        assert!(in_invariant_subfamily(&diag, &s3).unwrap());
        assert!(!in_invariant_subfamily(&diag, &M::pauli(1)).unwrap());
        let m = invariant_subfamily_member(0.3, 1.1, &M::pauli(1)).unwrap();
        assert!(in_invariant_subfamily(&m, &M::pauli(1)).unwrap());
        assert!(matches!(is_self_dual(&M::identity().scale_re(2.0)), Err(Error::NotUnitary { .. })));
    }
}
