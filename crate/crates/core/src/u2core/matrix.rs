use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense complex 2×2 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexMatrix2<T> {
    pub m: [[Complex<T>; 2]; 2],
}

/// Complex two-vector.
pub type Vector2<T> = [Complex<T>; 2];

impl<T: Real> ComplexMatrix2<T> {
    pub fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Self { m: [[a, b], [c, d]] }
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(z, z, z, z)
    }

    pub fn identity() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        let o = Complex::new(T::one(), T::zero());
        Self::new(o, z, z, o)
    }

    pub fn diag(a: Complex<T>, b: Complex<T>) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(a, z, z, b)
    }

    /// Pauli matrix σⱼ, `j ∈ {1, 2, 3}`.
    pub fn pauli(j: usize) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        let o = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        match j {
            1 => Self::new(z, o, o, z),
            2 => Self::new(z, -i, i, z),
            3 => Self::new(o, z, z, -o),
            _ => panic!("Pauli index must be 1, 2 or 3, got {j}"),
        }
    }

    /// `Σ cⱼ σⱼ` for a real three-vector.
    pub fn from_pauli_coeffs(c: [T; 3]) -> Self {
        Self::pauli(1).scale_re(c[0]) + Self::pauli(2).scale_re(c[1]) + Self::pauli(3).scale_re(c[2])
    }

    /// Real coefficients `cⱼ = ½ tr(σⱼ M)`; exact for traceless hermitian input.
    pub fn pauli_coeffs(&self) -> [T; 3] {
        let h = T::half();
        [
            ((self.m[0][1] + self.m[1][0]) * h).re,
            ((self.m[1][0] - self.m[0][1]) * h).im,
            ((self.m[0][0] - self.m[1][1]) * h).re,
        ]
    }

    /// `exp(i a σ)` for a unit axis `σ = n·σ⃗`: `cos a I + i sin a σ`.
    pub fn exp_i_axis(a: T, axis: [T; 3]) -> Self {
        let i = Complex::new(T::zero(), T::one());
        Self::identity().scale_re(a.cos()) + Self::from_pauli_coeffs(axis).scale(i * a.sin())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.m[0][0] * s, self.m[0][1] * s, self.m[1][0] * s, self.m[1][1] * s)
    }

    pub fn scale_re(&self, s: T) -> Self {
        self.scale(Complex::new(s, T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.m[0][0].conj(), self.m[1][0].conj(), self.m[0][1].conj(), self.m[1][1].conj())
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    /// Frobenius norm.
    pub fn norm(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.m.iter().flatten().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    pub fn apply(&self, v: Vector2<T>) -> Vector2<T> {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }

    /// Frobenius distance `‖M M† − I‖`.
    pub fn unitarity_residual(&self) -> T {
        (*self * self.adjoint() - Self::identity()).norm()
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_residual() <= tol
    }

    pub fn check_unitary(&self, tol: T) -> Result<()> {
        let r = self.unitarity_residual();
        if r <= tol {
            Ok(())
        } else {
            Err(Error::NotUnitary { residual: r.as_f64() })
        }
    }

    /// Inverse of a unitary matrix.
    pub fn unitary_inverse(&self) -> Self {
        self.adjoint()
    }

    /// Singular values in descending order together with the right singular
    /// vectors (columns of `W` in `M = X Σ W†`).
    pub fn svd_right(&self) -> ([T; 2], [Vector2<T>; 2]) {
        let g = self.adjoint() * *self;
        let (vals, vecs) = hermitian_eigen(&g);
        let s0 = vals[1].max(T::zero()).sqrt();
        let s1 = vals[0].max(T::zero()).sqrt();
        ([s0, s1], [vecs[1], vecs[0]])
    }

    pub fn cast<U: Real>(&self) -> ComplexMatrix2<U> {
        let c = |z: Complex<T>| Complex::new(U::lit(z.re.as_f64()), U::lit(z.im.as_f64()));
        ComplexMatrix2::new(c(self.m[0][0]), c(self.m[0][1]), c(self.m[1][0]), c(self.m[1][1]))
    }
}

/// Eigen-decomposition of a 2×2 hermitian matrix; eigenvalues ascending,
/// eigenvectors orthonormal.
pub fn hermitian_eigen<T: Real>(h: &ComplexMatrix2<T>) -> ([T; 2], [Vector2<T>; 2]) {
    let a = h.m[0][0].re;
    let d = h.m[1][1].re;
    let b = (h.m[0][1] + h.m[1][0].conj()) * T::half();
    let mean = (a + d) * T::half();
    let half_diff = (a - d) * T::half();
    let r = (half_diff * half_diff + b.norm_sqr()).sqrt();
    let vals = [mean - r, mean + r];
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    if b.norm() <= T::epsilon() * (a.abs() + d.abs() + T::one()) {
        return if a <= d { (vals, [[one, zero], [zero, one]]) } else { (vals, [[zero, one], [one, zero]]) };
    }
    // (H - λ) v = 0 with v = (b, λ - a) or (λ - d, b*)
    let vec_for = |lambda: T| -> Vector2<T> {
        let v1 = [b, Complex::new(lambda - a, T::zero())];
        let v2 = [Complex::new(lambda - d, T::zero()), b.conj()];
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
        let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
        if n1 >= n2 {
            [v1[0] / n1, v1[1] / n1]
        } else {
            [v2[0] / n2, v2[1] / n2]
        }
    };
    (vals, [vec_for(vals[0]), vec_for(vals[1])])
}

impl<T: Real> Mul for ComplexMatrix2<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let a = &self.m;
        let b = &o.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for ComplexMatrix2<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl<T: Real> Sub for ComplexMatrix2<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }
}

impl<T: Real> Neg for ComplexMatrix2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_re(-T::one())
    }
}
