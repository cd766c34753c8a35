//! 2×2 complex matrices with closed-form spectral quantities.
//!
//! Everything here is exact-arithmetic-plus-one-square-root: the operator
//! norm comes from the trace/determinant quadratic of `M*M` and the spectral
//! radius from the characteristic quadratic, so no iterative linear algebra
//! is involved.

use core::ops::Mul;

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;

/// A 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2 {
    pub a11: Complex,
    pub a12: Complex,
    pub a21: Complex,
    pub a22: Complex,
}

impl Matrix2 {
    pub fn new(a11: Complex, a12: Complex, a21: Complex, a22: Complex) -> Self {
        Matrix2 { a11, a12, a21, a22 }
    }

    pub fn identity() -> Self {
        Matrix2::new(Complex::new(1.0, 0.0), Complex::ZERO, Complex::ZERO, Complex::new(1.0, 0.0))
    }

    pub fn zero() -> Self {
        Matrix2::new(Complex::ZERO, Complex::ZERO, Complex::ZERO, Complex::ZERO)
    }

    pub fn diagonal(d1: Complex, d2: Complex) -> Self {
        Matrix2::new(d1, Complex::ZERO, Complex::ZERO, d2)
    }

    pub fn scalar(alpha: Complex) -> Self {
        Matrix2::diagonal(alpha, alpha)
    }

    pub fn trace(&self) -> Complex {
        self.a11 + self.a22
    }

    pub fn det(&self) -> Complex {
        self.a11 * self.a22 - self.a12 * self.a21
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Matrix2::new(self.a11.conj(), self.a21.conj(), self.a12.conj(), self.a22.conj())
    }

    pub fn is_finite(&self) -> bool {
        [self.a11, self.a12, self.a21, self.a22]
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Eigenvalues from the characteristic quadratic `λ² − tr λ + det`.
    pub fn eigenvalues(&self) -> (Complex, Complex) {
        let t = self.trace();
        let d = self.det();
        let disc = (t * t - 4.0 * d).sqrt();
        ((t + disc) / 2.0, (t - disc) / 2.0)
    }

    /// Row-major entry list, handy for serialization.
    pub fn entries(&self) -> [Complex; 4] {
        [self.a11, self.a12, self.a21, self.a22]
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a11 * rhs.a11 + self.a12 * rhs.a21,
            self.a11 * rhs.a12 + self.a12 * rhs.a22,
            self.a21 * rhs.a11 + self.a22 * rhs.a21,
            self.a21 * rhs.a12 + self.a22 * rhs.a22,
        )
    }
}

/// Largest singular value.
///
/// `M*M` is Hermitian positive semidefinite with trace `Σ|m_ij|²` and
/// determinant `|det M|²`; its top eigenvalue solves the quadratic in closed
/// form. The discriminant is clamped at zero to absorb rounding.
pub fn op_norm(m: &Matrix2) -> f64 {
    let t = m.a11.norm_sqr() + m.a12.norm_sqr() + m.a21.norm_sqr() + m.a22.norm_sqr();
    let d = m.det().norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0);
    (0.5 * (t + disc.sqrt())).sqrt()
}

/// Smallest singular value, by the same quadratic.
pub fn min_singular(m: &Matrix2) -> f64 {
    let t = m.a11.norm_sqr() + m.a12.norm_sqr() + m.a21.norm_sqr() + m.a22.norm_sqr();
    let d = m.det().norm_sqr();
    let disc = (t * t - 4.0 * d).max(0.0);
    (0.5 * (t - disc.sqrt())).max(0.0).sqrt()
}

/// Maximum eigenvalue modulus.
pub fn spectral_radius(m: &Matrix2) -> f64 {
    let (l1, l2) = m.eigenvalues();
    l1.norm().max(l2.norm())
}

/// Top singular triple `(σ, u, v)` with `M v = σ u`, `|u| = |v| = 1`.
///
/// Returns `None` for the zero matrix. Used to build minimal-norm witnesses
/// for the unstructured μ.
pub fn top_singular_triple(m: &Matrix2) -> Option<(f64, [Complex; 2], [Complex; 2])> {
    let sigma = op_norm(m);
    if sigma <= 1e-300 {
        return None;
    }
    // v is a unit eigenvector of the Hermitian M*M for its top eigenvalue.
    let h = m.adjoint() * *m;
    let lambda = sigma * sigma;
    let v = hermitian_eigenvector(&h, lambda);
    let mv = apply(m, &v);
    let norm_mv = (mv[0].norm_sqr() + mv[1].norm_sqr()).sqrt();
    let u = if norm_mv > 1e-300 {
        [mv[0] / norm_mv, mv[1] / norm_mv]
    } else {
        return None;
    };
    Some((sigma, u, v))
}

fn apply(m: &Matrix2, v: &[Complex; 2]) -> [Complex; 2] {
    [m.a11 * v[0] + m.a12 * v[1], m.a21 * v[0] + m.a22 * v[1]]
}

/// Unit eigenvector of a Hermitian 2×2 matrix for the given eigenvalue.
fn hermitian_eigenvector(h: &Matrix2, lambda: f64) -> [Complex; 2] {
    // (H − λ) v = 0: pick the larger of the two row-derived candidates.
    let r1 = [h.a11 - lambda, h.a12];
    let r2 = [h.a21, h.a22 - lambda];
    let c1 = [-r1[1], r1[0]]; // orthogonal to row 1
    let c2 = [-r2[1], r2[0]];
    let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
    let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
    let (c, n) = if n1 >= n2 { (c1, n1) } else { (c2, n2) };
    if n <= 1e-300 {
        // H is a multiple of the identity; any unit vector works.
        return [Complex::new(1.0, 0.0), Complex::ZERO];
    }
    let s = n.sqrt();
    [c[0] / s, c[1] / s]
}
