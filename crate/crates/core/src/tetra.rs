//! The tetrablock `E`: membership oracles, boundary classification,
//! beta coordinates, kernel automorphisms and orbit normalization.
//!
//! `E` is the set of `(x1, x2, x3)` for which the kernel
//! `K_x(z, w) = 1 − x1 z − x2 w + x3 z w` has no zero on the closed bidisc.
//! Four equivalent membership characterizations are implemented as mutually
//! checking oracles; they agree outside a thin band around the boundary.

use core::f64::consts::PI;

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;

use crate::mobius::DiscAutomorphism;
use crate::scalar::{op_norm, Matrix2};
use crate::search::golden_max;
use crate::{Error, Result};

/// Candidate point of the tetrablock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetraPoint {
    pub x1: Complex,
    pub x2: Complex,
    pub x3: Complex,
}

/// The coordinates of a point on the beta foliation,
/// `x1 = β1 + β̄2 x3`, `x2 = β2 + β̄1 x3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPair {
    pub beta1: Complex,
    pub beta2: Complex,
}

/// Classification of a point relative to `E` under a tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TetraClass {
    Interior,
    /// Topological boundary away from the distinguished part.
    Boundary,
    /// Distinguished (Shilov) boundary: `x1 = x̄2 x3`, `|x3| = 1`.
    Distinguished,
    Exterior,
}

/// The four equivalent membership tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipMethod {
    /// Closed-form inequality `|x1 − x̄2 x3| + |x1 x2 − x3| < 1 − |x2|²`.
    Inequality,
    /// `sup_{|z|<1} |Ψ(z, x)| < 1` for the fractional map
    /// `Ψ = (x3 z − x1)/(x2 z − 1)`, maximized on the circle.
    CircleSup,
    /// A symmetric 2×2 matrix with diagonal `(x1, x2)` and determinant `x3`
    /// has operator norm `< 1`.
    MatrixNorm,
    /// `|β1| + |β2| < 1` in the beta chart (requires `|x3| < 1`).
    BetaSum,
}

/// Signed margins of the four membership tests; positive means member.
///
/// `beta_sum` is `None` when `|x3| >= 1`, where the beta chart is undefined
/// and the point is certainly not a member.
#[derive(Debug, Clone, Copy)]
pub struct MembershipMargins {
    pub inequality: f64,
    pub circle_sup: f64,
    pub matrix_norm: f64,
    pub beta_sum: Option<f64>,
}

/// The fractional-linear symbol `Ψ(z, x) = (x3 z − x1)/(x2 z − 1)`.
pub fn psi(z: Complex, x: &TetraPoint) -> Result<Complex> {
    let den = x.x2 * z - 1.0;
    if den.norm() <= 1e-14 {
        return Err(Error::Pole);
    }
    Ok((x.x3 * z - x.x1) / den)
}

impl TetraPoint {
    pub fn new(x1: Complex, x2: Complex, x3: Complex) -> Self {
        TetraPoint { x1, x2, x3 }
    }

    pub fn origin() -> Self {
        TetraPoint::new(Complex::ZERO, Complex::ZERO, Complex::ZERO)
    }

    pub fn is_finite(&self) -> bool {
        [self.x1, self.x2, self.x3].iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Swap the first two coordinates; the kernel is symmetric under this.
    pub fn flip(&self) -> Self {
        TetraPoint::new(self.x2, self.x1, self.x3)
    }

    /// `K_x(z, w) = 1 − x1 z − x2 w + x3 z w`.
    pub fn kernel(&self, z: Complex, w: Complex) -> Complex {
        1.0 - self.x1 * z - self.x2 * w + self.x3 * z * w
    }

    /// Beta coordinates, defined for `|x3| < 1 − 1e−12`.
    pub fn beta_coords(&self) -> Result<BetaPair> {
        if self.x3.norm() >= 1.0 - 1e-12 {
            return Err(Error::Degenerate);
        }
        Ok(self.beta_unchecked())
    }

    fn beta_unchecked(&self) -> BetaPair {
        let den = 1.0 - self.x3.norm_sqr();
        BetaPair {
            beta1: (self.x1 - self.x2.conj() * self.x3) / den,
            beta2: (self.x2 - self.x1.conj() * self.x3) / den,
        }
    }

    /// Signed margin of the closed-form inequality; positive iff member.
    pub fn inequality_margin(&self) -> f64 {
        let t1 = (self.x1 - self.x2.conj() * self.x3).norm();
        let t2 = (self.x1 * self.x2 - self.x3).norm();
        1.0 - self.x2.norm_sqr() - t1 - t2
    }

    /// Membership by the requested method. All methods are total.
    pub fn member(&self, method: MembershipMethod) -> bool {
        match method {
            MembershipMethod::Inequality => self.inequality_margin() > 0.0,
            MembershipMethod::CircleSup => self.circle_sup_margin() > 0.0,
            MembershipMethod::MatrixNorm => self.matrix_norm_margin() > 0.0,
            MembershipMethod::BetaSum => self.beta_sum_margin().map_or(false, |m| m > 0.0),
        }
    }

    /// Reference membership test (closed-form inequality).
    pub fn is_member(&self) -> bool {
        self.member(MembershipMethod::Inequality)
    }

    /// All four margins at once.
    pub fn membership_margins(&self) -> MembershipMargins {
        MembershipMargins {
            inequality: self.inequality_margin(),
            circle_sup: self.circle_sup_margin(),
            matrix_norm: self.matrix_norm_margin(),
            beta_sum: self.beta_sum_margin(),
        }
    }

    fn circle_sup_margin(&self) -> f64 {
        let triangular = (self.x1 * self.x2 - self.x3).norm() <= 1e-14;
        if triangular {
            // Ψ is the constant x1; the side condition additionally
            // requires |x2| < 1.
            let sup = self.x1.norm().max(if self.x2.norm() < 1.0 { 0.0 } else { 2.0 });
            return 1.0 - sup;
        }
        if self.x2.norm() >= 1.0 {
            // Non-removable pole of Ψ inside or on the closed disc: the
            // supremum over the open disc is infinite.
            return -1.0;
        }
        1.0 - sup_abs_psi_circle(self)
    }

    fn matrix_norm_margin(&self) -> f64 {
        let s = (self.x1 * self.x2 - self.x3).sqrt();
        let m = Matrix2::new(self.x1, s, s, self.x2);
        1.0 - op_norm(&m)
    }

    fn beta_sum_margin(&self) -> Option<f64> {
        if self.x3.norm() >= 1.0 {
            return None;
        }
        let b = self.beta_unchecked();
        Some(1.0 - b.beta1.norm() - b.beta2.norm())
    }

    /// Classify relative to `E` with tolerance band `eps`.
    pub fn classify(&self, eps: f64) -> TetraClass {
        if self.inequality_margin() > eps {
            return TetraClass::Interior;
        }
        let distinguished = (self.x1 - self.x2.conj() * self.x3).norm() <= eps
            && (self.x3.norm() - 1.0).abs() <= eps
            && self.x2.norm() <= 1.0 + eps;
        if distinguished {
            return TetraClass::Distinguished;
        }
        let bounded = self.x1.norm() <= 1.0 + eps
            && self.x2.norm() <= 1.0 + eps
            && self.x3.norm() <= 1.0 + eps;
        if bounded && self.boundary_defect().abs() <= eps {
            return TetraClass::Boundary;
        }
        TetraClass::Exterior
    }

    /// Value of `1 − |x1|² − |x2|² + |x3|² − 2|x1 x2 − x3|`, which vanishes
    /// exactly on the topological boundary of `E` (within the unit polydisc).
    pub fn boundary_defect(&self) -> f64 {
        1.0 - self.x1.norm_sqr() - self.x2.norm_sqr() + self.x3.norm_sqr()
            - 2.0 * (self.x1 * self.x2 - self.x3).norm()
    }

    /// Image under the automorphism of `E` obtained by substituting
    /// `z ↦ m1(z)`, `w ↦ m2(w)` into the kernel and renormalizing, followed
    /// by the coordinate flip when requested.
    pub fn kernel_transform(
        &self,
        m1: &DiscAutomorphism,
        m2: &DiscAutomorphism,
        flip: bool,
    ) -> Result<TetraPoint> {
        let c = kernel_coefficients(self, m1, m2);
        let out = c.point()?;
        Ok(if flip { out.flip() } else { out })
    }

    /// The unique `r ∈ [0, 1)` with `(0, 0, r)` in the automorphism orbit of
    /// an interior point, computed by alternating "kill `x1`, flip" kernel
    /// steps until both leading coordinates vanish.
    pub fn orbit_radius(&self) -> Result<f64> {
        self.orbit_radius_bounded(ORBIT_TOL, ORBIT_MAX_ITERS).map(|(r, _)| r)
    }

    /// As [`orbit_radius`](Self::orbit_radius) with an explicit tolerance and
    /// iteration cap; also reports the number of steps taken.
    pub fn orbit_radius_bounded(&self, tol: f64, max_iters: usize) -> Result<(f64, usize)> {
        if !self.is_member() {
            return Err(Error::NotInDomain);
        }
        let mut x = *self;
        for steps in 0..max_iters {
            if x.x1.norm().max(x.x2.norm()) <= tol {
                return Ok((x.x3.norm(), steps));
            }
            x = x.orbit_step()?;
        }
        Err(Error::NonConvergence)
    }

    /// One normalization step: send `x1` to zero, then flip.
    pub(crate) fn orbit_step(&self) -> Result<TetraPoint> {
        let kill = DiscAutomorphism::new_unchecked(Complex::new(1.0, 0.0), -self.x1.conj());
        self.kernel_transform(&kill, &DiscAutomorphism::identity(), true)
    }
}

pub(crate) const ORBIT_MAX_ITERS: usize = 100_000;
pub(crate) const ORBIT_TOL: f64 = 1e-12;

/// Bilinear coefficients of the substituted kernel
/// `K_x(m1(z), m2(w))·(1 − ᾱ1 z)(1 − ᾱ2 w) = n00 − n10 z − n01 w + n11 z w`.
pub(crate) struct KernelCoefficients {
    pub n00: Complex,
    pub n10: Complex,
    pub n01: Complex,
    pub n11: Complex,
}

impl KernelCoefficients {
    pub fn point(&self) -> Result<TetraPoint> {
        if self.n00.norm() <= 1e-14 {
            return Err(Error::Degenerate);
        }
        Ok(TetraPoint::new(self.n10 / self.n00, self.n01 / self.n00, self.n11 / self.n00))
    }
}

pub(crate) fn kernel_coefficients(
    x: &TetraPoint,
    m1: &DiscAutomorphism,
    m2: &DiscAutomorphism,
) -> KernelCoefficients {
    let (e1, a1) = (m1.eta(), m1.alpha());
    let (e2, a2) = (m2.eta(), m2.alpha());
    KernelCoefficients {
        n00: 1.0 + e1 * a1 * x.x1 + e2 * a2 * x.x2 + e1 * e2 * a1 * a2 * x.x3,
        n10: a1.conj() + e1 * x.x1 + a1.conj() * e2 * a2 * x.x2 + e1 * e2 * a2 * x.x3,
        n01: a2.conj() + e2 * x.x2 + a2.conj() * e1 * a1 * x.x1 + e1 * e2 * a1 * x.x3,
        n11: a1.conj() * a2.conj() + e1 * a2.conj() * x.x1 + e2 * a1.conj() * x.x2 + e1 * e2 * x.x3,
    }
}

/// `sup_{|z|=1} |Ψ(z, x)|` by a 400-point grid plus golden-section
/// refinement of the best arcs.
///
/// `|Ψ|²` restricted to the circle is a ratio of two sinusoids in `θ` and
/// has at most one interior maximum arc, so refining around the top grid
/// points is exhaustive. Assumes `|x2| < 1` (no pole on the circle).
fn sup_abs_psi_circle(x: &TetraPoint) -> f64 {
    const GRID: usize = 400;
    let value = |theta: f64| -> f64 {
        let z = Complex::from_polar(1.0, theta);
        let num = (x.x3 * z - x.x1).norm_sqr();
        let den = (x.x2 * z - 1.0).norm_sqr();
        num / den
    };
    let step = 2.0 * PI / GRID as f64;
    let mut samples = [0.0f64; GRID];
    for (k, s) in samples.iter_mut().enumerate() {
        *s = value(k as f64 * step);
    }
    // Refine around the three best local maxima of the grid.
    let mut best_arcs: [(f64, usize); 3] = [(-1.0, 0); 3];
    for k in 0..GRID {
        let prev = samples[(k + GRID - 1) % GRID];
        let next = samples[(k + 1) % GRID];
        if samples[k] >= prev && samples[k] >= next {
            let worst = best_arcs
                .iter()
                .enumerate()
                .min_by(|a, b| a.1 .0.total_cmp(&b.1 .0))
                .map(|(i, _)| i)
                .unwrap();
            if samples[k] > best_arcs[worst].0 {
                best_arcs[worst] = (samples[k], k);
            }
        }
    }
    let mut sup = 0.0f64;
    for (score, k) in best_arcs {
        if score < 0.0 {
            continue;
        }
        let center = k as f64 * step;
        let (_, v) = golden_max(value, center - step, center + step, 70);
        sup = sup.max(v);
    }
    sup.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn p(x1: f64, x2: f64, x3: f64) -> TetraPoint {
        TetraPoint::new(c(x1, 0.0), c(x2, 0.0), c(x3, 0.0))
    }

    const ALL_METHODS: [MembershipMethod; 4] = [
        MembershipMethod::Inequality,
        MembershipMethod::CircleSup,
        MembershipMethod::MatrixNorm,
        MembershipMethod::BetaSum,
    ];

    #[test]
    fn psi_at_zero_returns_x1() {
        let x = TetraPoint::new(c(0.2, 0.1), c(-0.1, 0.3), c(0.05, -0.02));
        assert!((psi(Complex::ZERO, &x).unwrap() - x.x1).norm() < 1e-15);
    }

    #[test]
    fn psi_on_axis_point_is_linear() {
        let x = p(0.0, 0.0, 0.4);
        let z = c(0.3, 0.2);
        assert!((psi(z, &x).unwrap() + x.x3 * z).norm() < 1e-15);
    }

    #[test]
    fn interior_point_has_circle_sup_below_one() {
        let x = p(0.2, 0.1, 0.05);
        assert!(x.member(MembershipMethod::CircleSup));
        for k in 0..100 {
            let z = Complex::from_polar(1.0, 2.0 * PI * k as f64 / 100.0);
            assert!(psi(z, &x).unwrap().norm() < 1.0);
        }
    }

    #[test]
    fn beta_of_axis_points() {
        let b = p(0.0, 0.0, 0.6).beta_coords().unwrap();
        assert!(b.beta1.norm() < 1e-15 && b.beta2.norm() < 1e-15);
        let b = TetraPoint::new(c(0.3, 0.2), Complex::ZERO, Complex::ZERO).beta_coords().unwrap();
        assert!((b.beta1 - c(0.3, 0.2)).norm() < 1e-15);
        assert!(b.beta2.norm() < 1e-15);
    }

    #[test]
    fn beta_reconstruction_identities() {
        let x = TetraPoint::new(c(0.2, -0.1), c(0.15, 0.25), c(-0.3, 0.1));
        assert!(x.is_member());
        let b = x.beta_coords().unwrap();
        let r1 = b.beta1 + b.beta2.conj() * x.x3;
        let r2 = b.beta2 + b.beta1.conj() * x.x3;
        assert!((r1 - x.x1).norm() < 1e-12);
        assert!((r2 - x.x2).norm() < 1e-12);
    }

    #[test]
    fn beta_rejects_large_x3() {
        assert_eq!(p(0.0, 0.0, 1.0).beta_coords(), Err(Error::Degenerate));
    }

    #[test]
    fn membership_examples_under_all_methods() {
        for m in ALL_METHODS {
            assert!(TetraPoint::origin().member(m), "{m:?} at origin");
            for r in [0.0, 0.3, 0.7, 0.95] {
                assert!(p(0.0, 0.0, r).member(m), "{m:?} at (0,0,{r})");
            }
            assert!(!p(1.0, 1.0, 1.0).member(m), "{m:?} at (1,1,1)");
        }
        // (0, r, 1−r) sits exactly on the boundary: every method margin
        // vanishes (the boolean may land on either side of zero).
        for r in [0.25, 0.5, 0.75] {
            let margins = p(0.0, r, 1.0 - r).membership_margins();
            assert!(margins.inequality.abs() < 1e-12);
            assert!(margins.circle_sup.abs() < 1e-9);
            assert!(margins.matrix_norm.abs() < 1e-12);
            assert!(margins.beta_sum.unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn matrix_norm_is_square_root_branch_independent() {
        let x = TetraPoint::new(c(0.4, 0.2), c(-0.3, 0.1), c(0.2, -0.5));
        let s = (x.x1 * x.x2 - x.x3).sqrt();
        let a = Matrix2::new(x.x1, s, s, x.x2);
        let b = Matrix2::new(x.x1, -s, -s, x.x2);
        assert!((op_norm(&a) - op_norm(&b)).abs() < 1e-12);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(p(0.1, 0.1, 0.05).classify(1e-9), TetraClass::Interior);
        assert_eq!(p(0.0, 0.5, 0.5).classify(1e-9), TetraClass::Boundary);
        assert_eq!(p(0.3, 0.3, 1.0).classify(1e-9), TetraClass::Distinguished);
        assert_eq!(p(1.5, 0.0, 0.0).classify(1e-9), TetraClass::Exterior);
    }

    #[test]
    fn kernel_transform_identity_fixes_points() {
        let x = TetraPoint::new(c(0.2, 0.1), c(-0.1, 0.3), c(0.05, -0.02));
        let id = DiscAutomorphism::identity();
        let y = x.kernel_transform(&id, &id, false).unwrap();
        assert!((y.x1 - x.x1).norm() < 1e-15);
        assert!((y.x2 - x.x2).norm() < 1e-15);
        assert!((y.x3 - x.x3).norm() < 1e-15);
    }

    #[test]
    fn kernel_transform_kill_first_coordinate() {
        let x = TetraPoint::new(c(0.3, -0.2), c(0.1, 0.15), c(-0.05, 0.1));
        let m1 = DiscAutomorphism::new(c(1.0, 0.0), -x.x1.conj()).unwrap();
        let y = x.kernel_transform(&m1, &DiscAutomorphism::identity(), false).unwrap();
        let den = 1.0 - x.x1.norm_sqr();
        assert!(y.x1.norm() < 1e-15);
        assert!((y.x2 - (x.x2 - x.x1.conj() * x.x3) / den).norm() < 1e-14);
        assert!((y.x3 - (x.x3 - x.x1 * x.x2) / den).norm() < 1e-14);
    }

    #[test]
    fn flip_preserves_membership() {
        let x = TetraPoint::new(c(0.2, 0.1), c(-0.3, 0.05), c(0.1, 0.1));
        assert!(x.is_member());
        let id = DiscAutomorphism::identity();
        let y = x.kernel_transform(&id, &id, true).unwrap();
        assert_eq!(y, x.flip());
        assert!(y.is_member());
    }

    #[test]
    fn orbit_radius_of_normal_forms() {
        for r in [0.0, 0.2, 0.55, 0.9] {
            assert!((p(0.0, 0.0, r).orbit_radius().unwrap() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn orbit_radius_of_single_coordinate_point_is_zero() {
        let x = TetraPoint::new(c(0.6, 0.3), Complex::ZERO, Complex::ZERO);
        assert!(x.orbit_radius().unwrap() < 1e-12);
    }

    #[test]
    fn orbit_radius_rejects_exterior() {
        assert_eq!(p(1.5, 0.0, 0.0).orbit_radius(), Err(Error::NotInDomain));
    }

    #[test]
    fn triangular_variety_is_invariant() {
        let x = TetraPoint::new(c(0.3, 0.1), c(0.2, -0.4), c(0.3, 0.1) * c(0.2, -0.4));
        let m1 = DiscAutomorphism::new(Complex::from_polar(1.0, 0.8), c(0.25, -0.1)).unwrap();
        let m2 = DiscAutomorphism::new(Complex::from_polar(1.0, -1.4), c(-0.15, 0.3)).unwrap();
        let y = x.kernel_transform(&m1, &m2, false).unwrap();
        assert!((y.x3 - y.x1 * y.x2).norm() < 1e-10);
    }
}
