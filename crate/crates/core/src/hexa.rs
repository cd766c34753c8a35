//! The hexablock `H`, the Hartogs domain over the tetrablock cut out by
//! `|a|² < e^{−u(x)}`.
//!
//! The fiber function `u` is computed two independent ways: in closed form
//! through the extremal point of the defining fractional family, and by a
//! brute-force supremum over a polar product grid with a radial schedule
//! accumulating at the torus (the supremum escapes to the torus for boundary
//! base points). The brute force is a lower bound by construction and is the
//! oracle for the closed form.

use core::f64::consts::PI;

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;

use crate::search::{compass_max, TopK};
use crate::tetra::{TetraClass, TetraPoint};
use crate::{Error, Result};

/// Candidate point `(a, x1, x2, x3)` of the hexablock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexaPoint {
    pub a: Complex,
    pub x: TetraPoint,
}

/// The unique maximizer `(z1(x), z2(x))` of the fiber family over the bidisc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalPair {
    pub z1: Complex,
    pub z2: Complex,
}

/// Stratum of a point relative to the hexablock boundary decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HexaStratum {
    Interior,
    /// Fiber rim over an interior base point: `|a|² = e^{−u(x)}`.
    Boundary1,
    /// Over the ordinary tetrablock boundary with `|a|² < |x1 x2 − x3|`.
    Boundary2,
    /// The rest of the boundary (closure points that are neither of the
    /// above); identified by elimination plus a dilation closure probe.
    Boundary3,
    Exterior,
}

/// The defining family
/// `Ψ_{z1,z2}(a, x) = a √((1−|z1|²)(1−|z2|²)) / K_x(z1, z2)`.
pub fn psi_h(z1: Complex, z2: Complex, p: &HexaPoint) -> Result<Complex> {
    let den = p.x.kernel(z1, z2);
    if den.norm() <= 1e-14 {
        return Err(Error::Pole);
    }
    let num = ((1.0 - z1.norm_sqr()) * (1.0 - z2.norm_sqr())).max(0.0).sqrt();
    Ok(p.a * num / den)
}

/// Closed-form extremal point in terms of the beta coordinates.
pub fn extremal_point(x: &TetraPoint) -> Result<ExtremalPair> {
    if x.x3.norm() >= 1.0 {
        return Err(Error::Degenerate);
    }
    let den = 1.0 - x.x3.norm_sqr();
    let b1 = (x.x1 - x.x2.conj() * x.x3) / den;
    let b2 = (x.x2 - x.x1.conj() * x.x3) / den;
    Ok(ExtremalPair { z1: extremal_coordinate(b1, b2)?, z2: extremal_coordinate(b2, b1)? })
}

/// `z = 2 β̄ / (1 + |β|² − |β'|² + √((1 + |β|² − |β'|²)² − 4|β|²))`.
fn extremal_coordinate(beta: Complex, other: Complex) -> Result<Complex> {
    let s = 1.0 + beta.norm_sqr() - other.norm_sqr();
    let mut disc = s * s - 4.0 * beta.norm_sqr();
    if disc < 0.0 {
        if disc < -1e-12 {
            return Err(Error::Degenerate);
        }
        disc = 0.0;
    }
    let den = s + disc.sqrt();
    if den <= 1e-14 {
        return Err(Error::Degenerate);
    }
    Ok(2.0 * beta.conj() / den)
}

/// `e^{−u(x)}`, the squared fiber radius over `x`; the boundary-stable form
/// of the fiber function.
pub fn e_minus_u(x: &TetraPoint) -> Result<f64> {
    let ext = extremal_point(x)?;
    let k = x.kernel(ext.z1, ext.z2);
    let den = (1.0 - ext.z1.norm_sqr()) * (1.0 - ext.z2.norm_sqr());
    if den <= 0.0 {
        return Err(Error::Degenerate);
    }
    Ok(k.norm_sqr() / den)
}

/// The fiber function `u(x) ≥ 0` in closed form.
pub fn u_closed(x: &TetraPoint) -> Result<f64> {
    Ok(-e_minus_u(x)?.ln())
}

const RADIAL_LEVELS: u32 = 14;

/// Brute-force lower bound for `u(x)`: maximize `2 log |Ψ_{z1,z2}(1, x)|`
/// over a polar product grid with radii `1 − 2^{−k}` and `n_grid` angles,
/// then refine from the best `n_refine` cells by compass search.
///
/// Every evaluation is a true member of the supremand, so the result never
/// exceeds `u(x)` beyond rounding; for interior `x` the refinement converges
/// to the interior maximizer, and for boundary `x` the radial schedule
/// chases the supremum towards the torus.
pub fn u_bruteforce(x: &TetraPoint, n_grid: usize, n_refine: usize) -> f64 {
    bruteforce_maximizer(x, n_grid, n_refine).1
}

/// As [`u_bruteforce`], also reporting the best maximizer found.
pub fn bruteforce_maximizer(x: &TetraPoint, n_grid: usize, n_refine: usize) -> (ExtremalPair, f64) {
    let n_grid = n_grid.max(4);
    let objective = |p: &[f64; 4]| -> f64 {
        let z1 = Complex::new(p[0], p[1]);
        let z2 = Complex::new(p[2], p[3]);
        let num = (1.0 - z1.norm_sqr()).max(0.0) * (1.0 - z2.norm_sqr()).max(0.0);
        num / x.kernel(z1, z2).norm_sqr()
    };

    // Polar sample set shared by both coordinates.
    let mut points: alloc::vec::Vec<Complex> = alloc::vec::Vec::new();
    points.push(Complex::ZERO);
    for k in 1..RADIAL_LEVELS {
        let r = 1.0 - 0.5f64.powi(k as i32);
        for j in 0..n_grid {
            points.push(Complex::from_polar(r, 2.0 * PI * j as f64 / n_grid as f64));
        }
    }

    let mut top = TopK::new(n_refine.max(1));
    for &z1 in &points {
        for &z2 in &points {
            let g = objective(&[z1.re, z1.im, z2.re, z2.im]);
            top.push(g, [z1.re, z1.im, z2.re, z2.im]);
        }
    }

    let clamp = |p: &mut [f64; 4]| {
        for pair in [0usize, 2] {
            let n = (p[pair] * p[pair] + p[pair + 1] * p[pair + 1]).sqrt();
            let cap = 1.0 - 1e-12;
            if n > cap {
                p[pair] *= cap / n;
                p[pair + 1] *= cap / n;
            }
        }
    };

    let mut best = 0.0f64;
    let mut best_at = [0.0f64; 4];
    for &(score, start) in top.items() {
        if score > best {
            best = score;
            best_at = start;
        }
        let (at, refined) = compass_max(objective, start, 0.05, 1e-9, 400, clamp);
        if refined > best {
            best = refined;
            best_at = at;
        }
    }
    let pair = ExtremalPair {
        z1: Complex::new(best_at[0], best_at[1]),
        z2: Complex::new(best_at[2], best_at[3]),
    };
    (pair, best.max(1e-300).ln())
}

impl HexaPoint {
    pub fn new(a: Complex, x: TetraPoint) -> Self {
        HexaPoint { a, x }
    }

    pub fn from_coords(a: Complex, x1: Complex, x2: Complex, x3: Complex) -> Self {
        HexaPoint { a, x: TetraPoint::new(x1, x2, x3) }
    }

    pub fn is_finite(&self) -> bool {
        self.a.re.is_finite() && self.a.im.is_finite() && self.x.is_finite()
    }

    /// Membership: base point interior to the tetrablock and `|a|² < e^{−u}`.
    pub fn is_member(&self) -> bool {
        self.fiber_margin().map_or(false, |m| m > 0.0)
    }

    /// `e^{−u(x)} − |a|²` when the base point is a tetrablock member.
    pub fn fiber_margin(&self) -> Option<f64> {
        if !self.x.is_member() {
            return None;
        }
        match e_minus_u(&self.x) {
            Ok(v) => Some(v - self.a.norm_sqr()),
            Err(_) => None,
        }
    }

    /// Quasi-balanced dilation `(ra, rx1, rx2, r²x3)`, `0 ≤ r ≤ 1`; maps
    /// members (and closure points, for `r < 1`) to members.
    pub fn dilate(&self, r: f64) -> HexaPoint {
        HexaPoint::from_coords(
            r * self.a,
            r * self.x.x1,
            r * self.x.x2,
            r * r * self.x.x3,
        )
    }

    /// Quasi-circular action `(λa, λx1, λx2, λ²x3)` for unimodular `λ`.
    pub fn quasi_rotate(&self, lambda: Complex) -> HexaPoint {
        HexaPoint::from_coords(
            lambda * self.a,
            lambda * self.x.x1,
            lambda * self.x.x2,
            lambda * lambda * self.x.x3,
        )
    }

    /// Stratify relative to the boundary decomposition with band `eps`.
    pub fn stratify(&self, eps: f64) -> HexaStratum {
        let base_class = self.x.classify(eps);
        if base_class == TetraClass::Interior {
            if let Ok(radius_sq) = e_minus_u(&self.x) {
                let gap = radius_sq - self.a.norm_sqr();
                if gap > eps {
                    return HexaStratum::Interior;
                }
                if gap.abs() <= eps {
                    return HexaStratum::Boundary1;
                }
            }
        }
        if base_class == TetraClass::Boundary {
            let prod = (self.x.x1 * self.x.x2 - self.x.x3).norm();
            if prod > eps
                && (self.x.x3.norm() - 1.0).abs() > eps
                && self.a.norm_sqr() < prod - eps
            {
                return HexaStratum::Boundary2;
            }
        }
        // Closure probe: quasi-balanced dilation pulls closure points into
        // the open domain.
        if self.dilate(1.0 - eps).is_member() {
            return HexaStratum::Boundary3;
        }
        HexaStratum::Exterior
    }
}

/// Central finite-difference estimate of the mixed derivative
/// `∂²u/∂x1∂x̄1` at the origin, `(Δ²_re + Δ²_im)/4` applied to `u` along the
/// `x1` slice. Exact value is 1; the estimate carries an `O(h²)` error.
pub fn hessian_u_origin(h: f64) -> f64 {
    let u = |x1: Complex| u_closed(&TetraPoint::new(x1, Complex::ZERO, Complex::ZERO)).unwrap();
    let u0 = u(Complex::ZERO);
    let d_re = u(Complex::new(h, 0.0)) + u(Complex::new(-h, 0.0)) - 2.0 * u0;
    let d_im = u(Complex::new(0.0, h)) + u(Complex::new(0.0, -h)) - 2.0 * u0;
    (d_re + d_im) / (4.0 * h * h)
}

/// A two-parameter holomorphic disc family lying in the second boundary
/// stratum, built over the base boundary point `(0, r, 1−r)`:
/// `x1 = −(1 − r + h(λ))/(2 − r)`, `x2 = (1 + (1−r) h(λ))/(2 − r)`,
/// `x3 = −h(λ)`, fiber coordinate `g(μ)`, with affine `h` and `g`,
/// `h(0) = −(1 − r)` and `g(0) = a0`.
#[derive(Debug, Clone, Copy)]
pub struct Disc2Family {
    r: f64,
    a0: f64,
    h_slope: Complex,
    g_slope: Complex,
}

impl Disc2Family {
    /// Validates the band conditions of the construction on a 64-point
    /// boundary sample: `|h| < 1`, the product modulus `|x1 x2 − x3|` stays
    /// within `ε = (1 − r − a0²)/2` of `1 − r`, and `|g|²` stays within `ε`
    /// of `a0²`, which together force `|g(μ)|² < |x1 x2 − x3|(λ)` everywhere.
    pub fn new(r: f64, a0: f64, h_slope: Complex, g_slope: Complex) -> Result<Self> {
        if !(0.0 < r && r < 1.0) || a0 * a0 >= 1.0 - r {
            return Err(Error::InvalidFamily);
        }
        let f = Disc2Family { r, a0, h_slope, g_slope };
        let eps = (1.0 - r - a0 * a0) / 2.0;
        for k in 0..64 {
            let lam = Complex::from_polar(1.0, 2.0 * PI * k as f64 / 64.0);
            let h = f.h(lam);
            if h.norm() >= 1.0 {
                return Err(Error::InvalidFamily);
            }
            let prod = f.product_modulus(lam);
            if prod <= 1.0 - r - eps || prod >= 1.0 - r + eps {
                return Err(Error::InvalidFamily);
            }
            let g2 = f.g(lam).norm_sqr();
            if g2 <= a0 * a0 - eps && a0 * a0 - eps > 0.0 || g2 >= a0 * a0 + eps {
                return Err(Error::InvalidFamily);
            }
        }
        Ok(f)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn h(&self, lambda: Complex) -> Complex {
        Complex::new(-(1.0 - self.r), 0.0) + self.h_slope * lambda
    }

    pub fn g(&self, mu: Complex) -> Complex {
        Complex::new(self.a0, 0.0) + self.g_slope * mu
    }

    /// `|x1 x2 − x3|` along the family; equals
    /// `(1−r)/(2−r)² · |1 − h(λ)|²` identically.
    pub fn product_modulus(&self, lambda: Complex) -> f64 {
        let x = self.eval(Complex::ZERO, lambda).x;
        (x.x1 * x.x2 - x.x3).norm()
    }

    /// The point of the family at `(μ, λ)`; lies in the second boundary
    /// stratum for `|μ|, |λ| < 1`.
    pub fn eval(&self, mu: Complex, lambda: Complex) -> HexaPoint {
        let h = self.h(lambda);
        let d = 2.0 - self.r;
        let x1 = -(1.0 - self.r + h) / d;
        let x2 = (1.0 + (1.0 - self.r) * h) / d;
        let x3 = -h;
        HexaPoint::from_coords(self.g(mu), x1, x2, x3)
    }
}
