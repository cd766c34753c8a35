//! Möbius self-maps of the unit disc in canonical form.

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;

use crate::{Error, Result};

/// The Blaschke factor `B_α(λ) = (λ − α)/(ᾱλ − 1)`.
///
/// Note `B_α = −(λ − α)/(1 − ᾱλ)`: the sign relative to the canonical disc
/// automorphism is absorbed into the unimodular factor of
/// [`DiscAutomorphism`].
pub fn blaschke(alpha: Complex, lambda: Complex) -> Result<Complex> {
    let den = alpha.conj() * lambda - 1.0;
    if den.norm() <= 1e-14 {
        return Err(Error::Pole);
    }
    Ok((lambda - alpha) / den)
}

/// A disc automorphism `λ ↦ η (λ − α)/(1 − ᾱλ)` with `|η| = 1`, `|α| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscAutomorphism {
    eta: Complex,
    alpha: Complex,
}

impl DiscAutomorphism {
    /// Canonical constructor; renormalizes `eta` to exact modulus 1.
    pub fn new(eta: Complex, alpha: Complex) -> Result<Self> {
        if !eta.re.is_finite() || !eta.im.is_finite() || !alpha.re.is_finite() || !alpha.im.is_finite() {
            return Err(Error::Degenerate);
        }
        let n = eta.norm();
        if (n - 1.0).abs() > 1e-12 || alpha.norm() >= 1.0 {
            return Err(Error::Degenerate);
        }
        Ok(DiscAutomorphism { eta: eta / n, alpha })
    }

    pub(crate) fn new_unchecked(eta: Complex, alpha: Complex) -> Self {
        let n = eta.norm();
        debug_assert!((n - 1.0).abs() < 1e-9 && alpha.norm() < 1.0);
        DiscAutomorphism { eta: eta / n, alpha }
    }

    pub fn identity() -> Self {
        DiscAutomorphism { eta: Complex::new(1.0, 0.0), alpha: Complex::ZERO }
    }

    /// Pure rotation `λ ↦ η λ`.
    pub fn rotation(eta: Complex) -> Result<Self> {
        Self::new(eta, Complex::ZERO)
    }

    pub fn eta(&self) -> Complex {
        self.eta
    }

    pub fn alpha(&self) -> Complex {
        self.alpha
    }

    /// Evaluate the map. Maps the closed disc onto itself; the circle onto
    /// the circle.
    pub fn apply(&self, lambda: Complex) -> Complex {
        self.eta * (lambda - self.alpha) / (1.0 - self.alpha.conj() * lambda)
    }

    /// Canonical parameters of `self ∘ rhs`.
    ///
    /// With `self = (η₁, α₁)` and `rhs = (η₂, α₂)` the composite denominator
    /// factors through `c = η₂ + α₁ᾱ₂`, which never vanishes since
    /// `|α₁ᾱ₂| < 1 = |η₂|`.
    pub fn compose(&self, rhs: &DiscAutomorphism) -> DiscAutomorphism {
        let (e1, a1) = (self.eta, self.alpha);
        let (e2, a2) = (rhs.eta, rhs.alpha);
        let c = e2 + a1 * a2.conj();
        let d = e2 * a2 + a1;
        let alpha = d / c;
        let eta = e1 * c / (e2 * c.conj());
        DiscAutomorphism::new_unchecked(eta, alpha)
    }

    /// Canonical parameters of the inverse map.
    pub fn inverse(&self) -> DiscAutomorphism {
        DiscAutomorphism::new_unchecked(self.eta.conj(), -self.eta * self.alpha)
    }

    /// Parameter-space distance, used by canonicalization tests.
    pub fn param_distance(&self, other: &DiscAutomorphism) -> f64 {
        (self.eta - other.eta).norm() + (self.alpha - other.alpha).norm()
    }
}
