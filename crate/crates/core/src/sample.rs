//! Deterministic sampling utilities.
//!
//! All randomized checks in the crate and its front ends draw from ChaCha8
//! seeded through `seed_from_u64`, which is portable across platforms, so a
//! `(suite, seed)` pair pins every report byte for byte.

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::auto::HexaAutomorphism;
use crate::hexa::HexaPoint;
use crate::mobius::DiscAutomorphism;
use crate::scalar::Matrix2;
use crate::tetra::TetraPoint;

/// The crate-wide seeded generator.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform in `[0, 1)`.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen::<f64>()
}

/// A fair coin.
pub fn coin(rng: &mut ChaCha8Rng) -> bool {
    rng.gen::<f64>() < 0.5
}

/// Uniform in `[-half, half]` on both components.
pub fn complex_in_square(rng: &mut ChaCha8Rng, half: f64) -> Complex {
    let re = (2.0 * rng.gen::<f64>() - 1.0) * half;
    let im = (2.0 * rng.gen::<f64>() - 1.0) * half;
    Complex::new(re, im)
}

/// Uniform in the disc of the given radius, by rejection from the square.
pub fn complex_in_disc(rng: &mut ChaCha8Rng, radius: f64) -> Complex {
    loop {
        let z = complex_in_square(rng, radius);
        if z.norm_sqr() <= radius * radius {
            return z;
        }
    }
}

/// Uniform on the unit circle.
pub fn unimodular(rng: &mut ChaCha8Rng) -> Complex {
    Complex::from_polar(1.0, 2.0 * core::f64::consts::PI * rng.gen::<f64>())
}

/// A raw candidate point with every coordinate uniform in the centered
/// square of the given half width.
pub fn tetra_candidate(rng: &mut ChaCha8Rng, half: f64) -> TetraPoint {
    TetraPoint::new(
        complex_in_square(rng, half),
        complex_in_square(rng, half),
        complex_in_square(rng, half),
    )
}

/// Rejection-sample an interior tetrablock point with at least the given
/// closed-form margin.
pub fn tetra_interior(rng: &mut ChaCha8Rng, min_margin: f64) -> TetraPoint {
    loop {
        let x = tetra_candidate(rng, 1.0);
        if x.inequality_margin() > min_margin {
            return x;
        }
    }
}

/// A point of the topological tetrablock boundary, by bisecting the
/// quasi-balanced ray `t ↦ (t x1, t x2, t² x3)` through a random interior
/// point; membership is monotone along the ray.
pub fn tetra_boundary(rng: &mut ChaCha8Rng) -> TetraPoint {
    let x = tetra_interior(rng, 1e-3);
    let at = |t: f64| TetraPoint::new(t * x.x1, t * x.x2, t * t * x.x3);
    let mut lo = 1.0;
    let mut hi = 2.0;
    while at(hi).is_member() {
        hi *= 2.0;
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if at(mid).is_member() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    at(0.5 * (lo + hi))
}

/// A raw hexablock candidate in the bounding box `|a| ≤ 1`, `|x_i| ≤ 1`.
pub fn hexa_candidate(rng: &mut ChaCha8Rng) -> HexaPoint {
    HexaPoint::new(complex_in_square(rng, 1.0), tetra_candidate(rng, 1.0))
}

/// Rejection-sample a hexablock member with at least the given fiber margin.
pub fn hexa_member(rng: &mut ChaCha8Rng, min_margin: f64) -> HexaPoint {
    loop {
        let p = hexa_candidate(rng);
        if p.fiber_margin().map_or(false, |m| m > min_margin) {
            return p;
        }
    }
}

/// A matrix with entries uniform in the disc of the given radius.
pub fn matrix(rng: &mut ChaCha8Rng, radius: f64) -> Matrix2 {
    Matrix2::new(
        complex_in_disc(rng, radius),
        complex_in_disc(rng, radius),
        complex_in_disc(rng, radius),
        complex_in_disc(rng, radius),
    )
}

/// A disc automorphism with center modulus at most `max_center`.
pub fn disc_automorphism(rng: &mut ChaCha8Rng, max_center: f64) -> DiscAutomorphism {
    let eta = unimodular(rng);
    let alpha = complex_in_disc(rng, max_center);
    DiscAutomorphism::new(eta, alpha).expect("sampled parameters are valid")
}

/// A hexablock automorphism with Blaschke centers of modulus at most
/// `max_center`.
pub fn hexa_automorphism(rng: &mut ChaCha8Rng, max_center: f64) -> HexaAutomorphism {
    HexaAutomorphism::new(
        unimodular(rng),
        unimodular(rng),
        complex_in_disc(rng, max_center),
        complex_in_disc(rng, max_center),
        rng.gen::<f64>() < 0.5,
        unimodular(rng),
    )
    .expect("sampled parameters are valid")
}
