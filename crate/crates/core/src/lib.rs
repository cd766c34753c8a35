//! Computational toolkit for the tetrablock `E ⊂ C^3` and the hexablock
//! `H ⊂ C^4`, the domains attached to structured-singular-value (μ) analysis
//! of 2×2 matrices.
//!
//! The crate provides
//! - exact 2×2 complex matrix primitives and Möbius disc automorphisms,
//! - four mutually checking membership oracles for the tetrablock together
//!   with boundary classification and orbit normalization,
//! - the hexablock fiber function `u` (closed form and an independent
//!   brute-force supremum oracle), membership, boundary stratification and
//!   the quasi-balanced dilations,
//! - the explicit automorphism group of the hexablock with canonical
//!   parameters, composition, inversion and fiber multipliers,
//! - numerical μ for the scalar, diagonal, upper-triangular and full
//!   perturbation structures, with feasible witnesses.
//!
//! Everything is pure and deterministic; the `sample` module fixes a portable
//! seeded generator (ChaCha8) so that randomized checks are reproducible.
//!
//! The crate is `no_std`-compatible (with `alloc`) when built without the
//! default `std` feature; all transcendental math then routes through `libm`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod auto;
mod error;
pub mod hexa;
pub mod mobius;
pub mod mu;
pub mod sample;
mod search;
pub mod scalar;
pub mod tetra;

pub use error::{Error, Result};
pub use num_complex::Complex64 as Complex;
