//! Property-based invariants over randomly generated inputs.

use hexablock_core::hexa::u_closed;
use hexablock_core::mobius::DiscAutomorphism;
use hexablock_core::scalar::{op_norm, spectral_radius, Matrix2};
use hexablock_core::tetra::TetraPoint;
use hexablock_core::Complex;
use proptest::prelude::*;

fn unimodular() -> impl Strategy<Value = Complex> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex::from_polar(1.0, t))
}

fn disc_point(max_mod: f64) -> impl Strategy<Value = Complex> {
    (0.0..max_mod, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex::from_polar(r, t))
}

fn disc_automorphism() -> impl Strategy<Value = DiscAutomorphism> {
    (unimodular(), disc_point(0.85)).prop_map(|(e, a)| DiscAutomorphism::new(e, a).unwrap())
}

/// Interior tetrablock points built from the beta chart, which parametrizes
/// the whole domain: `x1 = β1 + β̄2 x3`, `x2 = β2 + β̄1 x3`, `|β1|+|β2| < 1`.
fn interior_point() -> impl Strategy<Value = TetraPoint> {
    (disc_point(0.45), disc_point(0.45), disc_point(0.9)).prop_map(|(b1, b2, x3)| {
        TetraPoint::new(b1 + b2.conj() * x3, b2 + b1.conj() * x3, x3)
    })
}

fn matrix() -> impl Strategy<Value = Matrix2> {
    (disc_point(1.5), disc_point(1.5), disc_point(1.5), disc_point(1.5))
        .prop_map(|(a, b, c, d)| Matrix2::new(a, b, c, d))
}

proptest! {
    #[test]
    fn mobius_maps_preserve_the_circle(m in disc_automorphism(), t in 0.0..std::f64::consts::TAU) {
        let z = Complex::from_polar(1.0, t);
        prop_assert!((m.apply(z).norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn mobius_composition_is_associative(
        a in disc_automorphism(),
        b in disc_automorphism(),
        c in disc_automorphism(),
        l in disc_point(0.95),
    ) {
        let left = a.compose(&b).compose(&c).apply(l);
        let right = a.compose(&b.compose(&c)).apply(l);
        prop_assert!((left - right).norm() <= 1e-10);
    }

    #[test]
    fn op_norm_is_unitarily_invariant(m in matrix(), t1 in 0.0..6.28, t2 in 0.0..6.28, ph in 0.0..6.28) {
        // U = rotation-by-angle times diagonal phases; V likewise.
        let u = unitary(t1, ph);
        let v = unitary(t2, 1.7 * ph);
        let prod = u * m * v;
        prop_assert!((op_norm(&prod) - op_norm(&m)).abs() <= 1e-10 * (1.0 + op_norm(&m)));
    }

    #[test]
    fn op_norm_dominates_spectral_radius(m in matrix()) {
        prop_assert!(op_norm(&m) >= spectral_radius(&m) - 1e-10);
    }

    #[test]
    fn beta_chart_reconstructs_its_point(x in interior_point()) {
        prop_assert!(x.is_member());
        let b = x.beta_coords().unwrap();
        prop_assert!((b.beta1 + b.beta2.conj() * x.x3 - x.x1).norm() <= 1e-12);
        prop_assert!((b.beta2 + b.beta1.conj() * x.x3 - x.x2).norm() <= 1e-12);
        prop_assert!(b.beta1.norm() + b.beta2.norm() < 1.0);
    }

    #[test]
    fn symmetric_matrix_square_root_branches_share_norm(x in interior_point()) {
        let s = (x.x1 * x.x2 - x.x3).sqrt();
        let plus = Matrix2::new(x.x1, s, s, x.x2);
        let minus = Matrix2::new(x.x1, -s, -s, x.x2);
        prop_assert!((op_norm(&plus) - op_norm(&minus)).abs() <= 1e-12);
    }

    #[test]
    fn fiber_function_is_flip_symmetric(x in interior_point()) {
        let a = u_closed(&x).unwrap();
        let b = u_closed(&x.flip()).unwrap();
        prop_assert!((a - b).abs() <= 1e-10 * (1.0 + a.abs()));
    }

    #[test]
    fn kernel_maps_act_invertibly_on_the_domain(
        x in interior_point(),
        m1 in disc_automorphism(),
        m2 in disc_automorphism(),
    ) {
        let y = x.kernel_transform(&m1, &m2, false).unwrap();
        prop_assert!(y.is_member());
        let back = y.kernel_transform(&m1.inverse(), &m2.inverse(), false).unwrap();
        prop_assert!((back.x1 - x.x1).norm() <= 1e-10);
        prop_assert!((back.x2 - x.x2).norm() <= 1e-10);
        prop_assert!((back.x3 - x.x3).norm() <= 1e-10);
    }
}

fn unitary(theta: f64, phase: f64) -> Matrix2 {
    let (s, c) = theta.sin_cos();
    let e = Complex::from_polar(1.0, phase);
    Matrix2::new(
        Complex::new(c, 0.0) * e,
        Complex::new(s, 0.0) * e,
        Complex::new(-s, 0.0),
        Complex::new(c, 0.0),
    )
}
