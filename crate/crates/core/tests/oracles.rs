//! Independent-oracle checks: every closed form in the crate is re-derived
//! here by a second route (polynomial root iteration, pointwise evaluation,
//! grid optimization, ray bisection) on seeded samples.

use hexablock_core::auto::{fiber_identity_residual, normalize_point, HexaAutomorphism};
use hexablock_core::hexa::{
    bruteforce_maximizer, e_minus_u, extremal_point, psi_h, u_bruteforce, u_closed, HexaPoint,
};
use hexablock_core::mobius::DiscAutomorphism;
use hexablock_core::mu::{
    hexa_coords, mu_full_multistart, mu_value, MuStructure, WITNESS_RESIDUAL_BOUND,
};
use hexablock_core::sample;
use hexablock_core::scalar::{op_norm, spectral_radius, Matrix2};
use hexablock_core::tetra::{MembershipMethod, TetraPoint};
use hexablock_core::Complex;

/// Roots of the monic quadratic `λ² − t λ + d` by Durand–Kerner iteration.
fn quadratic_roots_iterative(t: Complex, d: Complex) -> (Complex, Complex) {
    let p = |z: Complex| z * z - t * z + d;
    let mut r1 = Complex::new(0.4, 0.9);
    let mut r2 = Complex::new(-0.91, 0.23);
    for _ in 0..256 {
        let mut sep = r1 - r2;
        if sep.norm() < 1e-14 {
            sep = Complex::new(1e-14, 0.0);
        }
        let n1 = r1 - p(r1) / sep;
        let n2 = r2 + p(r2) / sep;
        if (n1 - r1).norm() + (n2 - r2).norm() < 1e-15 * (1.0 + r1.norm() + r2.norm()) {
            r1 = n1;
            r2 = n2;
            break;
        }
        r1 = n1;
        r2 = n2;
    }
    (r1, r2)
}

#[test]
fn spectral_radius_matches_polynomial_root_iteration() {
    let mut rng = sample::rng(101);
    for _ in 0..200 {
        let m = sample::matrix(&mut rng, 1.5);
        let (r1, r2) = quadratic_roots_iterative(m.trace(), m.det());
        let oracle = r1.norm().max(r2.norm());
        assert!(
            (spectral_radius(&m) - oracle).abs() <= 1e-9 * (1.0 + oracle),
            "closed form {} vs iterative {}",
            spectral_radius(&m),
            oracle
        );
    }
}

#[test]
fn mobius_composition_reproduces_pointwise_values() {
    let mut rng = sample::rng(102);
    for _ in 0..50 {
        let m1 = sample::disc_automorphism(&mut rng, 0.8);
        let m2 = sample::disc_automorphism(&mut rng, 0.8);
        let comp = m1.compose(&m2);
        for _ in 0..100 {
            let l = sample::complex_in_disc(&mut rng, 0.98);
            assert!((comp.apply(l) - m1.apply(m2.apply(l))).norm() < 1e-12);
        }
    }
}

#[test]
fn mobius_associativity_pointwise() {
    let mut rng = sample::rng(103);
    for _ in 0..100 {
        let a = sample::disc_automorphism(&mut rng, 0.8);
        let b = sample::disc_automorphism(&mut rng, 0.8);
        let c = sample::disc_automorphism(&mut rng, 0.8);
        let left = a.compose(&b).compose(&c);
        let right = a.compose(&b.compose(&c));
        for _ in 0..20 {
            let l = sample::complex_in_disc(&mut rng, 0.95);
            assert!((left.apply(l) - right.apply(l)).norm() < 1e-10);
        }
    }
}

#[test]
fn four_membership_methods_agree_outside_the_band() {
    let mut rng = sample::rng(104);
    let mut checked = 0usize;
    for _ in 0..20_000 {
        let x = sample::tetra_candidate(&mut rng, 1.2);
        let margin = x.inequality_margin();
        if margin.abs() <= 1e-8 {
            continue;
        }
        checked += 1;
        let expect = margin > 0.0;
        for m in [
            MembershipMethod::CircleSup,
            MembershipMethod::MatrixNorm,
            MembershipMethod::BetaSum,
        ] {
            assert_eq!(x.member(m), expect, "{m:?} disagrees at {x:?} (margin {margin})");
        }
    }
    assert!(checked > 19_000);
}

#[test]
fn extremal_point_matches_grid_maximizer() {
    let mut rng = sample::rng(105);
    for _ in 0..12 {
        let x = sample::tetra_interior(&mut rng, 1e-2);
        let closed = extremal_point(&x).unwrap();
        let (grid, _) = bruteforce_maximizer(&x, 32, 6);
        assert!(
            (closed.z1 - grid.z1).norm() < 1e-4 && (closed.z2 - grid.z2).norm() < 1e-4,
            "closed ({}, {}) vs grid ({}, {})",
            closed.z1,
            closed.z2,
            grid.z1,
            grid.z2
        );
    }
}

#[test]
fn extremal_point_is_a_local_maximum() {
    let mut rng = sample::rng(106);
    for _ in 0..20 {
        let x = sample::tetra_interior(&mut rng, 1e-2);
        let ext = extremal_point(&x).unwrap();
        let one = HexaPoint::new(Complex::new(1.0, 0.0), x);
        let center = psi_h(ext.z1, ext.z2, &one).unwrap().norm();
        assert!((center * center - (-u_closed(&x).unwrap()).exp().recip()).abs() < 1e-10);
        for k in 0..16 {
            let dir = Complex::from_polar(1e-3, 2.0 * std::f64::consts::PI * k as f64 / 16.0);
            let (d1, d2) = if k % 2 == 0 { (dir, dir * dir) } else { (dir * dir, dir) };
            let v = psi_h(ext.z1 + d1, ext.z2 + d2, &one).unwrap().norm();
            assert!(v <= center + 1e-9);
        }
    }
}

#[test]
fn closed_form_u_matches_bruteforce() {
    let mut rng = sample::rng(107);
    for _ in 0..25 {
        let x = sample::tetra_interior(&mut rng, 1e-2);
        let uc = u_closed(&x).unwrap();
        let ub = u_bruteforce(&x, 32, 8);
        assert!(ub <= uc + 1e-9, "brute force exceeded the closed form");
        assert!(((-uc).exp() - (-ub).exp()).abs() <= 1e-4, "uc={uc} ub={ub}");
    }
}

#[test]
fn orbit_radius_is_an_automorphism_invariant() {
    let mut rng = sample::rng(108);
    for _ in 0..20 {
        let x = sample::tetra_interior(&mut rng, 1e-2);
        let r = x.orbit_radius().unwrap();
        for _ in 0..5 {
            let m1 = sample::disc_automorphism(&mut rng, 0.7);
            let m2 = sample::disc_automorphism(&mut rng, 0.7);
            let flip = sample::unimodular(&mut rng).re > 0.0;
            let y = x.kernel_transform(&m1, &m2, flip).unwrap();
            assert!(y.is_member());
            let r2 = y.orbit_radius().unwrap();
            assert!((r - r2).abs() < 1e-6, "r={r} vs {r2}");
        }
    }
}

#[test]
fn boundary_points_stay_on_the_boundary_under_kernel_maps() {
    let mut rng = sample::rng(109);
    for _ in 0..60 {
        let x = sample::tetra_boundary(&mut rng);
        assert!(x.boundary_defect().abs() <= 1e-9);
        let m1 = sample::disc_automorphism(&mut rng, 0.6);
        let m2 = sample::disc_automorphism(&mut rng, 0.6);
        let y = x.kernel_transform(&m1, &m2, false).unwrap();
        assert!(y.boundary_defect().abs() <= 1e-8, "defect {}", y.boundary_defect());
    }
}

#[test]
fn fiber_identity_on_random_pairs() {
    let mut rng = sample::rng(110);
    for _ in 0..100 {
        let t = sample::hexa_automorphism(&mut rng, 0.7);
        let x = sample::tetra_interior(&mut rng, 1e-3);
        assert!(fiber_identity_residual(&t, &x).unwrap() < 1e-6);
    }
}

#[test]
fn automorphism_group_laws_on_samples() {
    let mut rng = sample::rng(111);
    for _ in 0..30 {
        let t1 = sample::hexa_automorphism(&mut rng, 0.6);
        let t2 = sample::hexa_automorphism(&mut rng, 0.6);
        let t3 = sample::hexa_automorphism(&mut rng, 0.6);
        let p = sample::hexa_member(&mut rng, 1e-3);

        let assoc_l = t1.compose(&t2).unwrap().compose(&t3).unwrap();
        let assoc_r = t1.compose(&t2.compose(&t3).unwrap()).unwrap();
        let pl = assoc_l.apply(&p).unwrap();
        let pr = assoc_r.apply(&p).unwrap();
        assert!((pl.a - pr.a).norm() < 1e-9);
        assert!((pl.x.x1 - pr.x.x1).norm() < 1e-9);
        assert!((pl.x.x3 - pr.x.x3).norm() < 1e-9);

        let inv = t1.inverse().unwrap();
        let round = inv.apply(&t1.apply(&p).unwrap()).unwrap();
        assert!((round.a - p.a).norm() < 1e-10);
        assert!((round.x.x2 - p.x.x2).norm() < 1e-10);
    }
}

#[test]
fn canonicalization_is_faithful_pointwise() {
    let mut rng = sample::rng(112);
    for _ in 0..20 {
        let t = sample::hexa_automorphism(&mut rng, 0.6);
        let rebuilt = t.compose(&HexaAutomorphism::identity()).unwrap();
        assert!((rebuilt.xi1 - t.xi1).norm() < 1e-10);
        assert!((rebuilt.xi2 - t.xi2).norm() < 1e-10);
        assert!((rebuilt.z1 - t.z1).norm() < 1e-10);
        assert!((rebuilt.z2 - t.z2).norm() < 1e-10);
        assert!((rebuilt.omega - t.omega).norm() < 1e-10);
        assert_eq!(rebuilt.flip, t.flip);
    }
}

#[test]
fn normalized_invariants_survive_precomposition() {
    let mut rng = sample::rng(113);
    for _ in 0..10 {
        let p = sample::hexa_member(&mut rng, 1e-2);
        let (_, r, a_mod) = normalize_point(&p).unwrap();
        for _ in 0..5 {
            let t = sample::hexa_automorphism(&mut rng, 0.6);
            let q = t.apply(&p).unwrap();
            assert!(q.is_member());
            let (_, r2, a_mod2) = normalize_point(&q).unwrap();
            assert!((r - r2).abs() < 1e-6, "r {r} vs {r2}");
            assert!((a_mod - a_mod2).abs() < 1e-6, "a_mod {a_mod} vs {a_mod2}");
        }
    }
}

#[test]
fn hexa_members_satisfy_the_fiber_bounds() {
    let mut rng = sample::rng(114);
    for _ in 0..500 {
        let p = sample::hexa_member(&mut rng, 0.0);
        assert!(p.a.norm_sqr() + p.x.x1.norm_sqr() < 1.0);
        assert!(p.a.norm_sqr() + p.x.x2.norm_sqr() <= 1.0 + 1e-12);
    }
}

#[test]
fn dilations_and_quasi_rotations_preserve_membership() {
    let mut rng = sample::rng(115);
    for _ in 0..300 {
        let p = sample::hexa_member(&mut rng, 0.0);
        for r in [0.25, 0.5, 0.9, 1.0] {
            assert!(p.dilate(r).is_member());
        }
        for k in 0..8 {
            let lam = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 8.0);
            assert!(p.quasi_rotate(lam).is_member());
        }
    }
}

#[test]
fn mu_sandwich_and_scaling_on_seeded_matrices() {
    let mut rng = sample::rng(116);
    for _ in 0..60 {
        let a = sample::matrix(&mut rng, 1.5);
        let s = mu_value(&a, MuStructure::Scalar);
        let d = mu_value(&a, MuStructure::Diagonal);
        let u = mu_value(&a, MuStructure::UpperTriangular);
        let f = mu_value(&a, MuStructure::Full);
        assert!(s.value <= d.value + 1e-3);
        assert!(d.value <= u.value + 1e-3);
        assert!(u.value <= f.value + 1e-3);
        for (r, name) in [(s, "scalar"), (d, "diag"), (u, "upper"), (f, "full")] {
            if let Some(w) = r.witness {
                assert!(r.residual <= WITNESS_RESIDUAL_BOUND, "{name} residual {}", r.residual);
                // Coincident singular values (scalar witnesses) cost the
                // closed-form norm half its precision, hence the √eps bound.
                assert!(
                    (1.0 / op_norm(&w) - r.value).abs() <= 1e-7 * (1.0 + r.value),
                    "{name}: value {} vs 1/|X| {} for A={a:?}",
                    r.value,
                    1.0 / op_norm(&w)
                );
            }
        }
        // Structural zeros are exact.
        if let Some(w) = d.witness {
            assert_eq!(w.a12, Complex::new(0.0, 0.0));
            assert_eq!(w.a21, Complex::new(0.0, 0.0));
        }
        if let Some(w) = u.witness {
            assert_eq!(w.a21, Complex::new(0.0, 0.0));
        }

        let t = 0.1 + 9.9 * sample::uniform(&mut rng);
        let scaled = Matrix2::new(t * a.a11, t * a.a12, t * a.a21, t * a.a22);
        for structure in [
            MuStructure::Scalar,
            MuStructure::Diagonal,
            MuStructure::UpperTriangular,
            MuStructure::Full,
        ] {
            let base = mu_value(&a, structure).value;
            let big = mu_value(&scaled, structure).value;
            assert!(
                (big - t * base).abs() <= 1e-3 * (1.0 + t * base),
                "{structure:?}: {big} vs {}",
                t * base
            );
        }
    }
}

#[test]
fn mu_full_multistart_reproduces_op_norm() {
    let mut rng = sample::rng(117);
    for _ in 0..15 {
        let a = sample::matrix(&mut rng, 1.5);
        let closed = op_norm(&a);
        let searched = mu_full_multistart(&a).value;
        assert!(
            (searched - closed).abs() <= 1e-4 * closed.max(1e-12),
            "multistart {searched} vs closed {closed}"
        );
    }
}

#[test]
fn mu_diag_duality_with_tetrablock_membership() {
    let mut rng = sample::rng(118);
    let mut checked = 0;
    for _ in 0..150 {
        let a = sample::matrix(&mut rng, 1.2);
        let mu = mu_value(&a, MuStructure::Diagonal).value;
        if (mu - 1.0).abs() <= 1e-3 {
            continue;
        }
        checked += 1;
        let member = TetraPoint::new(a.a11, a.a22, a.det()).is_member();
        assert_eq!(mu < 1.0, member, "mu={mu} member={member} at {a:?}");
    }
    assert!(checked > 100);
}

#[test]
fn mu_upper_closure_containment() {
    let mut rng = sample::rng(119);
    for _ in 0..120 {
        let a = sample::matrix(&mut rng, 1.2);
        let mu = mu_value(&a, MuStructure::UpperTriangular).value;
        if mu < 1.0 - 1e-3 {
            assert!(
                hexa_coords(&a).dilate(1.0 - 1e-6).is_member(),
                "mu={mu} but dilated coordinates escape the hexablock: {a:?}"
            );
        }
    }
}

#[test]
fn fiber_radius_over_triangular_diagonal_confirmed_by_bruteforce() {
    // The kernel factorizes over (λ, λ, λ²), so the closed form collapses to
    // (1 − |λ|²)²; the grid oracle agrees.
    let mut rng = sample::rng(120);
    for _ in 0..6 {
        let lam = sample::complex_in_disc(&mut rng, 0.85);
        let x = TetraPoint::new(lam, lam, lam * lam);
        let closed = e_minus_u(&x).unwrap();
        let expect = (1.0 - lam.norm_sqr()).powi(2);
        assert!((closed - expect).abs() < 1e-12);
        let brute = (-u_bruteforce(&x, 32, 6)).exp();
        assert!((brute - expect).abs() < 1e-4);
    }
}
