//! Named verification suites.
//!
//! Every suite draws from a ChaCha8 stream seeded by the caller, runs a
//! fixed battery of checks at pinned tolerances, and reports the case and
//! residual tallies; reports are byte-for-byte reproducible given the seed.

use serde::Serialize;

use hexablock_core::auto::{fiber_identity_residual, HexaAutomorphism};
use hexablock_core::hexa::{
    e_minus_u, hessian_u_origin, u_bruteforce, u_closed, Disc2Family, HexaPoint, HexaStratum,
};
use hexablock_core::mu::{
    hexa_coords, mu_full_multistart, mu_value, MuStructure, WITNESS_RESIDUAL_BOUND,
};
use hexablock_core::sample;
use hexablock_core::scalar::{op_norm, Matrix2};
use hexablock_core::tetra::{MembershipMethod, TetraClass, TetraPoint};
use hexablock_core::Complex;

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub cases_run: u64,
    pub cases_passed: u64,
    pub max_residual: f64,
    pub seed: u64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.cases_passed == self.cases_run
    }
}

struct Tally {
    run: u64,
    passed: u64,
    max_residual: f64,
}

impl Tally {
    fn new() -> Self {
        Tally { run: 0, passed: 0, max_residual: 0.0 }
    }

    /// Record one case; `residual` enters the report whether or not the
    /// case passed.
    fn case(&mut self, ok: bool, residual: f64) {
        self.run += 1;
        if ok {
            self.passed += 1;
        }
        if residual.is_finite() {
            self.max_residual = self.max_residual.max(residual);
        } else {
            self.max_residual = f64::INFINITY;
        }
    }

    fn report(self, suite: &str, seed: u64) -> VerifyReport {
        VerifyReport {
            suite: suite.to_string(),
            cases_run: self.run,
            cases_passed: self.passed,
            max_residual: self.max_residual,
            seed,
        }
    }
}

pub const SUITES: &[&str] = &[
    "lemma2.1",
    "lemma2.3",
    "lemma2.4",
    "lemma2.5",
    "boundary-strata",
    "lemma-b2",
    "fiber-identity",
    "group-laws",
    "mu-sandwich",
    "mu-tetra-duality",
    "ball-slice",
    "ball-slice-axis",
    "hessian",
    "quasi-balanced",
    "orbit-radius",
    "u-consistency",
    "boundary-sup",
];

/// Case count used when the caller does not pass `--n`.
pub fn default_cases(suite: &str) -> u64 {
    match suite {
        "lemma2.1" => 100_000,
        "lemma2.3" => 400,
        "lemma2.4" => 400,
        "lemma2.5" => 2_000,
        "boundary-strata" => 300,
        "lemma-b2" => 32,
        "fiber-identity" => 1_000,
        "group-laws" => 200,
        "mu-sandwich" => 500,
        "mu-tetra-duality" => 500,
        "ball-slice" | "ball-slice-axis" => 10_000,
        "hessian" => 1,
        "quasi-balanced" => 10_000,
        "orbit-radius" => 200,
        "u-consistency" => 200,
        "boundary-sup" => 3,
        _ => 100,
    }
}

/// Run a suite; `None` for an unknown name.
pub fn run_suite(suite: &str, n: u64, seed: u64) -> Option<VerifyReport> {
    let t = match suite {
        "lemma2.1" => membership_agreement(n, seed),
        "lemma2.3" => boundary_characterizations(n, seed),
        "lemma2.4" => distinguished_boundary(n, seed),
        "lemma2.5" => fiber_bounds(n, seed),
        "boundary-strata" => boundary_strata(n, seed),
        "lemma-b2" => disc_family(n, seed),
        "fiber-identity" => fiber_identity(n, seed),
        "group-laws" => group_laws(n, seed),
        "mu-sandwich" => mu_sandwich(n, seed),
        "mu-tetra-duality" => mu_tetra_duality(n, seed),
        "ball-slice" => ball_slice(n, seed, true),
        "ball-slice-axis" => ball_slice(n, seed, false),
        "hessian" => hessian(),
        "quasi-balanced" => quasi_balanced(n, seed),
        "orbit-radius" => orbit_radius(n, seed),
        "u-consistency" => u_consistency(n, seed),
        "boundary-sup" => boundary_sup(n),
        _ => return None,
    };
    Some(t.report(suite, seed))
}

/// Four-way membership agreement on the radius-1.2 polydisc, outside the
/// 1e−8 closed-form margin band.
fn membership_agreement(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let x = sample::tetra_candidate(&mut rng, 1.2);
        let margin = x.inequality_margin();
        if margin.abs() <= 1e-8 {
            t.case(true, 0.0);
            continue;
        }
        let expect = margin > 0.0;
        let agree = [
            MembershipMethod::CircleSup,
            MembershipMethod::MatrixNorm,
            MembershipMethod::BetaSum,
        ]
        .iter()
        .all(|&m| x.member(m) == expect);
        t.case(agree, if agree { 0.0 } else { 1.0 });
    }
    t
}

/// The equivalent analytic descriptions of the topological boundary all
/// vanish on bisected boundary points.
fn boundary_characterizations(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let x = sample::tetra_boundary(&mut rng);
        let p1 = (x.x1 - x.x2.conj() * x.x3).norm();
        let p2 = (x.x2 - x.x1.conj() * x.x3).norm();
        let prod = (x.x1 * x.x2 - x.x3).norm();
        let d2 = (x.x2.norm_sqr() + p1 + prod - 1.0).abs();
        let d3 = (x.x1.norm_sqr() + p2 + prod - 1.0).abs();
        let d4 = x.boundary_defect().abs();
        let d5 = (p1 + p2 - (1.0 - x.x3.norm_sqr())).abs();
        let moduli_ok = x.x1.norm() <= 1.0 + 1e-9
            && x.x2.norm() <= 1.0 + 1e-9
            && x.x3.norm() <= 1.0 + 1e-9;
        let class = x.classify(1e-9);
        let on_boundary = class == TetraClass::Boundary || class == TetraClass::Distinguished;
        let residual = d2.max(d3).max(d4).max(d5);
        t.case(residual <= 1e-8 && moduli_ok && on_boundary, residual);
    }
    t
}

/// Distinguished-boundary points: reachable from a unitary matrix, carry a
/// circle-preserving symbol, and classify as distinguished.
fn distinguished_boundary(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let x2 = sample::complex_in_disc(&mut rng, 0.95);
        let x3 = sample::unimodular(&mut rng);
        let x = TetraPoint::new(x2.conj() * x3, x2, x3);

        // A unitary with this diagonal-and-determinant data.
        let alpha = x.x1;
        let beta = Complex::new((1.0 - alpha.norm_sqr()).max(0.0).sqrt(), 0.0);
        let u = Matrix2::new(alpha, beta, -beta.conj() * x3, alpha.conj() * x3);
        let uu = u.adjoint() * u;
        let unitary_defect = (uu.a11 - 1.0).norm()
            + uu.a12.norm()
            + uu.a21.norm()
            + (uu.a22 - 1.0).norm();
        let pi_defect =
            (u.a11 - x.x1).norm() + (u.a22 - x.x2).norm() + (u.det() - x.x3).norm();

        // The symbol maps the circle onto the circle.
        let mut psi_defect = 0.0f64;
        for k in 0..32 {
            let z = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 32.0);
            if let Ok(v) = hexablock_core::tetra::psi(z, &x) {
                psi_defect = psi_defect.max((v.norm() - 1.0).abs());
            } else {
                psi_defect = f64::INFINITY;
            }
        }

        let class_ok = x.classify(1e-9) == TetraClass::Distinguished && !x.is_member();
        let residual = unitary_defect.max(pi_defect).max(psi_defect).max(x.boundary_defect().abs());
        t.case(residual <= 1e-9 && class_ok, residual);
    }
    t
}

/// Members satisfy `|a|² + |x1|² < 1` and `|a|² + |x2|² ≤ 1`.
fn fiber_bounds(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let p = sample::hexa_member(&mut rng, 0.0);
        let b1 = p.a.norm_sqr() + p.x.x1.norm_sqr();
        let b2 = p.a.norm_sqr() + p.x.x2.norm_sqr();
        t.case(b1 < 1.0 && b2 <= 1.0 + 1e-12, (b2 - 1.0).max(0.0));
    }
    t
}

/// Constructed points of each boundary stratum classify as built.
fn boundary_strata(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for k in 0..n {
        match k % 3 {
            0 => {
                // Fiber rim over an interior base point.
                let x = sample::tetra_interior(&mut rng, 1e-3);
                let radius = e_minus_u(&x).unwrap().sqrt();
                let p = HexaPoint::new(sample::unimodular(&mut rng) * radius, x);
                t.case(p.stratify(1e-9) == HexaStratum::Boundary1, 0.0);
            }
            1 => {
                // A disc-family point over the ordinary boundary.
                let r = 0.2 + 0.5 * sample::uniform(&mut rng);
                let a0 = 0.5 * (1.0 - r).sqrt();
                let f = Disc2Family::new(r, a0, Complex::new(0.02, 0.01), Complex::new(0.01, 0.0))
                    .unwrap();
                let mu = sample::complex_in_disc(&mut rng, 0.9);
                let lam = sample::complex_in_disc(&mut rng, 0.9);
                t.case(f.eval(mu, lam).stratify(1e-9) == HexaStratum::Boundary2, 0.0);
            }
            _ => {
                // Distinguished base points sit in the third stratum.
                let x2 = sample::complex_in_disc(&mut rng, 0.9);
                let x3 = sample::unimodular(&mut rng);
                let x = TetraPoint::new(x2.conj() * x3, x2, x3);
                let p = HexaPoint::new(Complex::new(0.0, 0.0), x);
                let axis = HexaPoint::from_coords(
                    sample::complex_in_disc(&mut rng, 0.9),
                    Complex::new(0.0, 0.0),
                    Complex::new(0.0, 0.0),
                    sample::unimodular(&mut rng),
                );
                let ok = p.stratify(1e-9) == HexaStratum::Boundary3
                    && axis.stratify(1e-9) == HexaStratum::Boundary3;
                t.case(ok, 0.0);
            }
        }
    }
    t
}

/// The two-parameter analytic disc over `(a0, 0, r, 1−r)`: classification
/// and the product-modulus identity `(1−r)/(2−r)²·|1−h|²` on an `n × n`
/// grid for two base radii.
fn disc_family(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let side = (n as usize).max(8);
    let mut t = Tally::new();
    for r in [0.3, 0.6] {
        let a0 = 0.5 * (1.0 - r).sqrt();
        let phase = sample::unimodular(&mut rng);
        let f = Disc2Family::new(r, a0, 0.02 * phase, Complex::new(0.01, 0.005)).unwrap();
        for i in 0..side {
            for j in 0..side {
                let mu = Complex::from_polar(
                    0.9 * (i as f64 + 0.5) / side as f64,
                    2.0 * std::f64::consts::PI * j as f64 / side as f64,
                );
                let lam = Complex::from_polar(
                    0.9 * (j as f64 + 0.5) / side as f64,
                    2.0 * std::f64::consts::PI * i as f64 / side as f64,
                );
                let p = f.eval(mu, lam);
                let expect =
                    (1.0 - r) / (2.0 - r).powi(2) * (Complex::new(1.0, 0.0) - f.h(lam)).norm_sqr();
                let defect = ((p.x.x1 * p.x.x2 - p.x.x3).norm() - expect).abs();
                let ok = p.stratify(1e-9) == HexaStratum::Boundary2 && defect <= 1e-12;
                t.case(ok, defect);
            }
        }
    }
    t
}

/// Members map to members and the fiber identity
/// `e^{−u(τ(x))} = |m(x)|² e^{−u(x)}` holds to 1e−6.
fn fiber_identity(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let auto = sample::hexa_automorphism(&mut rng, 0.7);
        let p = sample::hexa_member(&mut rng, 1e-6);
        let image_member = auto.apply(&p).map(|q| q.is_member()).unwrap_or(false);
        let residual = fiber_identity_residual(&auto, &p.x).unwrap_or(f64::INFINITY);

        // The fiber rim over the base point is carried onto the image rim.
        let rim = HexaPoint::new(
            sample::unimodular(&mut rng) * e_minus_u(&p.x).unwrap().sqrt(),
            p.x,
        );
        let rim_ok = match auto.apply(&rim) {
            Ok(q) => (q.a.norm_sqr() - e_minus_u(&q.x).unwrap()).abs() <= 1e-6,
            Err(_) => false,
        };
        t.case(image_member && residual <= 1e-6 && rim_ok, residual);
    }
    t
}

/// Group laws: composition against pointwise action, inverse round-trips,
/// associativity, and the pinned kill-first-coordinate instance.
fn group_laws(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let t1 = sample::hexa_automorphism(&mut rng, 0.6);
        let t2 = sample::hexa_automorphism(&mut rng, 0.6);
        let t3 = sample::hexa_automorphism(&mut rng, 0.6);
        let p = sample::hexa_member(&mut rng, 1e-6);

        let mut residual = 0.0f64;
        let mut ok = true;

        match (t1.compose(&t2), t1.apply(&t2.apply(&p).unwrap_or(p))) {
            (Ok(comp), Ok(direct)) => {
                let via = comp.apply(&p).unwrap();
                residual = residual.max(point_distance(&via, &direct));
                ok &= point_distance(&via, &direct) <= 1e-10;
            }
            _ => ok = false,
        }

        match t1.inverse() {
            Ok(inv) => {
                let round = inv.apply(&t1.apply(&p).unwrap()).unwrap();
                residual = residual.max(point_distance(&round, &p));
                ok &= point_distance(&round, &p) <= 1e-10;
            }
            Err(_) => ok = false,
        }

        match (t1.compose(&t2).and_then(|u| u.compose(&t3)),
               t2.compose(&t3).and_then(|u| t1.compose(&u))) {
            (Ok(left), Ok(right)) => {
                let lp = left.apply(&p).unwrap();
                let rp = right.apply(&p).unwrap();
                residual = residual.max(point_distance(&lp, &rp));
                ok &= point_distance(&lp, &rp) <= 1e-9;
            }
            _ => ok = false,
        }

        // Pinned instance: z1 = x1, z2 = 0 annihilates the first coordinate.
        let x = sample::tetra_interior(&mut rng, 1e-3);
        let a = sample::complex_in_disc(&mut rng, 0.5);
        let xi1 = sample::unimodular(&mut rng);
        let xi2 = sample::unimodular(&mut rng);
        let omega = sample::unimodular(&mut rng);
        let inst = HexaAutomorphism::new(xi1, xi2, x.x1, Complex::new(0.0, 0.0), false, omega)
            .unwrap();
        let got = inst.apply(&HexaPoint::new(a, x)).unwrap();
        let den = 1.0 - x.x1.norm_sqr();
        let want = HexaPoint::from_coords(
            omega * xi2 * a / den.sqrt(),
            Complex::new(0.0, 0.0),
            xi2 * (x.x2 - x.x1.conj() * x.x3) / den,
            -xi1 * xi2 * (x.x1 * x.x2 - x.x3) / den,
        );
        let inst_residual = point_distance(&got, &want);
        residual = residual.max(inst_residual);
        ok &= inst_residual <= 1e-12;

        t.case(ok, residual);
    }
    t
}

fn point_distance(p: &HexaPoint, q: &HexaPoint) -> f64 {
    (p.a - q.a).norm()
        + (p.x.x1 - q.x.x1).norm()
        + (p.x.x2 - q.x.x2).norm()
        + (p.x.x3 - q.x.x3).norm()
}

/// Monotone structure chain, optimizer-vs-closed-form agreement for the
/// unstructured case, and witness feasibility.
fn mu_sandwich(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = sample::matrix(&mut rng, 1.5);
        let s = mu_value(&a, MuStructure::Scalar);
        let d = mu_value(&a, MuStructure::Diagonal);
        let u = mu_value(&a, MuStructure::UpperTriangular);
        let f = mu_value(&a, MuStructure::Full);
        let chain = s.value <= d.value + 1e-3
            && d.value <= u.value + 1e-3
            && u.value <= f.value + 1e-3;

        let searched = mu_full_multistart(&a).value;
        let full_gap = (searched - f.value).abs() / f.value.max(1e-12);

        let mut witness_ok = true;
        let mut max_res = 0.0f64;
        for r in [&s, &d, &u, &f] {
            if let Some(w) = r.witness {
                max_res = max_res.max(r.residual);
                witness_ok &= r.residual <= WITNESS_RESIDUAL_BOUND;
                let _ = w;
            }
        }
        if let Some(w) = d.witness {
            witness_ok &= w.a12 == Complex::new(0.0, 0.0) && w.a21 == Complex::new(0.0, 0.0);
        }
        if let Some(w) = u.witness {
            witness_ok &= w.a21 == Complex::new(0.0, 0.0);
        }

        t.case(chain && full_gap <= 1e-4 && witness_ok, full_gap.max(max_res));
    }
    t
}

/// `μ_diag(A) < 1 ⟺ (a11, a22, det A) ∈ E` outside the 1e−3 band.
fn mu_tetra_duality(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = sample::matrix(&mut rng, 1.5);
        let mu = mu_value(&a, MuStructure::Diagonal).value;
        if (mu - 1.0).abs() <= 1e-3 {
            t.case(true, 0.0);
            continue;
        }
        let member = TetraPoint::new(a.a11, a.a22, a.det()).is_member();
        let agree = (mu < 1.0) == member;
        t.case(agree, if agree { 0.0 } else { 1.0 });
    }
    t
}

/// Membership along a two-parameter slice against the unit-ball law
/// `|a|² + |λ|² < 1`, outside a 1e−8 band around the sphere.
///
/// With `diagonal` set the slice is `(a, λ, λ, λ²)` (where the kernel
/// factorizes and the computed fiber radius is `(1−|λ|²)²`, so failures
/// against the ball law are expected and reported honestly); otherwise the
/// slice is `(a, λ, 0, 0)`, where the law holds.
fn ball_slice(n: u64, seed: u64, diagonal: bool) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let a = sample::complex_in_square(&mut rng, 1.0);
        let lam = sample::complex_in_square(&mut rng, 1.0);
        let gap = a.norm_sqr() + lam.norm_sqr() - 1.0;
        if gap.abs() <= 1e-8 {
            t.case(true, 0.0);
            continue;
        }
        let p = if diagonal {
            HexaPoint::from_coords(a, lam, lam, lam * lam)
        } else {
            HexaPoint::from_coords(a, lam, Complex::new(0.0, 0.0), Complex::new(0.0, 0.0))
        };
        let agree = p.is_member() == (gap < 0.0);
        t.case(agree, if agree { 0.0 } else { 1.0 });
    }
    t
}

/// Finite-difference mixed second derivative of `u` at the origin along
/// both fiber slices.
fn hessian() -> Tally {
    let mut t = Tally::new();
    let est = hessian_u_origin(1e-3);
    t.case((est - 1.0).abs() <= 1e-4, (est - 1.0).abs());

    // The flipped slice by symmetry.
    let h = 1e-3;
    let u2 = |z: Complex| u_closed(&TetraPoint::new(Complex::new(0.0, 0.0), z, Complex::new(0.0, 0.0))).unwrap();
    let est2 = (u2(Complex::new(h, 0.0)) + u2(Complex::new(-h, 0.0))
        + u2(Complex::new(0.0, h))
        + u2(Complex::new(0.0, -h)))
        / (4.0 * h * h);
    t.case((est2 - 1.0).abs() <= 1e-4, (est2 - 1.0).abs());
    t
}

/// Members stay members under the radial dilations and the
/// weight-(1,1,1,2) circle action.
fn quasi_balanced(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let p = sample::hexa_member(&mut rng, 0.0);
        let mut ok = true;
        for r in [0.25, 0.5, 0.9, 1.0] {
            ok &= p.dilate(r).is_member();
        }
        for k in 0..8 {
            let lam = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 8.0);
            ok &= p.quasi_rotate(lam).is_member();
        }
        t.case(ok, if ok { 0.0 } else { 1.0 });
    }
    t
}

/// Orbit normalization: convergence within 10⁴ steps to 1e−10, invariance
/// of the radius under 10 pre-compositions, and exactness on the
/// single-coordinate family.
fn orbit_radius(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let x = sample::tetra_interior(&mut rng, 1e-2);
        let Ok((r, _steps)) = x.orbit_radius_bounded(1e-10, 10_000) else {
            t.case(false, f64::INFINITY);
            continue;
        };
        let mut ok = true;
        let mut residual = 0.0f64;
        for _ in 0..10 {
            let m1 = sample::disc_automorphism(&mut rng, 0.6);
            let m2 = sample::disc_automorphism(&mut rng, 0.6);
            let flip = sample::coin(&mut rng);
            let y = x.kernel_transform(&m1, &m2, flip).unwrap();
            match y.orbit_radius_bounded(1e-10, 10_000) {
                Ok((r2, _)) => {
                    residual = residual.max((r - r2).abs());
                    ok &= (r - r2).abs() <= 1e-6;
                }
                Err(_) => ok = false,
            }
        }
        // Single-coordinate points normalize to the origin in one step.
        let single = TetraPoint::new(
            sample::complex_in_disc(&mut rng, 0.95),
            Complex::new(0.0, 0.0),
            Complex::new(0.0, 0.0),
        );
        let (r0, _) = single.orbit_radius_bounded(1e-10, 10_000).unwrap();
        residual = residual.max(r0);
        ok &= r0 <= 1e-10;
        t.case(ok, residual);
    }
    t
}

/// Closed-form fiber radius against the brute-force supremum.
fn u_consistency(n: u64, seed: u64) -> Tally {
    let mut rng = sample::rng(seed);
    let mut t = Tally::new();
    for _ in 0..n {
        let x = sample::tetra_interior(&mut rng, 1e-2);
        let uc = u_closed(&x).unwrap();
        let ub = u_bruteforce(&x, 48, 8);
        let gap = ((-uc).exp() - (-ub).exp()).abs();
        let ok = ub <= uc + 1e-9 && gap <= 1e-4;
        t.case(ok, gap);
    }
    t
}

/// The supremum of `|Ψ|²` over the fiber family at the ordinary boundary
/// points `(0, r, 1−r)` reaches `1/(1−r)` from below.
fn boundary_sup(_n: u64) -> Tally {
    let mut t = Tally::new();
    for r in [0.25, 0.5, 0.75] {
        let x = TetraPoint::new(
            Complex::new(0.0, 0.0),
            Complex::new(r, 0.0),
            Complex::new(1.0 - r, 0.0),
        );
        let sup_sq = u_bruteforce(&x, 64, 8).exp();
        let target = 1.0 / (1.0 - r);
        let ok = sup_sq >= target - 1e-2 && sup_sq <= target * (1.0 + 1e-9);
        t.case(ok, (target - sup_sq).abs());
    }
    t
}
