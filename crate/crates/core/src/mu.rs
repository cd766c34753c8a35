//! Structured singular values of 2×2 matrices.
//!
//! `μ_E(A) = 1/inf{‖X‖ : X ∈ E, det(I − AX) = 0}`, zero when no `X` in the
//! structure solves the constraint. The scalar and unstructured cases reduce
//! to the spectral radius and the operator norm; the diagonal and
//! upper-triangular cases are solved numerically by eliminating one variable
//! exactly from the bilinear constraint
//! `det(I − AX) = 1 − a11 p − a21 q − a22 s + det(A) p s`
//! and running a deterministic multistart minimization over the remaining
//! free variables, so every witness is feasible by construction.

use alloc::vec::Vec;

use num_complex::Complex64 as Complex;
#[allow(unused_imports)] // method fallbacks for no_std builds
use num_traits::Float;

use crate::hexa::HexaPoint;
use crate::scalar::{op_norm, spectral_radius, top_singular_triple, Matrix2};
use crate::search::{compass_max, TopK};
use crate::tetra::TetraPoint;

/// Admissible perturbation structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuStructure {
    /// `{αI}` — μ is the spectral radius.
    Scalar,
    /// Diagonal matrices — the tetrablock structure.
    Diagonal,
    /// Upper-triangular matrices — the hexablock structure.
    UpperTriangular,
    /// All of `M_2(C)` — μ is the operator norm.
    Full,
}

/// A μ value together with a minimizing witness when one exists.
#[derive(Debug, Clone, Copy)]
pub struct MuResult {
    pub value: f64,
    /// The minimizing `X` (exactly in the requested structure); `None` when
    /// the constraint has no solution and the value is 0 by convention.
    pub witness: Option<Matrix2>,
    /// `|det(I − A X_witness)|`.
    pub residual: f64,
    /// Set when the refined multistart endpoints spread by more than 1e−4
    /// relative, signalling a rugged landscape.
    pub warning: bool,
}

/// The coordinates `(a21, a11, a22, det A)` of a matrix, the embedding that
/// carries the upper-triangular μ over to the hexablock.
pub fn hexa_coords(a: &Matrix2) -> HexaPoint {
    HexaPoint::from_coords(a.a21, a.a11, a.a22, a.det())
}

/// Coefficient threshold below which the `q` slot is treated as absent from
/// the constraint.
const COEF_TINY: f64 = 1e-8;
/// Feasibility bound on `|det(I − AX)|` for returned witnesses.
pub const WITNESS_RESIDUAL_BOUND: f64 = 1e-8;

pub fn mu_value(a: &Matrix2, structure: MuStructure) -> MuResult {
    match structure {
        MuStructure::Scalar => mu_scalar(a),
        MuStructure::Full => mu_full(a),
        MuStructure::Diagonal => mu_diagonal(a),
        MuStructure::UpperTriangular => mu_upper(a),
    }
}

fn zero_result() -> MuResult {
    MuResult { value: 0.0, witness: None, residual: 0.0, warning: false }
}

fn residual(a: &Matrix2, x: &Matrix2) -> f64 {
    let ax = *a * *x;
    (Complex::new(1.0, 0.0) - ax.a11 - ax.a22 + ax.a11 * ax.a22 - ax.a12 * ax.a21).norm()
}

fn mu_scalar(a: &Matrix2) -> MuResult {
    let (l1, l2) = a.eigenvalues();
    let lam = if l1.norm() >= l2.norm() { l1 } else { l2 };
    if lam.norm() <= 1e-14 {
        return zero_result();
    }
    let x = Matrix2::scalar(Complex::new(1.0, 0.0) / lam);
    MuResult { value: lam.norm(), witness: Some(x), residual: residual(a, &x), warning: false }
}

fn mu_full(a: &Matrix2) -> MuResult {
    match top_singular_triple(a) {
        None => zero_result(),
        Some((sigma, u, v)) => {
            let x = Matrix2::new(
                v[0] * u[0].conj() / sigma,
                v[0] * u[1].conj() / sigma,
                v[1] * u[0].conj() / sigma,
                v[1] * u[1].conj() / sigma,
            );
            MuResult { value: sigma, witness: Some(x), residual: residual(a, &x), warning: false }
        }
    }
}

/// Search radius for the free variables, scaled so the whole computation is
/// equivariant under `A ↦ tA`.
fn search_radius(a: &Matrix2) -> f64 {
    2.0 / op_norm(a).max(1e-12)
}

/// 16 deterministic starts per complex variable: four radii, four phases.
fn var_starts(radius: f64) -> [Complex; 16] {
    let mut out = [Complex::ZERO; 16];
    let mut i = 0;
    for k in 0..4 {
        let r = radius * (k as f64 + 0.5) / 4.0;
        for j in 0..4 {
            out[i] = Complex::from_polar(r, core::f64::consts::FRAC_PI_2 * j as f64);
            i += 1;
        }
    }
    out
}

struct Minimizer {
    /// Refined endpoint values, for the spread warning.
    refined: Vec<f64>,
    best: Option<(f64, Matrix2)>,
}

impl Minimizer {
    fn new() -> Self {
        Minimizer { refined: Vec::new(), best: None }
    }

    fn offer(&mut self, norm: f64, x: Matrix2, refined: bool) {
        if refined {
            self.refined.push(norm);
        }
        if norm.is_finite() && self.best.map_or(true, |(n, _)| norm < n) {
            self.best = Some((norm, x));
        }
    }

    fn result(&self, a: &Matrix2) -> MuResult {
        match self.best {
            None => zero_result(),
            Some((norm, x)) => {
                let spread = self
                    .refined
                    .iter()
                    .fold((f64::INFINITY, 0.0f64), |(lo, hi), &v| (lo.min(v), hi.max(v)));
                let warning = self.refined.len() > 1
                    && (spread.1 - spread.0) / spread.0.max(1e-300) > 1e-4;
                MuResult {
                    value: 1.0 / norm,
                    witness: Some(x),
                    residual: residual(a, &x),
                    warning,
                }
            }
        }
    }
}

/// Diagonal structure: `X = diag(p, s)`, constraint
/// `1 − a11 p − a22 s + det(A) p s = 0`. One variable is eliminated exactly;
/// both elimination orders are searched.
fn mu_diagonal(a: &Matrix2) -> MuResult {
    let (c1, c2, d) = (a.a11, a.a22, a.det());
    if c1.norm() <= 1e-14 && c2.norm() <= 1e-14 && d.norm() <= 1e-14 {
        return zero_result();
    }
    let mut min = Minimizer::new();
    diag_branch(&mut min, c1, c2, d, search_radius(a), false);
    diag_branch(&mut min, c2, c1, d, search_radius(a), true);
    // Scalar witness seeds the ordering guarantee μ_scalar ≤ μ_diag.
    if spectral_radius(a) > 1e-12 {
        let (l1, l2) = a.eigenvalues();
        let lam = if l1.norm() >= l2.norm() { l1 } else { l2 };
        let p = Complex::new(1.0, 0.0) / lam;
        min.offer(p.norm(), Matrix2::diagonal(p, p), false);
    }
    min.result(a)
}

/// One elimination order: free `p`, dependent `s(p) = (c1 p − 1)/(d p − c2)`.
/// `swap` records that the roles were exchanged so the witness lands in the
/// right slots.
fn diag_branch(min: &mut Minimizer, c1: Complex, c2: Complex, d: Complex, radius: f64, swap: bool) {
    if d.norm() <= 1e-14 && c2.norm() <= 1e-14 {
        return; // dependent variable does not enter the constraint
    }
    let dependent = |p: Complex| -> Complex { (c1 * p - 1.0) / (d * p - c2) };
    let objective = |v: &[f64; 2]| -> f64 {
        let p = Complex::new(v[0], v[1]);
        let s = dependent(p);
        if !s.re.is_finite() || !s.im.is_finite() {
            return f64::NEG_INFINITY;
        }
        -p.norm().max(s.norm())
    };
    let mut top = TopK::new(8);
    for re_k in 0..16 {
        for im_k in 0..16 {
            let p = [
                radius * (2.0 * (re_k as f64 + 0.5) / 16.0 - 1.0),
                radius * (2.0 * (im_k as f64 + 0.5) / 16.0 - 1.0),
            ];
            top.push(objective(&p), p);
        }
    }
    let starts: Vec<[f64; 2]> = top.items().map(|&(_, s)| s).collect();
    for start in starts {
        let (v, neg_norm) =
            compass_max(objective, start, radius / 16.0, radius * 1e-10, 600, |_| {});
        let p = Complex::new(v[0], v[1]);
        let s = dependent(p);
        let (w1, w2) = if swap { (s, p) } else { (p, s) };
        min.offer(-neg_norm, Matrix2::diagonal(w1, w2), true);
    }
}

/// Upper-triangular structure: `X = [[p, q], [0, s]]`.
///
/// When `|a21|` is meaningful the constraint is solved for `q` exactly and
/// `(p, s)` are free; the diagonal sub-branch (`q = 0`, constraint on
/// `(p, s)`) is searched as well since its solutions sit on a thin set of
/// the free plane. When `a21` is absent the constraint is `q`-free and
/// `q = 0` is optimal.
fn mu_upper(a: &Matrix2) -> MuResult {
    let (c1, c2, d, cq) = (a.a11, a.a22, a.det(), a.a21);
    if cq.norm() <= COEF_TINY {
        let mut res = mu_diagonal(a);
        if res.witness.is_none() && cq.norm() > 1e-14 {
            // Constraint reachable through q alone.
            let q = Complex::new(1.0, 0.0) / cq;
            let x = Matrix2::new(Complex::ZERO, q, Complex::ZERO, Complex::ZERO);
            res = MuResult {
                value: 1.0 / q.norm(),
                witness: Some(x),
                residual: residual(a, &x),
                warning: false,
            };
        }
        return res;
    }
    let radius = search_radius(a);
    let q_of = |p: Complex, s: Complex| (1.0 - c1 * p - c2 * s + d * p * s) / cq;
    let objective = |v: &[f64; 4]| -> f64 {
        let p = Complex::new(v[0], v[1]);
        let s = Complex::new(v[2], v[3]);
        let q = q_of(p, s);
        -op_norm(&Matrix2::new(p, q, Complex::ZERO, s))
    };
    let mut top = TopK::new(8);
    for p in var_starts(radius) {
        for s in var_starts(radius) {
            let v = [p.re, p.im, s.re, s.im];
            top.push(objective(&v), v);
        }
    }
    let mut min = Minimizer::new();
    let starts: Vec<[f64; 4]> = top.items().map(|&(_, s)| s).collect();
    for start in starts {
        let (v, neg_norm) =
            compass_max(objective, start, radius / 16.0, radius * 1e-10, 800, |_| {});
        let p = Complex::new(v[0], v[1]);
        let s = Complex::new(v[2], v[3]);
        min.offer(-neg_norm, Matrix2::new(p, q_of(p, s), Complex::ZERO, s), true);
    }
    // Diagonal sub-branch: exact q = 0 solutions.
    let diag = mu_diagonal(a);
    if let Some(x) = diag.witness {
        min.offer(op_norm(&x), x, false);
    }
    min.result(a)
}

/// Multistart optimizer over the full matrix algebra; the independent route
/// against the closed-form `op_norm` value of [`mu_value`] with
/// [`MuStructure::Full`].
pub fn mu_full_multistart(a: &Matrix2) -> MuResult {
    let entries = a.entries();
    if entries.iter().all(|e| e.norm() <= 1e-14) {
        return zero_result();
    }
    let (c1, c2, d, cq, cr) = (a.a11, a.a22, a.det(), a.a21, a.a12);
    let radius = search_radius(a);
    let mut min = Minimizer::new();

    // Branch 1: eliminate q; free (p, r, s); q (a21 + d r) = 1 − a11 p − a12 r − a22 s + d p s.
    if cq.norm() > 1e-14 || d.norm() > 1e-14 {
        let q_of = |p: Complex, r: Complex, s: Complex| {
            (1.0 - c1 * p - cr * r - c2 * s + d * p * s) / (cq + d * r)
        };
        let objective = |v: &[f64; 6]| -> f64 {
            let p = Complex::new(v[0], v[1]);
            let r = Complex::new(v[2], v[3]);
            let s = Complex::new(v[4], v[5]);
            let den = cq + d * r;
            if den.norm() <= 1e-12 {
                return f64::NEG_INFINITY;
            }
            -op_norm(&Matrix2::new(p, q_of(p, r, s), r, s))
        };
        full_branch(&mut min, radius, objective, |v| {
            let p = Complex::new(v[0], v[1]);
            let r = Complex::new(v[2], v[3]);
            let s = Complex::new(v[4], v[5]);
            Matrix2::new(p, q_of(p, r, s), r, s)
        });
    }

    // Branch 2: eliminate r; free (p, q, s).
    if cr.norm() > 1e-14 || d.norm() > 1e-14 {
        let r_of = |p: Complex, q: Complex, s: Complex| {
            (1.0 - c1 * p - cq * q - c2 * s + d * p * s) / (cr + d * q)
        };
        let objective = |v: &[f64; 6]| -> f64 {
            let p = Complex::new(v[0], v[1]);
            let q = Complex::new(v[2], v[3]);
            let s = Complex::new(v[4], v[5]);
            let den = cr + d * q;
            if den.norm() <= 1e-12 {
                return f64::NEG_INFINITY;
            }
            -op_norm(&Matrix2::new(p, q, r_of(p, q, s), s))
        };
        full_branch(&mut min, radius, objective, |v| {
            let p = Complex::new(v[0], v[1]);
            let q = Complex::new(v[2], v[3]);
            let s = Complex::new(v[4], v[5]);
            Matrix2::new(p, q, r_of(p, q, s), s)
        });
    }

    // Diagonal fallback covers matrices whose q and r slots are absent.
    let diag = mu_diagonal(a);
    if let Some(x) = diag.witness {
        min.offer(op_norm(&x), x, false);
    }
    min.result(a)
}

fn full_branch(
    min: &mut Minimizer,
    radius: f64,
    objective: impl Fn(&[f64; 6]) -> f64,
    witness: impl Fn(&[f64; 6]) -> Matrix2,
) {
    let mut top = TopK::new(8);
    let mut axis = [Complex::ZERO; 9];
    axis[0] = Complex::ZERO;
    let mut i = 1;
    for k in 0..2 {
        let r = radius * (k as f64 + 1.0) / 2.0;
        for j in 0..4 {
            axis[i] = Complex::from_polar(r, core::f64::consts::FRAC_PI_2 * j as f64 + 0.3);
            i += 1;
        }
    }
    for p in axis {
        for r in axis {
            for s in axis {
                let v = [p.re, p.im, r.re, r.im, s.re, s.im];
                top.push(objective(&v), v);
            }
        }
    }
    let starts: Vec<[f64; 6]> = top.items().map(|&(_, s)| s).collect();
    for start in starts {
        let (v, neg) = compass_max(&objective, start, radius / 8.0, radius * 1e-11, 1200, |_| {});
        if neg.is_finite() {
            min.offer(-neg, witness(&v), true);
        }
    }
}

/// Cross-checks between the μ values and the domain memberships.
#[derive(Debug, Clone, Copy)]
pub struct MuDomainCrossCheck {
    pub mu_diag: f64,
    pub mu_upper: f64,
    /// `(a11, a22, det A)` lies in the tetrablock.
    pub tetra_member: bool,
    /// A slight inward dilation of `(a21, a11, a22, det A)` lies in the
    /// hexablock.
    pub hexa_dilated_member: bool,
    /// `|μ_diag − 1| ≤ 1e−3`: the agreement clause is vacuous in the band.
    pub diag_in_band: bool,
    pub diag_agrees: bool,
    /// `μ_upper < 1 − 1e−3` implies the dilated point is a member.
    pub upper_closure_ok: bool,
}

pub fn mu_domain_crosscheck(a: &Matrix2) -> MuDomainCrossCheck {
    let mu_diag = mu_value(a, MuStructure::Diagonal).value;
    let mu_upper = mu_value(a, MuStructure::UpperTriangular).value;
    let tetra_member = TetraPoint::new(a.a11, a.a22, a.det()).is_member();
    let hexa_dilated_member = hexa_coords(a).dilate(1.0 - 1e-6).is_member();
    let diag_in_band = (mu_diag - 1.0).abs() <= 1e-3;
    MuDomainCrossCheck {
        mu_diag,
        mu_upper,
        tetra_member,
        hexa_dilated_member,
        diag_in_band,
        diag_agrees: diag_in_band || ((mu_diag < 1.0) == tetra_member),
        upper_closure_ok: mu_upper >= 1.0 - 1e-3 || hexa_dilated_member,
    }
}
