//! Verification suites behind `verify`.
//!
//! Each suite returns a [`SuiteReport`] of named checks with the largest
//! deviation observed and the threshold it was held to. Thresholds are
//! fixed here; a caller-supplied tolerance override replaces them only when
//! explicitly given. Randomized suites draw from [`SplitMix64`], so a
//! (seed, samples) pair pins the exact sample stream.

use serde::{Deserialize, Serialize};

use crate::dual::DualScalar;
use crate::dual_vector::{dual_det3, triple_product, DualVec3};
use crate::expansions::{self, ReconcileReport};
use crate::minkowski::Vec3L;
use crate::motion::{
    c_axis, frame_at, frame_matrix, orbit_point, verify_frame_constraints, LambdaSign,
    MotionConfig, OrbitSpec,
};
use crate::rng::SplitMix64;
use crate::sampler::{
    congruence_residual_v3, helicoid_residual, sample_congruence, surface_residual_v1_sigma0,
    Axis, Generator, GridSpec, HelicoidForm,
};
use crate::study::{dual_to_line, line_from_point_direction, line_point, line_to_dual, point_at};

/// Ring-axiom checks, relative to the operand scale.
pub const TOL_RING: f64 = 1e-14;
/// Algebraic identities, relative to the operand scale.
pub const TOL_IDENTITY: f64 = 1e-12;
/// Orbit specialization to a frame vector: exact up to final rounding.
pub const TOL_SPECIAL_ORBIT: f64 = 1e-13;
/// Surface and helicoid reproduction.
pub const TOL_SURFACE: f64 = 1e-9;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    pub max_dev: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, samples: usize, checks: Vec<CheckResult>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        SuiteReport {
            suite: suite.to_string(),
            seed,
            samples,
            checks,
            pass,
        }
    }
}

fn check(name: &str, samples: usize, max_dev: f64, threshold: f64) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        samples,
        max_dev,
        threshold,
        pass: max_dev <= threshold,
    }
}

/// All suites, in the order `all` runs them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    Dual,
    Lemma21,
    Frame,
    Study,
    Theorem31,
    Theorem32,
    Helicoid,
    Reconcile,
}

pub const ALL_SUITES: [SuiteId; 8] = [
    SuiteId::Dual,
    SuiteId::Lemma21,
    SuiteId::Frame,
    SuiteId::Study,
    SuiteId::Theorem31,
    SuiteId::Theorem32,
    SuiteId::Helicoid,
    SuiteId::Reconcile,
];

impl SuiteId {
    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::Dual => "dual",
            SuiteId::Lemma21 => "lemma21",
            SuiteId::Frame => "frame",
            SuiteId::Study => "study",
            SuiteId::Theorem31 => "theorem31",
            SuiteId::Theorem32 => "theorem32",
            SuiteId::Helicoid => "helicoid",
            SuiteId::Reconcile => "reconcile",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteId> {
        ALL_SUITES.iter().copied().find(|id| id.as_str() == s)
    }
}

/// Run one suite. The reconcile suite also returns its full per-formula
/// reports; the others return an empty list.
pub fn run_suite(
    id: SuiteId,
    samples: usize,
    seed: u64,
    tol_override: Option<f64>,
) -> (SuiteReport, Vec<ReconcileReport>) {
    match id {
        SuiteId::Dual => (dual_suite(samples, seed, tol_override), Vec::new()),
        SuiteId::Lemma21 => (lemma21_suite(samples, seed, tol_override), Vec::new()),
        SuiteId::Frame => (frame_suite(samples, seed, tol_override), Vec::new()),
        SuiteId::Study => (study_suite(samples, seed, tol_override), Vec::new()),
        SuiteId::Theorem31 => (v1_surface_suite(seed, tol_override), Vec::new()),
        SuiteId::Theorem32 => (v3_congruence_suite(seed, tol_override), Vec::new()),
        SuiteId::Helicoid => (helicoid_suite(seed, tol_override), Vec::new()),
        SuiteId::Reconcile => reconcile_suite(samples, seed, tol_override),
    }
}

fn sup6(v: &DualVec3) -> f64 {
    let r = v.re.as_array();
    let d = v.du.as_array();
    r.iter()
        .chain(d.iter())
        .fold(1.0_f64, |m, x| m.max(x.abs()))
}

fn dual_dev(a: &DualScalar, b: &DualScalar) -> f64 {
    (a.re - b.re).abs().max((a.du - b.du).abs())
}

fn vec_dev(a: &DualVec3, b: &DualVec3) -> f64 {
    let ra = a.re.as_array();
    let rb = b.re.as_array();
    let da = a.du.as_array();
    let db = b.du.as_array();
    let mut m = 0.0_f64;
    for i in 0..3 {
        m = m.max((ra[i] - rb[i]).abs()).max((da[i] - db[i]).abs());
    }
    m
}

fn random_dual_scalar(rng: &mut SplitMix64) -> DualScalar {
    DualScalar::new(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
}

fn random_dual_vec(rng: &mut SplitMix64) -> DualVec3 {
    DualVec3::new(
        Vec3L::new(
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
        ),
        Vec3L::new(
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
        ),
    )
}

/// Ring axioms, nilpotency and division over random dual scalars.
pub fn dual_suite(samples: usize, seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol_ring = tol_override.unwrap_or(TOL_RING);
    let tol_div = tol_override.unwrap_or(TOL_IDENTITY);
    let mut rng = SplitMix64::new(seed);

    let mut assoc = 0.0_f64;
    let mut comm = 0.0_f64;
    let mut dist = 0.0_f64;
    let mut nilpotent = 0.0_f64;
    let mut div = 0.0_f64;

    for _ in 0..samples {
        let a = random_dual_scalar(&mut rng);
        let b = random_dual_scalar(&mut rng);
        let c = random_dual_scalar(&mut rng);

        let scale = [a, b, c]
            .iter()
            .fold(1.0_f64, |m, x| m.max(x.re.abs()).max(x.du.abs()));

        assoc = assoc.max(dual_dev(&((a + b) + c), &(a + (b + c))) / scale);
        comm = comm.max(dual_dev(&(a * b), &(b * a)) / (scale * scale));
        dist = dist.max(dual_dev(&(a * (b + c)), &(a * b + a * c)) / (scale * scale));

        let pure_a = DualScalar::new(0.0, a.du);
        let pure_b = DualScalar::new(0.0, b.du);
        let prod = pure_a * pure_b;
        nilpotent = nilpotent.max(prod.re.abs().max(prod.du.abs()));

        // division inverts multiplication for invertible divisors; the
        // deviation is taken relative to the conditioning of the recovered
        // dual part, |a.re * b.du / b.re|, which is what the cancellation
        // in the quotient rule amplifies.
        let mut b_re = rng.uniform(-2.0, 2.0);
        while b_re.abs() <= 1e-6 {
            b_re = rng.uniform(-2.0, 2.0);
        }
        let bb = DualScalar::new(b_re, b.du);
        if let Ok(q) = (a * bb).try_div(bb) {
            let cond = (a.re * bb.du / bb.re).abs();
            let scale_re = a.re.abs().max(1.0);
            let scale_du = a.du.abs().max(cond).max(1.0);
            let dev = ((q.re - a.re).abs() / scale_re).max((q.du - a.du).abs() / scale_du);
            div = div.max(dev);
        }
    }

    SuiteReport::new(
        "dual",
        seed,
        samples,
        vec![
            check("add_associative", samples, assoc, tol_ring),
            check("mul_commutative", samples, comm, tol_ring),
            check("mul_distributive", samples, dist, tol_ring),
            check("eps_squared_zero", samples, nilpotent, 0.0),
            check("division_inverts", samples, div, tol_div),
        ],
    )
}

/// The five cross/inner identities over random dual vector tuples, with the
/// triple product checked against the independent determinant expansion.
pub fn lemma21_suite(samples: usize, seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol = tol_override.unwrap_or(TOL_IDENTITY);
    let mut rng = SplitMix64::new(seed);

    let mut antisym = 0.0_f64;
    let mut orth = 0.0_f64;
    let mut triple = 0.0_f64;
    let mut double_cross = 0.0_f64;
    let mut lagrange = 0.0_f64;

    for _ in 0..samples {
        let a = random_dual_vec(&mut rng);
        let b = random_dual_vec(&mut rng);
        let c = random_dual_vec(&mut rng);
        let d = random_dual_vec(&mut rng);
        let (sa, sb, sc, sd) = (sup6(&a), sup6(&b), sup6(&c), sup6(&d));

        let ab = a.cross(&b);
        antisym = antisym.max(vec_dev(&ab, &-b.cross(&a)) / (sa * sb));

        let o = dual_dev(&ab.inner(&a), &DualScalar::ZERO) / (sa * sa * sb);
        let o2 = dual_dev(&ab.inner(&b), &DualScalar::ZERO) / (sa * sb * sb);
        orth = orth.max(o).max(o2);

        let t = triple_product(&a, &b, &c);
        let det = dual_det3(&a, &b, &c);
        triple = triple.max(dual_dev(&t, &-det) / (sa * sb * sc));

        let lhs = ab.cross(&c);
        let rhs = b.scale(-a.inner(&c)) + a.scale(b.inner(&c));
        double_cross = double_cross.max(vec_dev(&lhs, &rhs) / (sa * sb * sc));

        let lhs = ab.inner(&c.cross(&d));
        let rhs = -(a.inner(&c) * b.inner(&d)) + a.inner(&d) * b.inner(&c);
        lagrange = lagrange.max(dual_dev(&lhs, &rhs) / (sa * sb * sc * sd));
    }

    SuiteReport::new(
        "lemma21",
        seed,
        samples,
        vec![
            check("cross_antisymmetric", samples, antisym, tol),
            check("cross_orthogonal", samples, orth, tol),
            check("triple_vs_determinant", samples, triple, tol),
            check("double_cross", samples, double_cross, tol),
            check("lagrange", samples, lagrange, tol),
        ],
    )
}

/// Frame grid used by the frame suite: the published parameter lattice plus
/// the sigma = 0 line with psi away from zero.
fn frame_grid() -> Vec<(f64, f64, f64, f64)> {
    let psis: Vec<f64> = (0..9).map(|i| -2.0 + 0.5 * i as f64).collect();
    let stars = [-1.0, 0.0, 1.0];
    let sigmas = [-1.5, -0.5, 0.0, 0.5, 1.5];
    let mut grid = Vec::new();
    for &psi in &psis {
        for &psi_star in &stars {
            for &sigma in &sigmas {
                for &sigma_star in &stars {
                    if sigma == 0.0 && psi == 0.0 {
                        continue;
                    }
                    grid.push((psi, psi_star, sigma, sigma_star));
                }
            }
        }
    }
    grid
}

/// Frame constraints, orthonormality, coplanarity, matrix orthogonality,
/// orientation flip, and the orbit pseudo-norm identities.
pub fn frame_suite(samples: usize, seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol = tol_override.unwrap_or(TOL_IDENTITY);
    let tol_special = tol_override.unwrap_or(TOL_SPECIAL_ORBIT);

    let mut orthonormality = 0.0_f64;
    let mut v2_cross = 0.0_f64;
    let mut constraints = 0.0_f64;
    let mut coplanarity = 0.0_f64;
    let mut matrix_orth = 0.0_f64;
    let mut branch_flip = 0.0_f64;
    let mut axis_on_sphere = 0.0_f64;

    let grid = frame_grid();
    for &(psi, psi_star, sigma, sigma_star) in &grid {
        let cfg = MotionConfig::new(DualScalar::new(sigma, sigma_star), LambdaSign::Plus);
        let psi_d = DualScalar::new(psi, psi_star);
        let pose = frame_at(&cfg, psi_d).expect("grid avoids degenerate configurations");

        let one = DualScalar::ONE;
        orthonormality = orthonormality
            .max(dual_dev(&pose.v1.inner(&pose.v1), &one))
            .max(dual_dev(&pose.v2.inner(&pose.v2), &one))
            .max(dual_dev(&pose.v3.inner(&pose.v3), &-one))
            .max(dual_dev(&pose.v1.inner(&pose.v2), &DualScalar::ZERO))
            .max(dual_dev(&pose.v1.inner(&pose.v3), &DualScalar::ZERO))
            .max(dual_dev(&pose.v2.inner(&pose.v3), &DualScalar::ZERO));

        v2_cross = v2_cross.max(vec_dev(&pose.v2, &pose.v1.cross(&pose.v3)));

        let res = verify_frame_constraints(&pose, &cfg).expect("residuals evaluate");
        constraints = constraints
            .max(res.unit_norm.re.abs())
            .max(res.unit_norm.du.abs())
            .max(res.v3_orthogonality.re.abs())
            .max(res.v3_orthogonality.du.abs())
            .max(res.coplanarity_linear.re.abs())
            .max(res.coplanarity_linear.du.abs());
        coplanarity = coplanarity
            .max(res.coplanarity_det.re.abs())
            .max(res.coplanarity_det.du.abs());

        matrix_orth = matrix_orth.max(frame_matrix(&pose).orthogonality_defect());

        let axis = c_axis(&cfg).expect("axis evaluates");
        axis_on_sphere = axis_on_sphere
            .max((axis.re.inner(&axis.re) + 1.0).abs())
            .max(axis.re.inner(&axis.du).abs());

        let cfg_minus = MotionConfig::new(DualScalar::new(sigma, sigma_star), LambdaSign::Minus);
        let minus = frame_at(&cfg_minus, psi_d).expect("minus branch evaluates");
        branch_flip = branch_flip
            .max(vec_dev(&minus.v1, &-pose.v1))
            .max(vec_dev(&minus.v2, &-pose.v2))
            .max(vec_dev(&minus.v3, &pose.v3));
        let res_minus = verify_frame_constraints(&minus, &cfg_minus).expect("residuals evaluate");
        branch_flip = branch_flip.max(res_minus.max_abs());
    }

    // orbit identities over random admissible parameters
    let mut rng = SplitMix64::new(seed);
    let mut pseudo_norm = 0.0_f64;
    let mut p0_is_v3 = 0.0_f64;
    let mut q0_is_v1 = 0.0_f64;
    for _ in 0..samples {
        let psi = DualScalar::new(rng.signed_uniform(0.05, 2.0), rng.uniform(-1.0, 1.0));
        let delta = DualScalar::new(rng.signed_uniform(0.3, 1.5), rng.uniform(-1.0, 1.0));
        let cfg = MotionConfig::new(delta, LambdaSign::Plus);
        let pose = frame_at(&cfg, psi).expect("admissible draw");

        let p = DualScalar::new(rng.uniform(0.2, 1.2), rng.uniform(-1.0, 1.0));
        let q = DualScalar::new(rng.uniform(0.2, 1.2), rng.uniform(-1.0, 1.0));
        let spec = OrbitSpec::new(p, q).expect("p + q stays positive");
        let x = orbit_point(&pose, &spec).expect("orbit evaluates");
        let lhs = x.inner(&x) * (p + q).sinh().expect("finite");
        let rhs = (p - q).sinh().expect("finite");
        pseudo_norm = pseudo_norm.max(dual_dev(&lhs, &rhs));

        let spec = OrbitSpec::new(DualScalar::ZERO, q).expect("q positive");
        let x = orbit_point(&pose, &spec).expect("orbit evaluates");
        p0_is_v3 = p0_is_v3.max(vec_dev(&x, &pose.v3));

        let spec = OrbitSpec::new(p, DualScalar::ZERO).expect("p positive");
        let x = orbit_point(&pose, &spec).expect("orbit evaluates");
        q0_is_v1 = q0_is_v1.max(vec_dev(&x, &pose.v1));
    }

    SuiteReport::new(
        "frame",
        seed,
        samples,
        vec![
            check("orthonormality", grid.len(), orthonormality, tol),
            check("v2_is_v1_cross_v3", grid.len(), v2_cross, tol),
            check("constraint_residuals", grid.len(), constraints, tol),
            check("coplanarity_det", grid.len(), coplanarity, tol),
            check("matrix_orthogonality", grid.len(), matrix_orth, tol),
            check("axis_on_sphere", grid.len(), axis_on_sphere, tol),
            check("branch_flip", grid.len(), branch_flip, tol),
            check("orbit_pseudo_norm", samples, pseudo_norm, tol),
            check("orbit_p0_is_v3", samples, p0_is_v3, tol_special),
            check("orbit_q0_is_v1", samples, q0_is_v1, tol_special),
        ],
    )
}

/// Line packing round trips, point recovery collinearity and moment
/// recovery over random timelike lines.
pub fn study_suite(samples: usize, seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol = tol_override.unwrap_or(TOL_IDENTITY);
    let mut rng = SplitMix64::new(seed);

    let mut on_sphere = 0.0_f64;
    let mut round_trip = 0.0_f64;
    let mut collinearity = 0.0_f64;
    let mut moment_recovery = 0.0_f64;
    let mut moment_invariance = 0.0_f64;

    for _ in 0..samples {
        let m = Vec3L::new(
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
        );
        let c1 = rng.uniform(-1.0, 1.0);
        let c2 = rng.uniform(-1.0, 1.0);
        let spatial = (c1 * c1 + c2 * c2).sqrt();
        let sign = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
        let dir = Vec3L::new(c1, c2, sign * (spatial + rng.uniform(0.2, 2.0)));

        let line = line_from_point_direction(m, dir).expect("timelike by construction");
        let packed = line_to_dual(&line);
        on_sphere = on_sphere
            .max((packed.re.inner(&packed.re) + 1.0).abs())
            .max(packed.re.inner(&packed.du).abs());

        let back = dual_to_line(&packed, 1e-9).expect("round trip stays on the sphere");
        let scale = 1.0 + m.euclid_norm_sq().sqrt();
        let rt = (back.direction - line.direction)
            .as_array()
            .iter()
            .chain((back.moment - line.moment).as_array().iter())
            .fold(0.0_f64, |mx, x| mx.max(x.abs()));
        round_trip = round_trip.max(rt / scale);

        let lambda = rng.uniform(-3.0, 3.0);
        let y0 = point_at(&packed, 0.0, 1e-9).expect("on sphere");
        let y = point_at(&packed, lambda, 1e-9).expect("on sphere");
        let yscale = (1.0 + (y - y0).euclid_norm_sq().sqrt()) * 2.0;
        let cross = (y - y0).cross(&line.direction);
        collinearity = collinearity.max(
            cross
                .as_array()
                .iter()
                .fold(0.0_f64, |mx, x| mx.max(x.abs()))
                / yscale,
        );

        let again = line_from_point_direction(y, line.direction).expect("direction unchanged");
        let mscale = 1.0 + y.euclid_norm_sq().sqrt();
        let md = (again.moment - line.moment)
            .as_array()
            .iter()
            .fold(0.0_f64, |mx, x| mx.max(x.abs()));
        moment_recovery = moment_recovery.max(md / mscale);

        let t = rng.uniform(-2.0, 2.0);
        let shifted =
            line_from_point_direction(m + line.direction.scale(t), dir).expect("same line");
        let sd = (shifted.moment - line.moment)
            .as_array()
            .iter()
            .chain((shifted.direction - line.direction).as_array().iter())
            .fold(0.0_f64, |mx, x| mx.max(x.abs()));
        moment_invariance = moment_invariance.max(sd / scale);
    }

    SuiteReport::new(
        "study",
        seed,
        samples,
        vec![
            check("packed_on_sphere", samples, on_sphere, tol),
            check("round_trip", samples, round_trip, tol),
            check("collinearity", samples, collinearity, tol),
            check("moment_recovery", samples, moment_recovery, tol),
            check("moment_invariance", samples, moment_invariance, tol),
        ],
    )
}

/// The v3-orbit congruence relations over a 21 x 5 x 5 grid.
pub fn v3_congruence_suite(seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol = tol_override.unwrap_or(TOL_IDENTITY);
    let grid = GridSpec {
        psi: Axis::new(-2.0, 2.0, 21),
        psi_star: Axis::new(-1.0, 1.0, 5),
        ruling: Axis::new(-2.0, 2.0, 5),
        fixed: expansions::CaseParams {
            sigma: 0.8,
            sigma_star: 0.2,
            ..Default::default()
        },
    };
    let set = sample_congruence(Generator::V3, &grid, LambdaSign::Plus)
        .expect("grid is admissible");
    let mut sq = 0.0_f64;
    let mut plane = 0.0_f64;
    for r in &set.records {
        let (r1, r2) = congruence_residual_v3(r.point, r.ruling, r.psi_star);
        sq = sq.max(r1.abs());
        plane = plane.max(r2.abs());
    }
    SuiteReport::new(
        "theorem32",
        seed,
        set.records.len(),
        vec![
            check("skipped_cells", 1, set.skipped as f64, 0.0),
            check("sq_difference", set.records.len(), sq, tol),
            check("plane_coordinate", set.records.len(), plane, tol),
        ],
    )
}

/// The v1-orbit plane and ruled-surface reproduction at sigma = 0.
pub fn v1_surface_suite(seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol = tol_override.unwrap_or(TOL_SURFACE);
    let mut surface = 0.0_f64;
    let mut plane = 0.0_f64;
    let mut n = 0usize;
    for sigma_star in [0.1, 0.3, 1.0] {
        let grid = GridSpec {
            psi: Axis::new(0.2, 2.0, 19),
            psi_star: Axis::new(-0.5, 0.7, 3),
            ruling: Axis::new(-2.0, 2.0, 9),
            fixed: expansions::CaseParams {
                sigma: 0.0,
                sigma_star,
                ..Default::default()
            },
        };
        let set = sample_congruence(Generator::V1, &grid, LambdaSign::Minus)
            .expect("grid avoids psi = 0");
        assert_eq!(set.skipped, 0, "no degenerate cells on this grid");
        for r in &set.records {
            surface = surface.max(surface_residual_v1_sigma0(r.point, r.psi, r.ruling).abs());
            plane = plane.max((r.point.c1 - r.psi_star).abs());
            n += 1;
        }
    }
    SuiteReport::new(
        "theorem31",
        seed,
        n,
        vec![
            check("surface_residual", n, surface, tol),
            check("plane_coordinate", n, plane, tol),
        ],
    )
}

/// The helicoid relation on the v2-orbit congruence at sigma = 0 with the
/// ruling tied to the sweep angle, in both multiplier orientations.
pub fn helicoid_suite(seed: u64, tol_override: Option<f64>) -> SuiteReport {
    let tol = tol_override.unwrap_or(TOL_SURFACE);
    let mut residual = 0.0_f64;
    let mut mirror = 0.0_f64;
    let mut n = 0usize;
    for sigma_star in [0.1, 0.3, 1.0] {
        for k in [0.5, 1.0, 2.0] {
            for i in 0..19 {
                let psi = 0.2 + (2.0 - 0.2) * (i as f64) / 18.0;
                let u = k * psi;
                let psi_d = DualScalar::new(psi, 0.4);
                let delta = DualScalar::new(0.0, sigma_star);

                let cfg = MotionConfig::new(delta, LambdaSign::Minus);
                let pose = frame_at(&cfg, psi_d).expect("psi away from zero");
                let g = line_point(&pose.v2, u, 1e-9).expect("v2 is unit spacelike");
                let r = helicoid_residual(g, k, HelicoidForm::G1FromG2G3)
                    .expect("ratio inside (-1,1)");
                residual = residual.max(r.abs());

                // the opposite orientation realizes the mirrored relation
                let cfg = MotionConfig::new(delta, LambdaSign::Plus);
                let pose = frame_at(&cfg, psi_d).expect("psi away from zero");
                let g = line_point(&pose.v2, u, 1e-9).expect("v2 is unit spacelike");
                let r = helicoid_residual(g, -k, HelicoidForm::G1FromG2G3)
                    .expect("ratio inside (-1,1)");
                mirror = mirror.max(r.abs());
                n += 1;
            }
        }
    }
    SuiteReport::new(
        "helicoid",
        seed,
        n,
        vec![
            check("helicoid_residual", n, residual, tol),
            check("mirror_orientation", n, mirror, tol),
        ],
    )
}

/// Reconcile every expanded formula and compare verdicts with the committed
/// ledger. The suite passes when the verdicts equal the ledger, not when
/// everything matches the canonical path.
pub fn reconcile_suite(
    samples: usize,
    seed: u64,
    tol_override: Option<f64>,
) -> (SuiteReport, Vec<ReconcileReport>) {
    let tol = tol_override.unwrap_or(expansions::RECONCILE_DEFAULT_TOL);
    let reports = expansions::reconcile_all(samples, seed, tol);
    let moved = expansions::diff_with_expected(&reports);
    let checks = reports
        .iter()
        .map(|r| {
            let stable = !moved.contains(&r.formula);
            CheckResult {
                name: r.formula.clone(),
                samples: r.samples,
                max_dev: r.max_dev[0].max(r.max_dev[1]).max(r.max_dev[2]),
                threshold: tol,
                pass: stable,
            }
        })
        .collect();
    (SuiteReport::new("reconcile", seed, samples, checks), reports)
}
