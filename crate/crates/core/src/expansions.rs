//! Hand-expanded coordinate forms of the motion's orbits, kept verbatim,
//! and the harness that reconciles them against the dual-arithmetic path.
//!
//! Every function here evaluates a classical closed-form expansion exactly
//! as written out in real scalar arithmetic, including the places where the
//! expansion disagrees with the defining dual-arithmetic computation in
//! [`crate::motion`]. Nothing is corrected silently: the [`reconcile`]
//! harness evaluates each expansion and its canonical counterpart over a
//! seeded parameter cloud, reports the largest deviation per coordinate,
//! and issues a MATCH/MISMATCH verdict per formula. The committed expected
//! ledger (`data/reconcile_expected.json`) freezes those verdicts; the
//! verification suite fails if a code change moves any of them.
//!
//! Orientation. The expansions of the v1- and v2-orbit congruences realize
//! the `minus` multiplier orientation of [`crate::motion::LambdaSign`],
//! while the frame-vector expansions realize `plus`. Each reconcile entry
//! records the orientation it compares under, chosen per formula so that a
//! verdict isolates genuine term-level discrepancies instead of a global
//! sign convention. Throughout, `A = sinh(psi)^2 + tanh(sigma)^2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dual::DualScalar;
use crate::error::{Error, Result};
use crate::minkowski::Vec3L;
use crate::motion::{
    frame_at, orbit_point, FramePose, LambdaSign, MotionConfig, OrbitSpec, DEGENERACY_THRESHOLD,
};
use crate::rng::SplitMix64;
use crate::sampler::{
    congruence_residual_v3, helicoid_residual, surface_residual_v1_sigma0, HelicoidForm,
};
use crate::study::{line_point, raw_point};

/// Default harness tolerance for MATCH verdicts.
pub const RECONCILE_DEFAULT_TOL: f64 = 1e-9;

/// Gate tolerance when recovering points from frame vectors.
const LINE_GATE_TOL: f64 = 1e-9;

/// Real parameters of the expanded case formulas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CaseParams {
    pub psi: f64,
    pub psi_star: f64,
    pub sigma: f64,
    pub sigma_star: f64,
    pub p: f64,
    pub p_star: f64,
    pub q: f64,
    pub q_star: f64,
    /// Ruling parameter of the orbit congruences.
    pub lambda: f64,
    /// Ruling parameter of the v2-orbit congruence.
    pub u: f64,
    /// The orbit constant `1/sinh(p+q)`, supplied by the caller.
    pub a: f64,
    /// Helicoid constant coupling the ruling parameter to the sweep angle.
    pub k: f64,
}

impl Default for CaseParams {
    /// Representative non-degenerate values.
    fn default() -> Self {
        let p = 0.6;
        let q = 0.5;
        CaseParams {
            psi: 0.5,
            psi_star: 0.1,
            sigma: 0.8,
            sigma_star: 0.1,
            p,
            p_star: 0.0,
            q,
            q_star: 0.0,
            lambda: 1.0,
            u: 1.0,
            a: 1.0 / (p + q).sinh(),
            k: 1.0,
        }
    }
}

/// The recurring scalar values of the expansions.
struct Scalars {
    sh: f64,
    ch: f64,
    sh2p: f64,
    ch2p: f64,
    t: f64,
    s2: f64,
    am12: f64,
    am1: f64,
    am32: f64,
    am2: f64,
    shp: f64,
    chp: f64,
    shq: f64,
    chq: f64,
}

fn scalars(par: &CaseParams) -> Result<Scalars> {
    let sh = par.psi.sinh();
    let ch = par.psi.cosh();
    let t = par.sigma.tanh();
    let a_val = sh * sh + t * t;
    if a_val <= DEGENERACY_THRESHOLD || a_val.is_nan() {
        return Err(Error::DegenerateConfiguration);
    }
    let cs = par.sigma.cosh();
    let am12 = 1.0 / a_val.sqrt();
    let am1 = 1.0 / a_val;
    Ok(Scalars {
        sh,
        ch,
        sh2p: (2.0 * par.psi).sinh(),
        ch2p: (2.0 * par.psi).cosh(),
        t,
        s2: 1.0 / (cs * cs),
        am12,
        am1,
        am32: am12 * am1,
        am2: am1 * am1,
        shp: par.p.sinh(),
        chp: par.p.cosh(),
        shq: par.q.sinh(),
        chq: par.q.cosh(),
    })
}

fn finite_vec(v: Vec3L, context: &'static str) -> Result<Vec3L> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { context })
    }
}

/// Real and moment parts of the general orbit point, expanded form.
pub fn x_parts(par: &CaseParams) -> Result<(Vec3L, Vec3L)> {
    let s = scalars(par)?;
    let a = par.a;
    let (ps, ss, pst, qst) = (par.psi_star, par.sigma_star, par.p_star, par.q_star);
    let x = Vec3L::new(
        a * (s.am12 * s.t * s.shp),
        a * (-s.am12 * s.sh * s.ch * s.shp + s.sh * s.shq),
        a * (s.am12 * s.sh * s.sh * s.shp + s.ch * s.shq),
    );
    let xs = Vec3L::new(
        a * (pst * s.am12 * s.t * s.chp - ps * s.am32 * s.t * s.sh * s.ch * s.shp
            - ss * s.am32 * s.t * s.t * s.s2 * s.shp
            + ss * s.am12 * s.s2 * s.shp),
        a * (-pst * s.am12 * s.sh * s.ch * s.chp
            + qst * s.sh * s.chq
            + ps * s.ch * s.shq
            + ps * s.am32 * s.sh * s.sh * s.ch * s.ch * s.shp
            - ps * s.am12 * s.ch2p * s.shp
            + ss * s.am32 * s.t * s.s2 * s.sh * s.ch * s.shp),
        a * (ps * s.sh * s.shq
            + qst * s.ch * s.chq
            + s.am32 * ss * s.t * s.s2 * s.sh * s.sh * s.shp
            - ps * s.am32 * s.sh * s.sh * s.sh * s.ch * s.shp
            + ps * s.am12 * s.sh2p * s.shp
            + s.am12 * pst * s.sh * s.sh * s.chp),
    );
    Ok((
        finite_vec(x, "x real part expansion")?,
        finite_vec(xs, "x moment part expansion")?,
    ))
}

/// General congruence coordinates of the orbit line, expanded form.
pub fn y_general(par: &CaseParams) -> Result<Vec3L> {
    let s = scalars(par)?;
    let a = par.a;
    let a2 = a * a;
    let lam = par.lambda;
    let (ps, ss, pst, qst) = (par.psi_star, par.sigma_star, par.p_star, par.q_star);
    let y1 = a2
        * (qst * s.am12 * s.sh * s.ch2p * s.shp * s.chq
            - ps * s.am12 * s.ch * s.ch2p * s.shp * s.shq
            + ps * s.am1 * s.sh * s.sh * s.shp * s.shp
            + ps * s.shq * s.shq
            + ps * s.am32 * s.sh * s.sh * s.ch2p * s.shp * s.shq * s.chp
            + ss * s.am32 * s.sh * s.t * s.s2 * s.shp * s.shq
            + 2.0 * ss * s.am2 * s.sh * s.sh * s.sh * s.ch * s.t * s.s2 * s.shp * s.shp
            - pst * s.am12 * s.sh * s.ch2p * s.chp * s.shq)
        + a * lam * s.am12 * s.t * s.shp;
    let y2 = a2
        * (qst * s.am12 * s.t * s.ch * s.shp * s.chq
            - pst * s.am12 * s.t * s.ch * s.shq * s.chp
            - ss * s.am1 * s.s2 * s.sh * s.sh * s.shp * s.shp
            + ss * s.am32 * s.t * s.t * s.s2 * s.ch * s.shp * s.shq
            - ss * s.am12 * s.s2 * s.ch * s.shp * s.shq
            + ps * s.am12 * s.t * s.sh * s.shp * s.shq
            + ps * s.am32 * s.t * s.sh * s.ch * s.ch * s.shp * s.shq
            + ps * s.am1 * s.t * s.sh2p * s.shp * s.shp)
        + a * lam * (-s.am12 * s.sh * s.ch * s.shp + s.sh * s.shq);
    let y3 = a2
        * (qst * s.am12 * s.t * s.sh * s.shp * s.chq
            + ps * s.am12 * s.t * s.ch * s.shq * s.shp
            - ps * s.am1 * s.t * s.ch2p * s.shp * s.shp
            + ss * s.am1 * s.sh * s.ch * s.s2 * s.shp * s.shp
            - pst * s.am12 * s.t * s.sh * s.shq * s.chp
            - ss * s.am12 * s.sh * s.shp * s.shq * s.s2
            + ps * s.am32 * s.t * s.sh * s.sh * s.ch * s.shp * s.shq
            + ss * s.am32 * s.sh * s.t * s.t * s.s2 * s.shp * s.shq)
        + a * lam * (s.am12 * s.sh * s.sh * s.shp + s.ch * s.shq);
    finite_vec(Vec3L::new(y1, y2, y3), "general congruence expansion")
}

/// v1-orbit congruence coordinates at general sigma, expanded form.
pub fn y_v1(par: &CaseParams) -> Result<Vec3L> {
    let s = scalars(par)?;
    let lam = par.lambda;
    let (ps, ss) = (par.psi_star, par.sigma_star);
    // reconcile flags the 2*ss term below: the general form carries an
    // extra tanh(sigma)*sech^2(sigma) factor that is absent here.
    let y1 = ps * s.sh * s.sh * s.am1
        + 2.0 * ss * s.sh * s.sh * s.sh * s.ch * s.am2
        + lam * s.t * s.am12;
    let y2 = (-ss * s.s2 * s.sh * s.sh + ps * s.t * s.sh2p) * s.am1 - lam * s.sh * s.ch * s.am12;
    let y3 = (-ps * s.t * s.ch2p + ss * s.s2 * s.sh * s.ch) * s.am1 + lam * s.sh * s.sh * s.am12;
    finite_vec(Vec3L::new(y1, y2, y3), "v1 congruence expansion")
}

/// v1-orbit congruence at sigma = 0, expanded form. Singular at psi = 0.
pub fn y_v1_sigma0(par: &CaseParams) -> Result<Vec3L> {
    if par.psi == 0.0 {
        return Err(Error::SingularAtPsiZero);
    }
    let sh = par.psi.sinh();
    let ch = par.psi.cosh();
    let y = Vec3L::new(
        par.psi_star,
        -par.sigma_star - par.lambda * ch,
        par.sigma_star * ch / sh + par.lambda * sh,
    );
    finite_vec(y, "v1 sigma=0 congruence expansion")
}

/// v3-orbit congruence coordinates, expanded form.
pub fn y_v3(par: &CaseParams) -> Result<Vec3L> {
    let sh = par.psi.sinh();
    let ch = par.psi.cosh();
    finite_vec(
        Vec3L::new(par.psi_star, par.lambda * sh, par.lambda * ch),
        "v3 congruence expansion",
    )
}

/// Real and moment parts of the v2 frame vector, expanded form.
pub fn v2_parts(par: &CaseParams) -> Result<(Vec3L, Vec3L)> {
    let s = scalars(par)?;
    let (ps, ss) = (par.psi_star, par.sigma_star);
    let v2 = Vec3L::new(-s.am12 * s.sh, -s.am12 * s.t * s.ch, -s.am12 * s.t * s.sh);
    let v2s = Vec3L::new(
        ps * s.am32 * s.sh * s.sh * s.ch - ps * s.am12 * s.ch + ss * s.am32 * s.t * s.s2 * s.sh,
        -ss * s.am12 * s.s2 * s.ch + ps * s.am32 * s.t * s.sh * s.ch * s.ch
            - ps * s.am12 * s.t * s.sh
            + ss * s.am32 * s.t * s.t * s.s2 * s.ch,
        ps * s.am32 * s.t * s.sh * s.sh * s.ch - ps * s.am12 * s.t * s.ch
            + ss * s.am32 * s.t * s.t * s.s2 * s.sh
            - ss * s.am12 * s.s2 * s.sh,
    );
    Ok((
        finite_vec(v2, "v2 real part expansion")?,
        finite_vec(v2s, "v2 moment part expansion")?,
    ))
}

/// v2-orbit congruence coordinates at general sigma, expanded form.
pub fn g_general(par: &CaseParams) -> Result<Vec3L> {
    let s = scalars(par)?;
    let u = par.u;
    let (ps, ss) = (par.psi_star, par.sigma_star);
    let g1 = s.am1 * ps * s.t * s.t + u * s.am12 * s.sh;
    // reconcile flags the ss term below: the dual path yields
    // sech^2(sigma)*sinh^2(psi) where tanh^2(sigma) is written here.
    let g2 = -s.am1 * ss * s.t * s.t + u * s.am12 * s.t * s.ch;
    let g3 = -s.am1 * ss * s.s2 * s.sh * s.ch + s.am1 * ps * s.t + u * s.am12 * s.t * s.sh;
    finite_vec(Vec3L::new(g1, g2, g3), "v2 congruence expansion")
}

/// v2-orbit congruence at sigma = 0, expanded form. Singular at psi = 0.
pub fn g_sigma0(par: &CaseParams) -> Result<Vec3L> {
    if par.psi == 0.0 {
        return Err(Error::SingularAtPsiZero);
    }
    let sh = par.psi.sinh();
    let ch = par.psi.cosh();
    let g = Vec3L::new(par.u, -par.sigma_star, -par.sigma_star * ch / sh);
    finite_vec(g, "v2 sigma=0 congruence expansion")
}

/// v2-orbit congruence at psi = 0, expanded form. The sweep angle's dual
/// part plays the starred symbol here.
pub fn g_psi0(par: &CaseParams) -> Result<Vec3L> {
    let t = par.sigma.tanh();
    finite_vec(
        Vec3L::new(par.psi_star, par.u, par.psi_star * t),
        "v2 psi=0 congruence expansion",
    )
}

// ---------------------------------------------------------------------------
// Reconciliation harness
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
}

/// The sample with the largest deviation seen by a reconcile run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorstSample {
    pub dev: f64,
    pub params: CaseParams,
}

/// Outcome of reconciling one expanded formula against the canonical path.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconcileReport {
    pub formula: String,
    /// Multiplier orientation the comparison ran under ("-" for the
    /// self-consistency residual checks, which involve no canonical side).
    pub branch: String,
    pub samples: usize,
    pub skipped: usize,
    pub max_dev: [f64; 3],
    pub tol: f64,
    pub verdict: Verdict,
    /// Per-coordinate verdicts; the formula verdict is their conjunction.
    pub coords: [Verdict; 3],
    pub worst: Option<WorstSample>,
    pub note: String,
}

/// Every reconciled formula and self-consistency check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaId {
    XRe,
    XDu,
    YGeneral,
    YV1,
    YV1Sigma0,
    YV3,
    V2Re,
    V2Du,
    GGeneral,
    GSigma0,
    GPsi0,
    GPsi0Subst,
    SurfaceV1Sigma0Residual,
    CongruenceV3Residual,
    HelicoidSigma0Residual,
    HelicoidPsi0Residual,
}

pub const ALL_FORMULAS: [FormulaId; 16] = [
    FormulaId::XRe,
    FormulaId::XDu,
    FormulaId::YGeneral,
    FormulaId::YV1,
    FormulaId::YV1Sigma0,
    FormulaId::YV3,
    FormulaId::V2Re,
    FormulaId::V2Du,
    FormulaId::GGeneral,
    FormulaId::GSigma0,
    FormulaId::GPsi0,
    FormulaId::GPsi0Subst,
    FormulaId::SurfaceV1Sigma0Residual,
    FormulaId::CongruenceV3Residual,
    FormulaId::HelicoidSigma0Residual,
    FormulaId::HelicoidPsi0Residual,
];

impl FormulaId {
    pub fn as_str(&self) -> &'static str {
        match self {
            FormulaId::XRe => "x_re",
            FormulaId::XDu => "x_du",
            FormulaId::YGeneral => "y_general",
            FormulaId::YV1 => "y_v1",
            FormulaId::YV1Sigma0 => "y_v1_sigma0",
            FormulaId::YV3 => "y_v3",
            FormulaId::V2Re => "v2_re",
            FormulaId::V2Du => "v2_du",
            FormulaId::GGeneral => "g_general",
            FormulaId::GSigma0 => "g_sigma0",
            FormulaId::GPsi0 => "g_psi0",
            FormulaId::GPsi0Subst => "g_psi0_subst",
            FormulaId::SurfaceV1Sigma0Residual => "surface_v1_sigma0_residual",
            FormulaId::CongruenceV3Residual => "congruence_v3_residual",
            FormulaId::HelicoidSigma0Residual => "helicoid_sigma0_residual",
            FormulaId::HelicoidPsi0Residual => "helicoid_psi0_residual",
        }
    }

    /// Orientation under which the formula's comparison is run, or None for
    /// the residual checks.
    pub fn branch(&self) -> Option<LambdaSign> {
        match self {
            FormulaId::YV3 | FormulaId::V2Re | FormulaId::V2Du => Some(LambdaSign::Plus),
            FormulaId::XRe
            | FormulaId::XDu
            | FormulaId::YGeneral
            | FormulaId::YV1
            | FormulaId::YV1Sigma0
            | FormulaId::GGeneral
            | FormulaId::GSigma0
            | FormulaId::GPsi0
            | FormulaId::GPsi0Subst => Some(LambdaSign::Minus),
            _ => None,
        }
    }

    fn note(&self) -> &'static str {
        match self {
            FormulaId::XRe => "expanded orbit real part vs dual-arithmetic orbit point",
            FormulaId::XDu => "expanded orbit moment part vs dual-arithmetic orbit point",
            FormulaId::YGeneral => {
                "expanded congruence coordinates vs the uncorrected recovery of the orbit point"
            }
            FormulaId::YV1 => "expanded v1 congruence vs foot-corrected recovery of v1",
            FormulaId::YV1Sigma0 => {
                "expanded v1 congruence at sigma=0 vs foot-corrected recovery of v1"
            }
            FormulaId::YV3 => "expanded v3 congruence vs recovery of v3",
            FormulaId::V2Re => "expanded v2 real part vs frame evaluation",
            FormulaId::V2Du => "expanded v2 moment part vs frame evaluation",
            FormulaId::GGeneral => "expanded v2 congruence vs foot-corrected recovery of v2",
            FormulaId::GSigma0 => {
                "expanded v2 congruence at sigma=0 vs foot-corrected recovery of v2"
            }
            FormulaId::GPsi0 => "expanded v2 congruence at psi=0 vs foot-corrected recovery of v2",
            FormulaId::GPsi0Subst => {
                "general v2 expansion substituted at psi=0 vs foot-corrected recovery of v2"
            }
            FormulaId::SurfaceV1Sigma0Residual => {
                "surface equation residual on the expanded v1 sigma=0 congruence"
            }
            FormulaId::CongruenceV3Residual => {
                "congruence relations residual on the expanded v3 coordinates"
            }
            FormulaId::HelicoidSigma0Residual => {
                "helicoid relation residual on the expanded v2 sigma=0 congruence with u=k*psi"
            }
            FormulaId::HelicoidPsi0Residual => {
                "helicoid relation residual on the expanded v2 psi=0 congruence with u=k*sigma"
            }
        }
    }
}

const K_CYCLE: [f64; 3] = [0.5, 1.0, 2.0];

/// Draw one parameter set. The draw order is fixed so that streams are
/// identical for every formula under the same seed; overrides for the
/// special cases are applied afterwards. The starred parts of the orbit
/// angles are tied by `q* = -p*`, which keeps `1/sinh(P+Q)` an exactly real
/// constant, matching the expansions' treatment of `a` as a plain number.
fn draw_params(rng: &mut SplitMix64, id: FormulaId, index: usize) -> CaseParams {
    let mut par = CaseParams {
        psi: rng.uniform(0.2, 1.5),
        psi_star: rng.signed_uniform(0.2, 1.0),
        sigma: rng.uniform(0.3, 1.2),
        sigma_star: rng.signed_uniform(0.2, 1.0),
        p: rng.uniform(0.2, 1.2),
        p_star: rng.signed_uniform(0.2, 1.0),
        q: rng.uniform(0.2, 1.2),
        q_star: 0.0,
        lambda: rng.signed_uniform(0.2, 2.0),
        u: rng.signed_uniform(0.2, 2.0),
        a: 0.0,
        k: K_CYCLE[index % K_CYCLE.len()],
    };
    par.q_star = -par.p_star;
    par.a = 1.0 / (par.p + par.q).sinh();
    match id {
        FormulaId::YV1Sigma0 | FormulaId::GSigma0 | FormulaId::SurfaceV1Sigma0Residual => {
            par.sigma = 0.0;
        }
        FormulaId::HelicoidSigma0Residual => {
            par.sigma = 0.0;
            par.u = par.k * par.psi;
        }
        FormulaId::GPsi0 | FormulaId::GPsi0Subst => {
            par.psi = 0.0;
        }
        FormulaId::HelicoidPsi0Residual => {
            par.psi = 0.0;
            par.u = par.k * par.sigma;
        }
        _ => {}
    }
    par
}

fn pose_for(par: &CaseParams, sign: LambdaSign) -> Result<FramePose> {
    let cfg = MotionConfig::new(DualScalar::new(par.sigma, par.sigma_star), sign);
    frame_at(&cfg, DualScalar::new(par.psi, par.psi_star))
}

fn canonical_orbit(par: &CaseParams, sign: LambdaSign) -> Result<crate::dual_vector::DualVec3> {
    let pose = pose_for(par, sign)?;
    let spec = OrbitSpec::new(
        DualScalar::new(par.p, par.p_star),
        DualScalar::new(par.q, par.q_star),
    )?;
    orbit_point(&pose, &spec)
}

fn abs3(a: Vec3L, b: Vec3L) -> [f64; 3] {
    [
        (a.c1 - b.c1).abs(),
        (a.c2 - b.c2).abs(),
        (a.c3 - b.c3).abs(),
    ]
}

/// Per-coordinate absolute deviations for one sample, or the residual
/// magnitudes for the self-consistency checks.
fn sample_devs(id: FormulaId, par: &CaseParams) -> Result<[f64; 3]> {
    let sign = id.branch().unwrap_or(LambdaSign::Minus);
    match id {
        FormulaId::XRe => {
            let x = canonical_orbit(par, sign)?;
            Ok(abs3(x_parts(par)?.0, x.re))
        }
        FormulaId::XDu => {
            let x = canonical_orbit(par, sign)?;
            Ok(abs3(x_parts(par)?.1, x.du))
        }
        FormulaId::YGeneral => {
            let x = canonical_orbit(par, sign)?;
            Ok(abs3(y_general(par)?, raw_point(&x, par.lambda)))
        }
        FormulaId::YV1 => {
            let pose = pose_for(par, sign)?;
            let y = line_point(&pose.v1, par.lambda, LINE_GATE_TOL)?;
            Ok(abs3(y_v1(par)?, y))
        }
        FormulaId::YV1Sigma0 => {
            let pose = pose_for(par, sign)?;
            let y = line_point(&pose.v1, par.lambda, LINE_GATE_TOL)?;
            Ok(abs3(y_v1_sigma0(par)?, y))
        }
        FormulaId::YV3 => {
            let pose = pose_for(par, sign)?;
            let y = line_point(&pose.v3, par.lambda, LINE_GATE_TOL)?;
            Ok(abs3(y_v3(par)?, y))
        }
        FormulaId::V2Re => {
            let pose = pose_for(par, sign)?;
            Ok(abs3(v2_parts(par)?.0, pose.v2.re))
        }
        FormulaId::V2Du => {
            let pose = pose_for(par, sign)?;
            Ok(abs3(v2_parts(par)?.1, pose.v2.du))
        }
        FormulaId::GGeneral => {
            let pose = pose_for(par, sign)?;
            let g = line_point(&pose.v2, par.u, LINE_GATE_TOL)?;
            Ok(abs3(g_general(par)?, g))
        }
        FormulaId::GSigma0 => {
            let pose = pose_for(par, sign)?;
            let g = line_point(&pose.v2, par.u, LINE_GATE_TOL)?;
            Ok(abs3(g_sigma0(par)?, g))
        }
        FormulaId::GPsi0 => {
            let pose = pose_for(par, sign)?;
            let g = line_point(&pose.v2, par.u, LINE_GATE_TOL)?;
            Ok(abs3(g_psi0(par)?, g))
        }
        FormulaId::GPsi0Subst => {
            let pose = pose_for(par, sign)?;
            let g = line_point(&pose.v2, par.u, LINE_GATE_TOL)?;
            Ok(abs3(g_general(par)?, g))
        }
        FormulaId::SurfaceV1Sigma0Residual => {
            let y = y_v1_sigma0(par)?;
            Ok([
                surface_residual_v1_sigma0(y, par.psi, par.lambda).abs(),
                0.0,
                0.0,
            ])
        }
        FormulaId::CongruenceV3Residual => {
            let y = y_v3(par)?;
            let (r1, r2) = congruence_residual_v3(y, par.lambda, par.psi_star);
            Ok([r1.abs(), r2.abs(), 0.0])
        }
        FormulaId::HelicoidSigma0Residual => {
            let g = g_sigma0(par)?;
            Ok([
                helicoid_residual(g, par.k, HelicoidForm::G1FromG2G3)?.abs(),
                0.0,
                0.0,
            ])
        }
        FormulaId::HelicoidPsi0Residual => {
            let g = g_psi0(par)?;
            Ok([
                helicoid_residual(g, par.k, HelicoidForm::G2FromG3G1)?.abs(),
                0.0,
                0.0,
            ])
        }
    }
}

/// Reconcile one formula over a seeded parameter cloud.
pub fn reconcile(id: FormulaId, samples: usize, seed: u64, tol: f64) -> ReconcileReport {
    let idx = ALL_FORMULAS.iter().position(|f| *f == id).unwrap_or(0);
    let mut rng = SplitMix64::new(
        seed ^ ((idx as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
    );
    let mut max_dev = [0.0_f64; 3];
    let mut skipped = 0usize;
    let mut worst: Option<WorstSample> = None;
    for i in 0..samples {
        let par = draw_params(&mut rng, id, i);
        match sample_devs(id, &par) {
            Ok(devs) => {
                for c in 0..3 {
                    max_dev[c] = max_dev[c].max(devs[c]);
                }
                let d = devs[0].max(devs[1]).max(devs[2]);
                if worst.as_ref().is_none_or(|w| d > w.dev) {
                    worst = Some(WorstSample { dev: d, params: par });
                }
            }
            Err(_) => skipped += 1,
        }
    }
    let coords = [
        if max_dev[0] <= tol { Verdict::Match } else { Verdict::Mismatch },
        if max_dev[1] <= tol { Verdict::Match } else { Verdict::Mismatch },
        if max_dev[2] <= tol { Verdict::Match } else { Verdict::Mismatch },
    ];
    let verdict = if coords.iter().all(|c| *c == Verdict::Match) {
        Verdict::Match
    } else {
        Verdict::Mismatch
    };
    ReconcileReport {
        formula: id.as_str().to_string(),
        branch: id
            .branch()
            .map(|s| s.as_str().to_string())
            .unwrap_or_else(|| "-".to_string()),
        samples,
        skipped,
        max_dev,
        tol,
        verdict,
        coords,
        worst,
        note: id.note().to_string(),
    }
}

/// Reconcile every formula; reports come back in registry order.
pub fn reconcile_all(samples: usize, seed: u64, tol: f64) -> Vec<ReconcileReport> {
    ALL_FORMULAS
        .par_iter()
        .map(|id| reconcile(*id, samples, seed, tol))
        .collect()
}

/// One row of the committed expected-verdict ledger.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpectedEntry {
    pub formula: String,
    pub branch: String,
    pub verdict: Verdict,
    pub coords: [Verdict; 3],
    pub note: String,
}

/// The committed ledger; the `comment` header must explain any change.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExpectedLedger {
    pub comment: String,
    pub tol: f64,
    pub entries: Vec<ExpectedEntry>,
}

/// The ledger shipped with the crate.
pub fn expected_ledger() -> ExpectedLedger {
    serde_json::from_str(include_str!("../data/reconcile_expected.json"))
        .expect("embedded reconcile ledger parses")
}

/// Compare live reports with the committed ledger. Returns the names of
/// formulas whose verdict or per-coordinate verdicts moved.
pub fn diff_with_expected(reports: &[ReconcileReport]) -> Vec<String> {
    let ledger = expected_ledger();
    let mut moved = Vec::new();
    for report in reports {
        match ledger.entries.iter().find(|e| e.formula == report.formula) {
            Some(e) => {
                if e.verdict != report.verdict
                    || e.coords != report.coords
                    || e.branch != report.branch
                {
                    moved.push(report.formula.clone());
                }
            }
            None => moved.push(report.formula.clone()),
        }
    }
    for e in &ledger.entries {
        if !reports.iter().any(|r| r.formula == e.formula) {
            moved.push(e.formula.clone());
        }
    }
    moved
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_real_part_reduces_to_v3() {
        // p = p* = 0 and a*sinh(q) = 1 leave the lifted circle vector
        let q = 0.7;
        let par = CaseParams {
            psi: 0.6,
            sigma: 0.8,
            p: 0.0,
            p_star: 0.0,
            q,
            q_star: 0.4,
            a: 1.0 / q.sinh(),
            ..CaseParams::default()
        };
        let (x, _) = x_parts(&par).unwrap();
        let want = Vec3L::new(0.0, 0.6_f64.sinh(), 0.6_f64.cosh());
        assert!(x.approx_eq(&want, 1e-14));
    }

    #[test]
    fn x_real_part_at_q_zero() {
        // q = q* = 0 and a*sinh(p) = 1: the expansion's own sign pattern,
        // frozen by direct substitution.
        let p = 0.9;
        let par = CaseParams {
            psi: 0.6,
            sigma: 0.8,
            p,
            q: 0.0,
            q_star: 0.0,
            a: 1.0 / p.sinh(),
            ..CaseParams::default()
        };
        let (x, _) = x_parts(&par).unwrap();
        let sh = 0.6_f64.sinh();
        let ch = 0.6_f64.cosh();
        let t = 0.8_f64.tanh();
        let am12 = 1.0 / (sh * sh + t * t).sqrt();
        let want = Vec3L::new(am12 * t, -am12 * sh * ch, am12 * sh * sh);
        assert!(x.approx_eq(&want, 1e-14));
    }

    #[test]
    fn y_general_reduces_at_p_zero() {
        let q = 0.7;
        let par = CaseParams {
            psi: 0.5,
            psi_star: 0.2,
            sigma: 0.8,
            sigma_star: 0.3,
            p: 0.0,
            p_star: 0.0,
            q,
            q_star: -0.4,
            lambda: 1.0,
            a: 1.0 / q.sinh(),
            ..CaseParams::default()
        };
        let y = y_general(&par).unwrap();
        let want = Vec3L::new(0.2, 0.5_f64.sinh(), 0.5_f64.cosh());
        assert!(y.approx_eq(&want, 1e-13));
    }

    #[test]
    fn v1_sigma0_frozen_values() {
        let par = CaseParams {
            psi: 0.7,
            psi_star: 0.25,
            sigma_star: 0.3,
            lambda: 1.1,
            ..CaseParams::default()
        };
        let y = y_v1_sigma0(&par).unwrap();
        let want = Vec3L::new(
            0.25,
            -0.3 - 1.1 * 0.7_f64.cosh(),
            0.3 * 0.7_f64.cosh() / 0.7_f64.sinh() + 1.1 * 0.7_f64.sinh(),
        );
        assert!(y.approx_eq(&want, 1e-14));
        assert_eq!(
            y_v1_sigma0(&CaseParams {
                psi: 0.0,
                ..CaseParams::default()
            }),
            Err(Error::SingularAtPsiZero)
        );
    }

    #[test]
    fn v3_outputs_satisfy_their_relations() {
        let par = CaseParams {
            psi: 0.5,
            psi_star: 0.2,
            lambda: 1.0,
            ..CaseParams::default()
        };
        let y = y_v3(&par).unwrap();
        let (r1, r2) = congruence_residual_v3(y, par.lambda, par.psi_star);
        assert!(r1.abs() <= 1e-13 && r2.abs() <= 1e-13);
    }

    #[test]
    fn v1_sigma0_outputs_satisfy_surface_equation() {
        let par = CaseParams {
            psi: 0.7,
            psi_star: 0.4,
            sigma_star: 0.3,
            lambda: 1.1,
            ..CaseParams::default()
        };
        let y = y_v1_sigma0(&par).unwrap();
        assert!(surface_residual_v1_sigma0(y, par.psi, par.lambda).abs() <= 1e-12);
    }

    #[test]
    fn v2_expansion_spot_values() {
        let par = CaseParams {
            psi: 0.0,
            psi_star: 0.0,
            sigma: 0.8,
            sigma_star: 0.0,
            ..CaseParams::default()
        };
        let (v2, v2s) = v2_parts(&par).unwrap();
        assert!(v2.approx_eq(&Vec3L::new(0.0, -1.0, 0.0), 1e-14));
        assert!(v2s.approx_eq(&Vec3L::ZERO, 1e-14));
    }

    #[test]
    fn g_sigma0_frozen_values() {
        let par = CaseParams {
            psi: 0.6,
            sigma_star: 0.2,
            u: 1.5,
            ..CaseParams::default()
        };
        let g = g_sigma0(&par).unwrap();
        let want = Vec3L::new(1.5, -0.2, -0.2 * 0.6_f64.cosh() / 0.6_f64.sinh());
        assert!(g.approx_eq(&want, 1e-14));
    }

    #[test]
    fn helicoid_relations_on_expanded_outputs() {
        // u = k*psi turns the sigma=0 expansion into a helicoid
        let k = 2.0;
        let par = CaseParams {
            psi: 0.6,
            sigma_star: 0.2,
            u: k * 0.6,
            ..CaseParams::default()
        };
        let g = g_sigma0(&par).unwrap();
        let r = helicoid_residual(g, k, HelicoidForm::G1FromG2G3).unwrap();
        assert!(r.abs() <= 1e-12);

        // u = k*sigma does the same for the psi=0 expansion
        let par = CaseParams {
            psi: 0.0,
            psi_star: 0.4,
            sigma: 0.9,
            u: k * 0.9,
            ..CaseParams::default()
        };
        let g = g_psi0(&par).unwrap();
        let r = helicoid_residual(g, k, HelicoidForm::G2FromG3G1).unwrap();
        assert!(r.abs() <= 1e-12);
    }

    #[test]
    fn reconcile_is_deterministic() {
        let a = reconcile(FormulaId::V2Re, 64, 42, RECONCILE_DEFAULT_TOL);
        let b = reconcile(FormulaId::V2Re, 64, 42, RECONCILE_DEFAULT_TOL);
        assert_eq!(a.max_dev, b.max_dev);
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn degenerate_draws_are_counted() {
        // sigma = 0 cases still need psi != 0; the draw ranges avoid it,
        // so nothing is skipped.
        let r = reconcile(FormulaId::YV1Sigma0, 128, 11, RECONCILE_DEFAULT_TOL);
        assert_eq!(r.skipped, 0);
        assert_eq!(r.samples, 128);
    }
}
