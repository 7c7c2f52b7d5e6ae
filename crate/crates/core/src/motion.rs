//! The dual hyperbolic conchoidal motion.
//!
//! A fixed axis `c = u3 cosh(delta) + u1 sinh(delta)` is held in the
//! u1-u3 plane while the moving orthonormal dual frame {v1, v2, v3} turns
//! so that v3 sweeps the great hyperbolic circle `v3 = [0, sinh(psi),
//! cosh(psi)]` and the v1-v3 plane keeps passing through the axis point.
//! Solving the three frame constraints in closed form gives
//!
//! ```text
//! v1 = s * [ -A^{-1/2} tanh(delta),
//!             A^{-1/2} sinh(psi) cosh(psi),
//!             A^{-1/2} sinh(psi)^2 ],      A = sinh(psi)^2 + tanh(delta)^2
//! v2 = v1 x v3
//! ```
//!
//! with `s = +1` or `-1` the two admissible orientations of the multiplier
//! solving the constraints ([`LambdaSign`]). Everything here is evaluated in
//! dual-scalar arithmetic from these defining forms; this module is the
//! canonical computation path that the hand-expanded coordinate formulas in
//! [`crate::expansions`] are reconciled against.
//!
//! Orbit points `x = a (v1 sinh(P) + v3 sinh(Q))`, `a = 1/sinh(P+Q)`, are
//! generally not unit: their pseudo-norm satisfies
//! `<x,x> sinh(P+Q) = sinh(P-Q)` and no normalization is applied.

use serde::{Deserialize, Serialize};

use crate::dual::DualScalar;
use crate::dual_vector::{triple_product, DualMatrix3, DualVec3};
use crate::error::{Error, Result};

/// Frame evaluation refuses configurations with `A.re` at or below this.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// Orientation of the constraint multiplier; both signs satisfy the frame
/// constraints, differing by the sign of v1 (and therefore v2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LambdaSign {
    Plus,
    Minus,
}

impl LambdaSign {
    pub fn value(&self) -> f64 {
        match self {
            LambdaSign::Plus => 1.0,
            LambdaSign::Minus => -1.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            LambdaSign::Plus => "plus",
            LambdaSign::Minus => "minus",
        }
    }
}

/// Fixed data of the motion: the dual angle of the axis from u3 and the
/// multiplier orientation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionConfig {
    pub delta: DualScalar,
    pub lambda_sign: LambdaSign,
}

impl MotionConfig {
    pub fn new(delta: DualScalar, lambda_sign: LambdaSign) -> Self {
        Self { delta, lambda_sign }
    }
}

/// The moving frame at one motion parameter, with the normalizer argument
/// `A = sinh(psi)^2 + tanh(delta)^2` cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FramePose {
    pub psi: DualScalar,
    pub v1: DualVec3,
    pub v2: DualVec3,
    pub v3: DualVec3,
    pub a_val: DualScalar,
}

/// The fixed axis `(sinh(delta), 0, cosh(delta))` as a dual vector; a point
/// of the dual hyperbolic unit sphere for any finite dual angle.
pub fn c_axis(cfg: &MotionConfig) -> Result<DualVec3> {
    let sh = cfg.delta.sinh()?;
    let ch = cfg.delta.cosh()?;
    Ok(DualVec3::from_components([sh, DualScalar::ZERO, ch]))
}

/// Evaluate the moving frame at dual angle `psi`.
pub fn frame_at(cfg: &MotionConfig, psi: DualScalar) -> Result<FramePose> {
    let sh = psi.sinh()?;
    let ch = psi.cosh()?;
    let th = cfg.delta.tanh()?;
    let a_val = sh * sh + th * th;
    // the comparison is written to reject NaN as degenerate too
    if a_val.re <= DEGENERACY_THRESHOLD || a_val.re.is_nan() {
        return Err(Error::DegenerateConfiguration);
    }
    let r = a_val.inv_sqrt()?;
    let s = cfg.lambda_sign.value();

    let v1 = DualVec3::from_components([-(r * th) * s, (sh * ch * r) * s, (sh * sh * r) * s]);
    let v3 = DualVec3::from_components([DualScalar::ZERO, sh, ch]);
    let v2 = v1.cross(&v3);

    if !(v1.is_finite() && v2.is_finite() && v3.is_finite()) {
        return Err(Error::NonFinite {
            context: "frame evaluation",
        });
    }
    Ok(FramePose {
        psi,
        v1,
        v2,
        v3,
        a_val,
    })
}

/// Residuals of the three defining constraints plus the coplanarity
/// determinant, all of which vanish for a frame produced by [`frame_at`].
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FrameResiduals {
    /// `A1^2 + A2^2 - A3^2 - 1`, the unit-norm constraint on v1.
    pub unit_norm: DualScalar,
    /// `-A3 cosh(psi) + A2 sinh(psi)`, orthogonality of v1 and v3.
    pub v3_orthogonality: DualScalar,
    /// `A1 sinh(psi) cosh(delta) + A2 cosh(psi) sinh(delta) - A3 sinh(psi) sinh(delta)`.
    pub coplanarity_linear: DualScalar,
    /// `det(v1, v3, c)` via the dual triple product.
    pub coplanarity_det: DualScalar,
}

impl FrameResiduals {
    /// Largest absolute residual over both parts of all four entries.
    pub fn max_abs(&self) -> f64 {
        [
            self.unit_norm,
            self.v3_orthogonality,
            self.coplanarity_linear,
            self.coplanarity_det,
        ]
        .iter()
        .fold(0.0_f64, |m, r| m.max(r.re.abs()).max(r.du.abs()))
    }
}

/// Evaluate the constraint residuals of a pose, reading the components of
/// v1 back as the unknowns of the constraint system.
pub fn verify_frame_constraints(pose: &FramePose, cfg: &MotionConfig) -> Result<FrameResiduals> {
    let a1 = pose.v1.component(0);
    let a2 = pose.v1.component(1);
    let a3 = pose.v1.component(2);
    let sh = pose.psi.sinh()?;
    let ch = pose.psi.cosh()?;
    let shd = cfg.delta.sinh()?;
    let chd = cfg.delta.cosh()?;

    Ok(FrameResiduals {
        unit_norm: a1 * a1 + a2 * a2 - a3 * a3 - DualScalar::ONE,
        v3_orthogonality: -(a3 * ch) + a2 * sh,
        coplanarity_linear: a1 * sh * chd + a2 * ch * shd - a3 * sh * shd,
        coplanarity_det: triple_product(&pose.v1, &pose.v3, &c_axis(cfg)?),
    })
}

/// The orbit data: dual angles P (from v1) and Q (to v3) and the constant
/// `a = 1/sinh(P+Q)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitSpec {
    pub p: DualScalar,
    pub q: DualScalar,
    pub a: DualScalar,
}

impl OrbitSpec {
    /// Requires `sinh(p + q) != 0`, i.e. the real parts must not cancel.
    pub fn new(p: DualScalar, q: DualScalar) -> Result<Self> {
        let a = DualScalar::ONE.try_div((p + q).sinh()?)?;
        Ok(Self { p, q, a })
    }

    /// How far `p + q` sits from a quarter turn. The classical setup pins
    /// the sum there so that `a` is constant; the orbit formula itself is
    /// well defined for any nonzero sum, so this is advisory only.
    pub fn quarter_turn_deviation(&self) -> f64 {
        (self.p.re + self.q.re - std::f64::consts::FRAC_PI_2).abs()
    }
}

/// Orbit point `x = a (v1 sinh(P) + v3 sinh(Q))` in dual arithmetic.
pub fn orbit_point(pose: &FramePose, spec: &OrbitSpec) -> Result<DualVec3> {
    let shp = spec.p.sinh()?;
    let shq = spec.q.sinh()?;
    let x = pose.v1.scale(spec.a * shp) + pose.v3.scale(spec.a * shq);
    if !x.is_finite() {
        return Err(Error::NonFinite {
            context: "orbit point",
        });
    }
    Ok(x)
}

/// Rows v1, v2, v3 as a dual matrix; dual Lorentzian orthogonal for any
/// admissible pose.
pub fn frame_matrix(pose: &FramePose) -> DualMatrix3 {
    DualMatrix3::from_rows([pose.v1, pose.v2, pose.v3])
}

/// Convenience: the frame pose from plain real parameters.
pub fn pose_from_reals(
    psi: f64,
    psi_star: f64,
    sigma: f64,
    sigma_star: f64,
    sign: LambdaSign,
) -> Result<FramePose> {
    let cfg = MotionConfig::new(DualScalar::new(sigma, sigma_star), sign);
    frame_at(&cfg, DualScalar::new(psi, psi_star))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::Vec3L;

    fn cfg(sigma: f64, sigma_star: f64) -> MotionConfig {
        MotionConfig::new(DualScalar::new(sigma, sigma_star), LambdaSign::Plus)
    }

    #[test]
    fn axis_examples() {
        let c = c_axis(&cfg(0.0, 0.0)).unwrap();
        assert_eq!(c, DualVec3::from_re(Vec3L::U3));

        let c = c_axis(&cfg(0.9, 0.0)).unwrap();
        assert!(c
            .re
            .approx_eq(&Vec3L::new(0.9_f64.sinh(), 0.0, 0.9_f64.cosh()), 1e-15));
        assert_eq!(c.du, Vec3L::ZERO);

        let c = c_axis(&cfg(0.0, 1.0)).unwrap();
        assert_eq!(c.re, Vec3L::U3);
        assert_eq!(c.du, Vec3L::U1);
        assert!(c.is_on_h2(1e-15));
    }

    #[test]
    fn frame_at_psi_zero() {
        let pose = frame_at(&cfg(0.8, 0.0), DualScalar::ZERO).unwrap();
        assert!(pose.v3.approx_eq(&DualVec3::from_re(Vec3L::U3), 1e-15));
        assert!(pose.v1.approx_eq(&DualVec3::from_re(-Vec3L::U1), 1e-15));
        assert!(pose.v2.approx_eq(&DualVec3::from_re(-Vec3L::U2), 1e-15));
    }

    #[test]
    fn frame_v3_is_the_lifted_circle() {
        let pose = frame_at(&cfg(0.8, 0.0), DualScalar::new(0.5, 0.1)).unwrap();
        let sh = 0.5_f64.sinh();
        let ch = 0.5_f64.cosh();
        assert!(pose.v3.re.approx_eq(&Vec3L::new(0.0, sh, ch), 1e-15));
        assert!(pose
            .v3
            .du
            .approx_eq(&Vec3L::new(0.0, 0.1 * ch, 0.1 * sh), 1e-15));
    }

    #[test]
    fn degenerate_configuration() {
        assert_eq!(
            frame_at(&cfg(0.0, 0.0), DualScalar::ZERO),
            Err(Error::DegenerateConfiguration)
        );
        // dual parts alone cannot rescue the configuration
        assert_eq!(
            frame_at(&cfg(0.0, 0.7), DualScalar::new(0.0, 0.3)),
            Err(Error::DegenerateConfiguration)
        );
    }

    #[test]
    fn constraints_vanish() {
        let c = cfg(0.8, 0.2);
        let pose = frame_at(&c, DualScalar::new(0.5, 0.1)).unwrap();
        let res = verify_frame_constraints(&pose, &c).unwrap();
        assert!(res.max_abs() <= 1e-12, "residuals {:?}", res);

        // special case that is exact up to final rounding
        let c0 = cfg(0.8, 0.0);
        let pose0 = frame_at(&c0, DualScalar::ZERO).unwrap();
        let res0 = verify_frame_constraints(&pose0, &c0).unwrap();
        assert!(res0.max_abs() <= 5e-15);
    }

    #[test]
    fn scaled_row_breaks_unit_norm() {
        let c = cfg(0.8, 0.0);
        let mut pose = frame_at(&c, DualScalar::new(0.4, 0.0)).unwrap();
        pose.v1 = pose.v1.scale_real(2.0);
        let res = verify_frame_constraints(&pose, &c).unwrap();
        assert!(res.unit_norm.approx_eq(&DualScalar::from_re(3.0), 1e-12));
    }

    #[test]
    fn pose_is_orthonormal() {
        let c = cfg(-0.6, 0.4);
        let pose = frame_at(&c, DualScalar::new(-1.2, 0.7)).unwrap();
        let one = DualScalar::ONE;
        assert!(pose.v1.inner(&pose.v1).approx_eq(&one, 1e-13));
        assert!(pose.v2.inner(&pose.v2).approx_eq(&one, 1e-13));
        assert!(pose.v3.inner(&pose.v3).approx_eq(&-one, 1e-13));
        assert!(pose.v1.inner(&pose.v2).approx_eq(&DualScalar::ZERO, 1e-13));
        assert!(pose.v1.inner(&pose.v3).approx_eq(&DualScalar::ZERO, 1e-13));
        assert!(pose.v2.inner(&pose.v3).approx_eq(&DualScalar::ZERO, 1e-13));
        assert!(frame_matrix(&pose).is_dual_lorentz_orthogonal(1e-12));
    }

    #[test]
    fn branch_flip() {
        let plus = pose_from_reals(0.7, 0.2, 0.5, -0.3, LambdaSign::Plus).unwrap();
        let minus = pose_from_reals(0.7, 0.2, 0.5, -0.3, LambdaSign::Minus).unwrap();
        assert!(minus.v1.approx_eq(&-plus.v1, 0.0));
        assert!(minus.v2.approx_eq(&-plus.v2, 0.0));
        assert!(minus.v3.approx_eq(&plus.v3, 0.0));
    }

    #[test]
    fn orbit_special_cases() {
        let c = cfg(0.8, 0.1);
        let pose = frame_at(&c, DualScalar::new(0.5, 0.2)).unwrap();

        let spec = OrbitSpec::new(DualScalar::ZERO, DualScalar::new(0.4, 0.3)).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        assert!(x.approx_eq(&pose.v3, 1e-13));

        let spec = OrbitSpec::new(DualScalar::new(0.4, -0.2), DualScalar::ZERO).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        assert!(x.approx_eq(&pose.v1, 1e-13));
    }

    #[test]
    fn orbit_pseudo_norm_identity() {
        // <x,x> * sinh(P+Q) = sinh(P-Q)
        let c = cfg(0.8, 0.0);
        let pose = frame_at(&c, DualScalar::new(0.5, 0.0)).unwrap();
        let p = DualScalar::new(0.3, 0.0);
        let q = DualScalar::new(0.3, 0.0);
        let spec = OrbitSpec::new(p, q).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        assert!(x.inner(&x).approx_eq(&DualScalar::ZERO, 1e-12));

        let p = DualScalar::new(0.7, 0.4);
        let q = DualScalar::new(0.2, -0.1);
        let spec = OrbitSpec::new(p, q).unwrap();
        let x = orbit_point(&pose, &spec).unwrap();
        let lhs = x.inner(&x) * (p + q).sinh().unwrap();
        let rhs = (p - q).sinh().unwrap();
        assert!(lhs.approx_eq(&rhs, 1e-12));
    }

    #[test]
    fn orbit_rejects_cancelling_angles() {
        assert!(OrbitSpec::new(DualScalar::from_re(0.5), DualScalar::from_re(-0.5)).is_err());
    }

    #[test]
    fn orbit_spec_invariant() {
        let spec = OrbitSpec::new(DualScalar::new(0.7, 0.4), DualScalar::new(0.2, -0.1)).unwrap();
        let check = spec.a * (spec.p + spec.q).sinh().unwrap();
        assert!(check.approx_eq(&DualScalar::ONE, 1e-12));
    }
}
