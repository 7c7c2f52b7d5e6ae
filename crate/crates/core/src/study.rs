//! The line correspondence between unit dual vectors and directed lines.
//!
//! A directed timelike line of Minkowski 3-space is stored as a unit
//! timelike direction together with its moment about the origin,
//! `moment = m x direction` for any point `m` on the line. Packing the pair
//! into the dual vector `direction + eps*moment` lands on the dual
//! hyperbolic unit sphere, and the correspondence is one-to-one.
//!
//! Point recovery. For a unit timelike direction `x` the identity
//! `x x x* = m + <m, x> x` makes `y = x x x* + lambda x` a point of the
//! line ([`point_at`]). For unit *spacelike* directions the same double-cross
//! expansion gives `x x x* = <m, x> x - m`, so the naive recovery lands on
//! the point-reflected line; [`line_point`] applies the sign that returns
//! points of the represented line for either causal character, and
//! [`raw_point`] keeps the uncorrected map for callers that want the formal
//! direction-times-moment image of an arbitrary dual vector.

use serde::{Deserialize, Serialize};

use crate::dual_vector::DualVec3;
use crate::error::{Error, Result};
use crate::minkowski::{CausalClass, Vec3L};

/// Directions with `|<dir, dir>|` below this are rejected as too close to
/// the light cone to normalize reliably.
pub const NEAR_LIGHTLIKE_GUARD: f64 = 1e-9;

/// A directed timelike line: unit timelike direction plus moment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectedTimelikeLine {
    /// Unit timelike direction, `<dir, dir> = -1`.
    pub direction: Vec3L,
    /// Moment about the origin, orthogonal to the direction.
    pub moment: Vec3L,
}

/// Build the line through point `m` with timelike direction `dir`.
/// The direction is normalized; the moment does not depend on which point
/// of the line is supplied.
pub fn line_from_point_direction(m: Vec3L, dir: Vec3L) -> Result<DirectedTimelikeLine> {
    if dir.inner(&dir).abs() < NEAR_LIGHTLIKE_GUARD || dir.classify() != CausalClass::Timelike {
        return Err(Error::NotTimelike);
    }
    let direction = dir.scale(1.0 / dir.norm());
    let moment = m.cross(&direction);
    Ok(DirectedTimelikeLine { direction, moment })
}

/// Pack a line into its dual-vector representative `direction + eps*moment`.
pub fn line_to_dual(line: &DirectedTimelikeLine) -> DualVec3 {
    DualVec3::new(line.direction, line.moment)
}

/// Unpack a dual hyperbolic unit sphere point into the line it represents.
pub fn dual_to_line(a: &DualVec3, tol: f64) -> Result<DirectedTimelikeLine> {
    if !a.is_on_h2(tol) {
        return Err(Error::NotOnH2);
    }
    Ok(DirectedTimelikeLine {
        direction: a.re,
        moment: a.du,
    })
}

/// The formal recovery map `y = re x du + lambda*re`, with no membership
/// gate. Correct for unit timelike directions only; see [`line_point`].
pub fn raw_point(a: &DualVec3, lambda: f64) -> Vec3L {
    a.re.cross(&a.du) + a.re.scale(lambda)
}

/// Point of the represented timelike line at ruling parameter `lambda`,
/// with the foot of the perpendicular from the origin at `lambda = 0`.
pub fn point_at(a: &DualVec3, lambda: f64, tol: f64) -> Result<Vec3L> {
    if !a.is_on_h2(tol) {
        return Err(Error::NotOnH2);
    }
    Ok(raw_point(a, lambda))
}

/// Point of the line represented by a unit dual vector of either causal
/// character. Timelike representatives use the recovery map as is;
/// spacelike ones need the reflected moment term to stay on the line.
pub fn line_point(a: &DualVec3, lambda: f64, tol: f64) -> Result<Vec3L> {
    if a.is_on_h2(tol) {
        Ok(raw_point(a, lambda))
    } else if a.is_on_s2(tol) {
        Ok(a.du.cross(&a.re) + a.re.scale(lambda))
    } else {
        Err(Error::NotUnitDual)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn line_through_origin() {
        let line = line_from_point_direction(Vec3L::ZERO, Vec3L::U3).unwrap();
        assert_eq!(line.direction, Vec3L::U3);
        assert_eq!(line.moment, Vec3L::ZERO);
        assert_eq!(line_to_dual(&line), DualVec3::from_re(Vec3L::U3));
    }

    #[test]
    fn moment_examples() {
        let line = line_from_point_direction(Vec3L::U1, Vec3L::U3).unwrap();
        assert_eq!(line.moment, Vec3L::U2);
        // a point along the direction contributes nothing
        let line = line_from_point_direction(Vec3L::new(0.0, 0.0, 7.0), Vec3L::U3).unwrap();
        assert_eq!(line.moment, Vec3L::ZERO);
    }

    #[test]
    fn rejects_non_timelike() {
        assert_eq!(
            line_from_point_direction(Vec3L::ZERO, Vec3L::U1),
            Err(Error::NotTimelike)
        );
        assert_eq!(
            line_from_point_direction(Vec3L::ZERO, Vec3L::new(1.0, 0.0, 1.0)),
            Err(Error::NotTimelike)
        );
        // timelike by classification but inside the normalization guard
        let nearly_null = Vec3L::new(1.0, 0.0, (1.0 + 1e-10_f64).sqrt());
        assert_eq!(
            line_from_point_direction(Vec3L::ZERO, nearly_null),
            Err(Error::NotTimelike)
        );
    }

    #[test]
    fn dual_to_line_gate() {
        let a = DualVec3::new(Vec3L::U3, Vec3L::U2);
        let line = dual_to_line(&a, 1e-12).unwrap();
        assert_eq!(line.direction, Vec3L::U3);
        assert_eq!(line.moment, Vec3L::U2);
        assert_eq!(
            dual_to_line(&DualVec3::from_re(Vec3L::U1), 1e-12),
            Err(Error::NotOnH2)
        );
    }

    #[test]
    fn point_recovery_examples() {
        let through_origin = DualVec3::from_re(Vec3L::U3);
        assert_eq!(
            point_at(&through_origin, 3.0, 1e-12).unwrap(),
            Vec3L::new(0.0, 0.0, 3.0)
        );
        let a = DualVec3::new(Vec3L::U3, Vec3L::U2);
        assert_eq!(point_at(&a, 0.0, 1e-12).unwrap(), Vec3L::U1);
        assert_eq!(point_at(&a, 2.0, 1e-12).unwrap(), Vec3L::new(1.0, 0.0, 2.0));
        assert_eq!(
            point_at(&DualVec3::from_re(Vec3L::U1), 0.0, 1e-12),
            Err(Error::NotOnH2)
        );
    }

    #[test]
    fn spacelike_recovery_lands_on_the_line() {
        // spacelike line through (0, 0, 2) with direction u1
        let m = Vec3L::new(0.0, 0.0, 2.0);
        let dir = Vec3L::U1;
        let moment = m.cross(&dir);
        let a = DualVec3::new(dir, moment);
        assert!(a.is_on_s2(1e-12));
        let y = line_point(&a, 0.5, 1e-9).unwrap();
        // y - m must be parallel to the direction
        let d = y - m;
        assert!(d.cross(&dir).approx_eq(&Vec3L::ZERO, 1e-12));
        // whereas the raw map lands on the reflected line
        let y_raw = raw_point(&a, 0.5);
        let d_raw = y_raw - m;
        assert!(!d_raw.cross(&dir).approx_eq(&Vec3L::ZERO, 1e-6));
    }

    #[test]
    fn round_trip_random_lines() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..200 {
            let m = Vec3L::new(
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
            );
            let c1 = rng.uniform(-1.0, 1.0);
            let c2 = rng.uniform(-1.0, 1.0);
            let spatial = (c1 * c1 + c2 * c2).sqrt();
            let c3 = (spatial + rng.uniform(0.2, 2.0)) * rng.signed_uniform(0.5, 1.0).signum();
            let dir = Vec3L::new(c1, c2, c3);

            let line = line_from_point_direction(m, dir).unwrap();
            let packed = line_to_dual(&line);
            assert!(packed.is_on_h2(1e-12));
            let back = dual_to_line(&packed, 1e-12).unwrap();
            assert!(back.direction.approx_eq(&line.direction, 1e-12));
            assert!(back.moment.approx_eq(&line.moment, 1e-12));

            // a recovered point reproduces the same moment
            let lambda = rng.uniform(-3.0, 3.0);
            let y = point_at(&packed, lambda, 1e-12).unwrap();
            let again = line_from_point_direction(y, line.direction).unwrap();
            let scale = 1.0 + y.euclid_norm_sq().sqrt();
            assert!(again.moment.approx_eq(&line.moment, 1e-12 * scale));
        }
    }
}
