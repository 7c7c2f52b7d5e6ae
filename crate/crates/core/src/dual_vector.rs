//! Dual Lorentzian vectors and matrices.
//!
//! A dual vector `a + eps a*` pairs two real Minkowski vectors. Unit dual
//! timelike vectors (`<a,a> = -1`, `<a,a*> = 0`) form the dual hyperbolic
//! unit sphere; unit dual spacelike vectors (`<a,a> = +1`, `<a,a*> = 0`)
//! form the dual Lorentzian unit sphere. Note the symbol collision this
//! module carefully avoids: the nilpotent dual unit and the signature
//! matrix diag(1, 1, -1) are distinct objects and are never conflated.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Neg, Sub};

use crate::dual::DualScalar;
use crate::minkowski::Vec3L;

/// A dual Lorentzian vector `re + eps*du`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualVec3 {
    pub re: Vec3L,
    pub du: Vec3L,
}

impl DualVec3 {
    pub const ZERO: DualVec3 = DualVec3 {
        re: Vec3L::ZERO,
        du: Vec3L::ZERO,
    };

    pub const fn new(re: Vec3L, du: Vec3L) -> Self {
        Self { re, du }
    }

    /// A real vector embedded with zero dual part.
    pub const fn from_re(re: Vec3L) -> Self {
        Self {
            re,
            du: Vec3L::ZERO,
        }
    }

    /// Assemble from three dual components.
    pub fn from_components(c: [DualScalar; 3]) -> Self {
        Self {
            re: Vec3L::new(c[0].re, c[1].re, c[2].re),
            du: Vec3L::new(c[0].du, c[1].du, c[2].du),
        }
    }

    /// The i-th component as a dual scalar (0-based).
    pub fn component(&self, i: usize) -> DualScalar {
        let re = self.re.as_array()[i];
        let du = self.du.as_array()[i];
        DualScalar::new(re, du)
    }

    /// Dual inner product `<a,b> + eps(<a,b*> + <a*,b>)`.
    pub fn inner(&self, b: &DualVec3) -> DualScalar {
        DualScalar::new(
            self.re.inner(&b.re),
            self.re.inner(&b.du) + self.du.inner(&b.re),
        )
    }

    /// Dual cross product `a x b + eps(a* x b + a x b*)`.
    pub fn cross(&self, b: &DualVec3) -> DualVec3 {
        DualVec3 {
            re: self.re.cross(&b.re),
            du: self.du.cross(&b.re) + self.re.cross(&b.du),
        }
    }

    /// Multiplication by a dual scalar: `l*a + eps(l*a* + l**a)`.
    pub fn scale(&self, l: DualScalar) -> DualVec3 {
        DualVec3 {
            re: self.re.scale(l.re),
            du: self.du.scale(l.re) + self.re.scale(l.du),
        }
    }

    pub fn scale_real(&self, k: f64) -> DualVec3 {
        DualVec3 {
            re: self.re.scale(k),
            du: self.du.scale(k),
        }
    }

    /// Membership in the dual hyperbolic unit sphere:
    /// `|<re,re> + 1| <= tol` and `|<re,du>| <= tol`.
    pub fn is_on_h2(&self, tol: f64) -> bool {
        (self.re.inner(&self.re) + 1.0).abs() <= tol && self.re.inner(&self.du).abs() <= tol
    }

    /// Membership in the dual Lorentzian unit sphere:
    /// `|<re,re> - 1| <= tol` and `|<re,du>| <= tol`.
    pub fn is_on_s2(&self, tol: f64) -> bool {
        (self.re.inner(&self.re) - 1.0).abs() <= tol && self.re.inner(&self.du).abs() <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.du.is_finite()
    }

    pub fn approx_eq(&self, other: &DualVec3, tol: f64) -> bool {
        self.re.approx_eq(&other.re, tol) && self.du.approx_eq(&other.du, tol)
    }
}

impl Add for DualVec3 {
    type Output = DualVec3;
    fn add(self, b: DualVec3) -> DualVec3 {
        DualVec3 {
            re: self.re + b.re,
            du: self.du + b.du,
        }
    }
}

impl Sub for DualVec3 {
    type Output = DualVec3;
    fn sub(self, b: DualVec3) -> DualVec3 {
        DualVec3 {
            re: self.re - b.re,
            du: self.du - b.du,
        }
    }
}

impl Neg for DualVec3 {
    type Output = DualVec3;
    fn neg(self) -> DualVec3 {
        DualVec3 {
            re: -self.re,
            du: -self.du,
        }
    }
}

/// `<a x b, c>`, the dual triple product. Equals minus the dual determinant
/// of the component matrix; see [`dual_det3`] for the independent route.
pub fn triple_product(a: &DualVec3, b: &DualVec3, c: &DualVec3) -> DualScalar {
    a.cross(b).inner(c)
}

/// Determinant of the 3x3 matrix with rows `a`, `b`, `c`, expanded by
/// cofactors entirely in dual-scalar arithmetic. This shares no code with
/// the cross/inner route, so the identity
/// `triple_product(a,b,c) = -dual_det3(a,b,c)` is a genuine cross-check.
pub fn dual_det3(a: &DualVec3, b: &DualVec3, c: &DualVec3) -> DualScalar {
    let a = [a.component(0), a.component(1), a.component(2)];
    let b = [b.component(0), b.component(1), b.component(2)];
    let c = [c.component(0), c.component(1), c.component(2)];
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// A 3x3 matrix of dual scalars, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualMatrix3 {
    pub m: [[DualScalar; 3]; 3],
}

impl DualMatrix3 {
    pub fn identity() -> Self {
        let mut m = [[DualScalar::ZERO; 3]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = DualScalar::ONE;
        }
        Self { m }
    }

    /// The signature matrix diag(1, 1, -1) as a dual matrix with zero dual
    /// parts. This is the metric object, not the nilpotent dual unit.
    pub fn signature() -> Self {
        let mut s = Self::identity();
        s.m[2][2] = DualScalar::new(-1.0, 0.0);
        s
    }

    pub fn from_rows(rows: [DualVec3; 3]) -> Self {
        let mut m = [[DualScalar::ZERO; 3]; 3];
        for (i, r) in rows.iter().enumerate() {
            for (j, entry) in m[i].iter_mut().enumerate() {
                *entry = r.component(j);
            }
        }
        Self { m }
    }

    pub fn row(&self, i: usize) -> DualVec3 {
        DualVec3::from_components(self.m[i])
    }

    pub fn transpose(&self) -> Self {
        let mut t = [[DualScalar::ZERO; 3]; 3];
        for (i, trow) in t.iter_mut().enumerate() {
            for (j, row) in self.m.iter().enumerate() {
                trow[j] = row[i];
            }
        }
        Self { m: t }
    }

    pub fn matmul(&self, b: &DualMatrix3) -> DualMatrix3 {
        let mut out = [[DualScalar::ZERO; 3]; 3];
        for (i, orow) in out.iter_mut().enumerate() {
            for (j, cell) in orow.iter_mut().enumerate() {
                let mut acc = DualScalar::ZERO;
                for k in 0..3 {
                    acc = acc + self.m[i][k] * b.m[k][j];
                }
                *cell = acc;
            }
        }
        DualMatrix3 { m: out }
    }

    /// Dual Lorentzian orthogonality: `M S M^T = S` entrywise within `tol`
    /// in both parts, with S the signature matrix. Equivalent to the inverse
    /// condition `M^{-1} = S M^T S` without forming any inverse.
    pub fn is_dual_lorentz_orthogonal(&self, tol: f64) -> bool {
        self.orthogonality_defect() <= tol
    }

    /// Largest entrywise deviation of `M S M^T` from S over both parts.
    pub fn orthogonality_defect(&self) -> f64 {
        let s = Self::signature();
        let prod = self.matmul(&s).matmul(&self.transpose());
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = prod.m[i][j] - s.m[i][j];
                worst = worst.max(d.re.abs()).max(d.du.abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn dv(re: [f64; 3], du: [f64; 3]) -> DualVec3 {
        DualVec3::new(Vec3L::from_array(re), Vec3L::from_array(du))
    }

    fn random_dual(rng: &mut SplitMix64) -> DualVec3 {
        dv(
            [
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
            ],
            [
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
                rng.uniform(-2.0, 2.0),
            ],
        )
    }

    #[test]
    fn dual_inner_examples() {
        let u3 = DualVec3::from_re(Vec3L::U3);
        assert_eq!(u3.inner(&u3), DualScalar::new(-1.0, 0.0));

        let a = dv([0.0, 0.0, 1.0], [0.0, 1.0, 0.0]);
        assert_eq!(a.inner(&a), DualScalar::new(-1.0, 0.0));

        let b = dv([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        let c = dv([0.0, 1.0, 0.0], [0.0, 0.0, 0.0]);
        assert_eq!(b.inner(&c), DualScalar::new(0.0, 1.0));
    }

    #[test]
    fn dual_cross_examples() {
        let e1 = DualVec3::from_re(Vec3L::U1);
        let e2 = DualVec3::from_re(Vec3L::U2);
        assert_eq!(e1.cross(&e2), DualVec3::from_re(Vec3L::U3));

        let a = dv([0.3, -0.7, 1.1], [0.5, 0.2, -0.9]);
        assert_eq!(a.cross(&a), DualVec3::ZERO);

        let e1e2 = dv([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]);
        assert_eq!(e1e2.cross(&e2), DualVec3::from_re(Vec3L::U3));
    }

    #[test]
    fn triple_product_basis() {
        let e1 = DualVec3::from_re(Vec3L::U1);
        let e2 = DualVec3::from_re(Vec3L::U2);
        let e3 = DualVec3::from_re(Vec3L::U3);
        assert_eq!(triple_product(&e1, &e2, &e3), DualScalar::new(-1.0, 0.0));
        assert_eq!(dual_det3(&e1, &e2, &e3), DualScalar::ONE);
        // repeated argument kills the determinant
        assert!(triple_product(&e1, &e1, &e3).approx_eq(&DualScalar::ZERO, 0.0));
    }

    #[test]
    fn triple_product_matches_determinant_route() {
        let mut rng = SplitMix64::new(71);
        for _ in 0..200 {
            let a = random_dual(&mut rng);
            let b = random_dual(&mut rng);
            let c = random_dual(&mut rng);
            let lhs = triple_product(&a, &b, &c);
            let rhs = -dual_det3(&a, &b, &c);
            assert!(lhs.approx_eq(&rhs, 1e-12 * 64.0));
        }
    }

    #[test]
    fn sphere_membership() {
        assert!(dv([0.0, 0.0, 1.0], [0.0, 1.0, 0.0]).is_on_h2(1e-12));
        assert!(!dv([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]).is_on_h2(1e-12));
        assert!(!dv([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]).is_on_h2(1e-12));

        assert!(dv([1.0, 0.0, 0.0], [0.0, 0.0, 5.0]).is_on_s2(1e-12));
        assert!(!dv([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]).is_on_s2(1e-12));
        assert!(!dv([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]).is_on_s2(1e-12));
    }

    #[test]
    fn lagrange_identity() {
        // <a x b, c x d> = -<a,c><b,d> + <a,d><b,c>
        let mut rng = SplitMix64::new(13);
        for _ in 0..100 {
            let a = random_dual(&mut rng);
            let b = random_dual(&mut rng);
            let c = random_dual(&mut rng);
            let d = random_dual(&mut rng);
            let lhs = a.cross(&b).inner(&c.cross(&d));
            let rhs = -(a.inner(&c) * b.inner(&d)) + a.inner(&d) * b.inner(&c);
            assert!(lhs.approx_eq(&rhs, 1e-12 * 256.0));
        }
    }

    #[test]
    fn double_cross_identity() {
        // (a x b) x c = -<a,c> b + <b,c> a
        let mut rng = SplitMix64::new(29);
        for _ in 0..100 {
            let a = random_dual(&mut rng);
            let b = random_dual(&mut rng);
            let c = random_dual(&mut rng);
            let lhs = a.cross(&b).cross(&c);
            let rhs = b.scale(-a.inner(&c)) + a.scale(b.inner(&c));
            assert!(lhs.approx_eq(&rhs, 1e-12 * 64.0));
        }
    }

    #[test]
    fn matrix_orthogonality() {
        assert!(DualMatrix3::identity().is_dual_lorentz_orthogonal(1e-15));
        assert!(DualMatrix3::signature().is_dual_lorentz_orthogonal(1e-15));
        // scaling a row breaks unit norm
        let mut bad = DualMatrix3::identity();
        for j in 0..3 {
            bad.m[0][j] = bad.m[0][j] * 2.0;
        }
        assert!(!bad.is_dual_lorentz_orthogonal(1e-9));
    }

    #[test]
    fn transpose_and_matmul() {
        let m = DualMatrix3::from_rows([
            dv([1.0, 2.0, 3.0], [0.1, 0.2, 0.3]),
            dv([0.0, 1.0, 4.0], [0.0, 0.5, 0.0]),
            dv([5.0, 6.0, 0.0], [0.7, 0.0, 0.9]),
        ]);
        let t = m.transpose().transpose();
        assert_eq!(m, t);
        let id = DualMatrix3::identity();
        assert_eq!(m.matmul(&id), m);
    }
}
