//! Real vector algebra of Minkowski 3-space with signature (+, +, -).
//!
//! The third coordinate is the timelike one. The cross product uses the
//! component formula
//! `a x b = (a3 b2 - a2 b3, a1 b3 - a3 b1, a1 b2 - a2 b1)`,
//! which differs by signs from the Euclidean one; every identity downstream
//! is stated and tested against this convention.

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeTuple;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Scale factor of the lightlike classification band, applied to the squared
/// Euclidean norm so the test behaves the same under rescaling.
pub const LIGHTLIKE_BAND: f64 = 1e-12;

/// A vector of Minkowski 3-space; `c3` is the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3L {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

/// Causal character of a vector under the (+, +, -) inner product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalClass {
    Timelike,
    Spacelike,
    Lightlike,
}

impl Vec3L {
    pub const ZERO: Vec3L = Vec3L::new(0.0, 0.0, 0.0);
    /// Spacelike unit basis vectors and the timelike one.
    pub const U1: Vec3L = Vec3L::new(1.0, 0.0, 0.0);
    pub const U2: Vec3L = Vec3L::new(0.0, 1.0, 0.0);
    pub const U3: Vec3L = Vec3L::new(0.0, 0.0, 1.0);

    pub const fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Lorentzian inner product `a1 b1 + a2 b2 - a3 b3`.
    pub fn inner(&self, b: &Vec3L) -> f64 {
        self.c1 * b.c1 + self.c2 * b.c2 - self.c3 * b.c3
    }

    /// Lorentzian cross product, component formula of this convention.
    pub fn cross(&self, b: &Vec3L) -> Vec3L {
        Vec3L::new(
            self.c3 * b.c2 - self.c2 * b.c3,
            self.c1 * b.c3 - self.c3 * b.c1,
            self.c1 * b.c2 - self.c2 * b.c1,
        )
    }

    /// `sqrt(|<a, a>|)`; zero exactly for lightlike and zero vectors.
    pub fn norm(&self) -> f64 {
        self.inner(self).abs().sqrt()
    }

    pub fn euclid_norm_sq(&self) -> f64 {
        self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3
    }

    pub fn scale(&self, k: f64) -> Vec3L {
        Vec3L::new(self.c1 * k, self.c2 * k, self.c3 * k)
    }

    pub fn is_finite(&self) -> bool {
        self.c1.is_finite() && self.c2.is_finite() && self.c3.is_finite()
    }

    pub fn approx_eq(&self, other: &Vec3L, tol: f64) -> bool {
        (self.c1 - other.c1).abs() <= tol
            && (self.c2 - other.c2).abs() <= tol
            && (self.c3 - other.c3).abs() <= tol
    }

    /// Causal classification with the default lightlike band.
    pub fn classify(&self) -> CausalClass {
        self.classify_with_band(LIGHTLIKE_BAND)
    }

    /// Sign test on `<a, a>` with a lightlike band of
    /// `band_coef * |a|^2_euclid`. The zero vector is spacelike.
    pub fn classify_with_band(&self, band_coef: f64) -> CausalClass {
        if *self == Vec3L::ZERO {
            return CausalClass::Spacelike;
        }
        let q = self.inner(self);
        let band = band_coef * self.euclid_norm_sq();
        if q.abs() <= band {
            CausalClass::Lightlike
        } else if q < 0.0 {
            CausalClass::Timelike
        } else {
            CausalClass::Spacelike
        }
    }
}

impl Add for Vec3L {
    type Output = Vec3L;
    fn add(self, b: Vec3L) -> Vec3L {
        Vec3L::new(self.c1 + b.c1, self.c2 + b.c2, self.c3 + b.c3)
    }
}

impl Sub for Vec3L {
    type Output = Vec3L;
    fn sub(self, b: Vec3L) -> Vec3L {
        Vec3L::new(self.c1 - b.c1, self.c2 - b.c2, self.c3 - b.c3)
    }
}

impl Neg for Vec3L {
    type Output = Vec3L;
    fn neg(self) -> Vec3L {
        Vec3L::new(-self.c1, -self.c2, -self.c3)
    }
}

impl fmt::Display for Vec3L {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.c1, self.c2, self.c3)
    }
}

// Serialized as a plain 3-array.
impl Serialize for Vec3L {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = ser.serialize_tuple(3)?;
        t.serialize_element(&self.c1)?;
        t.serialize_element(&self.c2)?;
        t.serialize_element(&self.c3)?;
        t.end()
    }
}

impl<'de> Deserialize<'de> for Vec3L {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec3L;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an array of three numbers")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Vec3L, A::Error> {
                let c1 = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(0, &self))?;
                let c2 = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(1, &self))?;
                let c3 = seq
                    .next_element()?
                    .ok_or_else(|| serde::de::Error::invalid_length(2, &self))?;
                Ok(Vec3L::new(c1, c2, c3))
            }
        }
        de.deserialize_tuple(3, V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_signature() {
        assert_eq!(Vec3L::U3.inner(&Vec3L::U3), -1.0);
        assert_eq!(Vec3L::U1.inner(&Vec3L::U1), 1.0);
        let a = Vec3L::new(1.0, 2.0, 3.0);
        let b = Vec3L::new(4.0, 5.0, 6.0);
        assert_eq!(a.inner(&b), -4.0);
        assert_eq!(a.inner(&b), b.inner(&a));
    }

    #[test]
    fn cross_convention() {
        assert_eq!(Vec3L::U1.cross(&Vec3L::U2), Vec3L::U3);
        assert_eq!(Vec3L::U2.cross(&Vec3L::U3), -Vec3L::U1);
        let a = Vec3L::new(0.3, -1.2, 0.8);
        assert_eq!(a.cross(&a), Vec3L::ZERO);
    }

    #[test]
    fn norms() {
        assert_eq!(Vec3L::U3.norm(), 1.0);
        assert_eq!(Vec3L::new(3.0, 4.0, 0.0).norm(), 5.0);
        assert_eq!(Vec3L::new(1.0, 0.0, 1.0).norm(), 0.0);
    }

    #[test]
    fn classification() {
        assert_eq!(Vec3L::U3.classify(), CausalClass::Timelike);
        assert_eq!(Vec3L::ZERO.classify(), CausalClass::Spacelike);
        assert_eq!(Vec3L::new(1.0, 0.0, 1.0).classify(), CausalClass::Lightlike);
        assert_eq!(Vec3L::new(2.0, -1.0, 0.5).classify(), CausalClass::Spacelike);
        // the band scales with the squared Euclidean norm
        let nearly_null = Vec3L::new(1e8, 0.0, 1e8 * (1.0 + 1e-14));
        assert_eq!(nearly_null.classify(), CausalClass::Lightlike);
    }

    #[test]
    fn triple_product_is_minus_det() {
        // <a x b, c> = -det(a, b, c) for the real algebra
        let a = Vec3L::new(0.4, -1.1, 0.7);
        let b = Vec3L::new(1.3, 0.2, -0.5);
        let c = Vec3L::new(-0.8, 0.9, 1.6);
        let lhs = a.cross(&b).inner(&c);
        let det = a.c1 * (b.c2 * c.c3 - b.c3 * c.c2) - a.c2 * (b.c1 * c.c3 - b.c3 * c.c1)
            + a.c3 * (b.c1 * c.c2 - b.c2 * c.c1);
        assert!((lhs + det).abs() <= 1e-12 * det.abs().max(1.0));
    }
}
