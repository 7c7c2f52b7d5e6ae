//! The dual-number ring.
//!
//! A dual scalar is `re + eps*du` where `eps` is nilpotent: `eps != 0`,
//! `eps^2 = 0`. Addition is componentwise, multiplication is
//! `(a + eps a*)(b + eps b*) = ab + eps(a b* + a* b)`, and a smooth real
//! function lifts through the truncated Maclaurin rule
//! `f(x + eps x*) = f(x) + eps x* f'(x)`.
//!
//! Real and dual parts are IEEE doubles. Exact equality of the underlying
//! algebra becomes a tolerance discipline here: comparisons go through
//! [`DualScalar::approx_eq`] with both parts checked independently, with an
//! absolute tolerance that callers scale by the magnitude of their data.
//! Operations that can leave the finite range return an error instead of
//! letting NaN or infinity propagate.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A dual number `re + eps*du`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualScalar {
    pub re: f64,
    pub du: f64,
}

impl DualScalar {
    pub const ZERO: DualScalar = DualScalar { re: 0.0, du: 0.0 };
    pub const ONE: DualScalar = DualScalar { re: 1.0, du: 0.0 };

    pub const fn new(re: f64, du: f64) -> Self {
        Self { re, du }
    }

    /// A real number embedded with zero dual part.
    pub const fn from_re(re: f64) -> Self {
        Self { re, du: 0.0 }
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.du.is_finite()
    }

    /// Both parts within `tol` of each other, checked independently.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self.re - other.re).abs() <= tol && (self.du - other.du).abs() <= tol
    }

    /// Division. The divisor must have a nonzero real part; a pure-dual
    /// number is a zero divisor and has no inverse.
    pub fn try_div(self, b: Self) -> Result<Self> {
        if b.re == 0.0 {
            return Err(Error::DivisorNotInvertible);
        }
        let out = Self {
            re: self.re / b.re,
            du: self.du / b.re - self.re * b.du / (b.re * b.re),
        };
        out.finite("dual division")
    }

    /// Maclaurin lift of a differentiable real function:
    /// `re = f(x.re)`, `du = x.du * f'(x.re)`.
    ///
    /// A zero dual part stays exactly zero so that embedded reals pass
    /// through even where `f'` blows up.
    pub fn lift(
        self,
        f: impl Fn(f64) -> f64,
        df: impl Fn(f64) -> f64,
        name: &'static str,
    ) -> Result<Self> {
        let re = f(self.re);
        let du = if self.du == 0.0 { 0.0 } else { self.du * df(self.re) };
        Self { re, du }.finite(name)
    }

    pub fn sinh(self) -> Result<Self> {
        self.lift(f64::sinh, f64::cosh, "sinh")
    }

    pub fn cosh(self) -> Result<Self> {
        self.lift(f64::cosh, f64::sinh, "cosh")
    }

    pub fn tanh(self) -> Result<Self> {
        self.lift(f64::tanh, |x| 1.0 / (x.cosh() * x.cosh()), "tanh")
    }

    /// sech = 1/cosh, with derivative -sech*tanh.
    pub fn sech(self) -> Result<Self> {
        self.lift(
            |x| 1.0 / x.cosh(),
            |x| -(1.0 / x.cosh()) * x.tanh(),
            "sech",
        )
    }

    pub fn sqrt(self) -> Result<Self> {
        if self.re < 0.0 || (self.re == 0.0 && self.du != 0.0) {
            return Err(Error::DomainError {
                func: "sqrt",
                arg: self.re,
            });
        }
        self.lift(f64::sqrt, |x| 0.5 / x.sqrt(), "sqrt")
    }

    /// x^(-1/2), the form the moving-frame normalizer takes.
    pub fn inv_sqrt(self) -> Result<Self> {
        if self.re <= 0.0 {
            return Err(Error::DomainError {
                func: "inv_sqrt",
                arg: self.re,
            });
        }
        let r = 1.0 / self.re.sqrt();
        let du = if self.du == 0.0 {
            0.0
        } else {
            self.du * (-0.5 * r / self.re)
        };
        Self { re: r, du }.finite("inv_sqrt")
    }

    pub fn atanh(self) -> Result<Self> {
        if self.re.abs() >= 1.0 {
            return Err(Error::DomainError {
                func: "atanh",
                arg: self.re,
            });
        }
        self.lift(f64::atanh, |x| 1.0 / (1.0 - x * x), "atanh")
    }

    fn finite(self, context: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite { context })
        }
    }
}

impl Add for DualScalar {
    type Output = Self;
    fn add(self, b: Self) -> Self {
        Self {
            re: self.re + b.re,
            du: self.du + b.du,
        }
    }
}

impl Sub for DualScalar {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        Self {
            re: self.re - b.re,
            du: self.du - b.du,
        }
    }
}

impl Mul for DualScalar {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        Self {
            re: self.re * b.re,
            du: self.re * b.du + self.du * b.re,
        }
    }
}

impl Mul<f64> for DualScalar {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self {
            re: self.re * k,
            du: self.du * k,
        }
    }
}

impl Neg for DualScalar {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            re: -self.re,
            du: -self.du,
        }
    }
}

impl fmt::Display for DualScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.du < 0.0 {
            write!(f, "{} - eps {}", self.re, -self.du)
        } else {
            write!(f, "{} + eps {}", self.re, self.du)
        }
    }
}
