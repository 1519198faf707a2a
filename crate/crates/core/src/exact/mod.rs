//! Exact rational linear algebra and the spectral backends.
//!
//! Everything exact is built on [`BigRational`]; the floating backend uses
//! `nalgebra`'s symmetric eigensolver for graphs whose least eigenvalue is
//! irrational.

mod charpoly;
mod elimination;
mod matrix;
mod modular;
mod spectrum;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub use charpoly::{characteristic_polynomial, is_psd_exact, is_psd_pivoted};
pub use elimination::{integer_nullspace, IntegerSystem};
pub use matrix::{projector_onto_nullspace, ExactMatrix};
pub use spectrum::{
    cayley_spectrum, floating_least_eigenspace, integer_least_eigenvalue, Backend, CayleySpectrum,
    FloatingEigenspace, Spectrum, DEFAULT_TOLERANCE,
};

/// An exact rational or a floating approximation.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn integer(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Float(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            Scalar::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => f.write_str(&format_rational(q)),
            Scalar::Float(x) => f.write_str(&format_float(*x)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Canonical `num/den` rendering (denominator always present and positive).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Fixed rendering with 12 significant digits.
pub fn format_float(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let sign = if q.is_negative() { -1.0 } else { 1.0 };
        if q.is_zero() {
            0.0
        } else {
            sign * f64::INFINITY
        }
    })
}

#[cfg(test)]
pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

#[cfg(test)]
pub(crate) fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
