//! Scalar abstraction shared by every construction in the crate.
//!
//! The engine runs on `f64`; `f32` is accepted for low-precision use and
//! [`Rational`] gives exact arithmetic for small reference computations.

use std::fmt::Debug;
use std::ops::Neg;

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Arbitrary-precision rational numbers.
pub type Rational = BigRational;

/// A real-like field element.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Num
    + Neg<Output = Self>
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// False for NaN and infinities.
    fn is_finite_value(&self) -> bool;

    /// Lossy view used for tolerance checks and JSON output.
    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite `f64` (rounded for `f32`).
    fn from_f64_value(v: f64) -> Option<Self> {
        if v.is_finite() {
            Self::from_f64(v)
        } else {
            None
        }
    }

    fn from_count(n: u128) -> Self {
        Self::from_u128(n).expect("count representable in scalar type")
    }

    /// True when arithmetic is exact, so probability rows must sum to
    /// exactly one rather than within a tolerance.
    fn is_exact() -> bool {
        false
    }
}

impl Scalar for f64 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for BigRational {
    fn is_finite_value(&self) -> bool {
        true
    }

    fn is_exact() -> bool {
        true
    }
}

/// `|a - b|` as `f64`.
pub fn abs_diff<S: Scalar>(a: &S, b: &S) -> f64 {
    let d = a.clone() - b.clone();
    d.to_f64_lossy().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_from_f64_is_exact() {
        let r = Rational::from_f64_value(0.1).unwrap();
        assert_eq!(r.to_f64_lossy(), 0.1);
        assert!(Rational::from_f64_value(f64::NAN).is_none());
    }

    #[test]
    fn counts_convert() {
        assert_eq!(f64::from_count(10), 10.0);
        assert_eq!(Rational::from_count(3), Rational::from_integer(3.into()));
    }
}
