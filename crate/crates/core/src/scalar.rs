//! Scalar fields the concrete algebras are generic over.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, Num, ToPrimitive};

/// Coefficient field of a concrete algebra.
///
/// The exact instance ([`BigRational`]) is the one every verification in this
/// crate runs on; the float instances exist for quick numeric exploration and
/// compare coefficients with `==`, so they are only trustworthy on inputs whose
/// products stay exactly representable.
pub trait Field:
    Num + Clone + Debug + Display + PartialEq + PartialOrd + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_rational(r: &BigRational) -> Self;

    fn from_int(v: i64) -> Self;

    /// True when arithmetic in this field never rounds.
    fn is_exact() -> bool;
}

impl Field for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn is_exact() -> bool {
        true
    }
}

impl Field for Rational64 {
    /// Panics if the value does not fit in 64-bit numerator/denominator.
    fn from_rational(r: &BigRational) -> Self {
        let n = r.numer().to_i64().expect("numerator overflows i64");
        let d = r.denom().to_i64().expect("denominator overflows i64");
        Rational64::new(n, d)
    }

    fn from_int(v: i64) -> Self {
        Rational64::from_integer(v)
    }

    fn is_exact() -> bool {
        true
    }
}

impl Field for f64 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn is_exact() -> bool {
        false
    }
}

impl Field for f32 {
    fn from_rational(r: &BigRational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }

    fn from_int(v: i64) -> Self {
        f32::from_i64(v).unwrap_or(f32::NAN)
    }

    fn is_exact() -> bool {
        false
    }
}

/// Shorthand for building exact rationals in code and tests.
pub fn rat(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Parses `"3"`, `"-3/4"`; rejects zero denominators.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let valid = |s: &str| {
        let digits = s.strip_prefix('-').unwrap_or(s);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid(num) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) if d.bytes().all(|b| b.is_ascii_digit()) && !d.is_empty() => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(n, d))
}
