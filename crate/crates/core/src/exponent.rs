//! Lebesgue-type exponents in `[1, ∞]`.
//!
//! `∞` is a first-class value rather than a float infinity so that the
//! convention `1/∞ = 0` is applied explicitly everywhere it matters. The
//! textual form of `∞` is the token `inf`, both on the command line and in
//! JSON documents.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Exponent<S: Scalar = f64> {
    Finite(S),
    Infinite,
}

impl<S: Scalar> Exponent<S> {
    pub fn new(x: S) -> Result<Self> {
        if x.is_nan() || x < S::one() {
            return Err(Error::InvalidExponent(format!("{x}")));
        }
        if x.is_infinite() {
            Ok(Exponent::Infinite)
        } else {
            Ok(Exponent::Finite(x))
        }
    }

    /// Shorthand for finite literals in tests and fixtures; panics below 1.
    pub fn of(x: f64) -> Self {
        Self::new(S::lit(x)).expect("exponent >= 1")
    }

    pub fn inf() -> Self {
        Exponent::Infinite
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Exponent::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    /// `1/x` with `1/∞ = 0`.
    pub fn recip(&self) -> S {
        match *self {
            Exponent::Finite(x) => x.recip(),
            Exponent::Infinite => S::zero(),
        }
    }

    /// The exponent as a scalar; `∞` maps to the float infinity.
    pub fn value(&self) -> S {
        match *self {
            Exponent::Finite(x) => x,
            Exponent::Infinite => S::infinity(),
        }
    }

    /// Hölder conjugate `x/(x-1)`; `1 ↔ ∞`.
    pub fn conjugate(&self) -> Self {
        match *self {
            Exponent::Infinite => Exponent::Finite(S::one()),
            Exponent::Finite(x) if x == S::one() => Exponent::Infinite,
            Exponent::Finite(x) => Exponent::Finite(x / (x - S::one())),
        }
    }

    /// Exponent whose reciprocal is `s`; `s` must lie in `[0, 1]`.
    pub fn from_recip(s: S) -> Result<Self> {
        if s.is_nan() || s < S::zero() || s > S::one() {
            return Err(Error::InvalidExponent(format!("1/{s}")));
        }
        if s == S::zero() {
            Ok(Exponent::Infinite)
        } else {
            Exponent::new(s.recip())
        }
    }
}

impl<S: Scalar> PartialOrd for Exponent<S> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        // larger exponent <=> smaller reciprocal
        other.recip().partial_cmp(&self.recip())
    }
}

impl<S: Scalar> fmt::Display for Exponent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(x) => write!(f, "{x}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

impl<S: Scalar + FromStr> FromStr for Exponent<S> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Exponent::Infinite);
        }
        let x: S = t.parse().map_err(|_| Error::InvalidExponent(t.to_string()))?;
        Exponent::new(x)
    }
}

impl Serialize for Exponent<f64> {
    fn serialize<Z: Serializer>(&self, ser: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self {
            Exponent::Finite(x) => ser.serialize_f64(*x),
            Exponent::Infinite => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Exponent<f64> {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        let parsed = match Raw::deserialize(de)? {
            Raw::Num(x) => Exponent::new(x),
            Raw::Text(s) => s.parse(),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(Exponent::<f64>::of(2.0).conjugate(), Exponent::of(2.0));
        assert_eq!(Exponent::<f64>::of(1.0).conjugate(), Exponent::Infinite);
        assert_eq!(Exponent::<f64>::inf().conjugate(), Exponent::of(1.0));
        match Exponent::<f64>::of(4.0).conjugate() {
            Exponent::Finite(x) => assert!((x - 4.0 / 3.0).abs() < 1e-15),
            Exponent::Infinite => panic!("4' is finite"),
        }
    }

    #[test]
    fn rejects_below_one() {
        assert!(Exponent::<f64>::new(0.5).is_err());
        assert!(Exponent::<f64>::new(f64::NAN).is_err());
        assert!("0.9".parse::<Exponent<f64>>().is_err());
        assert!("abc".parse::<Exponent<f64>>().is_err());
    }

    #[test]
    fn parses_inf_token() {
        assert_eq!("inf".parse::<Exponent<f64>>().unwrap(), Exponent::Infinite);
        assert_eq!("2.5".parse::<Exponent<f64>>().unwrap(), Exponent::of(2.5));
        let e: Exponent<f64> = serde_json::from_str("\"inf\"").unwrap();
        assert!(e.is_infinite());
        let e: Exponent<f64> = serde_json::from_str("3").unwrap();
        assert_eq!(e, Exponent::of(3.0));
    }

    #[test]
    fn ordering_treats_inf_as_largest() {
        assert!(Exponent::<f64>::of(2.0) < Exponent::inf());
        assert!(Exponent::<f64>::of(1.0) < Exponent::of(1.5));
    }
}
