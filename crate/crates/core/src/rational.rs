//! Exact rationals over arbitrary-precision integers.
//!
//! `num_rational::BigRational` already keeps values in lowest terms with a
//! positive denominator, so it is used directly. This module adds the
//! canonical `"p/q"` text form used by every serialized artifact.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Canonical `"p/q"` string; the denominator is always written.
pub fn to_canonical(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Human-oriented form: integers without a denominator.
pub fn to_short(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or `"p"`.
pub fn parse(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(s).map_err(|_| bad())?,
        )),
    }
}

/// Wire wrapper that (de)serializes a rational as its canonical string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QStr(pub Rational);

impl Serialize for QStr {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_canonical(&self.0))
    }
}

impl<'de> Deserialize<'de> for QStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse(&s).map(QStr).map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(QStr(qi(n))),
        }
    }
}

impl fmt::Display for QStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_canonical(&self.0))
    }
}

pub(crate) fn is_neg(r: &Rational) -> bool {
    r.is_negative()
}
