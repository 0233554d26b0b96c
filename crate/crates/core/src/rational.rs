//! Exact rational helpers shared by every module: parsing and printing of
//! `p/q` literals, the `+INF`-aware [`Bound`] value, and serde adapters.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The exact scalar type used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p/q`, an integer, or a terminating decimal such as `1.25`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::BadRational(s.to_string());
    if let Some((num, den)) = s.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let whole = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            BigInt::from_str(int).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac = BigInt::from_str(frac).map_err(|_| bad())?;
        let mut value = Q::from_integer(whole.abs()) + Q::new(frac, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    BigInt::from_str(s).map(Q::from_integer).map_err(|_| bad())
}

/// `p/q` (or `p` when integral).
pub fn fmt_q(x: &Q) -> String {
    x.to_string()
}

pub fn approx(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn ceil_to_usize(x: &Q) -> usize {
    let c = x.ceil().to_integer();
    c.to_usize().unwrap_or(if c.is_negative() { 0 } else { usize::MAX })
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// A bound value: an exact rational, or `+INF` when the underlying LP is
/// infeasible for every candidate value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Finite(Q),
    Infinite,
}

impl Bound {
    pub fn finite(&self) -> Option<&Q> {
        match self {
            Bound::Finite(v) => Some(v),
            Bound::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Bound::Infinite)
    }

    /// Exact equality with a rational; `+INF` never matches.
    pub fn equals(&self, v: &Q) -> bool {
        self.finite() == Some(v)
    }

    pub fn approx(&self) -> f64 {
        match self {
            Bound::Finite(v) => approx(v),
            Bound::Infinite => f64::INFINITY,
        }
    }
}

impl PartialOrd for Bound {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        Some(match (self, other) {
            (Bound::Infinite, Bound::Infinite) => Equal,
            (Bound::Infinite, _) => Greater,
            (_, Bound::Infinite) => Less,
            (Bound::Finite(a), Bound::Finite(b)) => a.cmp(b),
        })
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(v) => write!(f, "{v}"),
            Bound::Infinite => f.write_str("INF"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "INF" | "+INF" | "inf" | "+inf" => Ok(Bound::Infinite),
            other => parse_q(other).map(Bound::Finite),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a rational as the string `p/q`.
pub mod serde_q {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(serde::de::Error::custom)
    }
}
