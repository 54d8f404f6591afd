//! Exact rational helpers: parsing, canonical rendering and decimal output.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Arbitrary-precision rational used for every storage, bandwidth and file-size quantity.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational `{input}`: {reason}")]
pub struct ParseRationalError {
    pub input: String,
    pub reason: &'static str,
}

/// Parses `p`, `p/q` or `-p/q` (surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let err = |reason| ParseRationalError {
        input: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(err("empty"));
    }
    let (num, den) = match trimmed.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (trimmed, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("numerator is not an integer"))?;
    let den = BigInt::from_str(den).map_err(|_| err("denominator is not an integer"))?;
    if den.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical `p/q` rendering; integers are rendered without a denominator.
pub fn render(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Decimal rendering rounded half-away-from-zero to `digits` significant digits.
/// Trailing fractional zeros are dropped, so `3/2` renders as `1.5`.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    if value.is_zero() {
        return "0".to_string();
    }
    let negative = value.is_negative();
    let magnitude = value.abs();
    let ten = BigInt::from(10);

    // exponent e with 10^e <= magnitude < 10^(e+1)
    let mut exp = estimate_exponent(&magnitude);
    loop {
        let low = pow10(exp);
        if magnitude < low {
            exp -= 1;
        } else if magnitude >= pow10(exp + 1) {
            exp += 1;
        } else {
            break;
        }
    }

    // scaled = magnitude * 10^(digits - 1 - exp), rounded to an integer
    let shift = digits as i64 - 1 - exp;
    let scaled = magnitude * pow10(shift);
    let (quot, rem) = scaled.numer().div_rem(scaled.denom());
    let mut mantissa = quot;
    if rem * BigInt::from(2) >= *scaled.denom() {
        mantissa += 1;
    }
    let mut shift = shift;
    // rounding can carry into an extra digit (9.99.. -> 10.0..)
    if mantissa.to_string().len() > digits {
        mantissa /= &ten;
        shift -= 1;
    }

    let mut text = mantissa.to_string();
    if shift > 0 {
        let shift = shift as usize;
        if text.len() <= shift {
            text = format!("{}{}", "0".repeat(shift - text.len() + 1), text);
        }
        let split = text.len() - shift;
        let (whole, frac) = text.split_at(split);
        let frac = frac.trim_end_matches('0');
        text = if frac.is_empty() {
            whole.to_string()
        } else {
            format!("{whole}.{frac}")
        };
    } else if shift < 0 {
        text.push_str(&"0".repeat((-shift) as usize));
    }
    if negative {
        text.insert(0, '-');
    }
    text
}

fn pow10(exp: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn estimate_exponent(magnitude: &Rational) -> i64 {
    let digits = |n: &BigInt| n.to_string().len() as i64;
    digits(magnitude.numer()) - digits(magnitude.denom())
}

/// Lossy conversion for summaries and plotting.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// JSON representation of a rational: an integer literal or a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.0.is_integer() {
            if let Some(v) = self.0.numer().to_i64() {
                return serializer.serialize_i64(v);
            }
        }
        serializer.serialize_str(&render(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct RationalVisitor;

        impl<'de> Visitor<'de> for RationalVisitor {
            type Value = JsonRational;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string \"p/q\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(JsonRational(int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(JsonRational(Rational::from_integer(BigInt::from(v))))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Self::Value, E> {
                Err(E::custom(format!(
                    "floating-point literal {v} is not exact; write it as \"p/q\""
                )))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_rational(v).map(JsonRational).map_err(E::custom)
            }
        }

        deserializer.deserialize_any(RationalVisitor)
    }
}

/// Serde adapter for `Rational` fields rendered as canonical strings.
pub mod as_string {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&render(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        JsonRational::deserialize(deserializer).map(|r| r.0)
    }
}

/// Serde adapter for `Vec<Rational>` rendered as canonical strings.
pub mod vec_as_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&render(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<JsonRational>::deserialize(deserializer)?;
        Ok(raw.into_iter().map(|r| r.0).collect())
    }
}

/// Serde adapter for `Option<Rational>`.
pub mod opt_as_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        value: &Option<Rational>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => serializer.serialize_some(&render(v)),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Rational>, D::Error> {
        Ok(Option::<JsonRational>::deserialize(deserializer)?.map(|r| r.0))
    }
}
