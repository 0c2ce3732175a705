//! JSON helpers. Integers are written as JSON integers of any size; rationals as
//! `{"num": …, "den": …}`. Nothing is ever written as a float.

use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Number, Value};

use crate::hjcore::{Int, Rational};

pub const SCHEMA_VERSION: u64 = 1;

pub fn int_value(v: &Int) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integers are JSON numbers"))
}

pub fn int_from_value(v: &Value) -> Result<Int, String> {
    match v {
        Value::Number(n) => parse_int(n),
        other => Err(format!("expected an integer, found {other}")),
    }
}

fn parse_int(n: &Number) -> Result<Int, String> {
    let s = n.as_str();
    if s.contains(['.', 'e', 'E']) {
        return Err(format!("expected an integer, found {s}"));
    }
    Int::from_str(s).map_err(|e| format!("bad integer {s}: {e}"))
}

pub fn rational_value(r: &Rational) -> Value {
    serde_json::json!({ "num": int_value(r.numer()), "den": int_value(&r.denom()) })
}

pub fn ints_value(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_value).collect())
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        rational_value(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            #[serde(with = "int")]
            num: Int,
            #[serde(with = "int")]
            den: Int,
        }
        let raw = Raw::deserialize(d)?;
        let r = Rational::new(raw.num.clone(), raw.den.clone()).map_err(D::Error::custom)?;
        if *r.numer() != raw.num || r.denom() != raw.den {
            return Err(D::Error::custom("rational is not in lowest terms"));
        }
        Ok(r)
    }
}

/// `#[serde(with = "json::int")]` for a single big integer.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Int, s: S) -> Result<S::Ok, S::Error> {
        int_value(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let n = Number::deserialize(d)?;
        parse_int(&n).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "json::ints")]` for a list of big integers.
pub mod ints {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Int], s: S) -> Result<S::Ok, S::Error> {
        ints_value(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Int>, D::Error> {
        let v = Vec::<Number>::deserialize(d)?;
        v.iter().map(|n| parse_int(n).map_err(D::Error::custom)).collect()
    }
}

/// `#[serde(with = "json::opt_int")]` for an optional big integer.
pub mod opt_int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Int>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(i) => int_value(i).serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Int>, D::Error> {
        let v = Option::<Number>::deserialize(d)?;
        v.map(|n| parse_int(&n).map_err(D::Error::custom)).transpose()
    }
}

/// `#[serde(with = "json::opt_int_matrix")]` for an optional square matrix.
pub mod opt_int_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<Int>>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(m) => Value::Array(m.iter().map(|r| ints_value(r)).collect()).serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Int>>>, D::Error> {
        let v = Option::<Vec<Vec<Number>>>::deserialize(d)?;
        v.map(|m| {
            m.iter()
                .map(|r| r.iter().map(|n| parse_int(n).map_err(D::Error::custom)).collect())
                .collect()
        })
        .transpose()
    }
}

pub fn check_schema_version(v: &Value) -> Result<(), String> {
    match v.get("schema_version").and_then(Value::as_u64) {
        Some(SCHEMA_VERSION) => Ok(()),
        Some(other) => Err(format!("unsupported schema_version {other}")),
        None => Err("missing schema_version".to_string()),
    }
}
