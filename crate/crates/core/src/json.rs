//! JSON helpers shared by the input and report schemas.
//!
//! Integers whose magnitude fits in 53 bits are written as JSON numbers,
//! anything larger as a decimal string. Both forms are accepted on input.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest magnitude that survives a round trip through an IEEE double.
pub const SAFE_INTEGER: i64 = (1 << 53) - 1;

/// A big integer with the lossless JSON encoding described above.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct JsonInt(pub BigInt);

impl From<BigInt> for JsonInt {
    fn from(x: BigInt) -> Self {
        JsonInt(x)
    }
}

impl From<i64> for JsonInt {
    fn from(x: i64) -> Self {
        JsonInt(BigInt::from(x))
    }
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) if (-SAFE_INTEGER..=SAFE_INTEGER).contains(&v) => s.serialize_i64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

struct JsonIntVisitor;

impl Visitor<'_> for JsonIntVisitor {
    type Value = JsonInt;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer or a decimal integer string")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
        Ok(JsonInt(BigInt::from(v)))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonInt, E> {
        if v.fract() == 0.0 && v.abs() <= SAFE_INTEGER as f64 {
            Ok(JsonInt(BigInt::from(v as i64)))
        } else {
            Err(E::custom(format!("{v} is not an exactly representable integer")))
        }
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
        v.trim()
            .parse::<BigInt>()
            .map(JsonInt)
            .map_err(|_| E::custom(format!("invalid integer string {v:?}")))
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(JsonIntVisitor)
    }
}

pub(crate) fn wrap(v: &[BigInt]) -> Vec<JsonInt> {
    v.iter().cloned().map(JsonInt).collect()
}

pub(crate) fn wrap2(v: &[Vec<BigInt>]) -> Vec<Vec<JsonInt>> {
    v.iter().map(|r| wrap(r)).collect()
}

pub(crate) fn unwrap2(v: Vec<Vec<JsonInt>>) -> Vec<Vec<BigInt>> {
    v.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect()
}

/// `serialize_with` helpers that give big-integer fields the encoding of
/// [`JsonInt`].
#[allow(clippy::ptr_arg)]
pub(crate) mod ser {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    use super::{wrap, wrap2, JsonInt};

    pub fn int<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        JsonInt(x.clone()).serialize(s)
    }

    pub fn vec<S: Serializer>(x: &Vec<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        wrap(x).serialize(s)
    }

    pub fn vec2<S: Serializer>(x: &Vec<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        wrap2(x).serialize(s)
    }

    pub fn opt_vec<S: Serializer>(x: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        x.as_deref().map(wrap).serialize(s)
    }

    pub fn opt_vec2<S: Serializer>(x: &Option<Vec<Vec<BigInt>>>, s: S) -> Result<S::Ok, S::Error> {
        x.as_deref().map(wrap2).serialize(s)
    }
}
