//! Exact rationals and their `"p/q"` string encoding.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::Error;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Q {
    frac(1, 2)
}

/// Parses `"3"`, `"-1/2"` or `"4/6"` (reduced on construction).
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(Q::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
    }
}

pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// A rational as it may appear in JSON: a `"p/q"` string or a bare integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum RawQ {
    Str(String),
    Int(i64),
}

impl RawQ {
    fn into_q(self) -> Result<Q, Error> {
        match self {
            RawQ::Str(s) => parse_q(&s),
            RawQ::Int(n) => Ok(q(n)),
        }
    }
}

/// Serde wrapper for a single rational inside heterogeneous JSON arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct JsonQ(pub Q);

impl serde::Serialize for JsonQ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ser_q(&self.0, s)
    }
}

impl<'de> Deserialize<'de> for JsonQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        de_q(d).map(JsonQ)
    }
}

pub(crate) fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(x))
}

pub(crate) fn de_q<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    RawQ::deserialize(d)?.into_q().map_err(serde::de::Error::custom)
}

pub(crate) fn ser_q_vec<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(format_q))
}

pub(crate) fn de_q_vec<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
    Vec::<RawQ>::deserialize(d)?
        .into_iter()
        .map(RawQ::into_q)
        .collect::<Result<_, _>>()
        .map_err(serde::de::Error::custom)
}

pub(crate) fn ser_q_mat<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(
        m.iter()
            .map(|row| row.iter().map(format_q).collect::<Vec<_>>()),
    )
}

pub(crate) fn de_q_mat<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
    Vec::<Vec<RawQ>>::deserialize(d)?
        .into_iter()
        .map(|row| row.into_iter().map(RawQ::into_q).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(serde::de::Error::custom)
}
