//! Serialization helpers: exact rationals as `"p/q"` strings.

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serializer};

use crate::exact::{format_q, parse_q, Q};

pub fn ser_q<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_q(x))
}

pub fn ser_opt_q<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_some(&format_q(v)),
        None => s.serialize_none(),
    }
}

pub fn ser_weighted_q<S: Serializer>(xs: &[(i64, i64, Q)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for (a, b, e) in xs {
        seq.serialize_element(&(a, b, format_q(e)))?;
    }
    seq.end()
}

pub fn de_q<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
    let s = String::deserialize(d)?;
    parse_q(&s).ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s}")))
}
