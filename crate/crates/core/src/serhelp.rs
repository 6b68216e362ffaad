//! Serde adapters writing exact scalars as strings.

use std::collections::BTreeMap;

use serde::ser::{SerializeMap, SerializeSeq, Serializer};

use crate::abgroups::GroupElement;

use crate::exactla::{format_scalar, Scalar};

pub fn scalars<S: Serializer>(v: &[Scalar], ser: S) -> Result<S::Ok, S::Error> {
    let mut seq = ser.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&format_scalar(x))?;
    }
    seq.end()
}

pub fn opt_scalars<S: Serializer>(v: &Option<Vec<Scalar>>, ser: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => scalars(v, ser),
        None => ser.serialize_none(),
    }
}

pub fn rows<S: Serializer>(v: &[Vec<Scalar>], ser: S) -> Result<S::Ok, S::Error> {
    let strs: Vec<Vec<String>> = v
        .iter()
        .map(|r| r.iter().map(format_scalar).collect())
        .collect();
    serde::Serialize::serialize(&strs, ser)
}

pub fn opt_rows<S: Serializer>(v: &Option<Vec<Vec<Scalar>>>, ser: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => rows(v, ser),
        None => ser.serialize_none(),
    }
}

/// Map key for a degree: its coordinates joined by commas, `0` in the
/// trivial group.
pub fn degree_key(g: &GroupElement) -> String {
    if g.coords().is_empty() {
        return "0".into();
    }
    g.coords()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn degree_map<S: Serializer, V: serde::Serialize>(
    m: &BTreeMap<GroupElement, V>,
    ser: S,
) -> Result<S::Ok, S::Error> {
    let mut map = ser.serialize_map(Some(m.len()))?;
    for (k, v) in m {
        map.serialize_entry(&degree_key(k), v)?;
    }
    map.end()
}

/// Betti table as `{step: {degree: rank}}`.
pub fn betti<S: Serializer>(
    t: &[BTreeMap<GroupElement, usize>],
    ser: S,
) -> Result<S::Ok, S::Error> {
    let mut map = ser.serialize_map(Some(t.len()))?;
    for (i, row) in t.iter().enumerate() {
        let row: BTreeMap<String, usize> = row.iter().map(|(k, v)| (degree_key(k), *v)).collect();
        map.serialize_entry(&i.to_string(), &row)?;
    }
    map.end()
}
