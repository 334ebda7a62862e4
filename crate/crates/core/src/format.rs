//! The stack file format.
//!
//! ```text
//! pseudomanifold d=1
//! # comments and blank lines are ignored
//! 1 : 4
//! 1 2 : 0
//! ```
//!
//! The header names the dimension. Every simplex of the space appears in
//! exactly one record: its vertex ids, a colon, and its integer value.
//! Vertices may be listed in any order; [`serialize`] writes them sorted
//! and orders records by dimension, then lexicographically.

use std::collections::HashMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::complex::{validate_pseudomanifold, Complex, Simplex, SimplexSet, Vertex};
use crate::error::{Error, Result};
use crate::morse::ValuedComplex;

const HEADER: &str = "pseudomanifold d=";

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line: usize, text: &str) -> Result<usize> {
    let rest = text
        .strip_prefix(HEADER)
        .ok_or_else(|| parse_error(line, format!("expected header `{HEADER}<int>`, found {text:?}")))?;
    rest.trim()
        .parse()
        .map_err(|_| parse_error(line, format!("bad dimension {rest:?}")))
}

fn parse_record(line: usize, text: &str) -> Result<(Simplex, i64)> {
    let (verts, value) = text
        .split_once(':')
        .ok_or_else(|| parse_error(line, "missing `: value`"))?;
    let value = value.trim();
    if value.is_empty() {
        return Err(parse_error(line, "missing value"));
    }
    let value: i64 = value
        .parse()
        .map_err(|_| parse_error(line, format!("bad value {value:?}")))?;
    let verts = verts
        .split_whitespace()
        .map(|t| t.parse::<Vertex>().map_err(|_| parse_error(line, format!("bad vertex id {t:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let s = Simplex::new(verts).map_err(|e| parse_error(line, e.to_string()))?;
    Ok((s, value))
}

/// Parses a stack file into a valued pseudomanifold.
pub fn parse(text: &str) -> Result<ValuedComplex> {
    let mut d = None;
    let mut records: HashMap<Simplex, (i64, usize)> = HashMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        if d.is_none() {
            d = Some(parse_header(line, body)?);
            continue;
        }
        let (s, value) = parse_record(line, body)?;
        if let Some((_, first)) = records.get(&s) {
            return Err(parse_error(line, format!("duplicate record for {s} (first on line {first})")));
        }
        records.insert(s, (value, line));
    }
    let d = d.ok_or_else(|| parse_error(last_line.max(1), "missing header"))?;
    if records.is_empty() {
        return Err(parse_error(last_line.max(1), "no records"));
    }

    let mut by_line: Vec<(&Simplex, usize)> = records.iter().map(|(s, &(_, l))| (s, l)).collect();
    by_line.sort_by_key(|&(s, l)| (l, s.clone()));
    for (s, line) in by_line {
        if let Some(face) = s.facets().find(|f| !records.contains_key(f)) {
            return Err(parse_error(line, format!("face {face} of {s} has no record")));
        }
    }

    let set: SimplexSet = records.keys().cloned().collect();
    let space = Arc::new(validate_pseudomanifold(&Complex::try_from_set(set)?, d)?);
    let values: HashMap<Simplex, i64> = records.into_iter().map(|(s, (v, _))| (s, v)).collect();
    ValuedComplex::from_map(space, &values)
}

/// Canonical text: header, then one record per simplex in simplex order.
pub fn serialize(v: &ValuedComplex) -> String {
    let mut out = format!("{HEADER}{}\n", v.space().dim());
    for (s, value) in v.entries() {
        writeln!(out, "{s} : {value}").unwrap();
    }
    out
}

/// `serialize(parse(text))`.
pub fn canonicalize(text: &str) -> Result<String> {
    parse(text).map(|v| serialize(&v))
}
