//! JSON instance documents.
//!
//! ```json
//! {
//!   "name": "A2",
//!   "dimension": 2,
//!   "vertices": [
//!     {"id": "E1", "m": 1},
//!     {"id": "E2", "m": 1}
//!   ],
//!   "intersections": [
//!     ["E1", "E1", "-2"],
//!     ["E2", "E2", "-2"],
//!     ["E1", "E2", "1"]
//!   ],
//!   "theta_degrees": null
//! }
//! ```
//!
//! Omitted pairs are 0. Numbers are JSON integers or `"p/q"` strings on
//! input and always `"p/q"` strings on output. The serialized form is
//! canonical: diagonal entries first, then nonzero pairs `i < j` in vertex
//! order, so `serialize(parse(serialize(g)))` is byte-identical.

use std::collections::HashMap;
use std::fmt::Write as _;

use lelong_core::graph::Vertex;
use lelong_core::{Rat, RatMatrix, ResolutionGraph};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("{path}: unknown vertex id `{id}`")]
    Reference { path: String, id: String },
    #[error("{path}: conflicting values {first} and {second} for the same pair")]
    Conflict {
        path: String,
        first: String,
        second: String,
    },
}

fn field(path: impl Into<String>, message: impl Into<String>) -> InstanceError {
    InstanceError::Field {
        path: path.into(),
        message: message.into(),
    }
}

/// A JSON integer or a `"p/q"` string.
pub fn parse_number(v: &Value, path: &str) -> Result<Rat, InstanceError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rat::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Rat::from(u))
            } else {
                Err(field(
                    path,
                    format!("{n} is not an integer; use a \"p/q\" string"),
                ))
            }
        }
        Value::String(s) => s
            .parse()
            .map_err(|_| field(path, format!("`{s}` is not a rational of the form p/q"))),
        other => Err(field(
            path,
            format!("expected a number, found {}", kind(other)),
        )),
    }
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn take<'a>(
    obj: &'a Map<String, Value>,
    key: &str,
    path: &str,
) -> Result<&'a Value, InstanceError> {
    obj.get(key)
        .ok_or_else(|| field(path, format!("missing field `{key}`")))
}

fn reject_unknown(
    obj: &Map<String, Value>,
    known: &[&str],
    path: &str,
) -> Result<(), InstanceError> {
    match obj.keys().find(|k| !known.contains(&k.as_str())) {
        Some(k) => Err(field(format!("{path}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InstanceError> {
    v.as_array()
        .ok_or_else(|| field(path, format!("expected an array, found {}", kind(v))))
}

fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, InstanceError> {
    v.as_str()
        .ok_or_else(|| field(path, format!("expected a string, found {}", kind(v))))
}

fn as_u64(v: &Value, path: &str) -> Result<u64, InstanceError> {
    v.as_u64()
        .ok_or_else(|| field(path, format!("expected a non-negative integer, found {v}")))
}

/// Parses an instance. Structural problems are errors here; mathematical
/// ones (zero multiplicities, asymmetric data) are left to `validate`.
pub fn parse_instance(text: &[u8]) -> Result<ResolutionGraph, InstanceError> {
    let root: Value =
        serde_json::from_slice(text).map_err(|e| InstanceError::Syntax(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| field("$", format!("expected an object, found {}", kind(&root))))?;
    reject_unknown(
        obj,
        &[
            "name",
            "dimension",
            "vertices",
            "intersections",
            "theta_degrees",
        ],
        "$",
    )?;

    let name = as_str(take(obj, "name", "$")?, "$.name")?.to_owned();
    let dimension = as_u64(take(obj, "dimension", "$")?, "$.dimension")?;
    let dimension = u32::try_from(dimension).map_err(|_| field("$.dimension", "out of range"))?;

    let mut vertices = Vec::new();
    for (k, v) in as_array(take(obj, "vertices", "$")?, "$.vertices")?
        .iter()
        .enumerate()
    {
        let path = format!("$.vertices[{k}]");
        let vo = v
            .as_object()
            .ok_or_else(|| field(&path, format!("expected an object, found {}", kind(v))))?;
        reject_unknown(vo, &["id", "m"], &path)?;
        let id = as_str(take(vo, "id", &path)?, &format!("{path}.id"))?;
        let m = as_u64(take(vo, "m", &path)?, &format!("{path}.m"))?;
        vertices.push(Vertex::new(id, m));
    }
    // First occurrence wins for lookups; duplicates are reported by validate.
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        index.entry(v.id.as_str()).or_insert(i);
    }

    let n = vertices.len();
    let mut matrix = RatMatrix::zeros(n, n);
    let mut seen: HashMap<(usize, usize), Rat> = HashMap::new();
    for (k, entry) in as_array(take(obj, "intersections", "$")?, "$.intersections")?
        .iter()
        .enumerate()
    {
        let path = format!("$.intersections[{k}]");
        let triple = as_array(entry, &path)?;
        if triple.len() != 3 {
            return Err(field(
                &path,
                format!("expected [id, id, value], found {} items", triple.len()),
            ));
        }
        let mut ends = [0usize; 2];
        for (slot, end) in ends.iter_mut().enumerate() {
            let p = format!("{path}[{slot}]");
            let id = as_str(&triple[slot], &p)?;
            *end = *index.get(id).ok_or_else(|| InstanceError::Reference {
                path: p.clone(),
                id: id.to_owned(),
            })?;
        }
        let value = parse_number(&triple[2], &format!("{path}[2]"))?;
        let key = (ends[0].min(ends[1]), ends[0].max(ends[1]));
        if let Some(prev) = seen.get(&key) {
            if *prev != value {
                return Err(InstanceError::Conflict {
                    path,
                    first: prev.to_string(),
                    second: value.to_string(),
                });
            }
            continue;
        }
        matrix[(key.0, key.1)] = value.clone();
        matrix[(key.1, key.0)] = value.clone();
        seen.insert(key, value);
    }

    let theta = match take(obj, "theta_degrees", "$")? {
        Value::Null => None,
        v => Some(
            as_array(v, "$.theta_degrees")?
                .iter()
                .enumerate()
                .map(|(k, x)| parse_number(x, &format!("$.theta_degrees[{k}]")))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };

    Ok(ResolutionGraph::from_parts(
        name, dimension, vertices, matrix, theta,
    ))
}

/// A JSON string literal.
pub(crate) fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

/// Canonical instance text, newline-terminated.
pub fn serialize_instance(g: &ResolutionGraph) -> String {
    let ids: Vec<&str> = g.vertices().iter().map(|v| v.id.as_str()).collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"name\": {},", quote(g.name()));
    let _ = writeln!(out, "  \"dimension\": {},", g.dimension());

    let vertices: Vec<String> = g
        .vertices()
        .iter()
        .map(|v| format!("    {{\"id\": {}, \"m\": {}}}", quote(&v.id), v.m))
        .collect();
    push_list(&mut out, "vertices", &vertices);

    let mut pairs: Vec<(usize, usize)> = (0..g.len()).map(|i| (i, i)).collect();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            pairs.push((i, j));
        }
    }
    let m = g.intersections();
    let entries: Vec<String> = pairs
        .into_iter()
        .filter_map(|(i, j)| {
            let value = m.get(i, j)?;
            if value.is_zero() {
                return None;
            }
            Some(format!(
                "    [{}, {}, \"{}\"]",
                quote(ids[i]),
                quote(ids[j]),
                value
            ))
        })
        .collect();
    push_list(&mut out, "intersections", &entries);

    match g.theta_degrees() {
        None => out.push_str("  \"theta_degrees\": null\n"),
        Some(theta) => {
            let items: Vec<String> = theta.iter().map(|x| format!("\"{x}\"")).collect();
            let _ = writeln!(out, "  \"theta_degrees\": [{}]", items.join(", "));
        }
    }
    out.push_str("}\n");
    out
}

fn push_list(out: &mut String, key: &str, items: &[String]) {
    if items.is_empty() {
        let _ = writeln!(out, "  \"{key}\": [],");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    out.push_str(&items.join(",\n"));
    out.push_str("\n  ],\n");
}
