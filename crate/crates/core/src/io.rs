//! Text and JSON formats for specs.
//!
//! A spec is `{"lambda": [2, 1], "constants": [["1/2", "0", "1/3"], []]}`.
//! Rationals are written as `"p/q"` strings; plain JSON integers are also
//! accepted on input.

use serde_json::{json, Value};

use crate::error::{ParseError, Result};
use crate::ring::{fmt_rational, parse_rational, Rational};
use crate::tau::TauSpec;

/// `"3,2,1,0"` (brackets and spaces optional).
pub fn parse_lambda(s: &str) -> Result<Vec<u32>, ParseError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| ParseError::Json(format!("bad part `{}`", p.trim()))))
        .collect()
}

/// A list of rational lists. Entries may be bare (`[[1,0,1/2],[0,1]]`) or
/// quoted (`[["1","0","1/2"]]`).
pub fn parse_constants(s: &str) -> Result<Vec<Vec<Rational>>, ParseError> {
    let err = |m: &str| ParseError::Json(format!("constants: {m}"));
    let s = s.trim();
    let body = s.strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(|| err("expected an outer list"))?;
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let open = rest.strip_prefix('[').ok_or_else(|| err("expected `[`"))?;
        let close = open.find(']').ok_or_else(|| err("unterminated list"))?;
        let inner = &open[..close];
        let row = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|tok| parse_rational(tok.trim().trim_matches('"'))).collect::<Result<Vec<_>, _>>()?
        };
        out.push(row);
        rest = open[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(err("trailing comma"));
            }
        } else if !rest.is_empty() {
            return Err(err("expected `,`"));
        }
    }
    Ok(out)
}

fn rational_from_json(v: &Value) -> Result<Rational, ParseError> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => parse_rational(&n.to_string()),
        other => Err(ParseError::Json(format!("expected a rational, got {other}"))),
    }
}

pub fn spec_to_json(spec: &TauSpec) -> Value {
    let constants: Vec<Vec<String>> = spec.constants.iter().map(|c| c.iter().map(fmt_rational).collect()).collect();
    json!({ "lambda": spec.parts(), "constants": constants })
}

pub fn spec_from_json(v: &Value) -> Result<TauSpec> {
    let lambda = v
        .get("lambda")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::Json("missing `lambda` array".into()))?
        .iter()
        .map(|p| {
            p.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| ParseError::Json(format!("bad part {p}")))
        })
        .collect::<Result<Vec<u32>, _>>()?;
    let constants = match v.get("constants") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(rows)) => rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| ParseError::Json("constants rows must be arrays".into()))?
                    .iter()
                    .map(rational_from_json)
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?,
        Some(other) => return Err(ParseError::Json(format!("bad constants {other}")).into()),
    };
    TauSpec::new(lambda, constants)
}

pub fn spec_from_str(s: &str) -> Result<TauSpec> {
    let v: Value = serde_json::from_str(s).map_err(|e| ParseError::Json(e.to_string()))?;
    spec_from_json(&v)
}
