//! JSON encodings of tensors, minor tuples and projective points.
//!
//! Tensors: `{"n": 2, "d": 3, "kind": "symmetric" | "partially_symmetric",
//! "forms": ["x0^3 + x1^3 + x2^3"]}`. A symmetric tensor has one form of
//! degree `d`; a partially symmetric one has `n + 1` forms of degree `d - 1`.
//!
//! Points: `{"points": [["1", "1/2", "0"], [[0.5, 1.0], [1.0, 0.0]]]}`. Exact
//! coordinates are strings (or integers); floating coordinates are
//! `[re, im]` pairs.
//!
//! Minor tuples: `{"n": 2, "d": 3, "entries": [...]}` in pair order
//! (0,1), (0,2), ..., (n-1,n). `n` may be omitted; it is inferred from the
//! number of entries.

use std::str::FromStr;

use num::complex::Complex64;
use num::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::point::ProjPoint;
use crate::poly::RationalPoly;
use crate::tensor::{pairs, AnyTensor, DetTuple, PSTensor, SymTensor};

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| bad(format!("not a rational number: {s:?}")))
}

fn rational_from_json(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        Value::Number(n) if n.is_u64() => Ok(BigRational::from_integer(n.as_u64().unwrap().into())),
        other => Err(bad(format!("expected an exact coordinate, got {other}"))),
    }
}

fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(Complex64::new(re, im)),
            _ => Err(bad(format!("expected numeric [re, im], got {v}"))),
        },
        _ => Err(bad(format!("expected [re, im], got {v}"))),
    }
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    match p {
        ProjPoint::Rational(c) => Value::Array(c.iter().map(|x| Value::String(x.to_string())).collect()),
        ProjPoint::Complex(c) => Value::Array(c.coords().iter().map(|z| json!([z.re, z.im])).collect()),
    }
}

/// Accepts a coordinate array, or an object carrying one under `"coords"`
/// (the form used in solver output).
pub fn point_from_json(v: &Value) -> Result<ProjPoint> {
    let v = v.get("coords").unwrap_or(v);
    let coords = v.as_array().ok_or_else(|| bad(format!("a point must be an array, got {v}")))?;
    if coords.iter().any(Value::is_array) {
        ProjPoint::complex(coords.iter().map(complex_from_json).collect::<Result<_>>()?)
    } else {
        ProjPoint::rational(coords.iter().map(rational_from_json).collect::<Result<_>>()?)
    }
}

/// Accepts `{"points": [...]}` or a bare array of points.
pub fn points_from_json(v: &Value) -> Result<Vec<ProjPoint>> {
    let list = v
        .get("points")
        .unwrap_or(v)
        .as_array()
        .ok_or_else(|| bad("expected an array of points"))?;
    let pts = list.iter().map(point_from_json).collect::<Result<Vec<_>>>()?;
    if let Some(first) = pts.first() {
        if let Some(bad_pt) = pts.iter().position(|p| p.len() != first.len()) {
            return Err(Error::Dimension { expected: first.len(), found: pts[bad_pt].len() });
        }
    }
    Ok(pts)
}

pub fn points_to_json(pts: &[ProjPoint]) -> Value {
    json!({ "points": pts.iter().map(point_to_json).collect::<Vec<_>>() })
}

fn usize_field(v: &Value, key: &str) -> Result<Option<usize>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x
            .as_u64()
            .map(|k| Some(k as usize))
            .ok_or_else(|| bad(format!("field {key:?} must be a non-negative integer"))),
    }
}

fn string_list(v: &Value, key: &str) -> Result<Vec<String>> {
    v.get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| bad(format!("missing array field {key:?}")))?
        .iter()
        .map(|s| s.as_str().map(str::to_owned).ok_or_else(|| bad(format!("entries of {key:?} must be strings"))))
        .collect()
}

pub fn tensor_from_json(v: &Value) -> Result<AnyTensor> {
    let n = usize_field(v, "n")?.ok_or_else(|| bad("missing field \"n\""))?;
    let d = usize_field(v, "d")?.ok_or_else(|| bad("missing field \"d\""))? as u32;
    let forms = string_list(v, "forms")?;
    let refs: Vec<&str> = forms.iter().map(String::as_str).collect();
    match v.get("kind").and_then(Value::as_str).unwrap_or("partially_symmetric") {
        "symmetric" => match refs.as_slice() {
            [f] => Ok(AnyTensor::Symmetric(SymTensor::parse(n, d, f)?)),
            _ => Err(Error::Dimension { expected: 1, found: refs.len() }),
        },
        "partially_symmetric" => Ok(AnyTensor::PartiallySymmetric(PSTensor::parse(n, d, &refs)?)),
        other => Err(bad(format!("unknown tensor kind {other:?}"))),
    }
}

pub fn tensor_to_json(t: &AnyTensor) -> Value {
    let (kind, forms): (&str, Vec<String>) = match t {
        AnyTensor::Symmetric(s) => ("symmetric", vec![s.form().to_string()]),
        AnyTensor::PartiallySymmetric(p) => ("partially_symmetric", p.forms().iter().map(|f| f.to_string()).collect()),
    };
    json!({ "n": t.n(), "d": t.d(), "kind": kind, "forms": forms })
}

/// Smallest `n` with `C(n+1, 2) = count`.
fn n_from_pair_count(count: usize) -> Result<usize> {
    (1..=count + 1)
        .find(|&n| n * (n + 1) / 2 >= count)
        .filter(|&n| n * (n + 1) / 2 == count)
        .ok_or_else(|| bad(format!("{count} entries is not a binomial C(n+1, 2)")))
}

pub fn tuple_from_json(v: &Value) -> Result<DetTuple> {
    let key = if v.get("entries").is_some() { "entries" } else { "forms" };
    let entries = string_list(v, key)?;
    let n = match usize_field(v, "n")? {
        Some(n) => n,
        None => n_from_pair_count(entries.len())?,
    };
    let polys = entries.iter().map(|s| RationalPoly::parse(s, n + 1)).collect::<Result<Vec<_>>>()?;
    let d = match usize_field(v, "d")? {
        Some(d) => d as u32,
        None => polys.iter().find_map(RationalPoly::degree).ok_or_else(|| bad("cannot infer d from zero entries"))?,
    };
    DetTuple::new(n, d, polys)
}

pub fn tuple_to_json(f: &DetTuple) -> Value {
    json!({
        "n": f.n(),
        "d": f.d(),
        "pairs": pairs(f.n()),
        "entries": f.entries().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}
