//! JSON encodings of the core types, and their inverses.
//!
//! Polynomials are objects from exponent strings to integer coefficients,
//! highest exponent first. Coefficients that do not fit in an `i64` are
//! written as decimal strings.

use std::str::FromStr;

use hall_core::coeff::{LaurentPoly, QPoly};
use hall_core::hallmult::Coefficient;
use hall_core::{Basis, CanonicalElement, CyclicMatrix, HallVector};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::CliError;

fn big_to_json(c: &BigInt) -> Value {
    match i64::try_from(c) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(c.to_string()),
    }
}

fn big_from_json(v: &Value) -> Result<BigInt, CliError> {
    match v {
        Value::Number(x) => x
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| CliError::json(format!("coefficient {x} is not an integer"))),
        Value::String(s) => BigInt::from_str(s).map_err(|_| CliError::json(format!("bad coefficient `{s}`"))),
        _ => Err(CliError::json("coefficient must be a number")),
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object().ok_or_else(|| CliError::json(format!("{what} must be an object")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    v.get(key).ok_or_else(|| CliError::json(format!("missing field `{key}`")))
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str, CliError> {
    field(v, key)?.as_str().ok_or_else(|| CliError::json(format!("field `{key}` must be a string")))
}

fn array_field<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>, CliError> {
    field(v, key)?.as_array().ok_or_else(|| CliError::json(format!("field `{key}` must be an array")))
}

pub fn laurent_to_json(p: &LaurentPoly) -> Value {
    Value::Object(p.terms().rev().map(|(e, c)| (e.to_string(), big_to_json(c))).collect())
}

pub fn laurent_from_json(v: &Value) -> Result<LaurentPoly, CliError> {
    let mut p = LaurentPoly::zero();
    for (k, c) in object(v, "polynomial")? {
        let e = k.parse::<i64>().map_err(|_| CliError::json(format!("bad exponent `{k}`")))?;
        p.add_term(e, big_from_json(c)?);
    }
    Ok(p)
}

pub fn qpoly_to_json(p: &QPoly) -> Value {
    Value::Object(p.terms().rev().map(|(e, c)| (e.to_string(), big_to_json(c))).collect())
}

pub fn qpoly_from_json(v: &Value) -> Result<QPoly, CliError> {
    let mut p = QPoly::zero();
    for (k, c) in object(v, "polynomial")? {
        let e = k.parse::<u32>().map_err(|_| CliError::json(format!("bad exponent `{k}`")))?;
        p.add_term(e, big_from_json(c)?);
    }
    Ok(p)
}

pub fn matrix_from_json(v: &Value) -> Result<CyclicMatrix, CliError> {
    let s = v.as_str().ok_or_else(|| CliError::json("matrix must be a string"))?;
    Ok(s.parse::<CyclicMatrix>()?)
}

/// Coefficient types that have a JSON form.
pub trait JsonCoeff: Coefficient + Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, CliError>;
}

impl JsonCoeff for LaurentPoly {
    fn to_json(&self) -> Value {
        laurent_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, CliError> {
        laurent_from_json(v)
    }
}

impl JsonCoeff for QPoly {
    fn to_json(&self) -> Value {
        qpoly_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self, CliError> {
        qpoly_from_json(v)
    }
}

pub fn hall_vector_to_json<C: JsonCoeff>(x: &HallVector<C>) -> Value {
    let terms: Vec<Value> = x
        .sorted_terms()
        .into_iter()
        .map(|(a, c)| json!({"matrix": a.to_string(), "coeff": c.to_json()}))
        .collect();
    json!({"basis": x.basis().tag(), "n": x.n(), "terms": terms})
}

pub fn hall_vector_from_json<C: JsonCoeff>(v: &Value) -> Result<HallVector<C>, CliError> {
    let tag = str_field(v, "basis")?;
    if tag != C::BASIS.tag() {
        return Err(hall_core::Error::BasisMismatch.into());
    }
    let n = field(v, "n")?.as_u64().ok_or_else(|| CliError::json("`n` must be a positive integer"))? as usize;
    let mut x = HallVector::new(n);
    for t in array_field(v, "terms")? {
        let a = matrix_from_json(field(t, "matrix")?)?;
        if a.n() != n {
            return Err(hall_core::Error::RankMismatch { left: n, right: a.n() }.into());
        }
        x.add_term(a, C::from_json(field(t, "coeff")?)?);
    }
    Ok(x)
}

/// Reads the basis tag of a serialized Hall vector.
pub fn basis_of(v: &Value) -> Result<Basis, CliError> {
    match str_field(v, "basis")? {
        "u" => Ok(Basis::U),
        "utilde" => Ok(Basis::UTilde),
        other => Err(CliError::json(format!("unknown basis `{other}`"))),
    }
}

pub fn canonical_to_json(c: &CanonicalElement) -> Value {
    let pbw: Vec<Value> = c
        .pbw
        .sorted_terms()
        .into_iter()
        .map(|(b, p)| json!({"B": b.to_string(), "p": laurent_to_json(p)}))
        .collect();
    let monomials: Vec<Value> = c
        .sorted_monomials()
        .into_iter()
        .map(|(b, h)| json!({"B": b.to_string(), "h": laurent_to_json(h)}))
        .collect();
    json!({"A": c.a.to_string(), "pbw": pbw, "monomials": monomials, "tight": c.is_tight()})
}

pub fn canonical_from_json(v: &Value) -> Result<CanonicalElement, CliError> {
    let a = matrix_from_json(field(v, "A")?)?;
    let mut pbw = HallVector::new(a.n());
    for t in array_field(v, "pbw")? {
        pbw.add_term(matrix_from_json(field(t, "B")?)?, laurent_from_json(field(t, "p")?)?);
    }
    let mut monomials = std::collections::BTreeMap::new();
    for t in array_field(v, "monomials")? {
        monomials.insert(matrix_from_json(field(t, "B")?)?, laurent_from_json(field(t, "h")?)?);
    }
    let c = CanonicalElement { a, pbw, monomials };
    if let Some(tight) = v.get("tight").and_then(Value::as_bool) {
        if tight != c.is_tight() {
            return Err(CliError::json("`tight` disagrees with the monomial list"));
        }
    }
    Ok(c)
}
