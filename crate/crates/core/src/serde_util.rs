//! JSON encodings shared by reports and documents.
//!
//! Integers are emitted as JSON numbers when they fit in `i64` and as
//! decimal strings otherwise. Rationals are always strings, `"p/q"` or `"p"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serializer;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, RatMatrix};

pub fn bigint_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn rational_value(q: &BigRational) -> Value {
    Value::String(if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    })
}

pub fn int_matrix_value(m: &IntMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(bigint_value).collect()))
            .collect(),
    )
}

pub fn rat_matrix_value(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_value).collect()))
            .collect(),
    )
}

pub fn bigints_as_json<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(bigint_value))
}

pub fn int_matrix_as_json<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_some(&int_matrix_value(m))
}

fn parse_decimal(s: &str, what: &str) -> Result<BigInt> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Parse(format!("{what}: `{s}` is not an integer")))
}

pub fn parse_int(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(Error::Parse(format!("{what}: {n} is not an integer")))
            }
        }
        Value::String(s) => parse_decimal(s, what),
        other => Err(Error::Parse(format!("{what}: expected integer, got {other}"))),
    }
}

pub fn parse_rational(v: &Value, what: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => {
            let (p, q) = match s.split_once('/') {
                Some((p, q)) => (parse_decimal(p, what)?, parse_decimal(q, what)?),
                None => (parse_decimal(s, what)?, BigInt::from(1)),
            };
            if q.is_zero() {
                return Err(Error::Parse(format!("{what}: zero denominator in `{s}`")));
            }
            Ok(BigRational::new(p, q))
        }
        Value::Number(_) => parse_int(v, what).map(BigRational::from_integer),
        other => Err(Error::Parse(format!("{what}: expected rational, got {other}"))),
    }
}

fn parse_rows<T>(
    v: &Value,
    what: &str,
    entry: impl Fn(&Value, &str) -> Result<T>,
) -> Result<Vec<Vec<T>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what}: expected an array of rows")))?;
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{what}: row {i} is not an array")))?;
            row.iter().map(|x| entry(x, what)).collect()
        })
        .collect()
}

pub fn parse_int_matrix(v: &Value, what: &str) -> Result<IntMatrix> {
    let rows = parse_rows(v, what, parse_int)?;
    IntMatrix::from_rows(rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn parse_rat_matrix(v: &Value, what: &str) -> Result<RatMatrix> {
    let rows = parse_rows(v, what, parse_rational)?;
    RatMatrix::from_rows(rows).map_err(|e| Error::Parse(format!("{what}: {e}")))
}
