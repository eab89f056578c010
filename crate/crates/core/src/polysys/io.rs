//! JSON system files.
//!
//! ```text
//! {"num_vars": 2, "field": "C",
//!  "polys": [
//!   [[3, 1, [3, 1]], [-1, 1, [0, 0]]]
//! ]}
//! ```
//!
//! Each term is `[numerator, denominator, [e_1, ..., e_n]]`. Numerators and
//! denominators are JSON integers or decimal strings (for values beyond
//! 64 bits). F2 systems must use denominator 1 and numerator 0 or 1.
//! Exponent vectors must have exactly `num_vars` entries. Duplicate monomials
//! inside one polynomial are summed.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Deserialize;

use super::{Field, Monomial, PolySystem, Polynomial};
use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    num_vars: usize,
    field: Field,
    polys: Vec<Vec<(RawInt, RawInt, Vec<u32>)>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawInt {
    Int(i64),
    Str(String),
}

impl RawInt {
    fn value(&self) -> Option<BigInt> {
        match self {
            RawInt::Int(v) => Some(BigInt::from(*v)),
            RawInt::Str(s) => s.trim().parse().ok(),
        }
    }
}

pub fn parse_system(text: &str) -> Result<PolySystem> {
    let raw: RawSystem = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string())
    })?;
    let n = raw.num_vars;
    let mut polys = Vec::with_capacity(raw.polys.len());
    for (i, terms) in raw.polys.iter().enumerate() {
        let mut parsed = Vec::with_capacity(terms.len());
        for (j, (num, den, exps)) in terms.iter().enumerate() {
            let loc = || format!("polys[{i}][{j}]");
            let num = num
                .value()
                .ok_or_else(|| Error::parse(loc(), "numerator is not an integer"))?;
            let den = den
                .value()
                .ok_or_else(|| Error::parse(loc(), "denominator is not an integer"))?;
            if den.is_zero() {
                return Err(Error::parse(loc(), "zero denominator"));
            }
            if exps.len() != n {
                return Err(Error::parse(
                    loc(),
                    format!("exponent vector has {} entries, expected {n}", exps.len()),
                ));
            }
            if raw.field == Field::F2 {
                if !den.is_one() {
                    return Err(Error::parse(loc(), "F2 coefficients need denominator 1"));
                }
                if !(num.is_zero() || num.is_one()) {
                    return Err(Error::parse(loc(), format!("F2 coefficient {num} not in {{0,1}}")));
                }
                if exps.iter().any(|&e| e > 1) {
                    return Err(Error::parse(loc(), "F2 monomials must be multilinear"));
                }
            }
            parsed.push((Monomial::new(exps.clone()), Q::new(num, den)));
        }
        polys.push(
            Polynomial::new(n, raw.field, parsed)
                .map_err(|e| Error::parse(format!("polys[{i}]"), e.to_string()))?,
        );
    }
    PolySystem::new(n, raw.field, polys)
}

fn int_json(v: &BigInt) -> String {
    match v.to_i64() {
        Some(x) => x.to_string(),
        None => format!("\"{v}\""),
    }
}

/// Canonical text form: one polynomial per line, terms in descending
/// monomial order.
pub fn write_system(sys: &PolySystem) -> String {
    let mut out = String::new();
    let field = match sys.field() {
        Field::F2 => "F2",
        Field::C => "C",
    };
    let _ = write!(out, "{{\"num_vars\": {}, \"field\": \"{field}\",\n \"polys\": [", sys.num_vars());
    for (i, p) in sys.polys().iter().enumerate() {
        out.push_str(if i == 0 { "\n  [" } else { ",\n  [" });
        for (j, (m, c)) in p.terms().rev().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            let exps: Vec<String> = m.exps().iter().map(u32::to_string).collect();
            let _ = write!(
                out,
                "[{}, {}, [{}]]",
                int_json(c.numer()),
                int_json(c.denom()),
                exps.join(", ")
            );
        }
        out.push(']');
    }
    out.push_str(if sys.is_empty() { "]}\n" } else { "\n]}\n" });
    out
}

pub fn load_system(path: impl AsRef<Path>) -> Result<PolySystem> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_system(&text).map_err(|e| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    })
}

pub fn save_system(sys: &PolySystem, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, write_system(sys)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
