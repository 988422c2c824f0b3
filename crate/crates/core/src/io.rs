//! On-disk JSON formats and deterministic serialization.
//!
//! Three file kinds are supported:
//!
//! * **Complex** files hold a [`ComplexData`] presentation (identifiers,
//!   transposition tables, face tables).
//! * **Morse function** files map canonical orbit representatives to
//!   rational values, written as JSON integers when possible and as
//!   `"numerator/denominator"` strings otherwise. The key set must be
//!   exactly the canonical representatives of the target complex.
//! * **Matching** files hold a list of `[lower, upper]` representative
//!   pairs.
//!
//! All writers emit pretty-printed JSON with sorted keys and a trailing
//! newline, so output is byte-stable across runs.

use crate::complex::{ComplexData, PresentationError, SymmetricDeltaComplex};
use crate::matching::Matching;
use crate::morse::{DiscreteMorseFunction, MorseError};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed};
use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: {source}")]
    Presentation {
        path: String,
        source: PresentationError,
    },
    #[error("{path}: {source}")]
    Morse { path: String, source: MorseError },
    #[error("{path}: {message}")]
    Value { path: String, message: String },
}

fn path_str(path: &Path) -> String {
    path.display().to_string()
}

fn read_file(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path_str(path),
        source,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<(), IoError> {
    std::fs::write(path, contents).map_err(|source| IoError::Io {
        path: path_str(path),
        source,
    })
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, IoError> {
    serde_json::from_str(text).map_err(|source| IoError::Json {
        path: path_str(path),
        source,
    })
}

/// Pretty-print a serializable value with a trailing newline.
fn render<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory serialization");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Complexes
// ---------------------------------------------------------------------------

pub fn read_complex(path: &Path) -> Result<SymmetricDeltaComplex, IoError> {
    let text = read_file(path)?;
    let data: ComplexData = parse_json(path, &text)?;
    SymmetricDeltaComplex::from_data(&data).map_err(|source| IoError::Presentation {
        path: path_str(path),
        source,
    })
}

pub fn complex_to_string(x: &SymmetricDeltaComplex) -> String {
    render(&x.to_data())
}

pub fn write_complex(path: &Path, x: &SymmetricDeltaComplex) -> Result<(), IoError> {
    write_file(path, &complex_to_string(x))
}

// ---------------------------------------------------------------------------
// Morse functions
// ---------------------------------------------------------------------------

fn rational_from_json(
    path: &Path,
    key: &str,
    v: &serde_json::Value,
) -> Result<BigRational, IoError> {
    let bad = |message: String| IoError::Value {
        path: path_str(path),
        message,
    };
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(BigRational::from_integer(u.into()))
            } else {
                Err(bad(format!(
                    "value for `{key}` must be an integer or a \"p/q\" string, got {n}"
                )))
            }
        }
        serde_json::Value::String(s) => {
            let (num, den) = match s.split_once('/') {
                Some((n, d)) => (n, d),
                None => (s.as_str(), "1"),
            };
            let num = BigInt::from_str(num.trim())
                .map_err(|e| bad(format!("value for `{key}`: bad numerator `{num}`: {e}")))?;
            let den = BigInt::from_str(den.trim())
                .map_err(|e| bad(format!("value for `{key}`: bad denominator `{den}`: {e}")))?;
            if den == BigInt::from(0) {
                return Err(bad(format!("value for `{key}` has denominator zero")));
            }
            Ok(BigRational::new(num, den))
        }
        other => Err(bad(format!(
            "value for `{key}` must be an integer or a \"p/q\" string, got {other}"
        ))),
    }
}

fn rational_to_json(q: &BigRational) -> serde_json::Value {
    if q.denom().is_one() {
        if let Ok(i) = i64::try_from(q.numer().clone()) {
            return serde_json::Value::Number(i.into());
        }
    }
    let s = if q.denom().is_one() {
        q.numer().to_string()
    } else if q.denom().is_negative() {
        format!("{}/{}", -q.numer(), -q.denom())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    };
    serde_json::Value::String(s)
}

pub fn read_dmf(path: &Path, x: &SymmetricDeltaComplex) -> Result<DiscreteMorseFunction, IoError> {
    let text = read_file(path)?;
    let raw: BTreeMap<String, serde_json::Value> = parse_json(path, &text)?;
    let mut named = BTreeMap::new();
    for (key, value) in &raw {
        named.insert(key.clone(), rational_from_json(path, key, value)?);
    }
    DiscreteMorseFunction::from_named(x, &named).map_err(|source| IoError::Morse {
        path: path_str(path),
        source,
    })
}

pub fn dmf_to_string(x: &SymmetricDeltaComplex, f: &DiscreteMorseFunction) -> String {
    let named: BTreeMap<String, serde_json::Value> = f
        .to_named(x)
        .iter()
        .map(|(k, v)| (k.clone(), rational_to_json(v)))
        .collect();
    render(&named)
}

pub fn write_dmf(
    path: &Path,
    x: &SymmetricDeltaComplex,
    f: &DiscreteMorseFunction,
) -> Result<(), IoError> {
    write_file(path, &dmf_to_string(x, f))
}

// ---------------------------------------------------------------------------
// Matchings
// ---------------------------------------------------------------------------

pub fn read_matching(path: &Path, x: &SymmetricDeltaComplex) -> Result<Matching, IoError> {
    let text = read_file(path)?;
    let named: Vec<(String, String)> = parse_json(path, &text)?;
    Matching::from_named(x, &named).map_err(|source| IoError::Morse {
        path: path_str(path),
        source,
    })
}

pub fn matching_to_string(x: &SymmetricDeltaComplex, m: &Matching) -> String {
    render(&m.to_named(x))
}

pub fn write_matching(path: &Path, x: &SymmetricDeltaComplex, m: &Matching) -> Result<(), IoError> {
    write_file(path, &matching_to_string(x, m))
}
