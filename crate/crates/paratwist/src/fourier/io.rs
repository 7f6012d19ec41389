//! JSON files for expansions.
//!
//! Values are written as `"num/den"` when rational and as
//! `{"zeta_coeffs": [...]}` in the power basis of the file's cyclotomic order
//! otherwise. Files carry a format version.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::expansion::{EllipticExpansion, FourierExpansion};
use super::index::{Index, Window};
use super::FourierError;
use crate::exact::{format_rational, parse_rational, prime_power, Cyclotomic};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Value {
    Rational(String),
    Zeta { zeta_coeffs: Vec<String> },
}

#[derive(Serialize, Deserialize)]
struct SiegelEntry {
    n: i64,
    r: i64,
    m: i64,
    value: Value,
}

#[derive(Serialize, Deserialize)]
struct EllipticEntry {
    n: u64,
    value: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum File {
    Siegel {
        version: u32,
        weight: i64,
        level: u64,
        cyclotomic_order: u64,
        window: Window,
        coefficients: Vec<SiegelEntry>,
    },
    Elliptic {
        version: u32,
        weight: i64,
        level: u64,
        cyclotomic_order: u64,
        truncation: u64,
        coefficients: Vec<EllipticEntry>,
    },
}

/// Either kind of expansion.
#[derive(Clone, Debug, PartialEq)]
pub enum Expansion {
    Siegel(FourierExpansion),
    Elliptic(EllipticExpansion),
}

fn encode(v: &Cyclotomic, order: u64) -> Result<Value, FourierError> {
    if let Some(r) = v.to_rational() {
        return Ok(Value::Rational(format_rational(&r)));
    }
    let (p, e) = prime_power(order).ok_or(FourierError::Format(format!("bad order {order}")))?;
    let w = v.embed(p, e)?;
    Ok(Value::Zeta {
        zeta_coeffs: w.coeffs().iter().map(format_rational).collect(),
    })
}

fn decode(v: &Value, order: u64) -> Result<Cyclotomic, FourierError> {
    match v {
        Value::Rational(s) => Ok(Cyclotomic::rational(parse_rational(s)?)),
        Value::Zeta { zeta_coeffs } => {
            let (p, e) = prime_power(order)
                .ok_or_else(|| FourierError::Format(format!("order {order} is not a prime power")))?;
            let coeffs = zeta_coeffs
                .iter()
                .map(|c| parse_rational(c))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Cyclotomic::from_coeffs(p, e, coeffs)?)
        }
    }
}

pub fn to_json(x: &Expansion) -> Result<String, FourierError> {
    let file = match x {
        Expansion::Siegel(f) => {
            let order = f.cyclotomic_order();
            File::Siegel {
                version: FORMAT_VERSION,
                weight: f.weight,
                level: f.level,
                cyclotomic_order: order,
                window: f.window.clone(),
                coefficients: f
                    .coefficients
                    .iter()
                    .map(|(i, v)| {
                        Ok(SiegelEntry {
                            n: i.n,
                            r: i.r,
                            m: i.m,
                            value: encode(v, order)?,
                        })
                    })
                    .collect::<Result<_, FourierError>>()?,
            }
        }
        Expansion::Elliptic(f) => {
            let order = f.cyclotomic_order();
            File::Elliptic {
                version: FORMAT_VERSION,
                weight: f.weight,
                level: f.level,
                cyclotomic_order: order,
                truncation: f.truncation() as u64,
                coefficients: f
                    .coefficients
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
                    .map(|(n, v)| {
                        Ok(EllipticEntry {
                            n: n as u64,
                            value: encode(v, order)?,
                        })
                    })
                    .collect::<Result<_, FourierError>>()?,
            }
        }
    };
    Ok(serde_json::to_string_pretty(&file)?)
}

pub fn from_json(s: &str) -> Result<Expansion, FourierError> {
    let raw: serde_json::Value = serde_json::from_str(s)?;
    let version = raw.get("version").and_then(serde_json::Value::as_u64);
    if version != Some(FORMAT_VERSION as u64) {
        return Err(FourierError::Version(version));
    }
    match serde_json::from_value(raw)? {
        File::Siegel {
            weight,
            level,
            cyclotomic_order,
            window,
            coefficients,
            ..
        } => {
            let mut f = FourierExpansion::new(weight, level, window);
            for c in coefficients {
                f.insert(Index::new(c.n, c.r, c.m), decode(&c.value, cyclotomic_order)?)?;
            }
            Ok(Expansion::Siegel(f))
        }
        File::Elliptic {
            weight,
            level,
            cyclotomic_order,
            truncation,
            coefficients,
            ..
        } => {
            let mut values = BTreeMap::new();
            for c in coefficients {
                if c.n > truncation {
                    return Err(FourierError::Format(format!(
                        "coefficient {} beyond truncation {truncation}",
                        c.n
                    )));
                }
                values.insert(c.n, decode(&c.value, cyclotomic_order)?);
            }
            let coefficients = (0..=truncation)
                .map(|n| values.remove(&n).unwrap_or_else(|| Cyclotomic::from_i64(0)))
                .collect();
            Ok(Expansion::Elliptic(EllipticExpansion {
                weight,
                level,
                coefficients,
            }))
        }
    }
}

pub fn save_expansion(path: &Path, x: &Expansion) -> Result<(), FourierError> {
    std::fs::write(path, to_json(x)? + "\n")?;
    Ok(())
}

pub fn load_expansion(path: &Path) -> Result<Expansion, FourierError> {
    from_json(&std::fs::read_to_string(path)?)
}
