//! TOML model files.
//!
//! ```toml
//! g = "1/10"
//! [alpha]            # or [lambda], or preset = "swanson" with Delta = "1"
//! 1 = "1/2"
//! 5 = "-1/2*sqrt2"
//! ```
//!
//! Values are exact strings such as `"num/den"` or `"num/den + num/den*sqrt2"`;
//! integers and decimals are accepted and read exactly. Missing indices are
//! zero.

use std::str::FromStr;

use toml::{Table, Value};

use crate::error::{Error, Result};
use crate::hamiltonian::{lambda_to_alpha, preset, AlphaParams, LambdaParams, Preset, PresetParams};
use crate::parse::parse_scalar;
use crate::CycloScalar;

fn bad(key: &str, msg: impl Into<String>) -> Error {
    Error::Config {
        key: key.to_string(),
        msg: msg.into(),
    }
}

fn scalar(key: &str, v: &Value) -> Result<CycloScalar> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Integer(n) => n.to_string(),
        Value::Float(f) => f.to_string(),
        other => return Err(bad(key, format!("expected a number or string, found {}", other.type_str()))),
    };
    parse_scalar(&text).map_err(|e| bad(key, e.to_string()))
}

fn indexed(name: &str, v: &Value) -> Result<[CycloScalar; 10]> {
    let table = v.as_table().ok_or_else(|| bad(name, "expected a table of entries 1..10"))?;
    let mut out: [CycloScalar; 10] = Default::default();
    for (k, val) in table {
        let key = format!("{name}.{k}");
        let j: usize = k.parse().map_err(|_| bad(&key, "index must be an integer 1..10"))?;
        if !(1..=10).contains(&j) {
            return Err(bad(&key, "index must be in 1..10"));
        }
        out[j - 1] = scalar(&key, val)?;
    }
    Ok(out)
}

/// Parameters described by a TOML document.
pub fn parse_config(text: &str) -> Result<AlphaParams> {
    let table: Table = text.parse().map_err(|e: toml::de::Error| bad("<document>", e.message()))?;
    let known = ["g", "preset", "alpha", "lambda", "Delta", "lambda1", "lambda2", "m"];
    if let Some(k) = table.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(bad(k, "unknown key"));
    }
    let get = |k: &str| table.get(k).map(|v| scalar(k, v)).transpose();
    let g = get("g")?;
    let sources = ["preset", "alpha", "lambda"].iter().filter(|k| table.contains_key(**k)).count();
    if sources != 1 {
        return Err(bad("<document>", "give exactly one of `preset`, `alpha`, `lambda`"));
    }
    if let Some(v) = table.get("preset") {
        let name = v.as_str().ok_or_else(|| bad("preset", "expected a string"))?;
        let p = Preset::from_str(name)?;
        let params = PresetParams {
            delta: get("Delta")?,
            m: get("m")?,
            lambda1: get("lambda1")?,
            lambda2: get("lambda2")?,
            g,
        };
        return preset(p, &params);
    }
    let g = g.ok_or_else(|| bad("g", "missing"))?;
    if let Some(v) = table.get("alpha") {
        return Ok(AlphaParams::new(indexed("alpha", v)?, g));
    }
    if g.is_zero() {
        return Err(Error::ZeroCoupling);
    }
    lambda_to_alpha(&LambdaParams::new(indexed("lambda", &table["lambda"])?), &g)
}

pub fn load_config(path: &std::path::Path) -> Result<AlphaParams> {
    let text = std::fs::read_to_string(path).map_err(|e| bad(&path.display().to_string(), e.to_string()))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_table() {
        let a = parse_config("g = \"1/10\"\n[alpha]\n2 = \"1/2\"\n5 = 1\n10 = \"1/2 + 3/4*sqrt2\"\n").unwrap();
        assert_eq!(a.a(2), &CycloScalar::ratio(1, 2));
        assert_eq!(a.a(5), &CycloScalar::one());
        assert_eq!(a.a(10), &(CycloScalar::ratio(1, 2) + CycloScalar::sqrt2() * CycloScalar::ratio(3, 4)));
        assert_eq!(a.g, CycloScalar::ratio(1, 10));
    }

    #[test]
    fn dotted_keys_and_preset() {
        let a = parse_config("g = 0.05\nalpha.9 = 1\n").unwrap();
        assert_eq!(a.g, CycloScalar::ratio(1, 20));
        let s = parse_config("preset = \"swanson\"\nDelta = 1\n").unwrap();
        assert_eq!(s, preset(Preset::Swanson, &PresetParams::delta(CycloScalar::one())).unwrap());
    }

    #[test]
    fn lambda_table_round_trips() {
        let a = parse_config("g = \"2/3\"\n[lambda]\n1 = 1\n8 = \"2/3*sqrt2\"\n9 = \"2/3*sqrt2\"\n").unwrap();
        let l = crate::hamiltonian::alpha_to_lambda(&a);
        assert_eq!(l.l(1), &CycloScalar::one());
        assert!(l.l(2).is_zero());
    }

    #[test]
    fn diagnostics_name_the_key() {
        let e = parse_config("g = 1\n[alpha]\n11 = 1\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "alpha.11"));
        let e = parse_config("g = 1\n[alpha]\n3 = \"x\"\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "alpha.3"));
        let e = parse_config("gee = 1\n").unwrap_err();
        assert!(matches!(e, Error::Config { ref key, .. } if key == "gee"));
        assert!(matches!(parse_config("[alpha]\n1 = 1\n"), Err(Error::Config { ref key, .. }) if key == "g"));
    }
}
