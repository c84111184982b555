//! The JSON text encoding of values.
//!
//! Integers are JSON integers, rationals are strings `"n/d"`, symbols are
//! other strings, and compound values are tagged arrays: `["pair", a, b]`,
//! `["set", x, ...]` and `["undefined"]`.

use std::fmt;

use serde::de::{self, DeserializeSeed, Deserializer, SeqAccess, Visitor};
use serde_json::Value as Json;
use vickset_core::value::canonicalize;
use vickset_core::{RawValue, Value};

use crate::error::{CliError, CliResult};

/// `Some((n, d))` when `s` is spelled like a rational: optional `-`, digits, `/`, digits.
pub fn rational_spelling(s: &str) -> Option<(&str, &str)> {
    let (n, d) = s.split_once('/')?;
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let n_digits = n.strip_prefix('-').unwrap_or(n);
    (digits(n_digits) && digits(d)).then_some((n, d))
}

fn parse_rational(n: &str, d: &str) -> Result<RawValue, String> {
    let n: i64 = n.parse().map_err(|_| format!("numerator {n} out of range"))?;
    let d: i64 = d.parse().map_err(|_| format!("denominator {d} out of range"))?;
    Ok(RawValue::Rat(n, d))
}

struct RawSeed;

impl<'de> DeserializeSeed<'de> for RawSeed {
    type Value = RawValue;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<RawValue, D::Error> {
        d.deserialize_any(RawVisitor)
    }
}

struct RawVisitor;

impl<'de> Visitor<'de> for RawVisitor {
    type Value = RawValue;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an integer, a string or a tagged array")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<RawValue, E> {
        Ok(RawValue::Int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<RawValue, E> {
        i64::try_from(v)
            .map(RawValue::Int)
            .map_err(|_| E::custom(format!("integer {v} out of range")))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<RawValue, E> {
        Err(E::custom(format!(
            "floating-point number {v}; write rationals as \"n/d\""
        )))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<RawValue, E> {
        match rational_spelling(v) {
            Some((n, d)) => parse_rational(n, d).map_err(E::custom),
            None => Ok(RawValue::Sym(v.to_owned())),
        }
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<RawValue, A::Error> {
        let tag: String = seq
            .next_element()?
            .ok_or_else(|| de::Error::custom("empty array; expected a tag"))?;
        match tag.as_str() {
            "pair" => {
                let a = seq
                    .next_element_seed(RawSeed)?
                    .ok_or_else(|| de::Error::custom("pair needs two components"))?;
                let b = seq
                    .next_element_seed(RawSeed)?
                    .ok_or_else(|| de::Error::custom("pair needs two components"))?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::custom("pair has more than two components"));
                }
                Ok(RawValue::Pair(Box::new(a), Box::new(b)))
            }
            "set" => {
                let mut items = Vec::new();
                while let Some(v) = seq.next_element_seed(RawSeed)? {
                    items.push(v);
                }
                Ok(RawValue::Set(items))
            }
            "undefined" => {
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::custom("undefined takes no components"));
                }
                Ok(RawValue::Undefined)
            }
            other => Err(de::Error::custom(format!(
                "unknown tag {other:?}; expected \"pair\", \"set\" or \"undefined\""
            ))),
        }
    }
}

/// Parses one value without canonicalizing it.
pub fn parse_raw(text: &str) -> CliResult<RawValue> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw = RawSeed
        .deserialize(&mut de)
        .and_then(|v| de.end().map(|()| v))
        .map_err(|e| CliError::parse(e.to_string()))?;
    Ok(raw)
}

pub fn parse_value(text: &str) -> CliResult<Value> {
    Ok(canonicalize(&parse_raw(text)?)?)
}

/// A value field inside a larger serde document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encoded(pub RawValue);

impl<'de> serde::Deserialize<'de> for Encoded {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RawSeed.deserialize(d).map(Encoded)
    }
}

impl Encoded {
    pub fn canonical(&self) -> CliResult<Value> {
        Ok(canonicalize(&self.0)?)
    }
}

pub fn value_to_json(v: &Value) -> CliResult<Json> {
    Ok(match v {
        Value::Int(n) => Json::from(*n),
        Value::Rat(r) => Json::String(format!("{}/{}", r.numer(), r.denom())),
        Value::Sym(s) => {
            if rational_spelling(s).is_some() {
                return Err(CliError::validation(format!(
                    "symbol {s:?} is spelled like a rational and cannot be encoded"
                )));
            }
            Json::String(s.to_string())
        }
        Value::Undefined => Json::Array(vec![Json::from("undefined")]),
        Value::Pair(p) => Json::Array(vec![
            Json::from("pair"),
            value_to_json(&p.0)?,
            value_to_json(&p.1)?,
        ]),
        Value::Set(s) => {
            let mut items = Vec::with_capacity(s.len() + 1);
            items.push(Json::from("set"));
            for x in s.iter() {
                items.push(value_to_json(x)?);
            }
            Json::Array(items)
        }
    })
}

/// Compact single-line encoding.
pub fn serialize_value(v: &Value) -> CliResult<String> {
    Ok(value_to_json(v)?.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use vickset_core::{Error, Relation};

    fn int(n: i64) -> Value {
        Value::Int(n)
    }

    #[test]
    fn spec_examples() {
        let r = parse_value(r#"["set",["pair",1,10],["pair",0,5]]"#).unwrap();
        assert_eq!(
            r,
            Relation::from_pairs([(int(0), int(5)), (int(1), int(10))]).to_value()
        );
        assert_eq!(parse_value(r#""2/4""#).unwrap(), Value::rat(1, 2).unwrap());
        assert_eq!(parse_value(r#"["set",1,1]"#).unwrap(), Value::set([int(1)]));
    }

    #[test]
    fn rationals_normalize() {
        assert_eq!(parse_value(r#""4/2""#).unwrap(), int(2));
        assert_eq!(parse_value(r#""-3/6""#).unwrap(), Value::rat(-1, 2).unwrap());
        assert_eq!(serialize_value(&Value::rat(-1, 2).unwrap()).unwrap(), r#""-1/2""#);
    }

    #[test]
    fn zero_denominator_is_validation() {
        assert!(matches!(parse_value(r#""1/0""#), Err(CliError::Validation(_))));
        let e = CliError::from(Error::ZeroDenominator);
        assert!(matches!(e, CliError::Validation(_)));
    }

    #[test]
    fn parse_errors_carry_position() {
        for bad in [r#"["set", 1,"#, r#"["tuple", 1]"#, "1.5", r#"["pair", 1]"#, "[]", "1 2"] {
            match parse_value(bad) {
                Err(CliError::Parse(msg)) => assert!(msg.contains("line"), "{bad}: {msg}"),
                other => panic!("{bad}: {other:?}"),
            }
        }
    }

    #[test]
    fn round_trip() {
        let text = r#"["set",-2,"1/3",1,"a",["undefined"],["pair","b",["set"]],["set",1]]"#;
        let v = parse_value(text).unwrap();
        assert_eq!(serialize_value(&v).unwrap(), text);
        assert_eq!(parse_value(&serialize_value(&v).unwrap()).unwrap(), v);
        assert_eq!(serialize_value(&Value::Undefined).unwrap(), r#"["undefined"]"#);
    }

    #[test]
    fn rational_looking_symbols_rejected_on_output() {
        assert!(serialize_value(&Value::sym("1/2")).is_err());
        assert!(serialize_value(&Value::sym("1/x")).is_ok());
    }
}
