//! Combinatorial auction instance and outcome files.
//!
//! ```json
//! {
//!   "goods": ["g1", "g2"],
//!   "bidders": [1, 2],
//!   "valuations": [[1, ["set", "g1", "g2"], 10], [2, ["set", "g1"], "5/2"]]
//! }
//! ```
//!
//! Goods and bidders are JSON lists of encoded values. Each valuation is a
//! `[bidder, bundle, value]` triple; bundles not listed are worth zero.

use serde::Deserialize;
use serde_json::{json, Value as Json};
use vickset_core::auction::{CombinatorialInstance, Outcome};
use vickset_core::{FinSet, Value};

use crate::error::{CliError, CliResult};
use crate::text::{value_to_json, Encoded};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    goods: Vec<Encoded>,
    bidders: Vec<Encoded>,
    #[serde(default)]
    valuations: Vec<(Encoded, Encoded, Encoded)>,
}

fn distinct(items: &[Encoded], what: &str) -> CliResult<FinSet> {
    let values = items
        .iter()
        .map(Encoded::canonical)
        .collect::<CliResult<Vec<_>>>()?;
    let set = FinSet::from_vec(values.clone());
    if set.len() != values.len() {
        return Err(CliError::validation(format!("duplicate entry in {what}")));
    }
    Ok(set)
}

pub fn parse_instance(text: &str) -> CliResult<CombinatorialInstance> {
    let file: InstanceFile =
        serde_json::from_str(text).map_err(|e| CliError::parse(e.to_string()))?;
    let goods = distinct(&file.goods, "goods")?;
    let bidders = distinct(&file.bidders, "bidders")?;
    let mut entries = Vec::with_capacity(file.valuations.len());
    for (n, bundle, v) in &file.valuations {
        let bundle = match bundle.canonical()? {
            Value::Set(s) => s,
            other => {
                return Err(CliError::validation(format!(
                    "bundle must be a set, found {}",
                    other.kind()
                )))
            }
        };
        entries.push((n.canonical()?, bundle, v.canonical()?.to_rational()?));
    }
    Ok(CombinatorialInstance::new(goods, bidders, entries)?)
}

pub fn instance_to_json(inst: &CombinatorialInstance) -> CliResult<Json> {
    let list = |s: &FinSet| s.iter().map(value_to_json).collect::<CliResult<Vec<_>>>();
    let mut valuations = Vec::new();
    for (n, bundle, v) in inst.entries() {
        valuations.push(json!([
            value_to_json(n)?,
            value_to_json(&bundle.clone().into())?,
            value_to_json(&Value::number(v))?
        ]));
    }
    Ok(json!({
        "goods": list(inst.goods())?,
        "bidders": list(inst.bidders())?,
        "valuations": valuations,
    }))
}

pub fn outcome_to_json(out: &Outcome) -> CliResult<Json> {
    Ok(json!({
        "allocation": value_to_json(&out.allocation.relation().to_value())?,
        "payments": value_to_json(&out.payments.to_value())?,
        "welfare": value_to_json(&Value::number(out.welfare))?,
    }))
}

/// An object with one field per line and compact field values; anything
/// else on a single line. Always newline-terminated.
pub fn render(json: &Json) -> String {
    let Json::Object(fields) = json else {
        return format!("{json}\n");
    };
    let mut s = String::from("{\n");
    for (k, (key, value)) in fields.iter().enumerate() {
        let sep = if k + 1 < fields.len() { "," } else { "" };
        s.push_str(&format!("  {}: {value}{sep}\n", Json::from(key.as_str())));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use vickset_core::auction::clear_vickrey;
    use vickset_core::Rational;

    const EXAMPLE: &str = r#"{
        "goods": ["g1", "g2"],
        "bidders": [1, 2],
        "valuations": [
            [1, ["set", "g1", "g2"], 10], [1, ["set", "g1"], 6], [1, ["set", "g2"], 6],
            [2, ["set", "g1", "g2"], 7], [2, ["set", "g1"], 5], [2, ["set", "g2"], 5]
        ]
    }"#;

    #[test]
    fn worked_example() {
        let inst = parse_instance(EXAMPLE).unwrap();
        let out = clear_vickrey(&inst).unwrap();
        assert_eq!(out.welfare, Rational::from_integer(11));
        let j = outcome_to_json(&out).unwrap();
        assert_eq!(j["payments"], json!(["set", ["pair", 1, 2], ["pair", 2, 4]]));
        assert_eq!(j["welfare"], json!(11));
    }

    #[test]
    fn rendering() {
        assert_eq!(render(&json!({"b": [1, 2], "a": "x"})), "{\n  \"a\": \"x\",\n  \"b\": [1,2]\n}\n");
        assert_eq!(render(&json!({})), "{\n}\n");
        assert_eq!(render(&json!(3)), "3\n");
    }

    #[test]
    fn instance_round_trip() {
        let inst = parse_instance(EXAMPLE).unwrap();
        let again = parse_instance(&render(&instance_to_json(&inst).unwrap())).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn errors() {
        let parse = [
            r#"{"goods": ["g"], "bidders": [1]"#,
            r#"{"goods": ["g"], "bidders": [1], "extra": 1}"#,
            r#"{"goods": ["g"], "bidders": [1], "valuations": [[1, ["set", "g"]]]}"#,
            r#"{"goods": [1.5], "bidders": [1]}"#,
        ];
        for text in parse {
            assert!(matches!(parse_instance(text), Err(CliError::Parse(_))), "{text}");
        }
        let invalid = [
            r#"{"goods": [], "bidders": [1]}"#,
            r#"{"goods": ["g", "g"], "bidders": [1]}"#,
            r#"{"goods": ["g"], "bidders": [1], "valuations": [[1, "g", 1]]}"#,
            r#"{"goods": ["g"], "bidders": [1], "valuations": [[1, ["set", "h"], 1]]}"#,
            r#"{"goods": ["g"], "bidders": [1], "valuations": [[1, ["set", "g"], -1]]}"#,
            r#"{"goods": ["g"], "bidders": [1], "valuations": [[1, ["set", "g"], "1/0"]]}"#,
        ];
        for text in invalid {
            assert!(matches!(parse_instance(text), Err(CliError::Validation(_))), "{text}");
        }
        let caps = r#"{"goods": [1,2,3,4,5,6,7], "bidders": [1]}"#;
        assert!(matches!(parse_instance(caps), Err(CliError::Cap(_))));
    }
}
