//! Law reports as JSON lines, one record per law.

use serde_json::{json, Map, Value as Json};
use vickset_core::laws::LawReport;
use vickset_core::Value;

use crate::error::CliResult;
use crate::text::value_to_json;

fn values(vs: &Option<Vec<Value>>) -> CliResult<Json> {
    match vs {
        None => Ok(Json::Null),
        Some(vs) => Ok(Json::Array(
            vs.iter().map(value_to_json).collect::<CliResult<_>>()?,
        )),
    }
}

/// One record. `elapsed_ms` is present only when `timings` is set and the
/// report carries a duration, which keeps default output byte-stable.
pub fn record(r: &LawReport, timings: bool) -> CliResult<Json> {
    let mut m = Map::new();
    m.insert("law".into(), json!(r.id));
    m.insert("statement".into(), json!(r.statement));
    m.insert("expect".into(), json!(r.expect.to_string()));
    m.insert("profile".into(), json!(r.profile.to_string()));
    m.insert("seed".into(), json!(r.seed));
    m.insert("cases".into(), json!(r.cases));
    m.insert("verdict".into(), json!(r.verdict.to_string()));
    m.insert("conforms".into(), json!(r.conforms()));
    m.insert("counterexample".into(), values(&r.counterexample)?);
    m.insert("witness".into(), values(&r.witness)?);
    if timings {
        if let Some(d) = r.elapsed {
            m.insert("elapsed_ms".into(), json!(d.as_secs_f64() * 1000.0));
        }
    }
    Ok(Json::Object(m))
}

pub fn render(reports: &[LawReport], timings: bool) -> CliResult<String> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&record(r, timings)?.to_string());
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;
    use vickset_core::laws::{run_law, LawConfig, Profile};

    #[test]
    fn records_are_stable_without_timings() {
        let cfg = LawConfig::new(Profile::Quick, 3);
        let mut a = run_law("lll34", &cfg).unwrap();
        let b = run_law("lll34", &cfg).unwrap();
        a.elapsed = Some(Duration::from_millis(5));
        assert_eq!(render(&[a.clone()], false).unwrap(), render(&[b], false).unwrap());
        assert!(render(&[a], true).unwrap().contains("elapsed_ms"));
    }

    #[test]
    fn refuted_record_has_counterexample() {
        let r = run_law("l23_necessity", &LawConfig::new(Profile::Quick, 0)).unwrap();
        let j = record(&r, false).unwrap();
        assert_eq!(j["verdict"], "fail");
        assert_eq!(j["conforms"], true);
        assert_eq!(j["counterexample"].as_array().unwrap().len(), 3);
    }
}
