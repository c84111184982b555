//! Subcommand bodies. Each returns the exact text for standard output.

use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use serde_json::{json, Value as Json};
use vickset_core::auction::single::{analyze, fee_table, single_good, PriceRule};
use vickset_core::auction::clear_vickrey;
use vickset_core::enumerate::{
    all_partitions_list, all_partitions_oracle, injections_alg, injections_oracle, ElementList,
};
use vickset_core::laws::{self, LawConfig, LawReport, Profile};
use vickset_core::{FinSet, Relation, Value};

use crate::error::{CliError, CliResult};
use crate::expr::eval_expression;
use crate::instance::{outcome_to_json, parse_instance, render};
use crate::report;
use crate::text::{parse_value, rational_spelling, serialize_value, value_to_json};

pub fn read_input(path: &Path) -> CliResult<String> {
    let io = |source| CliError::Io {
        path: path.display().to_string(),
        source,
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io)
    }
}

pub fn write_output(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Either an encoded set (`["set", ...]`) or a comma-separated list of
/// atoms: integers, `n/d` rationals or bare symbols. List order is kept.
pub fn parse_elements(text: &str) -> CliResult<Vec<Value>> {
    let t = text.trim();
    if t.starts_with('[') {
        return match parse_value(t)? {
            Value::Set(s) => Ok(s.iter().cloned().collect()),
            other => Err(CliError::validation(format!(
                "expected a set, found {}",
                other.kind()
            ))),
        };
    }
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|tok| parse_atom(tok.trim())).collect()
}

fn parse_atom(tok: &str) -> CliResult<Value> {
    if tok.is_empty() {
        return Err(CliError::parse("empty element in list"));
    }
    if let Ok(n) = tok.parse::<i64>() {
        return Ok(Value::Int(n));
    }
    if rational_spelling(tok).is_some() || tok.starts_with('"') {
        return parse_value(&if tok.starts_with('"') { tok.to_owned() } else { format!("\"{tok}\"") });
    }
    Ok(Value::sym(tok))
}

fn parse_atom_arg(text: &str) -> CliResult<Value> {
    let t = text.trim();
    if t.starts_with('[') {
        parse_value(t)
    } else {
        parse_atom(t)
    }
}

fn distinct_list(xs: Vec<Value>, what: &str) -> CliResult<ElementList> {
    ElementList::new(xs).map_err(|e| CliError::validation(format!("{what}: {e}")))
}

fn to_set(xs: Vec<Value>) -> FinSet {
    FinSet::from_vec(xs)
}

pub fn run_single(bidders: &str, grid: &str, bidder: &str, rule: PriceRule) -> CliResult<String> {
    let bidders = to_set(distinct_list(parse_elements(bidders)?, "bidders")?.as_slice().to_vec());
    let grid = to_set(distinct_list(parse_elements(grid)?, "grid")?.as_slice().to_vec());
    let i = parse_atom_arg(bidder)?;
    let mech = single_good(&bidders, &grid, &i, rule)?;
    let an = analyze(&mech, &grid)?;
    let fee = fee_table(&mech.price, &i, &mech.allocation)?;
    let dom4 = match &an.dom4 {
        None => Json::Null,
        Some(v) => json!({
            "bid": value_to_json(&v.bid.to_value())?,
            "valuation": value_to_json(&v.valuation)?,
        }),
    };
    let genvick = match &an.genvick {
        None => json!("fee_undefined"),
        Some(None) => json!("holds"),
        Some(Some(b)) => json!({ "violation": value_to_json(&b.to_value())? }),
    };
    let out = json!({
        "bidder": value_to_json(&i)?,
        "rule": match rule { PriceRule::SecondPrice => "second", PriceRule::FirstPrice => "first" },
        "allocation": value_to_json(&mech.allocation.to_value())?,
        "price": value_to_json(&mech.price.to_value())?,
        "dom4_violation": dom4,
        "functional_domain": an.functional_domain,
        "domain_within_price": an.domain_within_price,
        "price_runiq": an.price_runiq,
        "l24b_compatible": an.l24b_compatible,
        "quotient_runiq": an.quotient_runiq,
        "reducedprice_runiq": an.reducedprice_runiq,
        "fee": value_to_json(&fee.to_value())?,
        "undefined_fee_at": value_to_json(&an.undefined_fee_at.clone().into())?,
        "genvick": genvick,
    });
    Ok(render(&out))
}

pub fn run_combinatorial(instance_text: &str) -> CliResult<String> {
    let inst = parse_instance(instance_text)?;
    Ok(render(&outcome_to_json(&clear_vickrey(&inst)?)?))
}

fn lines<I: IntoIterator<Item = Value>>(vs: I) -> CliResult<String> {
    let mut out = String::new();
    for v in vs {
        out.push_str(&serialize_value(&v)?);
        out.push('\n');
    }
    Ok(out)
}

pub fn enumerate_partitions(elements: &str, oracle: bool) -> CliResult<String> {
    let xs = distinct_list(parse_elements(elements)?, "elements")?;
    if oracle {
        lines(all_partitions_oracle(&xs.to_set())?.into_iter().map(Value::Set))
    } else {
        lines(all_partitions_list(&xs).iter().map(|p| Value::Set(p.to_set())))
    }
}

pub fn enumerate_injections(xs: &str, ys: &str, oracle: bool) -> CliResult<String> {
    let xs = distinct_list(parse_elements(xs)?, "X")?;
    let ys = to_set(parse_elements(ys)?);
    let found = if oracle {
        injections_oracle(&xs.to_set(), &ys)?
    } else {
        injections_alg(&xs, &ys)
    };
    lines(found.into_iter().map(Relation::into))
}

/// Parses `NxM`.
pub fn parse_universe(text: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::parse(format!("universe {text:?}: expected NxM, e.g. 3x2"));
    let (n, m) = text.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((n.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
}

pub struct LawRun {
    pub output: String,
    pub nonconforming: usize,
}

pub fn check_laws(
    law: Option<&str>,
    config: &LawConfig,
    timings: bool,
) -> CliResult<LawRun> {
    let selected: Vec<&'static laws::Law> = match law {
        Some(id) => vec![laws::find_law(id)?],
        None => laws::registry().iter().collect(),
    };
    let mut reports: Vec<LawReport> = Vec::with_capacity(selected.len());
    for l in selected {
        let start = Instant::now();
        let mut r = laws::run(l, config)?;
        r.elapsed = Some(start.elapsed());
        reports.push(r);
    }
    Ok(LawRun {
        output: report::render(&reports, timings)?,
        nonconforming: reports.iter().filter(|r| !r.conforms()).count(),
    })
}

pub fn profile(text: &str) -> CliResult<Profile> {
    text.parse::<Profile>()
        .map_err(|e| CliError::validation(e.to_string()))
}

pub fn eval(source: &str, pretty: bool) -> CliResult<String> {
    let v = eval_expression(source)?;
    let mut out = if pretty {
        v.to_string()
    } else {
        serialize_value(&v)?
    };
    out.push('\n');
    Ok(out)
}
