//! Brute-force references for the auction engine.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::auction::CombinatorialInstance;
use crate::error::Result;
use crate::value::{self, FinSet, Rational, Value};

/// Best total value over every assignment of each good to one of `bidders`.
///
/// Recurses on the goods one at a time and scores a complete assignment by
/// grouping goods per bidder. Zero when `bidders` is empty.
pub fn best_assignment_value(inst: &CombinatorialInstance, bidders: &FinSet) -> Result<Rational> {
    if bidders.is_empty() {
        return Ok(Rational::zero());
    }
    let goods: Vec<Value> = inst.goods().iter().cloned().collect();
    let mut chosen = Vec::with_capacity(goods.len());
    let mut best = None;
    assign(inst, bidders, &goods, &mut chosen, &mut best)?;
    Ok(best.unwrap_or_else(Rational::zero))
}

fn assign(
    inst: &CombinatorialInstance,
    bidders: &FinSet,
    goods: &[Value],
    chosen: &mut Vec<Value>,
    best: &mut Option<Rational>,
) -> Result<()> {
    if chosen.len() == goods.len() {
        let mut bundles: BTreeMap<&Value, Vec<Value>> = BTreeMap::new();
        for (g, n) in goods.iter().zip(chosen.iter()) {
            bundles.entry(n).or_default().push(g.clone());
        }
        let mut total = Rational::zero();
        for (n, gs) in bundles {
            total = value::add(total, inst.value(n, &FinSet::from_vec(gs)))?;
        }
        if best.is_none_or(|b| total > b) {
            *best = Some(total);
        }
        return Ok(());
    }
    for n in bidders.iter() {
        chosen.push(n.clone());
        assign(inst, bidders, goods, chosen, best)?;
        chosen.pop();
    }
    Ok(())
}

/// VCG payment of `bidder` given the chosen welfare and the bidder's value
/// for its assigned bundle.
pub fn vcg_payment(
    inst: &CombinatorialInstance,
    bidder: &Value,
    welfare: Rational,
    own_value: Rational,
) -> Result<Rational> {
    let without = best_assignment_value(inst, &inst.bidders().remove(bidder))?;
    value::sub(without, value::sub(welfare, own_value)?)
}
