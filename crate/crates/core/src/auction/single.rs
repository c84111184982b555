//! Single-good auctions seen from one bidder `i`.
//!
//! A mechanism is a pair of finite functions on bid vectors: `a` says whether
//! `i` gets the good (1 or 0) and `p` what `i` pays. Bid vectors are
//! themselves relations from bidders to bids, so `a` and `p` are relations
//! whose domain points are relations.

use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::quotient::{compatible, identity, kernel, projector, quotient};
use crate::relation::{arg_max_set, graph, Relation};
use crate::value::{self, FinSet, Rational, Value};

pub const MAX_BIDDERS: usize = 3;
pub const MAX_GRID: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriceRule {
    /// Winner pays the highest competing bid.
    SecondPrice,
    /// Winner pays its own bid. Not truthful; kept as a mutant for checks.
    FirstPrice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleGoodMechanism {
    pub bidder: Value,
    pub allocation: Relation,
    pub price: Relation,
}

/// Every function from `bidders` to `grid`, in canonical order.
pub fn bid_vectors(bidders: &FinSet, grid: &FinSet) -> Vec<Relation> {
    let mut out = alloc::vec![Relation::empty()];
    for b in bidders.iter() {
        out = out
            .iter()
            .flat_map(|r| grid.iter().map(|g| r.single_paste(b.clone(), g.clone())))
            .collect();
    }
    out.sort_unstable();
    out
}

/// Highest bidder, ties going to the lowest bidder in canonical order.
pub fn winner(bid: &Relation, bidders: &FinSet) -> Result<Value> {
    let best = arg_max_set(bid, bidders)?;
    Ok(best.iter().next().cloned().expect("arg_max of a nonempty set"))
}

fn check_args(bidders: &FinSet, grid: &FinSet, i: &Value) -> Result<()> {
    if bidders.len() < 2 {
        return Err(Error::precondition("need at least two bidders"));
    }
    if grid.is_empty() {
        return Err(Error::precondition("empty bid grid"));
    }
    Error::check_cap("single-good bidders", MAX_BIDDERS, bidders.len())?;
    Error::check_cap("bid grid size", MAX_GRID, grid.len())?;
    if !bidders.contains(i) {
        return Err(Error::precondition(format!("{i} is not a bidder")));
    }
    for g in grid.iter() {
        g.to_rational()?;
    }
    Ok(())
}

pub fn single_good(
    bidders: &FinSet,
    grid: &FinSet,
    i: &Value,
    rule: PriceRule,
) -> Result<SingleGoodMechanism> {
    check_args(bidders, grid, i)?;
    let mut alloc_pairs = Vec::new();
    let mut price_pairs = Vec::new();
    for b in bid_vectors(bidders, grid) {
        let wins = winner(&b, bidders)? == *i;
        let price = if !wins {
            Value::Int(0)
        } else {
            match rule {
                PriceRule::SecondPrice => b.single_outside(i).range().max_of()?,
                PriceRule::FirstPrice => b.eval(i),
            }
        };
        alloc_pairs.push((b.to_value(), Value::Int(wins as i64)));
        price_pairs.push((b.to_value(), price));
    }
    Ok(SingleGoodMechanism {
        bidder: i.clone(),
        allocation: Relation::from_pairs(alloc_pairs),
        price: Relation::from_pairs(price_pairs),
    })
}

pub fn second_price_single_good(
    bidders: &FinSet,
    grid: &FinSet,
    i: &Value,
) -> Result<SingleGoodMechanism> {
    single_good(bidders, grid, i, PriceRule::SecondPrice)
}

fn numeric_at(f: &Relation, name: &str, x: &Value) -> Result<Rational> {
    match f.eval(x) {
        Value::Undefined => Err(Error::domain(format!("{name} undefined at {x}"))),
        v => v.to_rational(),
    }
}

fn common_domain(a: &Relation, p: &Relation) -> FinSet {
    a.domain().intersection(&p.domain())
}

/// A bid vector and true valuation where bidding the valuation does worse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dom4Violation {
    pub bid: Relation,
    pub valuation: Value,
}

/// First `(b, v)` (canonical order) breaking
/// `v*(a,,b) - p,,b ≤ v*(a,,(b +< (i,v))) - p,,(b +< (i,v))`.
pub fn dom4_violation(
    i: &Value,
    a: &Relation,
    p: &Relation,
    grid: &FinSet,
) -> Result<Option<Dom4Violation>> {
    let dom = common_domain(a, p);
    for bv in dom.iter() {
        let Ok(b) = Relation::try_from(bv) else {
            continue;
        };
        if !b.domain().contains(i) {
            continue;
        }
        for v in grid.iter() {
            let truthful = b.single_paste(i.clone(), v.clone()).to_value();
            if !dom.contains(&truthful) {
                continue;
            }
            let val = v.to_rational()?;
            let lhs = value::sub(value::mul(val, numeric_at(a, "a", bv)?)?, numeric_at(p, "p", bv)?)?;
            let rhs = value::sub(
                value::mul(val, numeric_at(a, "a", &truthful)?)?,
                numeric_at(p, "p", &truthful)?,
            )?;
            if lhs > rhs {
                return Ok(Some(Dom4Violation {
                    bid: b,
                    valuation: v.clone(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn dom4_check(i: &Value, a: &Relation, p: &Relation, grid: &FinSet) -> Result<bool> {
    Ok(dom4_violation(i, a, p, grid)?.is_none())
}

/// `{b -- i | b ∈ Domain a ∩ Domain p}`.
pub fn reduced_bids(i: &Value, a: &Relation, p: &Relation) -> Result<FinSet> {
    common_domain(a, p)
        .iter()
        .map(|b| Ok(Relation::try_from(b)?.single_outside(i).to_value()))
        .collect()
}

/// Table `b -- i ↦ max (Range (b -- i))`: the highest competing bid.
pub fn highest_other_bid_table(i: &Value, a: &Relation, p: &Relation) -> Result<Relation> {
    let mut table = Vec::new();
    for x in reduced_bids(i, a, p)?.iter() {
        table.push((x.clone(), Relation::try_from(x)?.range().max_of()?));
    }
    Ok(Relation::from_pairs(table))
}

/// Table sending every reduced bid to `c`.
pub fn constant_table(i: &Value, a: &Relation, p: &Relation, c: Value) -> Result<Relation> {
    graph(&reduced_bids(i, a, p)?, |_| Some(c.clone()))
}

/// First `b` breaking `p,,b = (a,,b - a1) * w (b--i) + t (b--i)`.
pub fn genvick_violation(
    i: &Value,
    a: &Relation,
    p: &Relation,
    w: &Relation,
    t: &Relation,
    a1: Rational,
) -> Result<Option<Relation>> {
    for bv in common_domain(a, p).iter() {
        let b = Relation::try_from(bv)?;
        let reduced = b.single_outside(i).to_value();
        let wv = numeric_at(w, "w", &reduced)?;
        let tv = numeric_at(t, "t", &reduced)?;
        let rhs = value::add(value::mul(value::sub(numeric_at(a, "a", bv)?, a1)?, wv)?, tv)?;
        if numeric_at(p, "p", bv)? != rhs {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

pub fn genvick_check(
    i: &Value,
    a: &Relation,
    p: &Relation,
    w: &Relation,
    t: &Relation,
    a1: Rational,
) -> Result<bool> {
    Ok(genvick_violation(i, a, p, w, t, a1)?.is_none())
}

/// Every member of `xs` is a right-unique relation.
pub fn functional(xs: &FinSet) -> bool {
    xs.iter()
        .all(|x| Relation::try_from(x).is_ok_and(|r| r.runiq()))
}

/// `{(b, (Domain b, (b outside {i}, a,,b))) | b ∈ Domain a}`.
pub fn reducedbid(i: &Value, a: &Relation) -> Result<Relation> {
    if !a.runiq() {
        return Err(Error::precondition("reducedbid needs a right-unique allocation"));
    }
    let mut out = Vec::with_capacity(a.len());
    for (bv, outcome) in a.pairs() {
        let b = Relation::try_from(bv)?;
        let triple = Value::pair(
            Value::Set(b.domain()),
            Value::pair(b.single_outside(i).to_value(), outcome.clone()),
        );
        out.push((bv.clone(), triple));
    }
    Ok(Relation::from_pairs(out))
}

/// The quotient of `p` by the kernel of [`reducedbid`] and `Id` on `Range p`.
pub fn reduced_quotient(p: &Relation, i: &Value, a: &Relation) -> Result<Relation> {
    let rb = reducedbid(i, a)?;
    Ok(quotient(p, &kernel(&rb)?, &identity(&p.range())))
}

/// `(projector (reducedbid i a)¯) O (quotient p (Kernel (reducedbid i a)) Id) O (projector Id)¯`
/// with `Id` the identity on `Range p`: maps `(Domain b, (b -- i, a,,b))` to a price.
pub fn reducedprice(p: &Relation, i: &Value, a: &Relation) -> Result<Relation> {
    if !p.runiq() {
        return Err(Error::precondition("reducedprice needs a right-unique price"));
    }
    let rb = reducedbid(i, a)?;
    let id = identity(&p.range());
    Ok(projector(&rb.converse())
        .compose(&quotient(p, &kernel(&rb)?, &id))
        .compose(&projector(&id).converse()))
}

/// The fee `t x = reducedprice p i a ,, ({i} ∪ Domain x, (x, Min (Range a)))`,
/// tabulated on the reduced bids. Entries may be `Undefined`.
pub fn fee_table(p: &Relation, i: &Value, a: &Relation) -> Result<Relation> {
    let rp = reducedprice(p, i, a)?;
    let lowest = a.range().min_of()?;
    let xs = reduced_bids(i, a, p)?;
    let mut table = Vec::with_capacity(xs.len());
    for x in xs.iter() {
        let reduced = Relation::try_from(x)?;
        let key = Value::pair(
            Value::Set(reduced.domain().insert(i.clone())),
            Value::pair(x.clone(), lowest.clone()),
        );
        table.push((x.clone(), rp.eval(&key)));
    }
    Ok(Relation::from_pairs(table))
}

/// Reduced bids with no completion in `Domain a ∩ Domain p` where `a` takes
/// its minimum. The fee extracted by [`fee_table`] is undefined exactly there.
pub fn reduced_bids_without_losing_completion(
    i: &Value,
    a: &Relation,
    p: &Relation,
) -> Result<FinSet> {
    let lowest = a.range().min_of()?;
    let mut reached = Vec::new();
    let mut losing = Vec::new();
    for bv in common_domain(a, p).iter() {
        let x = Relation::try_from(bv)?.single_outside(i).to_value();
        if a.eval(bv) == lowest {
            losing.push(x.clone());
        }
        reached.push(x);
    }
    let losing = FinSet::from_vec(losing);
    Ok(FinSet::from_vec(reached).difference(&losing))
}

/// Everything the single-good checks compute for one mechanism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleGoodAnalysis {
    pub dom4: Option<Dom4Violation>,
    pub functional_domain: bool,
    pub domain_within_price: bool,
    pub price_runiq: bool,
    pub l24b_compatible: bool,
    pub quotient_runiq: bool,
    pub reducedprice_runiq: bool,
    /// Reduced bids where the extracted fee is undefined.
    pub undefined_fee_at: FinSet,
    /// `None` when the fee is undefined somewhere; otherwise the first
    /// violation of genvick with `w` the highest competing bid and `a1 = 0`.
    pub genvick: Option<Option<Relation>>,
}

impl SingleGoodAnalysis {
    pub fn genvick_holds(&self) -> bool {
        matches!(self.genvick, Some(None))
    }
}

pub fn analyze(mech: &SingleGoodMechanism, grid: &FinSet) -> Result<SingleGoodAnalysis> {
    let (i, a, p) = (&mech.bidder, &mech.allocation, &mech.price);
    let rb = reducedbid(i, a)?;
    let compatible_kernel = compatible(p, &kernel(&rb)?, &identity(&p.range()));
    let t = fee_table(p, i, a)?;
    let undefined_fee_at: FinSet = t
        .pairs()
        .filter(|(_, y)| y.is_undefined())
        .map(|(x, _)| x.clone())
        .collect();
    let genvick = if undefined_fee_at.is_empty() {
        let w = highest_other_bid_table(i, a, p)?;
        Some(genvick_violation(i, a, p, &w, &t, Rational::zero())?)
    } else {
        None
    };
    Ok(SingleGoodAnalysis {
        dom4: dom4_violation(i, a, p, grid)?,
        functional_domain: functional(&a.domain()),
        domain_within_price: a.domain().is_subset(&p.domain()),
        price_runiq: p.runiq(),
        l24b_compatible: compatible_kernel,
        quotient_runiq: reduced_quotient(p, i, a)?.runiq(),
        reducedprice_runiq: reducedprice(p, i, a)?.runiq(),
        undefined_fee_at,
        genvick,
    })
}

/// `a,,b = 1`.
pub fn wins(mech: &SingleGoodMechanism, bid: &Relation) -> bool {
    mech.allocation
        .eval(&bid.to_value())
        .as_rational()
        .is_some_and(|r| r.is_one())
}
