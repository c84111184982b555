//! Combinatorial Vickrey auctions.
//!
//! An allocation is a single relation from bundles to bidders: its domain is
//! a partition of the goods and it is injective, so every bidder receives at
//! most one bundle. Allocations are enumerated from the constructive
//! partition and injection lists.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::enumerate::{all_partitions_list, injections_alg, is_partition_of, ElementList};
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::value::{self, FinSet, Rational, Value};

pub const MAX_GOODS: usize = 6;
pub const MAX_BIDDERS: usize = 6;

/// Goods, bidders and the reported value of every (bidder, bundle).
/// Unlisted bundles are worth zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialInstance {
    goods: FinSet,
    bidders: FinSet,
    valuation: BTreeMap<(Value, FinSet), Rational>,
}

impl CombinatorialInstance {
    pub fn new<I>(goods: FinSet, bidders: FinSet, valuation: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Value, FinSet, Rational)>,
    {
        if goods.is_empty() {
            return Err(Error::precondition("no goods"));
        }
        if bidders.is_empty() {
            return Err(Error::precondition("no bidders"));
        }
        Error::check_cap("goods", MAX_GOODS, goods.len())?;
        Error::check_cap("bidders", MAX_BIDDERS, bidders.len())?;
        let mut table = BTreeMap::new();
        for (bidder, bundle, v) in valuation {
            if !bidders.contains(&bidder) {
                return Err(Error::precondition(format!("valuation for unknown bidder {bidder}")));
            }
            if !bundle.is_subset(&goods) {
                return Err(Error::precondition(format!("bundle {bundle} is not a set of goods")));
            }
            if !value::is_nonnegative(&v) {
                return Err(Error::precondition(format!("negative valuation for {bidder}")));
            }
            if bundle.is_empty() && !v.is_zero() {
                return Err(Error::precondition(format!("{bidder} values the empty bundle")));
            }
            if let Some(prev) = table.insert((bidder.clone(), bundle.clone()), v) {
                if prev != v {
                    return Err(Error::precondition(format!(
                        "conflicting valuations for {bidder} on {bundle}"
                    )));
                }
            }
        }
        Ok(CombinatorialInstance {
            goods,
            bidders,
            valuation: table,
        })
    }

    pub fn goods(&self) -> &FinSet {
        &self.goods
    }

    pub fn bidders(&self) -> &FinSet {
        &self.bidders
    }

    pub fn value(&self, bidder: &Value, bundle: &FinSet) -> Rational {
        self.valuation
            .get(&(bidder.clone(), bundle.clone()))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    /// Listed (bidder, bundle, value) entries in canonical order.
    pub fn entries(&self) -> impl Iterator<Item = (&Value, &FinSet, Rational)> + '_ {
        self.valuation.iter().map(|((n, s), v)| (n, s, *v))
    }

    /// The valuation table as the relation `{((bidder, bundle), value)}`.
    pub fn valuation_relation(&self) -> Relation {
        Relation::from_pairs(self.entries().map(|(n, s, v)| {
            (Value::pair(n.clone(), Value::Set(s.clone())), Value::number(v))
        }))
    }

    /// Inverse of `(goods, bidders, valuation_relation)`.
    pub fn from_values(goods: &Value, bidders: &Value, valuation: &Value) -> Result<Self> {
        let table = Relation::try_from(valuation)?;
        let mut entries = Vec::with_capacity(table.len());
        for (key, v) in table.pairs() {
            let (bidder, bundle) = key.as_pair()?;
            entries.push((bidder.clone(), bundle.as_set()?.clone(), v.to_rational()?));
        }
        CombinatorialInstance::new(goods.as_set()?.clone(), bidders.as_set()?.clone(), entries)
    }
}

/// Injective relation from the blocks of a partition of the goods to bidders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct AllocationRel(Relation);

impl AllocationRel {
    pub fn new(r: Relation, goods: &FinSet, bidders: &FinSet) -> Result<Self> {
        if !is_partition_of(&r.domain(), goods) {
            return Err(Error::precondition("allocated bundles do not partition the goods"));
        }
        if !r.runiq() || !r.converse().runiq() {
            return Err(Error::precondition("allocation is not injective"));
        }
        if !r.range().is_subset(bidders) {
            return Err(Error::precondition("allocation to unknown bidder"));
        }
        Ok(AllocationRel(r))
    }

    pub fn relation(&self) -> &Relation {
        &self.0
    }

    /// The bundle assigned to `bidder`, empty if none.
    pub fn bundle_of(&self, bidder: &Value) -> FinSet {
        match self.0.converse().eval(bidder) {
            Value::Set(s) => s,
            _ => FinSet::empty(),
        }
    }
}

/// Every (partition of `goods`, injection of its blocks into `bidders`),
/// in the order the constructive enumerations produce them.
pub fn possible_allocations(goods: &FinSet, bidders: &FinSet) -> Result<Vec<AllocationRel>> {
    if goods.is_empty() || bidders.is_empty() {
        return Err(Error::precondition("possible_allocations needs goods and bidders"));
    }
    Error::check_cap("goods", MAX_GOODS, goods.len())?;
    Error::check_cap("bidders", MAX_BIDDERS, bidders.len())?;
    let mut out = Vec::new();
    for partition in all_partitions_list(&ElementList::from(goods)) {
        let blocks = ElementList::new(partition.blocks().iter().cloned().map(Value::Set).collect())?;
        out.extend(injections_alg(&blocks, bidders).into_iter().map(AllocationRel));
    }
    Ok(out)
}

/// Total reported value of an allocation.
pub fn welfare(inst: &CombinatorialInstance, alloc: &AllocationRel) -> Result<Rational> {
    let mut total = Rational::zero();
    for (bundle, bidder) in alloc.0.pairs() {
        total = value::add(total, inst.value(bidder, bundle.as_set()?))?;
    }
    Ok(total)
}

/// Welfare-maximizing allocation, ties to the canonically smallest one.
/// `None` when there is no bidder to allocate to.
fn best_allocation(
    inst: &CombinatorialInstance,
    bidders: &FinSet,
) -> Result<Option<(AllocationRel, Rational)>> {
    if bidders.is_empty() {
        return Ok(None);
    }
    let mut best: Option<(AllocationRel, Rational)> = None;
    for alloc in possible_allocations(&inst.goods, bidders)? {
        let w = welfare(inst, &alloc)?;
        let better = match &best {
            None => true,
            Some((b, bw)) => w > *bw || (w == *bw && alloc < *b),
        };
        if better {
            best = Some((alloc, w));
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub allocation: AllocationRel,
    /// Bidder to payment, one entry per bidder.
    pub payments: Relation,
    pub welfare: Rational,
}

impl Outcome {
    pub fn payment(&self, bidder: &Value) -> Option<Rational> {
        self.payments.eval(bidder).as_rational()
    }
}

/// Chooses a welfare-maximizing allocation and charges every bidder
/// the best welfare of the others without it minus their welfare
/// under the chosen allocation.
pub fn clear_vickrey(inst: &CombinatorialInstance) -> Result<Outcome> {
    let (allocation, total) = best_allocation(inst, &inst.bidders)?
        .ok_or_else(|| Error::precondition("no bidders"))?;
    let mut payments = Vec::with_capacity(inst.bidders.len());
    for n in inst.bidders.iter() {
        let others = inst.bidders.remove(n);
        let without = best_allocation(inst, &others)?.map_or(Rational::zero(), |(_, w)| w);
        let own = inst.value(n, &allocation.bundle_of(n));
        let others_now = value::sub(total, own)?;
        payments.push((n.clone(), Value::number(value::sub(without, others_now)?)));
    }
    Ok(Outcome {
        allocation,
        payments: Relation::from_pairs(payments),
        welfare: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn goods(names: &[&str]) -> FinSet {
        names.iter().map(|s| Value::sym(s)).collect()
    }

    fn ints(xs: &[i64]) -> FinSet {
        xs.iter().copied().map(Value::Int).collect()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn worked_example() -> CombinatorialInstance {
        let g = goods(&["g1", "g2"]);
        let entries = [
            (1, &["g1", "g2"][..], 10),
            (1, &["g1"][..], 6),
            (1, &["g2"][..], 6),
            (2, &["g1", "g2"][..], 7),
            (2, &["g1"][..], 5),
            (2, &["g2"][..], 5),
        ]
        .into_iter()
        .map(|(n, b, v)| (Value::Int(n), goods(b), q(v)));
        CombinatorialInstance::new(g, ints(&[1, 2]), entries).unwrap()
    }

    /// Enumerates every map from goods to bidders and groups by bidder,
    /// which yields each allocation exactly once.
    fn welfare_oracle(inst: &CombinatorialInstance, bidders: &[Value]) -> Rational {
        let gs: Vec<_> = inst.goods().iter().cloned().collect();
        if bidders.is_empty() {
            return q(0);
        }
        let mut best = None;
        let total = bidders.len().pow(gs.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut bundles = alloc::vec![Vec::new(); bidders.len()];
            for g in &gs {
                bundles[c % bidders.len()].push(g.clone());
                c /= bidders.len();
            }
            let w: Rational = bidders
                .iter()
                .zip(bundles)
                .map(|(n, b)| inst.value(n, &FinSet::from_vec(b)))
                .sum();
            best = Some(best.map_or(w, |m: Rational| m.max(w)));
        }
        best.unwrap()
    }

    #[test]
    fn allocation_counts() {
        assert_eq!(possible_allocations(&goods(&["a", "b"]), &ints(&[1, 2])).unwrap().len(), 4);
        assert_eq!(possible_allocations(&goods(&["a"]), &ints(&[1, 2, 3])).unwrap().len(), 3);
        assert_eq!(possible_allocations(&goods(&["a", "b"]), &ints(&[1])).unwrap().len(), 1);
        // Every map goods -> bidders is one allocation.
        assert_eq!(possible_allocations(&ints(&[0, 1, 2]), &ints(&[1, 2, 3])).unwrap().len(), 27);
        assert!(matches!(
            possible_allocations(&ints(&[0, 1, 2, 3, 4, 5, 6]), &ints(&[1])),
            Err(Error::Cap { .. })
        ));
    }

    #[test]
    fn allocations_are_valid_and_distinct() {
        let (g, n) = (ints(&[0, 1, 2]), ints(&[7, 8]));
        let mut all = possible_allocations(&g, &n).unwrap();
        for a in &all {
            AllocationRel::new(a.relation().clone(), &g, &n).unwrap();
        }
        let len = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), len);
    }

    #[test]
    fn worked_example_clears() {
        let inst = worked_example();
        let out = clear_vickrey(&inst).unwrap();
        assert_eq!(out.welfare, q(11));
        assert_eq!(welfare_oracle(&inst, &[Value::Int(1), Value::Int(2)]), q(11));
        // Oracle recomputation: 2's best alone is 7, 1's best alone is 10;
        // each of the others gets 5 and 6 in the split.
        let w_without_1 = welfare_oracle(&inst, &[Value::Int(2)]);
        let w_without_2 = welfare_oracle(&inst, &[Value::Int(1)]);
        assert_eq!((w_without_1, w_without_2), (q(7), q(10)));
        assert_eq!(out.payment(&Value::Int(1)), Some(q(2)));
        assert_eq!(out.payment(&Value::Int(2)), Some(q(4)));
        // Tie between the two splits goes to the canonically smaller relation.
        let split = out.allocation.relation();
        assert_eq!(split.len(), 2);
        assert_eq!(
            out.allocation.bundle_of(&Value::Int(1)),
            goods(&["g1"])
        );
    }

    #[test]
    fn single_bidder_pays_nothing() {
        let inst = CombinatorialInstance::new(
            goods(&["a", "b"]),
            ints(&[4]),
            [(Value::Int(4), goods(&["a"]), q(3))],
        )
        .unwrap();
        let out = clear_vickrey(&inst).unwrap();
        assert_eq!(out.allocation.bundle_of(&Value::Int(4)), goods(&["a", "b"]));
        assert_eq!(out.payment(&Value::Int(4)), Some(q(0)));
    }

    #[test]
    fn zero_valuations_pay_zero() {
        let inst = CombinatorialInstance::new(goods(&["a", "b"]), ints(&[1, 2, 3]), []).unwrap();
        let out = clear_vickrey(&inst).unwrap();
        assert_eq!(out.welfare, q(0));
        for n in [1, 2, 3] {
            assert_eq!(out.payment(&Value::Int(n)), Some(q(0)));
        }
    }

    #[test]
    fn non_monotone_valuations_can_give_negative_payments() {
        // Without free disposal, removing bidder 1 forces bidder 2 to take a
        // bundle it values at 0.
        let inst = CombinatorialInstance::new(
            goods(&["g1", "g2"]),
            ints(&[1, 2]),
            [
                (Value::Int(1), goods(&["g1"]), q(10)),
                (Value::Int(2), goods(&["g2"]), q(10)),
            ],
        )
        .unwrap();
        let out = clear_vickrey(&inst).unwrap();
        assert_eq!(out.welfare, q(20));
        assert_eq!(out.payment(&Value::Int(1)), Some(q(-10)));
    }

    #[test]
    fn instance_validation() {
        let g = goods(&["a"]);
        let n = ints(&[1]);
        assert!(CombinatorialInstance::new(g.clone(), n.clone(), [(Value::Int(1), g.clone(), q(-1))]).is_err());
        assert!(CombinatorialInstance::new(g.clone(), n.clone(), [(Value::Int(2), g.clone(), q(1))]).is_err());
        assert!(CombinatorialInstance::new(g.clone(), n.clone(), [(Value::Int(1), goods(&["z"]), q(1))]).is_err());
        assert!(CombinatorialInstance::new(g.clone(), n.clone(), [(Value::Int(1), FinSet::empty(), q(1))]).is_err());
        assert!(CombinatorialInstance::new(FinSet::empty(), n.clone(), []).is_err());
        assert!(matches!(
            CombinatorialInstance::new(g, ints(&[1, 2, 3, 4, 5, 6, 7]), []),
            Err(Error::Cap { .. })
        ));
    }

    #[test]
    fn instance_value_round_trip() {
        let inst = worked_example();
        let back = CombinatorialInstance::from_values(
            &Value::Set(inst.goods().clone()),
            &Value::Set(inst.bidders().clone()),
            &inst.valuation_relation().to_value(),
        )
        .unwrap();
        assert_eq!(back, inst);
    }
}
