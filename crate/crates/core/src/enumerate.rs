//! Injections and partitions, each defined twice.
//!
//! The constructive side ([`injections_alg`], [`all_partitions_list`]) works
//! on lists and recurses on the elements. The axiomatic side
//! ([`injections_oracle`], [`all_partitions_oracle`]) filters candidate sets
//! by the defining predicate and is only meant as a reference for small
//! inputs.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::value::{FinSet, Value};

/// Largest set whose partitions the oracle will enumerate.
pub const PARTITION_ORACLE_CAP: usize = 6;
/// Largest set for the unpruned powerset-of-powerset filter.
pub const PARTITION_LITERAL_CAP: usize = 4;
/// Largest `|X × Y|` for the injection oracle.
pub const INJECTION_ORACLE_CAP: usize = 16;
/// Largest set handed to [`subsets`].
pub const SUBSETS_CAP: usize = 20;

/// A list of distinct values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementList(Vec<Value>);

impl ElementList {
    pub fn new(elems: Vec<Value>) -> Result<Self> {
        for (k, v) in elems.iter().enumerate() {
            if elems[..k].contains(v) {
                return Err(Error::precondition(format!("duplicate element {v}")));
            }
        }
        Ok(ElementList(elems))
    }

    pub fn as_slice(&self) -> &[Value] {
        &self.0
    }

    pub fn to_set(&self) -> FinSet {
        self.0.iter().cloned().collect()
    }
}

impl From<&FinSet> for ElementList {
    fn from(s: &FinSet) -> Self {
        ElementList(s.iter().cloned().collect())
    }
}

/// A partition kept as an ordered list of blocks.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionList(Vec<FinSet>);

impl PartitionList {
    /// Checks that blocks are nonempty and pairwise disjoint.
    pub fn new(blocks: Vec<FinSet>) -> Result<Self> {
        for (k, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::precondition("empty block in partition"));
            }
            if blocks[..k].iter().any(|c| !c.is_disjoint(b)) {
                return Err(Error::precondition("overlapping blocks in partition"));
            }
        }
        Ok(PartitionList(blocks))
    }

    pub fn blocks(&self) -> &[FinSet] {
        &self.0
    }

    /// `set` applied to the block list: the partition as a set of sets.
    pub fn to_set(&self) -> FinSet {
        self.0.iter().cloned().map(Value::Set).collect()
    }
}

/// Every subset of `xs`, in canonical order.
pub fn subsets(xs: &FinSet) -> Vec<FinSet> {
    assert!(xs.len() <= SUBSETS_CAP, "subsets: set too large");
    let items = xs.as_slice();
    let mut out: Vec<FinSet> = (0u32..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask & (1 << k) != 0)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect();
    out.sort_unstable();
    out
}

/// The powerset as a set value.
pub fn all_subsets(xs: &FinSet) -> Result<FinSet> {
    Error::check_cap("all_subsets size", SUBSETS_CAP, xs.len())?;
    Ok(subsets(xs).into_iter().map(Value::Set).collect())
}

/// `{R. Domain R = X ∧ Range R ⊆ Y ∧ runiq R ∧ runiq (R¯)}`, by filtering
/// every subset of `X × Y`. Returned in canonical order.
pub fn injections_oracle(xs: &FinSet, ys: &FinSet) -> Result<Vec<Relation>> {
    Error::check_cap("injection oracle |X×Y|", INJECTION_ORACLE_CAP, xs.len() * ys.len())?;
    Ok(subsets(&xs.product(ys))
        .into_iter()
        .map(|s| Relation::new(s).expect("subsets of a product are relations"))
        .filter(|r| {
            r.domain() == *xs && r.range().is_subset(ys) && r.runiq() && r.converse().runiq()
        })
        .collect())
}

/// All injections from the listed elements into `ys`, recursing on the list:
/// each injection of the tail is extended by the head, mapped to every unused
/// `y` in canonical order.
pub fn injections_alg(xs: &ElementList, ys: &FinSet) -> Vec<Relation> {
    fn go(xs: &[Value], ys: &FinSet) -> Vec<Relation> {
        match xs.split_first() {
            None => vec![Relation::empty()],
            Some((x, rest)) => go(rest, ys)
                .iter()
                .flat_map(|r| {
                    ys.difference(&r.range())
                        .iter()
                        .map(|y| r.single_paste(x.clone(), y.clone()))
                        .collect::<Vec<_>>()
                })
                .collect(),
        }
    }
    go(xs.as_slice(), ys)
}

/// `(S ∪ {new_el}) # remove1 S Sets`.
pub fn insert_into_member_list(new_el: &Value, sets: &[FinSet], s: &FinSet) -> Result<Vec<FinSet>> {
    let at = sets
        .iter()
        .position(|b| b == s)
        .ok_or_else(|| Error::precondition(format!("{s} is not a member of the list")))?;
    let mut out = Vec::with_capacity(sets.len());
    out.push(s.insert(new_el.clone()));
    out.extend(sets[..at].iter().cloned());
    out.extend(sets[at + 1..].iter().cloned());
    Ok(out)
}

/// `({new_el} # P) # map (insert_into_member_list new_el P) P`.
pub fn coarser_partitions_with_list(new_el: &Value, p: &[FinSet]) -> Result<Vec<Vec<FinSet>>> {
    if p.iter().any(|b| b.contains(new_el)) {
        return Err(Error::precondition(format!("{new_el} already occurs in the partition")));
    }
    let mut out = Vec::with_capacity(p.len() + 1);
    let mut fresh = Vec::with_capacity(p.len() + 1);
    fresh.push(FinSet::singleton(new_el.clone()));
    fresh.extend(p.iter().cloned());
    out.push(fresh);
    for s in p {
        out.push(insert_into_member_list(new_el, p, s)?);
    }
    Ok(out)
}

/// `concat (map (coarser_partitions_with_list elem) Ps)`.
pub fn all_coarser_partitions_with_list(elem: &Value, ps: &[Vec<FinSet>]) -> Result<Vec<Vec<FinSet>>> {
    let mut out = Vec::new();
    for p in ps {
        out.extend(coarser_partitions_with_list(elem, p)?);
    }
    Ok(out)
}

/// Every partition of the listed elements, each exactly once.
pub fn all_partitions_list(xs: &ElementList) -> Vec<PartitionList> {
    fn go(xs: &[Value]) -> Vec<Vec<FinSet>> {
        match xs.split_first() {
            None => vec![Vec::new()],
            Some((e, rest)) => all_coarser_partitions_with_list(e, &go(rest))
                .expect("elements are distinct, so the head is never already placed"),
        }
    }
    go(xs.as_slice()).into_iter().map(PartitionList).collect()
}

/// `∀X ∈ P. ∀Y ∈ P. (X ∩ Y ≠ {} ↔ X = Y)`. Families with non-set members
/// are not partitions.
pub fn is_partition(p: &FinSet) -> bool {
    let mut blocks = Vec::with_capacity(p.len());
    for v in p.iter() {
        match v.as_set() {
            Ok(s) => blocks.push(s),
            Err(_) => return false,
        }
    }
    blocks
        .iter()
        .all(|x| blocks.iter().all(|y| !x.is_disjoint(y) == (x == y)))
}

/// `⋃ P = A ∧ is_partition P`.
pub fn is_partition_of(p: &FinSet, a: &FinSet) -> bool {
    is_partition(p) && p.big_union().is_ok_and(|u| u == *a)
}

/// `{P. P partitions A}`.
///
/// Walks the families of subsets of `A` by including or excluding each
/// subset in canonical order. A branch stops as soon as its partial family
/// already breaks the `is_partition` biconditional; since every subfamily of
/// a partition is again a partition, no partition is lost. Completed families
/// are tested with [`is_partition_of`] as written.
pub fn all_partitions_oracle(a: &FinSet) -> Result<Vec<FinSet>> {
    Error::check_cap("partition oracle size", PARTITION_ORACLE_CAP, a.len())?;
    let candidates = subsets(a);
    let mut out = Vec::new();
    let mut chosen: Vec<FinSet> = Vec::new();

    fn still_partition(chosen: &[FinSet], c: &FinSet) -> bool {
        let self_ok = !c.is_disjoint(c);
        self_ok && chosen.iter().all(|x| !x.is_disjoint(c) == (x == c))
    }

    fn walk(
        k: usize,
        candidates: &[FinSet],
        a: &FinSet,
        chosen: &mut Vec<FinSet>,
        out: &mut Vec<FinSet>,
    ) {
        if k == candidates.len() {
            let family: FinSet = chosen.iter().cloned().map(Value::Set).collect();
            if is_partition_of(&family, a) {
                out.push(family);
            }
            return;
        }
        walk(k + 1, candidates, a, chosen, out);
        if still_partition(chosen, &candidates[k]) {
            chosen.push(candidates[k].clone());
            walk(k + 1, candidates, a, chosen, out);
            chosen.pop();
        }
    }

    walk(0, &candidates, a, &mut chosen, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// The unpruned filter of `all_subsets (all_subsets A)`; tiny inputs only.
pub fn all_partitions_literal(a: &FinSet) -> Result<Vec<FinSet>> {
    Error::check_cap("literal partition filter size", PARTITION_LITERAL_CAP, a.len())?;
    let power: FinSet = subsets(a).into_iter().map(Value::Set).collect();
    let mut out: Vec<FinSet> = subsets(&power)
        .into_iter()
        .filter(|p| is_partition_of(p, a))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// `|Y|! / (|Y| - |X|)!`, zero when `|X| > |Y|`.
pub fn falling_factorial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        (n - k + 1..=n).product()
    }
}
