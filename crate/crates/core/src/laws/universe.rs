//! Finite families the laws range over. Atoms are the integers `0..n`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::auction::CombinatorialInstance;
use crate::enumerate::{all_partitions_list, subsets, ElementList};
use crate::quotient::from_blocks;
use crate::relation::Relation;
use crate::value::{FinSet, RawValue, Rational, Value};

pub fn atoms(n: usize) -> FinSet {
    atoms_from(0, n)
}

pub fn atoms_from(start: i64, n: usize) -> FinSet {
    (start..start + n as i64).map(Value::Int).collect()
}

/// Every relation between `dom` and `cod`.
pub fn all_relations(dom: &FinSet, cod: &FinSet) -> Vec<Relation> {
    subsets(&dom.product(cod))
        .into_iter()
        .map(|s| Relation::new(s).expect("subsets of a product are relations"))
        .collect()
}

/// Every right-unique relation between `dom` and `cod`.
pub fn partial_functions(dom: &FinSet, cod: &FinSet) -> Vec<Relation> {
    let mut out = vec![Relation::empty()];
    for x in dom.iter() {
        let mut next = Vec::with_capacity(out.len() * (cod.len() + 1));
        for r in &out {
            next.push(r.clone());
            for y in cod.iter() {
                next.push(r.single_paste(x.clone(), y.clone()));
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

/// Every function from `dom` to `cod`.
pub fn total_functions(dom: &FinSet, cod: &FinSet) -> Vec<Relation> {
    partial_functions(dom, cod)
        .into_iter()
        .filter(|f| f.domain() == *dom)
        .collect()
}

/// Every equivalence relation on `carrier`, one per partition.
pub fn equivalences(carrier: &FinSet) -> Vec<Relation> {
    all_partitions_list(&ElementList::from(carrier))
        .iter()
        .map(|p| from_blocks(p.blocks()))
        .collect()
}

pub fn random_relation(rng: &mut ChaCha8Rng, dom: &FinSet, cod: &FinSet) -> Relation {
    let pairs: Vec<Value> = dom
        .product(cod)
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect();
    Relation::new(FinSet::from_vec(pairs)).expect("pairs")
}

/// Every list of distinct atoms from `pool` with length at most `max_len`.
pub fn arrangements(pool: &FinSet, max_len: usize) -> Vec<Vec<Value>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Value>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for xs in &frontier {
            for v in pool.iter() {
                if !xs.contains(v) {
                    let mut ys = xs.clone();
                    ys.push(v.clone());
                    next.push(ys);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Every ordering of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<Value>> {
    arrangements(&atoms(n), n)
        .into_iter()
        .filter(|xs| xs.len() == n)
        .collect()
}

/// A raw value tree with duplicates, unreduced rationals and nesting.
pub fn random_raw(rng: &mut ChaCha8Rng, depth: u32) -> RawValue {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        return match rng.gen_range(0..4) {
            0 => RawValue::Int(rng.gen_range(-3..4)),
            1 => RawValue::Rat(rng.gen_range(-6..7), rng.gen_range(1..5) * if rng.gen_bool(0.2) { -1 } else { 1 }),
            2 => RawValue::Sym(String::from(["a", "b", "c"][rng.gen_range(0..3)])),
            _ => RawValue::Set(Vec::new()),
        };
    }
    if rng.gen_bool(0.4) {
        RawValue::Pair(
            Box::new(random_raw(rng, depth - 1)),
            Box::new(random_raw(rng, depth - 1)),
        )
    } else {
        let n = rng.gen_range(0..5);
        RawValue::Set((0..n).map(|_| random_raw(rng, depth - 1)).collect())
    }
}

const INCREMENTS: [(i64, i64); 5] = [(0, 1), (1, 2), (1, 1), (2, 1), (3, 1)];

/// Random instance with monotone valuations: every bundle is worth at least
/// as much as each of its subsets.
pub fn random_monotone_instance(
    rng: &mut ChaCha8Rng,
    max_goods: usize,
    max_bidders: usize,
) -> CombinatorialInstance {
    let goods = atoms(rng.gen_range(1..=max_goods));
    let bidders = atoms_from(1, rng.gen_range(1..=max_bidders));
    let mut bundles = subsets(&goods);
    bundles.sort_by_key(FinSet::len);
    let mut entries = Vec::new();
    for n in bidders.iter() {
        let mut table: Vec<(FinSet, Rational)> = Vec::new();
        for s in bundles.iter().filter(|s| !s.is_empty()) {
            let floor = s
                .iter()
                .map(|g| s.remove(g))
                .map(|sub| {
                    table
                        .iter()
                        .find(|(b, _)| *b == sub)
                        .map_or(Rational::from_integer(0), |(_, v)| *v)
                })
                .max()
                .unwrap_or_else(|| Rational::from_integer(0));
            let (num, den) = INCREMENTS[rng.gen_range(0..INCREMENTS.len())];
            table.push((s.clone(), floor + Rational::new(num, den)));
        }
        entries.extend(table.into_iter().map(|(s, v)| (n.clone(), s, v)));
    }
    CombinatorialInstance::new(goods, bidders, entries).expect("generated instance is valid")
}
