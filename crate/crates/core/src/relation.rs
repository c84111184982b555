//! Finite relations as canonical sets of pairs.
//!
//! A function is its graph: a right-unique [`Relation`]. Restriction
//! ([`Relation::outside`]) and override ([`Relation::paste`]) are plain set
//! operations, and evaluation ([`Relation::eval`]) is total, yielding
//! [`Value::Undefined`] where the image of a point is not a singleton.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::value::{FinSet, Value};

/// A finite set whose every element is a pair.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Relation(FinSet);

impl Relation {
    pub fn empty() -> Self {
        Relation(FinSet::empty())
    }

    /// Checks that every member is a pair.
    pub fn new(set: FinSet) -> Result<Self> {
        for v in set.iter() {
            v.as_pair()?;
        }
        Ok(Relation(set))
    }

    pub fn from_pairs<I: IntoIterator<Item = (Value, Value)>>(pairs: I) -> Self {
        Relation(pairs.into_iter().map(|(x, y)| Value::pair(x, y)).collect())
    }

    fn from_sorted_pairs(items: Vec<Value>) -> Self {
        Relation(FinSet::from_sorted_unchecked(items))
    }

    pub fn as_set(&self) -> &FinSet {
        &self.0
    }

    pub fn to_value(&self) -> Value {
        Value::Set(self.0.clone())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Value, &Value)> + '_ {
        self.0.iter().map(|p| match p {
            Value::Pair(p) => (&p.0, &p.1),
            _ => unreachable!("relation members are pairs"),
        })
    }

    pub fn contains(&self, x: &Value, y: &Value) -> bool {
        self.0.contains(&Value::pair(x.clone(), y.clone()))
    }

    /// The members with first component `x`, a contiguous run in canonical order.
    fn run_of(&self, x: &Value) -> &[Value] {
        fn first(p: &Value) -> &Value {
            match p {
                Value::Pair(p) => &p.0,
                _ => unreachable!("relation members are pairs"),
            }
        }
        let items = self.0.as_slice();
        let lo = items.partition_point(|p| first(p) < x);
        let hi = lo + items[lo..].partition_point(|p| first(p) == x);
        &items[lo..hi]
    }

    pub fn domain(&self) -> FinSet {
        // First components arrive sorted; dedup consecutive runs.
        let mut out: Vec<Value> = Vec::new();
        for (x, _) in self.pairs() {
            if out.last() != Some(x) {
                out.push(x.clone());
            }
        }
        FinSet::from_sorted_unchecked(out)
    }

    pub fn range(&self) -> FinSet {
        self.pairs().map(|(_, y)| y.clone()).collect()
    }

    pub fn endpoints(&self) -> (FinSet, FinSet) {
        (self.domain(), self.range())
    }

    /// `R``{x}`.
    pub fn image_of(&self, x: &Value) -> FinSet {
        FinSet::from_sorted_unchecked(
            self.run_of(x)
                .iter()
                .map(|p| p.as_pair().map(|(_, y)| y.clone()).unwrap())
                .collect(),
        )
    }

    /// `R``X`.
    pub fn image(&self, xs: &FinSet) -> FinSet {
        let mut out = Vec::new();
        for x in xs.iter() {
            out.extend(self.run_of(x).iter().map(|p| p.as_pair().unwrap().1.clone()));
        }
        FinSet::from_vec(out)
    }

    pub fn converse(&self) -> Relation {
        Relation::from_pairs(self.pairs().map(|(x, y)| (y.clone(), x.clone())))
    }

    /// Left-to-right composition: `{(x, z) | (x, y) ∈ self, (y, z) ∈ other}`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let mut out = Vec::new();
        for (x, y) in self.pairs() {
            for p in other.run_of(y) {
                let (_, z) = p.as_pair().unwrap();
                out.push(Value::pair(x.clone(), z.clone()));
            }
        }
        Relation(FinSet::from_vec(out))
    }

    /// `R - (X × Range R)`: drops every pair whose first component is in `xs`.
    pub fn outside(&self, xs: &FinSet) -> Relation {
        Relation::from_sorted_pairs(
            self.0
                .iter()
                .filter(|p| !xs.contains(p.as_pair().unwrap().0))
                .cloned()
                .collect(),
        )
    }

    /// `b -- i`.
    pub fn single_outside(&self, x: &Value) -> Relation {
        self.outside(&FinSet::singleton(x.clone()))
    }

    /// `P +* Q = (P outside Domain Q) ∪ Q`.
    pub fn paste(&self, other: &Relation) -> Relation {
        Relation(self.outside(&other.domain()).0.union(&other.0))
    }

    /// `F +< (x, y)`: pointwise update.
    pub fn single_paste(&self, x: Value, y: Value) -> Relation {
        self.paste(&Relation::from_pairs([(x, y)]))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation(self.0.union(&other.0))
    }

    pub fn restrict(&self, xs: &FinSet) -> Relation {
        Relation::from_sorted_pairs(
            self.0
                .iter()
                .filter(|p| xs.contains(p.as_pair().unwrap().0))
                .cloned()
                .collect(),
        )
    }

    /// Right-uniqueness via the pair scan: no `x` has two distinct images.
    pub fn runiq(&self) -> bool {
        runiq_basic(self)
    }

    /// `R ,, a = the_elem (R``{a})`.
    pub fn eval(&self, a: &Value) -> Value {
        self.image_of(a).the_elem()
    }

    /// `⋃ (R``{x})`; the empty set off the domain.
    pub fn eval2(&self, x: &Value) -> Result<Value> {
        Ok(Value::Set(self.image_of(x).big_union()?))
    }
}

impl TryFrom<Value> for Relation {
    type Error = Error;

    fn try_from(v: Value) -> Result<Self> {
        match v {
            Value::Set(s) => Relation::new(s),
            other => Err(Error::Type {
                expected: "relation",
                found: other.kind(),
            }),
        }
    }
}

impl TryFrom<&Value> for Relation {
    type Error = Error;

    fn try_from(v: &Value) -> Result<Self> {
        Relation::try_from(v.clone())
    }
}

impl From<Relation> for Value {
    fn from(r: Relation) -> Self {
        Value::Set(r.0)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// `trivial x = (x ⊆ {the_elem x})`: at most one element.
pub fn trivial(x: &FinSet) -> bool {
    x.is_subset(&FinSet::singleton(x.the_elem()))
}

/// `graph X f = {(x, f x) | x ∈ X}`; `f` must be defined on all of `xs`.
pub fn graph<F>(xs: &FinSet, mut f: F) -> Result<Relation>
where
    F: FnMut(&Value) -> Option<Value>,
{
    let mut out = Vec::with_capacity(xs.len());
    for x in xs.iter() {
        let y = f(x).ok_or_else(|| Error::domain(format!("graph: function undefined at {x}")))?;
        out.push(Value::pair(x.clone(), y));
    }
    Ok(Relation::from_sorted_pairs(out))
}

/// `λx. R ,, x`.
pub fn to_function(r: &Relation) -> impl Fn(&Value) -> Value + '_ {
    move |x| r.eval(x)
}

fn argmax_values(f: &Relation, xs: &[Value]) -> Result<Vec<crate::value::Rational>> {
    if xs.is_empty() {
        return Err(Error::domain("arg_max over the empty set"));
    }
    if !f.runiq() {
        return Err(Error::precondition("arg_max needs a right-unique relation"));
    }
    xs.iter()
        .map(|x| match f.eval(x) {
            Value::Undefined => Err(Error::domain(format!("arg_max: {x} not in the domain"))),
            y => y.to_rational(),
        })
        .collect()
}

/// `arg_max f A = {x ∈ A. f x = Max (f`A)}`, by comprehension.
pub fn arg_max_set(f: &Relation, a: &FinSet) -> Result<FinSet> {
    let values = argmax_values(f, a.as_slice())?;
    let best = values.iter().max().copied().expect("nonempty");
    Ok(FinSet::from_sorted_unchecked(
        a.iter()
            .zip(&values)
            .filter(|(_, v)| **v == best)
            .map(|(x, _)| x.clone())
            .collect(),
    ))
}

/// Recursive arg_max over a list of distinct points: compare the head with
/// the maximizers of the tail.
pub fn arg_max_rec(f: &Relation, xs: &[Value]) -> Result<FinSet> {
    let values = argmax_values(f, xs)?;
    fn go(xs: &[Value], vs: &[crate::value::Rational]) -> (FinSet, crate::value::Rational) {
        match xs {
            [x] => (FinSet::singleton(x.clone()), vs[0]),
            [x, rest @ ..] => {
                let (best, m) = go(rest, &vs[1..]);
                match vs[0].cmp(&m) {
                    core::cmp::Ordering::Greater => (FinSet::singleton(x.clone()), vs[0]),
                    core::cmp::Ordering::Equal => (best.insert(x.clone()), m),
                    core::cmp::Ordering::Less => (best, m),
                }
            }
            [] => unreachable!("checked nonempty"),
        }
    }
    Ok(go(xs, &values).0)
}

// The equivalent formulations of right-uniqueness. They are deliberately
// written independently so the law suite can compare them.

/// `∀X. trivial X → trivial (R``X)`, with X ranging over every subset of
/// `universe`. Exact when `universe ⊇ Domain R`.
pub fn runiq_definition(r: &Relation, universe: &FinSet) -> bool {
    crate::enumerate::subsets(universe)
        .iter()
        .filter(|x| trivial(x))
        .all(|x| trivial(&r.image(x)))
}

/// `runiq P = inj_on fst P`.
pub fn runiq_inj_on_fst(r: &Relation) -> bool {
    let pairs: Vec<_> = r.pairs().collect();
    pairs.iter().enumerate().all(|(k, p)| {
        pairs[k + 1..]
            .iter()
            .all(|q| p.0 != q.0 || (p.0 == q.0 && p.1 == q.1))
    })
}

/// `∀x. trivial (R``{x})`.
pub fn runiq_alt(r: &Relation) -> bool {
    r.domain().iter().all(|x| trivial(&r.image_of(x)))
}

/// `∀x y y'. (x, y) ∈ R ∧ (x, y') ∈ R ⟶ y = y'`.
pub fn runiq_basic(r: &Relation) -> bool {
    let mut prev: Option<&Value> = None;
    for (x, _) in r.pairs() {
        if prev == Some(x) {
            return false;
        }
        prev = Some(x);
    }
    true
}

/// `∀x. R``{x} ⊆ {R ,, x}`.
pub fn runiq_wrt_eval_rel(r: &Relation) -> bool {
    r.domain()
        .iter()
        .all(|x| r.image_of(x).is_subset(&FinSet::singleton(r.eval(x))))
}

/// `∀x ∈ Domain R. R``{x} = {R ,, x}`.
pub fn runiq_wrt_eval_rel_prime(r: &Relation) -> bool {
    r.domain()
        .iter()
        .all(|x| r.image_of(x) == FinSet::singleton(r.eval(x)))
}

/// `∀a ∈ Domain R. ∃! b. (a, b) ∈ R`.
pub fn runiq_wrt_ex1(r: &Relation) -> bool {
    r.domain()
        .iter()
        .all(|a| r.pairs().filter(|(x, _)| *x == a).count() == 1)
}

/// Definite description `THE b. (a, b) ∈ R`, `Undefined` unless unique.
pub fn the_image(r: &Relation, a: &Value) -> Value {
    let mut found = r.pairs().filter(|(x, _)| *x == a).map(|(_, y)| y);
    match (found.next(), found.next()) {
        (Some(b), None) => b.clone(),
        _ => Value::Undefined,
    }
}

/// `∀a b. (a, b) ∈ R ⟶ b = (THE b. (a, b) ∈ R)`.
pub fn runiq_wrt_the(r: &Relation) -> bool {
    r.pairs().all(|(a, b)| *b == the_image(r, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rel(pairs: &[(i64, i64)]) -> Relation {
        Relation::from_pairs(pairs.iter().map(|&(x, y)| (Value::Int(x), Value::Int(y))))
    }

    fn ints(xs: &[i64]) -> FinSet {
        xs.iter().copied().map(Value::Int).collect()
    }

    fn example() -> Relation {
        rel(&[(0, 10), (1, 11), (1, 12)])
    }

    #[test]
    fn endpoints_of_relations() {
        assert_eq!(rel(&[(0, 10), (1, 11)]).endpoints(), (ints(&[0, 1]), ints(&[10, 11])));
        assert_eq!(Relation::empty().endpoints(), (ints(&[]), ints(&[])));
        assert_eq!(rel(&[(1, 1), (1, 2)]).endpoints(), (ints(&[1]), ints(&[1, 2])));
    }

    #[test]
    fn image_cases() {
        assert_eq!(example().image(&ints(&[1])), ints(&[11, 12]));
        assert_eq!(example().image(&ints(&[])), ints(&[]));
        assert_eq!(rel(&[(0, 10)]).image(&ints(&[5])), ints(&[]));
    }

    #[test]
    fn converse_and_compose() {
        assert_eq!(rel(&[(0, 10)]).converse(), rel(&[(10, 0)]));
        assert_eq!(example().converse().converse(), example());
        assert_eq!(Relation::empty().converse(), Relation::empty());
        assert_eq!(rel(&[(1, 2)]).compose(&rel(&[(2, 3)])), rel(&[(1, 3)]));
        assert_eq!(example().compose(&Relation::empty()), Relation::empty());
        assert_eq!(rel(&[(1, 2), (1, 3)]).compose(&rel(&[(3, 9)])), rel(&[(1, 9)]));
    }

    #[test]
    fn outside_cases() {
        assert_eq!(rel(&[(1, 10), (2, 20)]).outside(&ints(&[1])), rel(&[(2, 20)]));
        assert_eq!(example().outside(&ints(&[])), example());
        assert_eq!(rel(&[(1, 10), (2, 10)]).outside(&ints(&[1, 2])), Relation::empty());
        assert_eq!(example().single_outside(&Value::Int(1)), rel(&[(0, 10)]));
    }

    #[test]
    fn outside_matches_its_defining_difference() {
        let r = example();
        let xs = ints(&[1, 7]);
        let by_definition = r.as_set().difference(&xs.product(&r.range()));
        assert_eq!(r.outside(&xs).as_set(), &by_definition);
    }

    #[test]
    fn paste_cases() {
        assert_eq!(
            rel(&[(1, 10), (2, 20)]).paste(&rel(&[(2, 21), (3, 30)])),
            rel(&[(1, 10), (2, 21), (3, 30)])
        );
        assert_eq!(example().paste(&Relation::empty()), example());
        let updated = example().single_paste(Value::Int(1), Value::Int(13));
        assert_eq!(updated.eval(&Value::Int(1)), Value::Int(13));
    }

    #[test]
    fn trivial_sets() {
        assert!(trivial(&ints(&[])));
        assert!(trivial(&ints(&[5])));
        assert!(!trivial(&ints(&[1, 2])));
    }

    #[test]
    fn runiq_cases() {
        assert!(rel(&[(0, 10), (1, 11)]).runiq());
        assert!(!example().runiq());
        assert!(Relation::empty().runiq());
    }

    #[test]
    fn eval_cases() {
        assert_eq!(example().eval(&Value::Int(0)), Value::Int(10));
        assert_eq!(example().eval(&Value::Int(1)), Value::Undefined);
        assert_eq!(Relation::empty().eval(&Value::Int(0)), Value::Undefined);
    }

    #[test]
    fn eval2_cases() {
        let s78 = Value::Set(ints(&[7, 8]));
        let f = Relation::from_pairs([(Value::Int(1), s78.clone())]);
        assert_eq!(f.eval2(&Value::Int(1)).unwrap(), s78);
        let g = Relation::from_pairs([(Value::Int(1), Value::Set(ints(&[7])))]);
        assert_eq!(g.eval2(&Value::Int(2)).unwrap(), Value::empty_set());
        let h = Relation::from_pairs([
            (Value::Int(1), Value::Set(ints(&[7]))),
            (Value::Int(1), Value::Set(ints(&[8]))),
        ]);
        assert_eq!(h.eval2(&Value::Int(1)).unwrap(), s78);
        assert!(matches!(example().eval2(&Value::Int(0)), Err(Error::Type { .. })));
    }

    #[test]
    fn graph_cases() {
        let g = graph(&ints(&[0, 1, 2]), |_| Some(Value::Int(10))).unwrap();
        assert_eq!(g.eval(&Value::Int(1)), Value::Int(10));
        assert_eq!(graph(&ints(&[]), |_| None).unwrap(), Relation::empty());
        assert_eq!(
            graph(&ints(&[1, 2]), |x| Some(x.clone())).unwrap(),
            rel(&[(1, 1), (2, 2)])
        );
        assert!(matches!(graph(&ints(&[1]), |_| None), Err(Error::Domain(_))));
        let f = to_function(&g);
        assert_eq!(f(&Value::Int(2)), Value::Int(10));
        assert_eq!(f(&Value::Int(3)), Value::Undefined);
    }

    #[test]
    fn arg_max_cases() {
        let f = rel(&[(1, 5), (2, 9), (3, 9)]);
        assert_eq!(arg_max_set(&f, &ints(&[1, 2, 3])).unwrap(), ints(&[2, 3]));
        let c = rel(&[(1, 4), (2, 4), (3, 4)]);
        assert_eq!(arg_max_set(&c, &ints(&[1, 2, 3])).unwrap(), ints(&[1, 2, 3]));
        assert_eq!(arg_max_set(&f, &ints(&[1])).unwrap(), ints(&[1]));
        assert!(matches!(arg_max_set(&f, &ints(&[])), Err(Error::Domain(_))));
        let xs = vec![Value::Int(3), Value::Int(1), Value::Int(2)];
        assert_eq!(arg_max_rec(&f, &xs).unwrap(), ints(&[2, 3]));
        assert!(matches!(arg_max_set(&example(), &ints(&[0])), Err(Error::Precondition(_))));
    }

    #[test]
    fn runiq_formulations_on_examples() {
        for r in [example(), rel(&[(0, 10), (1, 11)]), Relation::empty()] {
            let expected = r.runiq();
            let universe = r.domain().insert(Value::Int(99));
            assert_eq!(runiq_definition(&r, &universe), expected);
            assert_eq!(runiq_inj_on_fst(&r), expected);
            assert_eq!(runiq_alt(&r), expected);
            assert_eq!(runiq_wrt_eval_rel(&r), expected);
            assert_eq!(runiq_wrt_eval_rel_prime(&r), expected);
            assert_eq!(runiq_wrt_ex1(&r), expected);
            assert_eq!(runiq_wrt_the(&r), expected);
        }
    }

    #[test]
    fn non_pair_members_rejected() {
        assert!(Relation::new(ints(&[1])).is_err());
        assert!(Relation::try_from(Value::Int(3)).is_err());
    }
}
