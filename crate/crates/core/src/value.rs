//! Hereditarily finite values.
//!
//! A [`Value`] is an atom (integer, exact rational or symbol), an ordered
//! pair, or a finite set of values. Sets are kept canonical: their elements
//! are strictly increasing under the total order on values, so structural
//! equality is set equality.
//!
//! The order puts numbers first (integers and rationals are one kind and are
//! compared numerically), then symbols, then the `Undefined` marker, then
//! pairs, then sets. Pairs and sets compare lexicographically.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(i64),
    /// Always in lowest terms with denominator at least 2.
    Rat(Rational),
    Sym(Arc<str>),
    /// Result of `the_elem` on a set that is not a singleton.
    Undefined,
    Pair(Arc<(Value, Value)>),
    Set(FinSet),
}

/// A canonical finite set: sorted, duplicate free.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet(Arc<[Value]>);

/// An uncanonicalized value tree, as produced by parsers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RawValue {
    Int(i64),
    Rat(i64, i64),
    Sym(String),
    Undefined,
    Pair(alloc::boxed::Box<RawValue>, alloc::boxed::Box<RawValue>),
    Set(Vec<RawValue>),
}

impl Value {
    pub fn int(n: i64) -> Self {
        Value::Int(n)
    }

    pub fn sym(s: &str) -> Self {
        Value::Sym(Arc::from(s))
    }

    /// Numeric value in canonical form; denominator 1 collapses to `Int`.
    pub fn number(r: Rational) -> Self {
        if *r.denom() == 1 {
            Value::Int(*r.numer())
        } else {
            Value::Rat(r)
        }
    }

    pub fn rat(numer: i64, denom: i64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Value::number(Ratio::new(numer, denom)))
    }

    pub fn pair(first: Value, second: Value) -> Self {
        Value::Pair(Arc::new((first, second)))
    }

    pub fn set<I: IntoIterator<Item = Value>>(items: I) -> Self {
        Value::Set(items.into_iter().collect())
    }

    pub fn empty_set() -> Self {
        Value::Set(FinSet::empty())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Int(_) => "integer",
            Value::Rat(_) => "rational",
            Value::Sym(_) => "symbol",
            Value::Undefined => "undefined",
            Value::Pair(_) => "pair",
            Value::Set(_) => "set",
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Int(_) | Value::Rat(_) => 0,
            Value::Sym(_) => 1,
            Value::Undefined => 2,
            Value::Pair(_) => 3,
            Value::Set(_) => 4,
        }
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, Value::Undefined)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Value::Int(n) => Some(Rational::from_integer(*n)),
            Value::Rat(r) => Some(*r),
            _ => None,
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        self.as_rational().ok_or(Error::Type {
            expected: "number",
            found: self.kind(),
        })
    }

    pub fn as_set(&self) -> Result<&FinSet> {
        match self {
            Value::Set(s) => Ok(s),
            other => Err(Error::Type {
                expected: "set",
                found: other.kind(),
            }),
        }
    }

    pub fn as_pair(&self) -> Result<(&Value, &Value)> {
        match self {
            Value::Pair(p) => Ok((&p.0, &p.1)),
            other => Err(Error::Type {
                expected: "pair",
                found: other.kind(),
            }),
        }
    }

    /// Inverse of [`canonicalize`] on canonical values.
    pub fn to_raw(&self) -> RawValue {
        match self {
            Value::Int(n) => RawValue::Int(*n),
            Value::Rat(r) => RawValue::Rat(*r.numer(), *r.denom()),
            Value::Sym(s) => RawValue::Sym(String::from(&**s)),
            Value::Undefined => RawValue::Undefined,
            Value::Pair(p) => RawValue::Pair(
                alloc::boxed::Box::new(p.0.to_raw()),
                alloc::boxed::Box::new(p.1.to_raw()),
            ),
            Value::Set(s) => RawValue::Set(s.iter().map(Value::to_raw).collect()),
        }
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<FinSet> for Value {
    fn from(s: FinSet) -> Self {
        Value::Set(s)
    }
}

impl Ord for Value {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Int(_) | Value::Rat(_), Value::Int(_) | Value::Rat(_)) => {
                // Ratio's Ord compares exactly without overflowing.
                self.as_rational().cmp(&other.as_rational())
            }
            (Value::Sym(a), Value::Sym(b)) => a.cmp(b),
            (Value::Undefined, Value::Undefined) => Ordering::Equal,
            (Value::Pair(a), Value::Pair(b)) => a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)),
            (Value::Set(a), Value::Set(b)) => a.as_slice().cmp(b.as_slice()),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for Value {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Turns a raw tree into its unique canonical representative.
pub fn canonicalize(raw: &RawValue) -> Result<Value> {
    Ok(match raw {
        RawValue::Int(n) => Value::Int(*n),
        RawValue::Rat(n, d) => Value::rat(*n, *d)?,
        RawValue::Sym(s) => Value::sym(s),
        RawValue::Undefined => Value::Undefined,
        RawValue::Pair(a, b) => Value::pair(canonicalize(a)?, canonicalize(b)?),
        RawValue::Set(items) => Value::Set(FinSet::from_vec(
            items.iter().map(canonicalize).collect::<Result<Vec<_>>>()?,
        )),
    })
}

impl FinSet {
    pub fn empty() -> Self {
        FinSet(Arc::from(Vec::new()))
    }

    /// Sorts and deduplicates.
    pub fn from_vec(mut items: Vec<Value>) -> Self {
        items.sort_unstable();
        items.dedup();
        FinSet(Arc::from(items))
    }

    /// Caller guarantees `items` is strictly increasing.
    pub(crate) fn from_sorted_unchecked(items: Vec<Value>) -> Self {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        FinSet(Arc::from(items))
    }

    pub fn singleton(v: Value) -> Self {
        FinSet(Arc::from(alloc::vec![v]))
    }

    pub fn as_slice(&self) -> &[Value] {
        &self.0
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Value> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: &Value) -> bool {
        self.0.binary_search(v).is_ok()
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.len() <= other.len() && self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &FinSet) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        !small.iter().any(|v| large.contains(v))
    }

    pub fn insert(&self, v: Value) -> FinSet {
        match self.0.binary_search(&v) {
            Ok(_) => self.clone(),
            Err(at) => {
                let mut items = self.0.to_vec();
                items.insert(at, v);
                FinSet(Arc::from(items))
            }
        }
    }

    pub fn remove(&self, v: &Value) -> FinSet {
        match self.0.binary_search(v) {
            Ok(at) => {
                let mut items = self.0.to_vec();
                items.remove(at);
                FinSet(Arc::from(items))
            }
            Err(_) => self.clone(),
        }
    }

    pub fn union(&self, other: &FinSet) -> FinSet {
        let (a, b) = (self.as_slice(), other.as_slice());
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i].clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        FinSet::from_sorted_unchecked(out)
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        FinSet::from_sorted_unchecked(
            self.iter().filter(|v| other.contains(v)).cloned().collect(),
        )
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        FinSet::from_sorted_unchecked(
            self.iter().filter(|v| !other.contains(v)).cloned().collect(),
        )
    }

    /// `{(x, y) | x ∈ self, y ∈ other}`; already sorted by construction.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for x in self.iter() {
            for y in other.iter() {
                out.push(Value::pair(x.clone(), y.clone()));
            }
        }
        FinSet::from_sorted_unchecked(out)
    }

    /// The unique element of a singleton, `Undefined` otherwise.
    pub fn the_elem(&self) -> Value {
        match &*self.0 {
            [only] => only.clone(),
            _ => Value::Undefined,
        }
    }

    /// Union of a set of sets.
    pub fn big_union(&self) -> Result<FinSet> {
        let mut out = Vec::new();
        for v in self.iter() {
            out.extend(v.as_set()?.iter().cloned());
        }
        Ok(FinSet::from_vec(out))
    }

    pub fn min_of(&self) -> Result<Value> {
        self.numeric_extreme("min_of", Ordering::Less)
    }

    pub fn max_of(&self) -> Result<Value> {
        self.numeric_extreme("max_of", Ordering::Greater)
    }

    fn numeric_extreme(&self, op: &str, want: Ordering) -> Result<Value> {
        let mut best: Option<Rational> = None;
        for v in self.iter() {
            let r = v.to_rational()?;
            if best.is_none_or(|b| r.cmp(&b) == want) {
                best = Some(r);
            }
        }
        best.map(Value::number)
            .ok_or_else(|| Error::domain(alloc::format!("{op} of the empty set")))
    }
}

impl Default for FinSet {
    fn default() -> Self {
        FinSet::empty()
    }
}

impl FromIterator<Value> for FinSet {
    fn from_iter<I: IntoIterator<Item = Value>>(iter: I) -> Self {
        FinSet::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Value;
    type IntoIter = core::slice::Iter<'a, Value>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl Ord for FinSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_slice().cmp(other.as_slice())
    }
}

impl PartialOrd for FinSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersection,
    Difference,
    Product,
}

/// Binary set operation on values; non-set arguments are a type error.
pub fn set_op(op: SetOp, a: &Value, b: &Value) -> Result<Value> {
    let (a, b) = (a.as_set()?, b.as_set()?);
    Ok(Value::Set(match op {
        SetOp::Union => a.union(b),
        SetOp::Intersection => a.intersection(b),
        SetOp::Difference => a.difference(b),
        SetOp::Product => a.product(b),
    }))
}

/// Checked exact arithmetic on rationals.
pub fn add(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

pub fn sub(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

pub fn mul(a: Rational, b: Rational) -> Result<Rational> {
    a.checked_mul(&b).ok_or(Error::Overflow)
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !(*r < Rational::zero())
}

fn is_plain_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "undefined"
}

/// Mathematical notation: `{(0, 10), (1, 11)}`, `1/2`, `a`, `"two words"`.
impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Value::Sym(s) if is_plain_symbol(s) => f.write_str(s),
            Value::Sym(s) => write!(f, "{:?}", &**s),
            Value::Undefined => f.write_str("undefined"),
            Value::Pair(p) => write!(f, "({}, {})", p.0, p.1),
            Value::Set(s) => fmt::Display::fmt(s, f),
        }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::boxed::Box;
    use alloc::vec;

    fn ints(xs: &[i64]) -> FinSet {
        xs.iter().copied().map(Value::Int).collect()
    }

    #[test]
    fn canonicalize_dedupes_and_sorts() {
        let raw = RawValue::Set(vec![RawValue::Int(2), RawValue::Int(1), RawValue::Int(1)]);
        assert_eq!(canonicalize(&raw).unwrap(), Value::Set(ints(&[1, 2])));
    }

    #[test]
    fn canonicalize_keeps_canonical_pair() {
        let raw = RawValue::Pair(Box::new(RawValue::Int(1)), Box::new(RawValue::Set(vec![])));
        assert_eq!(
            canonicalize(&raw).unwrap(),
            Value::pair(Value::Int(1), Value::empty_set())
        );
    }

    #[test]
    fn canonicalize_reduces_rationals() {
        let half = canonicalize(&RawValue::Rat(2, 4)).unwrap();
        assert_eq!(half, Value::rat(1, 2).unwrap());
        assert_eq!(canonicalize(&RawValue::Rat(3, -6)).unwrap(), Value::rat(-1, 2).unwrap());
        assert_eq!(canonicalize(&RawValue::Rat(4, 2)).unwrap(), Value::Int(2));
        assert_eq!(canonicalize(&RawValue::Rat(1, 0)), Err(Error::ZeroDenominator));
    }

    #[test]
    fn set_operations() {
        let u = set_op(SetOp::Union, &Value::Set(ints(&[1, 2])), &Value::Set(ints(&[2, 3])));
        assert_eq!(u.unwrap(), Value::Set(ints(&[1, 2, 3])));
        let p = set_op(SetOp::Product, &Value::Set(ints(&[1])), &Value::Set(ints(&[2, 3])));
        assert_eq!(
            p.unwrap(),
            Value::set([
                Value::pair(Value::Int(1), Value::Int(2)),
                Value::pair(Value::Int(1), Value::Int(3)),
            ])
        );
        let d = set_op(SetOp::Difference, &Value::empty_set(), &Value::Set(ints(&[1])));
        assert_eq!(d.unwrap(), Value::empty_set());
        assert_eq!(
            set_op(SetOp::Intersection, &Value::Int(1), &Value::empty_set()),
            Err(Error::Type {
                expected: "set",
                found: "integer"
            })
        );
    }

    #[test]
    fn the_elem_totalized() {
        assert_eq!(ints(&[7]).the_elem(), Value::Int(7));
        assert_eq!(ints(&[]).the_elem(), Value::Undefined);
        assert_eq!(ints(&[1, 2]).the_elem(), Value::Undefined);
    }

    #[test]
    fn numeric_extremes() {
        assert_eq!(ints(&[3, 1, 2]).min_of().unwrap(), Value::Int(1));
        let halves: FinSet = [Value::rat(1, 2).unwrap(), Value::rat(2, 3).unwrap()]
            .into_iter()
            .collect();
        assert_eq!(halves.max_of().unwrap(), Value::rat(2, 3).unwrap());
        assert_eq!(ints(&[5]).min_of().unwrap(), Value::Int(5));
        assert!(matches!(ints(&[]).min_of(), Err(Error::Domain(_))));
        let mixed: FinSet = [Value::Int(1), Value::sym("a")].into_iter().collect();
        assert!(matches!(mixed.max_of(), Err(Error::Type { .. })));
    }

    #[test]
    fn order_puts_kinds_in_sequence() {
        let vals = [
            Value::Int(-3),
            Value::rat(1, 2).unwrap(),
            Value::Int(1),
            Value::sym("a"),
            Value::Undefined,
            Value::pair(Value::Int(0), Value::Int(0)),
            Value::empty_set(),
            Value::Set(ints(&[0])),
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn display_uses_set_notation() {
        let r = Value::set([
            Value::pair(Value::Int(1), Value::rat(1, 2).unwrap()),
            Value::pair(Value::sym("a b"), Value::Undefined),
        ]);
        assert_eq!(alloc::format!("{r}"), "{(1, 1/2), (\"a b\", undefined)}");
    }
}
