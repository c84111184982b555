//! Set-theoretic quotients of relations.
//!
//! [`projector`] sends a point to its class, [`quotient`] lifts a relation to
//! classes of its domain and codomain, and [`compatible`] is the condition
//! under which the lifted relation of a function is again a function.
//! None of these require their arguments to be equivalences.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::value::{FinSet, Value};

/// `projector R = {(x, R``{x}) | x ∈ Domain R}`.
pub fn projector(r: &Relation) -> Relation {
    Relation::from_pairs(
        r.domain()
            .iter()
            .map(|x| (x.clone(), Value::Set(r.image_of(x)))),
    )
}

/// The classes of `r`: `Range (projector r)`, as sets.
pub fn classes(r: &Relation) -> Vec<FinSet> {
    let mut out: Vec<FinSet> = r.domain().iter().map(|x| r.image_of(x)).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `{(p, q) | q ∈ Range (projector Q), p ∈ Range (projector P), p × q ∩ R ≠ {}}`.
pub fn quotient(r: &Relation, p: &Relation, q: &Relation) -> Relation {
    let q_classes = classes(q);
    let mut out = Vec::new();
    for pc in classes(p) {
        // p × q meets R iff q meets R``p.
        let reached = r.image(&pc);
        for qc in &q_classes {
            if !qc.is_disjoint(&reached) {
                out.push((Value::Set(pc.clone()), Value::Set(qc.clone())));
            }
        }
    }
    Relation::from_pairs(out)
}

/// `∀x. R``(P``{x}) ⊆ Q``(R``{x})`.
///
/// Outside `Domain P ∪ Domain R` the left side is empty, so the quantifier is
/// restricted to that finite set.
pub fn compatible(r: &Relation, p: &Relation, q: &Relation) -> bool {
    incompatible_point(r, p, q).is_none()
}

/// First point (in canonical order) where compatibility fails.
pub fn incompatible_point(r: &Relation, p: &Relation, q: &Relation) -> Option<Value> {
    p.domain()
        .union(&r.domain())
        .iter()
        .find(|x| {
            let lhs = r.image(&p.image_of(x));
            let rhs = q.image(&r.image_of(x));
            !lhs.is_subset(&rhs)
        })
        .cloned()
}

/// Kernel of a function: points of its domain identified when their images agree.
pub fn kernel(f: &Relation) -> Result<Relation> {
    if !f.runiq() {
        return Err(Error::precondition("kernel needs a right-unique relation"));
    }
    let graph: Vec<(&Value, &Value)> = f.pairs().collect();
    let mut out = Vec::new();
    for (x1, y1) in &graph {
        for (x2, y2) in &graph {
            if y1 == y2 {
                out.push(((*x1).clone(), (*x2).clone()));
            }
        }
    }
    Ok(Relation::from_pairs(out))
}

/// `E ⊆ X × X`, reflexive on `X`, symmetric and transitive.
pub fn is_equivalence(e: &Relation, carrier: &FinSet) -> bool {
    let within = e
        .pairs()
        .all(|(x, y)| carrier.contains(x) && carrier.contains(y));
    let reflexive = carrier.iter().all(|x| e.contains(x, x));
    within && reflexive && is_symmetric(e) && is_transitive(e)
}

pub fn is_symmetric(e: &Relation) -> bool {
    e.pairs().all(|(x, y)| e.contains(y, x))
}

pub fn is_transitive(e: &Relation) -> bool {
    e.pairs()
        .all(|(x, y)| e.image_of(y).iter().all(|z| e.contains(x, z)))
}

/// `Id` on an explicit carrier.
pub fn identity(carrier: &FinSet) -> Relation {
    Relation::from_pairs(carrier.iter().map(|x| (x.clone(), x.clone())))
}

/// `X × X`.
pub fn total(carrier: &FinSet) -> Relation {
    Relation::new(carrier.product(carrier)).expect("product of sets is a relation")
}

/// The equivalence whose classes are the given disjoint blocks.
pub fn from_blocks<'a, I: IntoIterator<Item = &'a FinSet>>(blocks: I) -> Relation {
    let mut out = Vec::new();
    for b in blocks {
        out.extend(b.product(b).iter().cloned());
    }
    Relation::new(FinSet::from_vec(out)).expect("products of sets are relations")
}

/// An equivalence relation together with the carrier it is checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivWitness {
    relation: Relation,
    carrier: FinSet,
}

impl EquivWitness {
    pub fn new(relation: Relation, carrier: FinSet) -> Result<Self> {
        if !is_equivalence(&relation, &carrier) {
            return Err(Error::precondition("relation is not an equivalence on the carrier"));
        }
        Ok(EquivWitness { relation, carrier })
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn carrier(&self) -> &FinSet {
        &self.carrier
    }

    pub fn classes(&self) -> Vec<FinSet> {
        classes(&self.relation)
    }
}
