use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::oracle::{best_assignment_value, vcg_payment};
use super::universe::*;
use super::{Case, CheckOutcome, Expectation, Law, Params, Profile, UniverseSpec};
use crate::auction::single::{
    analyze, constant_table, dom4_violation, genvick_violation, highest_other_bid_table,
    reduced_bids_without_losing_completion, single_good, PriceRule,
};
use crate::auction::{clear_vickrey, welfare, CombinatorialInstance};
use crate::enumerate::{
    all_partitions_list, all_partitions_oracle, falling_factorial, injections_alg,
    injections_oracle, is_partition_of, subsets, ElementList,
};
use crate::error::{Error, Result};
use crate::quotient::{
    classes, compatible, incompatible_point, is_equivalence, is_symmetric, is_transitive, kernel,
    projector, quotient,
};
use crate::relation::{
    arg_max_rec, arg_max_set, graph, runiq_alt, runiq_basic, runiq_definition,
    runiq_inj_on_fst, runiq_wrt_eval_rel, runiq_wrt_eval_rel_prime, runiq_wrt_ex1,
    runiq_wrt_the, to_function, Relation,
};
use crate::value::{canonicalize, FinSet, Rational, Value};

static REGISTRY: [Law; 26] = [
    Law {
        id: "set_boolean_laws",
        statement: "A ∪ B = B ∪ A, A ∩ B = B ∩ A, (A ∪ B) ∪ C = A ∪ (B ∪ C), (A ∩ B) ∩ C = A ∩ (B ∩ C), A ∪ (A ∩ B) = A, A ∩ (A ∪ B) = A, A ∩ (B ∪ C) = (A ∩ B) ∪ (A ∩ C), A - (B ∪ C) = (A - B) ∩ (A - C)",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_set_triples,
        check: check_set_boolean,
    },
    Law {
        id: "canonical_form",
        statement: "canonicalize (canonicalize v) = canonicalize v; exactly one of v < w, v = w, w < v; u ≤ v ≤ w ⟶ u ≤ w",
        expect: Expectation::Holds,
        universe: None,
        samples: (200, 2000),
        generate: gen_seeds,
        check: check_canonical_form,
    },
    Law {
        id: "lll53",
        statement: "(P +* Q) +* R = P +* (Q +* R)",
        expect: Expectation::Holds,
        universe: Some(UniverseSpec { default: (2, 2), max_pairs: 4 }),
        samples: (1000, 10_000),
        generate: gen_paste_triples,
        check: check_lll53,
    },
    Law {
        id: "runiq_equivs",
        statement: "runiq R = (∀X. trivial X ⟶ trivial (R``X)) = inj_on fst R = (∀x. trivial (R``{x})) = (∀x y y'. (x,y) ∈ R ∧ (x,y') ∈ R ⟶ y = y') = (∀x. R``{x} ⊆ {R,,x}) = (∀x ∈ Domain R. R``{x} = {R,,x}) = (∀a ∈ Domain R. ∃!b. (a,b) ∈ R) = (∀a b. (a,b) ∈ R ⟶ b = (THE b. (a,b) ∈ R))",
        expect: Expectation::Holds,
        universe: Some(UniverseSpec { default: (3, 2), max_pairs: 9 }),
        samples: (0, 0),
        generate: gen_universe_relations,
        check: check_runiq_equivs,
    },
    Law {
        id: "lll33",
        statement: "runiq P = inj_on fst P",
        expect: Expectation::Holds,
        universe: Some(UniverseSpec { default: (3, 2), max_pairs: 9 }),
        samples: (0, 0),
        generate: gen_universe_relations,
        check: check_lll33,
    },
    Law {
        id: "lll34",
        statement: "runiq P ⟶ card (Domain P) = card P",
        expect: Expectation::Holds,
        universe: Some(UniverseSpec { default: (3, 2), max_pairs: 9 }),
        samples: (0, 0),
        generate: gen_universe_relations,
        check: check_lll34,
    },
    Law {
        id: "lll82",
        statement: "runiq (f :: ('a × 'b set) set) ∧ x ∈ Domain f ⟶ f,,x = f,,,x",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_set_valued_functions,
        check: check_lll82,
    },
    Law {
        id: "graph_eval_roundtrip",
        statement: "x ∈ X ⟶ (graph X f) ,, x = f x; toFunction (graph X f) = f on X",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_partial_functions_3x3,
        check: check_graph_eval,
    },
    Law {
        id: "paste_domain",
        statement: "Domain (P +* Q) = Domain P ∪ Domain Q; (P +* Q) restricted to Domain Q = Q; P +* Q = (P outside Domain Q) ∪ Q",
        expect: Expectation::Holds,
        universe: None,
        samples: (200, 1000),
        generate: gen_paste_pairs,
        check: check_paste_domain,
    },
    Law {
        id: "argmax_equiv",
        statement: "arg_max f A = {x ∈ A. f x = Max (f`A)} = recursive arg_max over any listing of A",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_argmax,
        check: check_argmax,
    },
    Law {
        id: "projector_classes",
        statement: "runiq (projector E); Range (projector E) = {E``{x} | x ∈ Domain E}; equiv (Domain E) E ⟶ Range (projector E) partitions Domain E",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_relations_3x3,
        check: check_projector_classes,
    },
    Law {
        id: "kernel_equivalence",
        statement: "runiq f ⟶ equiv (Domain f) (Kernel f) ∧ ((x, y) ∈ Kernel f ⟷ f,,x = f,,y)",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_partial_functions_3x2,
        check: check_kernel,
    },
    Law {
        id: "l23",
        statement: "compatible f P Q ∧ runiq f ∧ trans P ∧ sym P ∧ equiv (Domain Q) Q ⟶ runiq (quotient f P Q)",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_l23,
        check: check_l23,
    },
    Law {
        id: "l23_necessity",
        statement: "runiq f ∧ trans P ∧ sym P ∧ equiv (Domain Q) Q ⟶ runiq (quotient f P Q), without compatibility (expected to be refuted)",
        expect: Expectation::Refuted,
        universe: None,
        samples: (0, 0),
        generate: gen_l23,
        check: check_l23_necessity,
    },
    Law {
        id: "quotientFactors",
        statement: "equiv (Domain p) p ∧ equiv (Domain q) q ⟶ quotient r p q = (projector p)¯ O r O (projector q)",
        expect: Expectation::Holds,
        universe: None,
        samples: (50, 0),
        generate: gen_quotient_factors,
        check: check_quotient_factors,
    },
    Law {
        id: "injections_equiv",
        statement: "distinct xs ∧ card Y > 0 ⟶ set (injections_alg xs Y) = injections (set xs) Y, without duplicates",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_injections_equiv,
        check: check_injections_equiv,
    },
    Law {
        id: "injection_counts",
        statement: "card (injections X Y) = card Y! / (card Y - card X)! if card X ≤ card Y else 0; R ∈ injections X Y ⟶ Domain R = X ∧ Range R ⊆ Y ∧ runiq R ∧ runiq R¯",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_injection_counts,
        check: check_injection_counts,
    },
    Law {
        id: "partitions_equiv",
        statement: "distinct xs ⟶ set (map set (all_partitions_list xs)) = all_partitions (set xs), without duplicates; P ∈ all_partitions A ⟶ ⋃P = A",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_partitions_equiv,
        check: check_partitions_equiv,
    },
    Law {
        id: "dom4_second_price",
        statement: "dom4 i a p for the second-price mechanism: v*(a,,b) - p,,b ≤ v*(a,,(b +< (i,v))) - p,,(b +< (i,v))",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_single_all,
        check: check_dom4_second,
    },
    Law {
        id: "dom4_first_price_mutant",
        statement: "dom4 i a p for the first-price mechanism (expected to be refuted)",
        expect: Expectation::Refuted,
        universe: None,
        samples: (0, 0),
        generate: gen_single_all,
        check: check_dom4_first,
    },
    Law {
        id: "l24b_compatibility",
        statement: "functional (Domain a) ∧ Domain a ⊆ Domain p ∧ runiq p ∧ dom4 i a p ⟶ compatible p (Kernel (reducedbid i a)) Id, hence runiq (reducedprice p i a)",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_single_all,
        check: check_l24b,
    },
    Law {
        id: "genvick_from_reducedprice",
        statement: "dom4 i a p ⟶ genvick a p i w with t x = reducedprice p i a ,, ({i} ∪ Domain x, (x, Min (Range a))), w x = Max (Range x), a1 = 0, on instances where every reduced bid has a losing completion",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_single_with_losing_completion,
        check: check_genvick,
    },
    Law {
        id: "fee_requires_losing_completion",
        statement: "reducedprice p i a ,, ({i} ∪ Domain x, (x, Min (Range a))) is undefined exactly at the reduced bids x with no losing completion, and there are such x iff i is the lowest bidder and the grid has two or more bids",
        expect: Expectation::Holds,
        universe: None,
        samples: (0, 0),
        generate: gen_single_all,
        check: check_fee_domain,
    },
    Law {
        id: "genvick_wrong_fee",
        statement: "genvick a p i w with t = 1 for the second-price mechanism (expected to be refuted)",
        expect: Expectation::Refuted,
        universe: None,
        samples: (0, 0),
        generate: gen_single_with_losing_completion,
        check: check_genvick_wrong_fee,
    },
    Law {
        id: "vcg_oracle_match",
        statement: "clear_vickrey picks welfare max over all assignments and charges n: max welfare without n - (chosen welfare - v n (bundle n))",
        expect: Expectation::Holds,
        universe: None,
        samples: (50, 200),
        generate: gen_vcg,
        check: check_vcg_oracle,
    },
    Law {
        id: "vcg_nonneg",
        statement: "0 ≤ payment n ≤ v n (bundle n) for monotone valuations",
        expect: Expectation::Holds,
        universe: None,
        samples: (50, 200),
        generate: gen_vcg,
        check: check_vcg_nonneg,
    },
];

pub fn registry() -> &'static [Law] {
    &REGISTRY
}

fn arg(case: &[Value], k: usize) -> Result<&Value> {
    case.get(k)
        .ok_or_else(|| Error::precondition("case has too few components"))
}

fn rel_arg(case: &[Value], k: usize) -> Result<Relation> {
    Relation::try_from(arg(case, k)?)
}

fn set_arg(case: &[Value], k: usize) -> Result<&FinSet> {
    arg(case, k)?.as_set()
}

fn tag(s: &str) -> Value {
    Value::sym(s)
}

fn failed(parts: Vec<Value>) -> Result<CheckOutcome> {
    Ok(Some(parts))
}

fn holds_unless(ok: bool, name: &str) -> Result<CheckOutcome> {
    Ok(if ok { None } else { Some(vec![tag(name)]) })
}

/// A list encoded as the function `{(0, x0), (1, x1), ...}`.
fn encode_list(xs: &[Value]) -> Value {
    Relation::from_pairs(
        xs.iter()
            .enumerate()
            .map(|(k, x)| (Value::Int(k as i64), x.clone())),
    )
    .to_value()
}

fn decode_list(v: &Value) -> Result<Vec<Value>> {
    let r = Relation::try_from(v)?;
    let mut out = Vec::with_capacity(r.len());
    for (k, (idx, x)) in r.pairs().enumerate() {
        if *idx != Value::Int(k as i64) {
            return Err(Error::precondition("not a list encoding"));
        }
        out.push(x.clone());
    }
    Ok(out)
}

fn relation_cases(rs: impl IntoIterator<Item = Relation>) -> Vec<Case> {
    rs.into_iter().map(|r| vec![r.to_value()]).collect()
}

/// Symmetric transitive relations on subsets of the carrier.
fn partial_equivalences(carrier: &FinSet) -> Vec<Relation> {
    let mut out: Vec<Relation> = subsets(carrier).iter().flat_map(equivalences).collect();
    out.sort_unstable();
    out
}

// value_core

fn gen_set_triples(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let all = subsets(&atoms(3));
    let mut out = Vec::with_capacity(all.len().pow(3));
    for a in &all {
        for b in &all {
            for c in &all {
                out.push(vec![a.clone().into(), b.clone().into(), c.clone().into()]);
            }
        }
    }
    Ok(out)
}

fn check_set_boolean(case: &[Value]) -> Result<CheckOutcome> {
    let (a, b, c) = (set_arg(case, 0)?, set_arg(case, 1)?, set_arg(case, 2)?);
    let laws = [
        ("union_commutative", a.union(b) == b.union(a)),
        ("intersection_commutative", a.intersection(b) == b.intersection(a)),
        ("union_associative", a.union(b).union(c) == a.union(&b.union(c))),
        (
            "intersection_associative",
            a.intersection(b).intersection(c) == a.intersection(&b.intersection(c)),
        ),
        ("absorption_union", a.union(&a.intersection(b)) == *a),
        ("absorption_intersection", a.intersection(&a.union(b)) == *a),
        (
            "distributive",
            a.intersection(&b.union(c)) == a.intersection(b).union(&a.intersection(c)),
        ),
        (
            "de_morgan_difference",
            a.difference(&b.union(c)) == a.difference(b).intersection(&a.difference(c)),
        ),
    ];
    Ok(laws.iter().find(|(_, ok)| !ok).map(|(name, _)| vec![tag(name)]))
}

fn gen_seeds(p: &Params, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    Ok((0..p.samples)
        .map(|_| vec![Value::Int(rng.gen_range(0..i64::MAX))])
        .collect())
}

fn check_canonical_form(case: &[Value]) -> Result<CheckOutcome> {
    let seed = match arg(case, 0)? {
        Value::Int(n) => *n as u64,
        _ => return Err(Error::precondition("seed must be an integer")),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raws = [random_raw(&mut rng, 3), random_raw(&mut rng, 3), random_raw(&mut rng, 3)];
    let mut vs = Vec::with_capacity(3);
    for raw in &raws {
        let v = canonicalize(raw)?;
        if canonicalize(&v.to_raw())? != v {
            return failed(vec![tag("idempotence"), v]);
        }
        vs.push(v);
    }
    for v in &vs {
        for w in &vs {
            let n = (v < w) as u8 + (v == w) as u8 + (w < v) as u8;
            if n != 1 || v.cmp(w) != w.cmp(v).reverse() || (v == w) != (v.to_raw() == w.to_raw())
            {
                return failed(vec![tag("trichotomy"), v.clone(), w.clone()]);
            }
            for u in &vs {
                if u <= v && v <= w && u > w {
                    return failed(vec![tag("transitivity"), u.clone(), v.clone(), w.clone()]);
                }
            }
        }
    }
    Ok(None)
}

// relation_algebra

fn gen_paste_triples(p: &Params, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let (n, m) = p.universe;
    let all = all_relations(&atoms(n), &atoms(m));
    let mut out = Vec::with_capacity(all.len().pow(3) + p.samples);
    for a in &all {
        for b in &all {
            for c in &all {
                out.push(vec![a.to_value(), b.to_value(), c.to_value()]);
            }
        }
    }
    let big = atoms(4);
    for _ in 0..p.samples {
        out.push(
            (0..3)
                .map(|_| random_relation(rng, &big, &big).to_value())
                .collect(),
        );
    }
    Ok(out)
}

fn check_lll53(case: &[Value]) -> Result<CheckOutcome> {
    let (p, q, r) = (rel_arg(case, 0)?, rel_arg(case, 1)?, rel_arg(case, 2)?);
    let lhs = p.paste(&q).paste(&r);
    let rhs = p.paste(&q.paste(&r));
    Ok((lhs != rhs).then(|| vec![lhs.to_value(), rhs.to_value()]))
}

fn gen_universe_relations(p: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let (n, m) = p.universe;
    Ok(relation_cases(all_relations(&atoms(n), &atoms(m))))
}

fn check_runiq_equivs(case: &[Value]) -> Result<CheckOutcome> {
    let r = rel_arg(case, 0)?;
    // One point beyond the domain so the definition also sees non-domain singletons.
    let universe = r.domain().insert(Value::sym("outside"));
    let answers = [
        r.runiq(),
        runiq_definition(&r, &universe),
        runiq_inj_on_fst(&r),
        runiq_alt(&r),
        runiq_basic(&r),
        runiq_wrt_eval_rel(&r),
        runiq_wrt_eval_rel_prime(&r),
        runiq_wrt_ex1(&r),
        runiq_wrt_the(&r),
    ];
    if answers.iter().all(|&b| b == answers[0]) {
        Ok(None)
    } else {
        failed(answers.iter().map(|&b| Value::Int(b as i64)).collect())
    }
}

fn check_lll33(case: &[Value]) -> Result<CheckOutcome> {
    let r = rel_arg(case, 0)?;
    holds_unless(r.runiq() == runiq_inj_on_fst(&r), "lll33")
}

fn check_lll34(case: &[Value]) -> Result<CheckOutcome> {
    let r = rel_arg(case, 0)?;
    holds_unless(!r.runiq() || r.domain().len() == r.len(), "lll34")
}

fn gen_set_valued_functions(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let codomain: FinSet = subsets(&atoms(2)).into_iter().map(Value::Set).collect();
    Ok(relation_cases(partial_functions(&atoms(3), &codomain)))
}

fn check_lll82(case: &[Value]) -> Result<CheckOutcome> {
    let f = rel_arg(case, 0)?;
    if !f.runiq() {
        return Ok(None);
    }
    for x in f.domain().iter() {
        let (one, two) = (f.eval(x), f.eval2(x)?);
        if one != two {
            return failed(vec![x.clone(), one, two]);
        }
    }
    Ok(None)
}

fn gen_partial_functions_3x3(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    Ok(relation_cases(partial_functions(&atoms(3), &atoms(3))))
}

fn check_graph_eval(case: &[Value]) -> Result<CheckOutcome> {
    let table = rel_arg(case, 0)?;
    let xs = table.domain();
    let g = graph(&xs, |x| Some(table.eval(x)))?;
    let f = to_function(&g);
    for x in xs.iter() {
        if g.eval(x) != table.eval(x) || f(x) != table.eval(x) {
            return failed(vec![x.clone(), g.to_value()]);
        }
    }
    holds_unless(g == table, "graph_differs")
}

fn gen_paste_pairs(p: &Params, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let small = all_relations(&atoms(2), &atoms(2));
    let mut out = Vec::new();
    for a in &small {
        for b in &small {
            out.push(vec![a.to_value(), b.to_value()]);
        }
    }
    let big = atoms(3);
    for _ in 0..p.samples {
        out.push(vec![
            random_relation(rng, &big, &big).to_value(),
            random_relation(rng, &big, &big).to_value(),
        ]);
    }
    Ok(out)
}

fn check_paste_domain(case: &[Value]) -> Result<CheckOutcome> {
    let (p, q) = (rel_arg(case, 0)?, rel_arg(case, 1)?);
    let pasted = p.paste(&q);
    if pasted.domain() != p.domain().union(&q.domain()) {
        return failed(vec![tag("domain"), pasted.to_value()]);
    }
    if pasted.restrict(&q.domain()) != q {
        return failed(vec![tag("restriction"), pasted.to_value()]);
    }
    holds_unless(pasted == p.outside(&q.domain()).union(&q), "outside_union")
}

fn gen_argmax(p: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let n = match p.profile {
        Profile::Quick => 4,
        Profile::Full => 5,
    };
    let mut out = Vec::new();
    for a in subsets(&atoms(n)).into_iter().filter(|a| !a.is_empty()) {
        for f in total_functions(&a, &atoms(3)) {
            out.push(vec![f.to_value(), a.clone().into()]);
        }
    }
    Ok(out)
}

fn check_argmax(case: &[Value]) -> Result<CheckOutcome> {
    let (f, a) = (rel_arg(case, 0)?, set_arg(case, 1)?);
    let by_set = arg_max_set(&f, a)?;
    let ascending = arg_max_rec(&f, a.as_slice())?;
    let mut rev: Vec<Value> = a.iter().cloned().collect();
    rev.reverse();
    let descending = arg_max_rec(&f, &rev)?;
    if by_set == ascending && by_set == descending {
        Ok(None)
    } else {
        failed(vec![by_set.into(), ascending.into(), descending.into()])
    }
}

// quotient_machinery

fn gen_relations_3x3(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    Ok(relation_cases(all_relations(&atoms(3), &atoms(3))))
}

fn check_projector_classes(case: &[Value]) -> Result<CheckOutcome> {
    let e = rel_arg(case, 0)?;
    let pr = projector(&e);
    if !pr.runiq() {
        return failed(vec![tag("projector_not_runiq"), pr.to_value()]);
    }
    let cls: FinSet = classes(&e).into_iter().map(Value::Set).collect();
    if pr.range() != cls {
        return failed(vec![tag("range_not_classes"), pr.to_value()]);
    }
    let carrier = e.domain();
    holds_unless(
        !is_equivalence(&e, &carrier) || is_partition_of(&cls, &carrier),
        "classes_not_partition",
    )
}

fn gen_partial_functions_3x2(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    Ok(relation_cases(partial_functions(&atoms(3), &atoms(2))))
}

fn check_kernel(case: &[Value]) -> Result<CheckOutcome> {
    let f = rel_arg(case, 0)?;
    let k = kernel(&f)?;
    if !is_equivalence(&k, &f.domain()) {
        return failed(vec![tag("not_equivalence"), k.to_value()]);
    }
    for x in f.domain().iter() {
        for y in f.domain().iter() {
            if k.contains(x, y) != (f.eval(x) == f.eval(y)) {
                return failed(vec![x.clone(), y.clone()]);
            }
        }
    }
    Ok(None)
}

fn gen_l23(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let fs = partial_functions(&atoms(3), &atoms(2));
    let ps = partial_equivalences(&atoms(3));
    let qs = partial_equivalences(&atoms(2));
    let mut out = Vec::with_capacity(fs.len() * ps.len() * qs.len());
    for f in &fs {
        for p in &ps {
            for q in &qs {
                out.push(vec![f.to_value(), p.to_value(), q.to_value()]);
            }
        }
    }
    Ok(out)
}

fn l23_hypotheses(f: &Relation, p: &Relation, q: &Relation) -> bool {
    f.runiq() && is_symmetric(p) && is_transitive(p) && is_equivalence(q, &q.domain())
}

fn check_l23(case: &[Value]) -> Result<CheckOutcome> {
    let (f, p, q) = (rel_arg(case, 0)?, rel_arg(case, 1)?, rel_arg(case, 2)?);
    if !l23_hypotheses(&f, &p, &q) {
        return failed(vec![tag("hypotheses")]);
    }
    if !compatible(&f, &p, &q) {
        return Ok(None);
    }
    let quot = quotient(&f, &p, &q);
    Ok((!quot.runiq()).then(|| vec![quot.to_value()]))
}

fn check_l23_necessity(case: &[Value]) -> Result<CheckOutcome> {
    let (f, p, q) = (rel_arg(case, 0)?, rel_arg(case, 1)?, rel_arg(case, 2)?);
    if !l23_hypotheses(&f, &p, &q) {
        return failed(vec![tag("hypotheses")]);
    }
    let quot = quotient(&f, &p, &q);
    if quot.runiq() {
        return Ok(None);
    }
    let point = incompatible_point(&f, &p, &q).unwrap_or_else(|| tag("compatible"));
    failed(vec![quot.to_value(), point])
}

fn gen_quotient_factors(p: &Params, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let carrier = atoms(3);
    let rs = match p.profile {
        Profile::Full => all_relations(&carrier, &carrier),
        Profile::Quick => (0..p.samples)
            .map(|_| random_relation(rng, &carrier, &carrier))
            .collect(),
    };
    let eqs = partial_equivalences(&carrier);
    let mut out = Vec::with_capacity(rs.len() * eqs.len() * eqs.len());
    for r in &rs {
        for pe in &eqs {
            for qe in &eqs {
                out.push(vec![r.to_value(), pe.to_value(), qe.to_value()]);
            }
        }
    }
    Ok(out)
}

fn check_quotient_factors(case: &[Value]) -> Result<CheckOutcome> {
    let (r, p, q) = (rel_arg(case, 0)?, rel_arg(case, 1)?, rel_arg(case, 2)?);
    if !is_equivalence(&p, &p.domain()) || !is_equivalence(&q, &q.domain()) {
        return failed(vec![tag("hypotheses")]);
    }
    let lhs = quotient(&r, &p, &q);
    let rhs = projector(&p).converse().compose(&r).compose(&projector(&q));
    Ok((lhs != rhs).then(|| vec![lhs.to_value(), rhs.to_value()]))
}

// enumeration

fn gen_injections_equiv(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let ys: Vec<FinSet> = subsets(&atoms_from(10, 4))
        .into_iter()
        .filter(|y| !y.is_empty())
        .collect();
    let mut out = Vec::new();
    for xs in arrangements(&atoms(3), 3) {
        for y in &ys {
            out.push(vec![encode_list(&xs), y.clone().into()]);
        }
    }
    Ok(out)
}

fn check_injections_equiv(case: &[Value]) -> Result<CheckOutcome> {
    let xs = ElementList::new(decode_list(arg(case, 0)?)?)?;
    let ys = set_arg(case, 1)?;
    let alg = injections_alg(&xs, ys);
    let as_set: FinSet = alg.iter().map(Relation::to_value).collect();
    if as_set.len() != alg.len() {
        return failed(vec![tag("duplicates")]);
    }
    let oracle: FinSet = injections_oracle(&xs.to_set(), ys)?
        .iter()
        .map(Relation::to_value)
        .collect();
    if as_set != oracle {
        return failed(vec![as_set.into(), oracle.into()]);
    }
    holds_unless(
        alg.len() == falling_factorial(ys.len(), xs.as_slice().len()),
        "count",
    )
}

fn gen_injection_counts(_: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for n in 0..=4 {
        for m in 0..=4 {
            out.push(vec![atoms(n).into(), atoms_from(10, m).into()]);
        }
    }
    Ok(out)
}

fn check_injection_counts(case: &[Value]) -> Result<CheckOutcome> {
    let (xs, ys) = (set_arg(case, 0)?, set_arg(case, 1)?);
    let found = injections_oracle(xs, ys)?;
    let expected = if xs.len() <= ys.len() {
        falling_factorial(ys.len(), xs.len())
    } else {
        0
    };
    if found.len() != expected {
        return failed(vec![tag("count"), Value::Int(found.len() as i64)]);
    }
    for r in &found {
        let ok = r.domain() == *xs
            && r.range().is_subset(ys)
            && r.runiq()
            && r.converse().runiq();
        if !ok {
            return failed(vec![tag("not_injection"), r.to_value()]);
        }
    }
    Ok(None)
}

fn gen_partitions_equiv(p: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let max = match p.profile {
        Profile::Quick => 4,
        Profile::Full => 5,
    };
    Ok((0..=max)
        .flat_map(permutations)
        .map(|xs| vec![encode_list(&xs)])
        .collect())
}

fn check_partitions_equiv(case: &[Value]) -> Result<CheckOutcome> {
    let xs = ElementList::new(decode_list(arg(case, 0)?)?)?;
    let a = xs.to_set();
    let listed: Vec<Value> = all_partitions_list(&xs)
        .iter()
        .map(|p| Value::Set(p.to_set()))
        .collect();
    let as_set = FinSet::from_vec(listed.clone());
    if as_set.len() != listed.len() {
        return failed(vec![tag("duplicates")]);
    }
    let oracle = all_partitions_oracle(&a)?;
    if let Some(bad) = oracle.iter().find(|p| p.big_union().ok().as_ref() != Some(&a)) {
        return failed(vec![tag("union"), bad.clone().into()]);
    }
    let oracle: FinSet = oracle.into_iter().map(Value::Set).collect();
    Ok((as_set != oracle).then(|| vec![as_set.into(), oracle.into()]))
}

// auction_engine, single good

fn rat(n: i64, d: i64) -> Value {
    Value::number(Rational::new(n, d))
}

fn single_grids(profile: Profile) -> Vec<FinSet> {
    let pool: FinSet = [rat(0, 1), rat(1, 2), rat(1, 1), rat(2, 1)].into_iter().collect();
    let max = match profile {
        Profile::Quick => 3,
        Profile::Full => 4,
    };
    let mut grids: Vec<FinSet> = subsets(&pool)
        .into_iter()
        .filter(|g| !g.is_empty() && g.len() <= max)
        .collect();
    grids.push(atoms(4));
    grids
}

fn single_cases(profile: Profile, keep: impl Fn(&Value, &FinSet) -> bool) -> Vec<Case> {
    let mut out = Vec::new();
    for bidders in [atoms_from(1, 2), atoms_from(1, 3)] {
        for grid in single_grids(profile) {
            for i in bidders.iter().filter(|i| keep(i, &bidders)) {
                out.push(vec![bidders.clone().into(), grid.clone().into(), i.clone()]);
            }
        }
    }
    out
}

fn gen_single_all(p: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    Ok(single_cases(p.profile, |_, _| true))
}

/// Instances where `i` is not the lowest bidder, so `i` can always lose by
/// bidding the grid minimum.
fn gen_single_with_losing_completion(p: &Params, _: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    Ok(single_cases(p.profile, |i, bidders| {
        bidders.min_of().ok().as_ref() != Some(i)
    }))
}

fn single_mech(case: &[Value], rule: PriceRule) -> Result<(crate::auction::SingleGoodMechanism, FinSet)> {
    let (bidders, grid, i) = (set_arg(case, 0)?, set_arg(case, 1)?, arg(case, 2)?);
    Ok((single_good(bidders, grid, i, rule)?, grid.clone()))
}

fn check_dom4(case: &[Value], rule: PriceRule) -> Result<CheckOutcome> {
    let (m, grid) = single_mech(case, rule)?;
    Ok(dom4_violation(&m.bidder, &m.allocation, &m.price, &grid)?
        .map(|v| vec![v.bid.to_value(), v.valuation]))
}

fn check_dom4_second(case: &[Value]) -> Result<CheckOutcome> {
    check_dom4(case, PriceRule::SecondPrice)
}

fn check_dom4_first(case: &[Value]) -> Result<CheckOutcome> {
    check_dom4(case, PriceRule::FirstPrice)
}

fn check_l24b(case: &[Value]) -> Result<CheckOutcome> {
    let (m, grid) = single_mech(case, PriceRule::SecondPrice)?;
    let an = analyze(&m, &grid)?;
    let parts = [
        ("functional_domain", an.functional_domain),
        ("domain_within_price", an.domain_within_price),
        ("price_runiq", an.price_runiq),
        ("dom4", an.dom4.is_none()),
        ("compatible", an.l24b_compatible),
        ("quotient_runiq", an.quotient_runiq),
        ("reducedprice_runiq", an.reducedprice_runiq),
    ];
    Ok(parts.iter().find(|(_, ok)| !ok).map(|(name, _)| vec![tag(name)]))
}

fn check_genvick(case: &[Value]) -> Result<CheckOutcome> {
    let (m, grid) = single_mech(case, PriceRule::SecondPrice)?;
    let an = analyze(&m, &grid)?;
    match an.genvick {
        None => failed(vec![tag("fee_undefined"), an.undefined_fee_at.into()]),
        Some(Some(b)) => failed(vec![tag("genvick"), b.to_value()]),
        Some(None) => Ok(None),
    }
}

fn check_fee_domain(case: &[Value]) -> Result<CheckOutcome> {
    let (m, grid) = single_mech(case, PriceRule::SecondPrice)?;
    let an = analyze(&m, &grid)?;
    let (i, a, p) = (&m.bidder, &m.allocation, &m.price);
    let without = reduced_bids_without_losing_completion(i, a, p)?;
    if an.undefined_fee_at != without {
        return failed(vec![an.undefined_fee_at.into(), without.into()]);
    }
    let lowest = set_arg(case, 0)?.min_of()? == *i;
    holds_unless(without.is_empty() != (lowest && grid.len() > 1), "lowest_bidder")
}

fn check_genvick_wrong_fee(case: &[Value]) -> Result<CheckOutcome> {
    let (m, _) = single_mech(case, PriceRule::SecondPrice)?;
    let (i, a, p) = (&m.bidder, &m.allocation, &m.price);
    let w = highest_other_bid_table(i, a, p)?;
    let t = constant_table(i, a, p, Value::Int(1))?;
    Ok(genvick_violation(i, a, p, &w, &t, Rational::zero())?.map(|b| vec![b.to_value()]))
}

// auction_engine, combinatorial

fn worked_example() -> CombinatorialInstance {
    let g1 = FinSet::singleton(Value::sym("g1"));
    let g2 = FinSet::singleton(Value::sym("g2"));
    let both = g1.union(&g2);
    let q = Rational::from_integer;
    let entries = [
        (1, both.clone(), q(10)),
        (1, g1.clone(), q(6)),
        (1, g2.clone(), q(6)),
        (2, both.clone(), q(7)),
        (2, g1, q(5)),
        (2, g2, q(5)),
    ]
    .into_iter()
    .map(|(n, s, v)| (Value::Int(n), s, v));
    CombinatorialInstance::new(both, atoms_from(1, 2), entries).expect("valid example")
}

fn instance_case(inst: &CombinatorialInstance) -> Case {
    vec![
        inst.goods().clone().into(),
        inst.bidders().clone().into(),
        inst.valuation_relation().to_value(),
    ]
}

fn gen_vcg(p: &Params, rng: &mut ChaCha8Rng) -> Result<Vec<Case>> {
    let mut out = vec![instance_case(&worked_example())];
    for _ in 0..p.samples {
        out.push(instance_case(&random_monotone_instance(rng, 4, 3)));
    }
    Ok(out)
}

fn instance_arg(case: &[Value]) -> Result<CombinatorialInstance> {
    CombinatorialInstance::from_values(arg(case, 0)?, arg(case, 1)?, arg(case, 2)?)
}

fn check_vcg_oracle(case: &[Value]) -> Result<CheckOutcome> {
    let inst = instance_arg(case)?;
    let out = clear_vickrey(&inst)?;
    let best = best_assignment_value(&inst, inst.bidders())?;
    if out.welfare != best || welfare(&inst, &out.allocation)? != best {
        return failed(vec![tag("welfare"), Value::number(out.welfare), Value::number(best)]);
    }
    for n in inst.bidders().iter() {
        let own = inst.value(n, &out.allocation.bundle_of(n));
        let expected = vcg_payment(&inst, n, out.welfare, own)?;
        let got = out.payment(n);
        if got != Some(expected) {
            return failed(vec![tag("payment"), n.clone(), out.payments.eval(n), Value::number(expected)]);
        }
    }
    Ok(None)
}

fn check_vcg_nonneg(case: &[Value]) -> Result<CheckOutcome> {
    let inst = instance_arg(case)?;
    let out = clear_vickrey(&inst)?;
    for n in inst.bidders().iter() {
        let own = inst.value(n, &out.allocation.bundle_of(n));
        let pay = out
            .payment(n)
            .ok_or_else(|| Error::domain("missing payment"))?;
        if pay < Rational::zero() || pay > own {
            return failed(vec![n.clone(), Value::number(pay), Value::number(own)]);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn list_encoding_round_trips() {
        let xs = vec![Value::Int(2), Value::Int(0), Value::Int(1)];
        assert_eq!(decode_list(&encode_list(&xs)).unwrap(), xs);
        assert!(decode_list(&Relation::from_pairs([(Value::Int(1), Value::Int(0))]).to_value()).is_err());
    }

    #[test]
    fn family_sizes() {
        assert_eq!(partial_equivalences(&atoms(3)).len(), 15);
        assert_eq!(partial_equivalences(&atoms(2)).len(), 5);
        assert_eq!(single_grids(Profile::Full).len(), 16);
    }

    #[test]
    fn worked_example_matches_oracle() {
        let inst = worked_example();
        let out = clear_vickrey(&inst).unwrap();
        assert_eq!(out.welfare, Rational::from_integer(11));
        assert_eq!(best_assignment_value(&inst, inst.bidders()).unwrap(), out.welfare);
        assert!(check_vcg_oracle(&instance_case(&inst)).unwrap().is_none());
    }
}
