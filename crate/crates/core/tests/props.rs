use proptest::prelude::*;
use vickset_core::value::canonicalize;
use vickset_core::{RawValue, Relation, Value};

fn raw() -> impl Strategy<Value = RawValue> {
    let leaf = prop_oneof![
        (-20i64..20).prop_map(RawValue::Int),
        (-20i64..20, 1i64..7).prop_map(|(n, d)| RawValue::Rat(n, d)),
        "[a-c]{1,2}".prop_map(RawValue::Sym),
        Just(RawValue::Undefined),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RawValue::Pair(Box::new(a), Box::new(b))),
            prop::collection::vec(inner, 0..4).prop_map(RawValue::Set),
        ]
    })
}

fn relation() -> impl Strategy<Value = Relation> {
    prop::collection::vec((0i64..4, 0i64..4), 0..8)
        .prop_map(|ps| Relation::from_pairs(ps.into_iter().map(|(x, y)| (Value::Int(x), Value::Int(y)))))
}

proptest! {
    #[test]
    fn canonical_form_is_a_fixpoint(r in raw()) {
        let v = canonicalize(&r).unwrap();
        prop_assert_eq!(canonicalize(&v.to_raw()).unwrap(), v);
    }

    #[test]
    fn set_order_and_multiplicity_are_irrelevant(items in prop::collection::vec(raw(), 0..5)) {
        let mut shuffled = items.clone();
        shuffled.reverse();
        shuffled.extend(items.iter().cloned());
        prop_assert_eq!(
            canonicalize(&RawValue::Set(items)).unwrap(),
            canonicalize(&RawValue::Set(shuffled)).unwrap()
        );
    }

    #[test]
    fn order_agrees_with_equality(a in raw(), b in raw(), c in raw()) {
        let (a, b, c) = (canonicalize(&a).unwrap(), canonicalize(&b).unwrap(), canonicalize(&c).unwrap());
        prop_assert_eq!(a.cmp(&b) == std::cmp::Ordering::Equal, a == b);
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn converse_is_an_involution(r in relation()) {
        prop_assert_eq!(r.converse().converse(), r);
    }

    #[test]
    fn paste_overrides_on_the_right(r in relation(), s in relation()) {
        let p = r.paste(&s);
        prop_assert_eq!(p.domain(), r.domain().union(&s.domain()));
        for x in s.domain().iter() {
            prop_assert_eq!(p.image_of(x), s.image_of(x));
        }
    }
}
