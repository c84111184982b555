use proptest::prelude::*;
use vickset::{parse_value, serialize_value};
use vickset_core::value::canonicalize;
use vickset_core::{RawValue, Value};

fn value() -> impl Strategy<Value = Value> {
    let leaf = prop_oneof![
        any::<i64>().prop_map(RawValue::Int),
        (-50i64..50, 1i64..9).prop_map(|(n, d)| RawValue::Rat(n, d)),
        "[a-z][a-z0-9_]{0,3}".prop_map(RawValue::Sym),
        Just(RawValue::Undefined),
    ];
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| RawValue::Pair(Box::new(a), Box::new(b))),
            prop::collection::vec(inner, 0..4).prop_map(RawValue::Set),
        ]
    })
    .prop_map(|r| canonicalize(&r).unwrap())
}

proptest! {
    #[test]
    fn text_round_trip(v in value()) {
        let text = serialize_value(&v).unwrap();
        prop_assert_eq!(parse_value(&text).unwrap(), v);
    }
}
