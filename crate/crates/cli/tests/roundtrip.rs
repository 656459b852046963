use coxcomb_cli::document::{FlagsSection, Int, Rat, RingSection};
use coxcomb_cli::{to_canonical_string, InputDocument};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn int() -> impl Strategy<Value = Int> {
    prop_oneof![
        (-100i64..100).prop_map(|x| Int(x.into())),
        any::<i64>().prop_map(|x| Int(x.into())),
        any::<i128>().prop_map(|x| Int(BigInt::from(x) * 1000)),
    ]
}

fn rat() -> impl Strategy<Value = Rat> {
    (int(), 1i64..50).prop_map(|(p, q)| Rat(BigRational::new(p.0, q.into())))
}

fn document() -> impl Strategy<Value = InputDocument> {
    let matrix = prop::collection::vec(prop::collection::vec(int(), 0..4), 0..4);
    let ring = (
        prop::option::of(prop::collection::vec([rat(), rat()], 0..4)),
        prop::collection::vec(prop::collection::vec(int(), 1..3), 0..4),
        prop::option::of(int()),
    )
        .prop_map(|(points, exponent_vectors, m)| RingSection {
            points,
            exponent_vectors,
            m,
        });
    let flags = (any::<Option<bool>>(), any::<Option<bool>>()).prop_map(|(s, c)| FlagsSection {
        spherical: s,
        complexity_one: c,
        ..FlagsSection::default()
    });
    (
        prop::option::of(matrix),
        prop::option::of(ring),
        prop::option::of(flags),
    )
        .prop_map(|(matrix, ring, flags)| InputDocument {
            matrix,
            ring,
            flags,
            ..InputDocument::default()
        })
}

proptest! {
    #[test]
    fn serialize_parse_is_byte_identical(doc in document()) {
        let text = to_canonical_string(&doc);
        let parsed = InputDocument::parse(&text).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(to_canonical_string(&parsed), text);
    }
}
