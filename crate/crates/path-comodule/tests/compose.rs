use exact_kernel::{parse_field, q, FieldElement};
use path_comodule::{path_compose, NcSeries, Word};
use proptest::prelude::*;

fn series(a: &'static str, b: &'static str) -> impl Strategy<Value = NcSeries> {
    let term = (prop::collection::vec(0..2u8, 0..=3), -3i64..=3);
    prop::collection::vec(term, 0..=4).prop_map(move |terms| {
        let fe = |s: &str| -> FieldElement { parse_field(s).unwrap() };
        let mut x = NcSeries::zero(fe(a), fe(b), 3);
        for (letters, c) in terms {
            let w = Word(letters.iter().map(|l| FieldElement::from_int(i64::from(*l))).collect());
            x.add_term(w, q(c));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(u in series("0", "z"), v in series("z", "1"), w in series("1", "w")) {
        let left = path_compose(&path_compose(&u, &v).unwrap(), &w).unwrap();
        let right = path_compose(&u, &path_compose(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn trivial_path_is_a_unit(u in series("0", "z")) {
        let one_start = NcSeries::one(u.start().clone(), u.start().clone(), 3);
        let one_end = NcSeries::one(u.end().clone(), u.end().clone(), 3);
        prop_assert_eq!(path_compose(&one_start, &u).unwrap(), u.clone());
        prop_assert_eq!(path_compose(&u, &one_end).unwrap(), u);
    }
}
