use exact_kernel::{
    q, span_reduce, Affine, FieldElement, KernelError, Monomial, Poly, SpanAnswer, Target, Q,
};
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x", "y", "z"];

/// Multi-affine polynomials with up to three terms, the shape cycle coordinates take.
fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-3i64..=3, 0..=1u32, 0..=1u32, 0..=1u32), 1..4).prop_map(
        |terms| {
            let mut p = Poly::zero();
            for (c, ex, ey, ez) in terms {
                let mut m = Monomial::one();
                for (name, e) in NAMES.iter().zip([ex, ey, ez]) {
                    for _ in 0..e {
                        m = m.mul(&Monomial::var(name));
                    }
                }
                p = &p + &Poly::monomial(m, q(c));
            }
            p
        },
    )
}

fn field_strategy() -> impl Strategy<Value = FieldElement> {
    (poly_strategy(), poly_strategy()).prop_filter_map("zero denominator", |(n, d)| {
        FieldElement::new(n, d).ok()
    })
}

/// Elements affine in `x`: (a x + b)/(c x + d) with a, b, c, d free of x.
fn affine_strategy() -> impl Strategy<Value = FieldElement> {
    (-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3, field_strategy()).prop_filter_map(
        "degenerate",
        |(a, b, c, d, g)| {
            let x = FieldElement::var("x");
            let g = g.substitute("x", &FieldElement::var("y")).ok()?;
            let num = &(&x * &FieldElement::from_int(a)) + &(&g * &FieldElement::from_int(b));
            let den = &(&x * &FieldElement::from_int(c)) + &FieldElement::from_int(d);
            num.checked_div(&den).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn substitute_identity_round_trips(f in field_strategy(), g in field_strategy()) {
        let x = FieldElement::var("x");
        prop_assert_eq!(f.substitute("x", &x).unwrap(), f.clone());
        // Rename x -> w and back.
        let w = FieldElement::var("w");
        if let Ok(h) = f.substitute("x", &w) {
            prop_assert_eq!(h.substitute("w", &x).unwrap(), f.clone());
        }
        // Substitution is a ring morphism.
        if let (Ok(a), Ok(b)) = (f.substitute("y", &g), g.substitute("y", &g)) {
            let fg = &f * &g;
            if let Ok(c) = fg.substitute("y", &g) {
                prop_assert_eq!(c, &a * &b);
            }
        }
    }

    #[test]
    fn field_axioms(a in field_strategy(), b in field_strategy(), c in field_strategy()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        }
    }

    #[test]
    fn solve_affine_solutions_vanish(f in affine_strategy()) {
        match f.solve_affine_with("x", Target::Zero, |v| v == "x") {
            Ok(Affine::Unique(g)) => prop_assert!(f.substitute("x", &g).unwrap().is_zero()),
            Ok(Affine::Identical) => prop_assert!(f.is_zero()),
            Ok(Affine::NoSolution) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
        if let Ok(Affine::Unique(g)) = f.solve_affine_with("x", Target::Infinity, |v| v == "x") {
            prop_assert_eq!(f.substitute("x", &g), Err(KernelError::DivisionByZero));
        }
    }

    #[test]
    fn span_reduce_is_a_projection(
        gens in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 0..4),
        v in prop::collection::vec(-3i64..=3, 4),
    ) {
        let gens: Vec<Vec<Q>> = gens.iter().map(|w| w.iter().map(|&c| q(c)).collect()).collect();
        let v: Vec<Q> = v.iter().map(|&c| q(c)).collect();
        match span_reduce(&gens, &v).unwrap() {
            SpanAnswer::InSpan(c) => {
                for j in 0..4 {
                    let s = (0..gens.len()).fold(q(0), |acc, i| acc + &c[i] * &gens[i][j]);
                    prop_assert_eq!(&s, &v[j]);
                }
            }
            SpanAnswer::NotInSpan(r) => {
                prop_assert_eq!(span_reduce(&gens, &r).unwrap(), SpanAnswer::NotInSpan(r.clone()));
                // v - r lies in the span.
                let diff: Vec<Q> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
                prop_assert!(matches!(span_reduce(&gens, &diff).unwrap(), SpanAnswer::InSpan(_)));
            }
        }
    }

    #[test]
    fn display_parses_back(f in field_strategy()) {
        prop_assert_eq!(exact_kernel::parse_field(&f.to_string()).unwrap(), f);
    }
}
