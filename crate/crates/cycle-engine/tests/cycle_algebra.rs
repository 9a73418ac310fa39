use cycle_engine::{differential, int, product, Cycle};
use exact_kernel::{q, FieldElement};
use proptest::prelude::*;

/// `(a·t + b·s + c) / (d·t + e)` with `t` internal and `s` external.
fn coordinate() -> impl Strategy<Value = Option<FieldElement>> {
    (-2i64..=2, -1i64..=1, -2i64..=2, -1i64..=1, 1i64..=2).prop_map(|(a, b, c, d, e)| {
        let t = FieldElement::var(&int(1));
        let s = FieldElement::var("s1");
        let k = FieldElement::from_int;
        let num = &(&(&k(a) * &t) + &(&k(b) * &s)) + &k(c);
        let den = &(&k(d) * &t) + &k(e);
        let f = num.checked_div(&den).ok()?;
        (!f.is_zero() && f.as_constant().is_none()).then_some(f)
    })
}

fn cycle() -> impl Strategy<Value = Cycle> {
    let term = (prop::collection::vec(coordinate(), 1..=3), -3i64..=3);
    prop::collection::vec(term, 1..=2).prop_map(|terms| {
        let mut z = Cycle::zero();
        for (coords, c) in terms {
            if let Some(coords) = coords.into_iter().collect::<Option<Vec<_>>>() {
                let uses_t = coords.iter().any(|f| f.contains_var(&int(1)));
                let params = if uses_t { vec![int(1)] } else { vec![] };
                z.add_coords(coords, &params, q(c));
            }
        }
        z
    })
}

fn parity(z: &Cycle) -> Option<usize> {
    let mut dims = z.terms().map(|(t, _)| t.coords().len() % 2);
    let first = dims.next()?;
    dims.all(|d| d == first).then_some(first)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_graded_commutative(x in cycle(), y in cycle()) {
        let (Some(px), Some(py)) = (parity(&x), parity(&y)) else { return Ok(()) };
        let sign = if px * py == 1 { q(-1) } else { q(1) };
        prop_assert_eq!(product(&x, &y), product(&y, &x).scale(&sign));
    }

    #[test]
    fn product_is_associative(x in cycle(), y in cycle(), z in cycle()) {
        prop_assert_eq!(
            product(&product(&x, &y), &z),
            product(&x, &product(&y, &z))
        );
    }

    #[test]
    fn differential_is_a_derivation(x in cycle(), y in cycle()) {
        let Some(px) = parity(&x) else { return Ok(()) };
        let (Ok(dx), Ok(dy), Ok(dxy)) = (differential(&x), differential(&y), differential(&product(&x, &y)))
        else { return Ok(()) };
        let sign = if px == 1 { q(-1) } else { q(1) };
        let mut rhs = product(&dx, &y);
        rhs.add_scaled(&product(&x, &dy), &sign);
        prop_assert_eq!(dxy, rhs);
    }

    #[test]
    fn differential_squares_to_zero(x in cycle()) {
        if let Ok(dx) = differential(&x) {
            if let Ok(ddx) = differential(&dx) {
                prop_assert!(ddx.is_zero(), "{}", ddx);
            }
        }
    }

    #[test]
    fn differential_commutes_with_scaling(x in cycle(), c in -3i64..=3) {
        if let Ok(dx) = differential(&x) {
            prop_assert_eq!(differential(&x.scale(&q(c))).unwrap(), dx.scale(&q(c)));
        }
    }
}
