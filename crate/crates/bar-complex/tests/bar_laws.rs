use bar_complex::toy::{Massey, MasseyGen, GENERATORS};
use bar_complex::{
    coproduct, counit, empty_word, shuffle_product, shuffles, word, Bar, BarComplex, BarWord, Dga,
    RightModule,
};
use exact_kernel::{q, Lin};
use proptest::prelude::*;

/// A as a right module over itself.
struct Regular;

impl RightModule<Massey> for Regular {
    type Elt = MasseyGen;
    fn degree(&self, m: &MasseyGen) -> i32 {
        Massey.degree(m)
    }
    fn d(&self, m: &MasseyGen) -> Lin<MasseyGen> {
        Massey.d(m)
    }
    fn act(&self, dga: &Massey, m: &MasseyGen, a: &MasseyGen) -> Lin<MasseyGen> {
        dga.mul(m, a)
    }
}

fn monomial() -> impl Strategy<Value = MasseyGen> {
    (1u32..64).prop_filter_map("degree", |mask| {
        let names: Vec<&str> =
            (0..6).filter(|i| mask >> i & 1 == 1).map(|i| GENERATORS[i]).collect();
        (names.len() <= 3).then(|| MasseyGen::mono(&names))
    })
}

fn bar_element() -> impl Strategy<Value = Bar<(), MasseyGen>> {
    prop::collection::vec((-2i64..=2, prop::collection::vec(monomial(), 0..4)), 1..4).prop_map(
        |ws| {
            let mut out = Lin::zero();
            for (c, slots) in ws {
                out.add_scaled(&word(slots), &q(c));
            }
            out
        },
    )
}

fn bar_degree(slots: &[MasseyGen]) -> i32 {
    slots.iter().map(|a| Massey.degree(a) - 1).sum()
}

type Triple = (Vec<MasseyGen>, Vec<MasseyGen>, Vec<MasseyGen>);

fn left_then(x: &Bar<(), MasseyGen>) -> Lin<Triple> {
    let mut out = Lin::zero();
    for ((l, r), c) in coproduct(x).iter() {
        for ((a, b), c2) in coproduct(&word(l.clone())).iter() {
            out.add_term((a.clone(), b.clone(), r.clone()), c * c2);
        }
    }
    out
}

fn right_then(x: &Bar<(), MasseyGen>) -> Lin<Triple> {
    let mut out = Lin::zero();
    for ((l, r), c) in coproduct(x).iter() {
        for ((a, b), c2) in coproduct(&word(r.clone())).iter() {
            out.add_term((l.clone(), a.clone(), b.clone()), c * c2);
        }
    }
    out
}

fn shuffle_words(u: &[MasseyGen], v: &[MasseyGen]) -> Lin<Vec<MasseyGen>> {
    let odd = |s: &[MasseyGen]| s.iter().map(|a| (Massey.degree(a) - 1) % 2 != 0).collect::<Vec<_>>();
    let mut out = Lin::zero();
    shuffles(u, v, &odd(u), &odd(v), &mut |w, s| out.add_term(w, if s { q(-1) } else { q(1) }));
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bar_differential_squares_to_zero(x in bar_element()) {
        let b = BarComplex::trivial(&Massey);
        prop_assert!(b.d(&b.d(&x)).is_zero());
    }

    #[test]
    fn module_bar_differential_squares_to_zero(
        m in monomial(),
        slots in prop::collection::vec(monomial(), 0..4),
    ) {
        let b = BarComplex::new(&Massey, &Regular);
        let x: Bar<MasseyGen, MasseyGen> = Lin::single(BarWord { module: m, slots });
        prop_assert!(b.d(&b.d(&x)).is_zero());
    }

    #[test]
    fn coproduct_is_coassociative_and_counital(x in bar_element()) {
        prop_assert_eq!(left_then(&x), right_then(&x));
        let mut back = Lin::zero();
        for ((l, r), c) in coproduct(&x).iter() {
            back.add_scaled(&word(r.clone()), &(c * &counit(&word(l.clone()))));
        }
        prop_assert_eq!(back, x);
    }

    #[test]
    fn coproduct_is_multiplicative(x in bar_element(), y in bar_element()) {
        let lhs = coproduct(&shuffle_product(&Massey, &x, &y).unwrap());
        let mut rhs = Lin::zero();
        for ((a, b), ca) in coproduct(&x).iter() {
            for ((c, d), cc) in coproduct(&y).iter() {
                let koszul = (bar_degree(b) * bar_degree(c)) % 2 != 0;
                let s = if koszul { q(-1) } else { q(1) };
                for (ac, c1) in shuffle_words(a, c).iter() {
                    for (bd, c2) in shuffle_words(b, d).iter() {
                        rhs.add_term((ac.clone(), bd.clone()), &s * &(ca * cc) * c1 * c2);
                    }
                }
            }
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shuffle_is_commutative_up_to_sign(u in prop::collection::vec(monomial(), 0..3),
                                         v in prop::collection::vec(monomial(), 0..3)) {
        let s = if (bar_degree(&u) * bar_degree(&v)) % 2 != 0 { q(-1) } else { q(1) };
        let x = shuffle_product(&Massey, &word(u.clone()), &word(v.clone())).unwrap();
        let y = shuffle_product(&Massey, &word(v), &word(u)).unwrap();
        prop_assert_eq!(x, y.scale(&s));
    }

    #[test]
    fn differential_is_a_derivation_of_shuffle(u in prop::collection::vec(monomial(), 0..3),
                                               v in prop::collection::vec(monomial(), 0..3)) {
        let b = BarComplex::trivial(&Massey);
        let (x, y) = (word(u.clone()), word(v));
        let lhs = b.d(&shuffle_product(&Massey, &x, &y).unwrap());
        let s = if bar_degree(&u) % 2 != 0 { q(-1) } else { q(1) };
        let rhs = &shuffle_product(&Massey, &b.d(&x), &y).unwrap()
            + &shuffle_product(&Massey, &x, &b.d(&y)).unwrap().scale(&s);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn massey_cocycle_is_closed() {
    // [g] - [f1|e3] - [e1|f2] + [e1|e2|e3] is a degree-0 cocycle.
    let b = BarComplex::trivial(&Massey);
    let m = |a: &[&str]| MasseyGen::mono(a);
    let x = &(&word(vec![m(&["g"])]) - &word(vec![m(&["f1"]), m(&["e3"])]))
        - &word(vec![m(&["e1"]), m(&["f2"])]);
    let x = &x + &word(vec![m(&["e1"]), m(&["e2"]), m(&["e3"])]);
    let r = b.is_cocycle(&x);
    let y = &x + &word(vec![m(&["f1"]), m(&["f2"])]);
    assert!(r.is_ok(), "{r:?}");
    assert!(b.is_cocycle(&y).is_err());
    assert!(b.is_cocycle(&empty_word()).is_ok());
}
