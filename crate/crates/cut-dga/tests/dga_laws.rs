use std::collections::BTreeSet;

use bar_complex::{coproduct, shuffle_product, word, Bar, BarComplex, Dga};
use cut_dga::ideal::shuffle_words;
use cut_dga::{
    all_cut_indices, all_cuts, certify, elementary_cut_classes, elementary_cuts, expand, realize,
    regularize, Cs, Cut, Mono, RelationIdeal, Sequence, TMono,
};
use exact_kernel::{parse_field, q, FieldElement, Lin};
use proptest::prelude::*;

fn fe(s: &str) -> FieldElement {
    parse_field(s).unwrap()
}

fn fes(xs: &[&str]) -> Vec<FieldElement> {
    xs.iter().map(|s| fe(s)).collect()
}

fn words(letters: &[FieldElement], n: usize) -> Vec<Vec<FieldElement>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut v = w.clone();
                    v.push(l.clone());
                    v
                })
            })
            .collect()
    })
}

fn generators(letters: &[&str], ends: &[&str], n: usize) -> Vec<Sequence> {
    let (l, e) = (fes(letters), fes(ends));
    let mut out = Vec::new();
    for w in words(&l, n) {
        for a in &e {
            for b in &e {
                out.push(Sequence::new(a.clone(), w.clone(), b.clone()).unwrap());
            }
        }
    }
    out
}

fn seq(a: &FieldElement, w: &[FieldElement], b: &FieldElement) -> Sequence {
    Sequence::new(a.clone(), w.to_vec(), b.clone()).unwrap()
}

/// Cuts by depth-first search over derivation sequences, deduplicated by
/// the tuple of positions.
fn cut_oracle(n: usize) -> BTreeSet<Cut> {
    fn go(cut: Cut, seen: &mut BTreeSet<Cut>) {
        if !seen.insert(cut.clone()) {
            return;
        }
        for r in 0..cut.len() {
            let p = &cut[r];
            let m = p.len() - 2;
            for i in 0..m {
                for j in i + 1..=m {
                    if (i, j) == (0, m) {
                        continue;
                    }
                    let left: Vec<usize> =
                        p[..=i].iter().chain(p[j + 1..].iter()).copied().collect();
                    let right = p[i..=j + 1].to_vec();
                    let mut c = cut.clone();
                    c.splice(r..=r, [left, right]);
                    go(c, seen);
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    go(vec![(0..n + 2).collect()], &mut seen);
    seen
}

#[test]
fn cut_tables_match_the_oracle() {
    for n in 1..=5 {
        let table: BTreeSet<Cut> = all_cut_indices(n).iter().cloned().collect();
        assert_eq!(table.len(), all_cut_indices(n).len(), "duplicates at n={n}");
        assert_eq!(table, cut_oracle(n), "n={n}");
    }
}

#[test]
fn elementary_cuts_are_cuts() {
    for n in 1..=4 {
        let a = seq(&fe("b0"), &fes(&["x1", "x2", "x3", "x4"][..n]), &fe("b1"));
        let all: Vec<_> = all_cuts(&a);
        for c in elementary_cuts(&a) {
            assert!(all.contains(&c));
        }
    }
}

#[test]
fn d_squared_vanishes() {
    for cs in [Cs::default(), Cs::keeping_loops()] {
        for n in 1..=5 {
            for a in generators(&["0", "1", "z"], &["0", "1", "z", "w"], n) {
                let da = cs.d_gen(&a);
                assert!(cs.differential(&da).is_zero(), "{a}");
            }
        }
    }
}

#[test]
fn t_elements_are_cocycles() {
    for (cs, max_n) in [(Cs::default(), 5), (Cs::keeping_loops(), 4)] {
        let bar = BarComplex::trivial(&cs);
        for n in 1..=max_n {
            for a in generators(&["0", "1", "z"], &["0", "1", "z", "w"], n) {
                let t = cs.t_element(&a);
                assert!(bar.is_cocycle(&t).is_ok(), "{a}");
            }
        }
    }
}

#[test]
fn t_element_of_two_interior() {
    let cs = Cs::default();
    let s = Sequence::lit;
    let a = s("a0", &["a1", "a2"], "a3");
    let m = |x: Sequence| Mono::from_factors(vec![x]).unwrap().0;
    let mut expect = word(vec![m(a.clone())]);
    expect.add_scaled(
        &word(vec![m(s("a0", &["a2"], "a3")), m(s("a0", &["a1"], "a2"))]),
        &q(1),
    );
    expect.add_scaled(
        &word(vec![m(s("a0", &["a1"], "a3")), m(s("a1", &["a2"], "a3"))]),
        &q(1),
    );
    assert_eq!(cs.t_element(&a), expect);
}

fn split(x: &Bar<(), Mono>) -> Lin<(Vec<Mono>, Vec<Mono>)> {
    coproduct(x)
}

#[test]
fn coproduct_of_t_is_the_elementary_cut_sum() {
    for cs in [Cs::default(), Cs::keeping_loops()] {
        for n in 1..=4 {
            let mut cases = vec![seq(
                &fe("b0"),
                &fes(&["x1", "x2", "x3", "x4"][..n]),
                &fe("b1"),
            )];
            cases.extend(generators(&["0", "1"], &["0", "1", "z"], n));
            for a in cases {
                let t = cs.t_element(&a);
                let mut expect: Lin<(Vec<Mono>, Vec<Mono>)> = Lin::zero();
                for (w, c) in t.iter() {
                    expect.add_term((Vec::new(), w.slots.clone()), c.clone());
                }
                for idx in elementary_cut_classes(a.n()) {
                    let cut = realize(&a, &idx);
                    let left = cs.t_element(&cut[0]);
                    let mut right = bar_complex::empty_word();
                    for p in &cut[1..] {
                        right = shuffle_product(&cs, &right, &cs.t_element(p)).unwrap();
                    }
                    for (l, cl) in left.iter() {
                        for (r, cr) in right.iter() {
                            expect.add_term((l.slots.clone(), r.slots.clone()), cl * cr);
                        }
                    }
                }
                assert_eq!(split(&t), expect, "{a}");
            }
        }
    }
}

fn tp(a: Sequence) -> Bar<(), Mono> {
    Cs::default().t_element(&a)
}

fn mul(x: &Bar<(), Mono>, y: &Bar<(), Mono>) -> Bar<(), Mono> {
    shuffle_product(&Cs::default(), x, y).unwrap()
}

/// T̃ of a possibly empty interior, with the empty case equal to 1.
fn tp_or_one(a: &FieldElement, w: &[FieldElement], b: &FieldElement) -> Bar<(), Mono> {
    if w.is_empty() {
        bar_complex::empty_word()
    } else {
        tp(seq(a, w, b))
    }
}

#[test]
fn path_composition_mod_ideal() {
    let letters = fes(&["0", "1", "z"]);
    let points = fes(&["0", "1", "z", "w"]);
    let ideal = RelationIdeal::new(letters.clone(), points.clone());
    for n in 1..=3 {
        for w in words(&letters, n) {
            for a in &points {
                for b in &points {
                    for c in &points {
                        let mut lhs = Lin::zero();
                        for i in 0..=n {
                            let x = tp_or_one(a, &w[..i], c);
                            let y = tp_or_one(c, &w[i..], b);
                            lhs = &lhs + &mul(&x, &y);
                        }
                        let diff = &lhs - &tp(seq(a, &w, b));
                        assert!(ideal.is_zero_bar(&diff).unwrap(), "{a};{w:?};{b} via {c}");
                    }
                }
            }
        }
    }
}

#[test]
fn shuffle_mod_ideal() {
    let letters = fes(&["0", "1", "z"]);
    let points = fes(&["0", "1", "w"]);
    let ideal = RelationIdeal::new(letters.clone(), points.clone());
    for total in 2..=4 {
        for nu in 1..total {
            for u in words(&letters, nu) {
                for v in words(&letters, total - nu) {
                    for a in &points {
                        for b in &points {
                            let lhs = mul(&tp(seq(a, &u, b)), &tp(seq(a, &v, b)));
                            let mut rhs = Lin::zero();
                            for s in shuffle_words(&u, &v) {
                                rhs = &rhs + &tp(seq(a, &s, b));
                            }
                            assert!(ideal.is_zero_bar(&(&lhs - &rhs)).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn inversion_mod_ideal() {
    let letters = fes(&["0", "1", "z"]);
    let points = fes(&["0", "1", "w"]);
    let ideal = RelationIdeal::new(letters.clone(), points.clone());
    for n in 1..=4 {
        for w in words(&letters, n) {
            for a in &points {
                for b in &points {
                    let mut r = w.clone();
                    r.reverse();
                    let sign = if n % 2 == 0 { q(1) } else { q(-1) };
                    let diff = &tp(seq(a, &w, b)) - &tp(seq(b, &r, a)).scale(&sign);
                    assert!(ideal.is_zero_bar(&diff).unwrap(), "{a};{w:?};{b}");
                }
            }
        }
    }
}

#[test]
fn differential_stable_ideal() {
    let ideal = RelationIdeal::new(fes(&["0", "1"]), fes(&["z"]));
    assert!(ideal.check_differential_stable(4).is_ok());
    let ideal = RelationIdeal::new(fes(&["0", "1", "z"]), fes(&["w"]));
    assert!(ideal.check_differential_stable(3).is_ok());
}

#[test]
fn regularization_is_sound_over_zero_one() {
    let letters = fes(&["0", "1"]);
    let ideal = RelationIdeal::new(letters.clone(), vec![]);
    let mut checked = 0;
    for n in 1..=3 {
        for a in generators(&["0", "1"], &["0", "1"], n) {
            if a.is_convergent() {
                continue;
            }
            let r = regularize(&a);
            for m in r.keys() {
                for f in m.factors() {
                    assert!(f.is_convergent() || (f.n() == 1 && f.start() == &f.interior()[0]));
                }
            }
            assert!(certify(&ideal, &a, &r).unwrap(), "{a}");
            checked += 1;
        }
    }
    assert!(checked > 0);
}

#[test]
fn constant_words_are_powers() {
    let ideal = RelationIdeal::new(fes(&["x", "a", "b"]), vec![]);
    for (a0, l, b) in [("a", "x", "b"), ("a", "a", "b"), ("a", "b", "b")] {
        for n in 1..=4 {
            let a = seq(&fe(a0), &vec![fe(l); n], &fe(b));
            let r = regularize(&a);
            assert!(certify(&ideal, &a, &r).unwrap(), "{a}");
            if l == "x" {
                let base = TMono::of(seq(&fe(a0), &[fe(l)], &fe(b)));
                let mono = (1..n).fold(base.clone(), |m, _| m.times(&base));
                let fact: i64 = (1..=n as i64).product();
                assert_eq!(r, Lin::term(mono, q(1) / q(fact)));
            }
        }
    }
}

#[test]
fn regularized_example_certifies_in_bar() {
    let a: Sequence = "0;0,1;1".parse().unwrap();
    let cs = Cs::default();
    let e = expand(&cs, &regularize(&a));
    let ideal = RelationIdeal::new(fes(&["0", "1"]), vec![]);
    assert!(ideal.is_zero_bar(&(&e - &cs.t_element(&a))).unwrap());
}

#[test]
fn loops_vanish_only_when_killed() {
    let a = Sequence::lit("0", &["1", "1"], "0");
    assert!(Cs::default().gen(&a).is_zero());
    assert!(!Cs::keeping_loops().gen(&a).is_zero());
    assert_eq!(
        Cs::keeping_loops().degree(&Mono::from_factors(vec![a]).unwrap().0),
        1
    );
}

fn generator() -> impl Strategy<Value = Sequence> {
    let entry = prop::sample::select(vec!["0", "1", "z", "w"]);
    (
        entry.clone(),
        prop::collection::vec(entry.clone(), 1..=5),
        entry,
    )
        .prop_map(|(a, w, b)| Sequence::lit(a, &w, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn differential_is_a_derivation(a in generator(), b in generator()) {
        let cs = Cs::keeping_loops();
        let (x, y) = (cs.gen(&a), cs.gen(&b));
        let lhs = cs.differential(&cs.mul_lin(&x, &y));
        let rhs = &cs.mul_lin(&cs.differential(&x), &y) - &cs.mul_lin(&x, &cs.differential(&y));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn t_has_one_word_per_cut(a in generator()) {
        let cs = Cs::keeping_loops();
        let total = cs.t_element(&a).iter().fold(q(0), |acc, (_, c)| acc + c);
        prop_assert_eq!(total, q(all_cut_indices(a.n()).len() as i64));
    }

    #[test]
    fn sequence_literals_round_trip(a in generator()) {
        prop_assert_eq!(a.to_string().parse::<Sequence>().unwrap(), a);
    }
}
