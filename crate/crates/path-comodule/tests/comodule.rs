use cut_dga::Sequence;
use cycle_engine::{Engine, Theory};
use exact_kernel::{parse_field, FieldElement, Lin};
use itertools::Itertools;
use path_comodule::*;

fn fe(s: &str) -> FieldElement {
    parse_field(s).unwrap()
}

fn binary_letters() -> Vec<FieldElement> {
    vec![fe("0"), fe("1")]
}

fn words(max: usize) -> Vec<Word> {
    (0..=max)
        .flat_map(|n| (0..n).map(|_| ["0", "1"]).multi_cartesian_product().collect_vec())
        .map(|w| Word(w.iter().map(|x| fe(x)).collect()))
        .collect()
}

#[test]
fn comodule_laws_through_depth_four() {
    let points = ["0", "1", "z"];
    for (a, b) in points.iter().cartesian_product(points) {
        let r = comodule_check(&binary_letters(), &fe(a), &fe(b), 4).unwrap();
        assert!(r.passed(), "({a},{b}): {r}");
        assert_eq!(r.words_checked, 31);
    }
}

#[test]
fn laws_hold_with_loops_kept() {
    let m = Comodule::with_algebra(binary_letters(), cut_dga::Cs::keeping_loops());
    let r = comodule_check_with(&m, &fe("0"), &fe("0"), 3).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn splitting_paths_commutes_with_the_coaction() {
    for (a, b, c) in [("0", "z", "1"), ("0", "0", "1"), ("z", "z", "z"), ("0", "1", "z"), ("1", "z", "0")] {
        let r = path_compatibility(&binary_letters(), &fe(a), &fe(b), &fe(c), 3).unwrap();
        assert!(r.is_none(), "({a},{b},{c}): {:?}", r.map(|(w, _)| w.to_string()));
    }
}

#[test]
fn concatenation_does_not_intertwine_the_coaction() {
    let (u, v, residual) = concatenation_defect(&binary_letters(), &fe("0"), &fe("z"), &fe("1"), 2)
        .unwrap()
        .expect("endpoint dependence of the coaction");
    assert!(u.is_empty());
    assert_eq!(v.len(), 2);
    assert!(!residual.is_zero());
}

#[test]
fn splitting_needs_the_relations() {
    // without reduction the single letter already leaves T(0;0;1) - T(0;0;z) - T(z;0;1)
    let m = Comodule::new(binary_letters());
    let w: Word = "0".parse().unwrap();
    let whole = m.augmented_coaction(&w, &fe("0"), &fe("1")).unwrap();
    let first = m.augmented_coaction(&w, &fe("0"), &fe("z")).unwrap();
    let second = m.augmented_coaction(&w, &fe("z"), &fe("1")).unwrap();
    let tail = |x: &Coacted| -> Lin<Vec<cut_dga::Mono>> {
        x.iter()
            .filter(|((l, s), _)| l.is_empty() && !s.is_empty())
            .map(|((_, s), c)| (s.clone(), c.clone()))
            .collect()
    };
    assert!(!tail(&whole).is_zero());
    assert_ne!(tail(&whole), &tail(&first) + &tail(&second));
}

#[test]
fn motivic_coaction_of_one_letter() {
    let m = Comodule::new(binary_letters());
    let e = Engine::new(Theory::Binary(fe("0"), fe("1")));
    let w: Word = "1".parse().unwrap();
    let x = motivic_coaction(&m, &e, &w, &fe("z"), &fe("w")).unwrap();
    assert_eq!(x, Lin::single((w, Vec::new())));
}

#[test]
fn motivic_coaction_of_two_letters() {
    let m = Comodule::new(binary_letters());
    let e = Engine::new(Theory::Binary(fe("0"), fe("1")));
    let w: Word = "10".parse().unwrap();
    let x = motivic_coaction(&m, &e, &w, &fe("z"), &fe("w")).unwrap();
    let mut expect: MotivicCoacted = Lin::single((w.clone(), Vec::new()));
    for (left, piece) in [("0", Sequence::lit("z", &["1"], "0")), ("1", Sequence::lit("1", &["0"], "w"))] {
        for (t, c) in e.rho(&piece).unwrap().terms() {
            expect.add_term((left.parse().unwrap(), vec![t.clone()]), c.clone());
        }
    }
    assert_eq!(x, expect);
    assert!(x.iter().any(|((l, s), _)| l.len() == 1 && s.len() == 1));
}

#[test]
fn motivic_coaction_respects_adams_degree() {
    let m = Comodule::new(binary_letters());
    let e = Engine::new(Theory::Binary(fe("0"), fe("1")));
    for w in words(3) {
        for (a, b) in [("z", "w"), ("0", "z"), ("z", "1")] {
            let x = motivic_coaction(&m, &e, &w, &fe(a), &fe(b)).unwrap();
            for ((l, s), _) in x.iter() {
                let adams: usize = s.iter().map(term_adams).sum();
                assert_eq!(adams, w.len() - l.len(), "{w} on ({a},{b})");
            }
        }
    }
}

#[test]
fn motivic_coaction_has_unit_counit() {
    let m = Comodule::new(binary_letters());
    let e = Engine::new(Theory::Binary(fe("0"), fe("1")));
    for w in words(3) {
        let x = motivic_coaction(&m, &e, &w, &fe("z"), &fe("w")).unwrap();
        let top: Vec<_> = x.iter().filter(|((_, s), _)| s.is_empty()).collect();
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].0 .0, w);
    }
}
