use cut_dga::Sequence;
use cycle_engine::verify::{condition_three, rho_commutes_with_d};
use cycle_engine::{
    admissible_check, delta_apply, differential, product, tree_terms, verify_theory, Cycle,
    CycleError, Engine, Theory,
};
use exact_kernel::{parse_field, q, FieldElement};
use itertools::Itertools;

fn fe(s: &str) -> FieldElement {
    parse_field(s).unwrap()
}

fn binary() -> Theory {
    Theory::Binary(fe("0"), fe("1"))
}

fn words(alphabet: &[&'static str], n: usize) -> Vec<Vec<&'static str>> {
    (0..n)
        .map(|_| alphabet.iter().copied())
        .multi_cartesian_product()
        .collect()
}

/// Every admitted word over `alphabet` with `n ≤ max_n`, between `start` and `end`.
fn admitted(
    engine: &Engine,
    start: &str,
    alphabet: &[&'static str],
    end: &str,
    max_n: usize,
) -> Vec<Sequence> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for w in words(alphabet, n) {
            let a = Sequence::lit(start, &w, end);
            if engine.theory().admits(&a) {
                out.push(a);
            }
        }
    }
    out
}

fn sweep(engine: &Engine, seqs: &[Sequence]) {
    let mut failures = Vec::new();
    for a in seqs {
        let report = verify_theory(engine, a).unwrap();
        if let Some(c) = report.first_failure() {
            failures.push(format!("{a}: {} {:.400}", c.name, c.detail));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn seq_distinct_axioms_through_depth_four() {
    let e = Engine::new(Theory::SeqDistinct);
    sweep(&e, &admitted(&e, "0", &["1", "z", "0"], "w", 4));
}

#[test]
fn zero_generic_axioms_through_depth_four() {
    let e = Engine::new(Theory::AGeneric(fe("0")));
    sweep(&e, &admitted(&e, "x", &["0", "y", "1"], "w", 4));
}

#[test]
fn binary_axioms_through_depth_three() {
    let e = Engine::new(binary());
    let seqs = admitted(&e, "z", &["0", "1"], "w", 3);
    assert_eq!(seqs.len(), 14);
    sweep(&e, &seqs);
}

#[test]
fn binary_with_other_letters() {
    let e = Engine::new(Theory::Binary(fe("2"), fe("-1")));
    let seqs = admitted(&e, "z", &["2", "-1"], "w", 3);
    sweep(&e, &seqs);
}

#[test]
fn negated_back_coordinate_breaks_condition_three() {
    let e = Engine::new(binary()).with_negated_back(true);
    let short = Sequence::lit("z", &["0", "1"], "w");
    assert!(verify_theory(&e, &short).unwrap().passed());
    let a = Sequence::lit("z", &["0", "0", "1"], "w");
    let (lhs, rhs) = condition_three(&e, &a, 1).unwrap();
    assert_ne!(lhs, rhs);
    assert!(admissible_check(&e.rho1(&a).unwrap()).is_empty());
}

#[test]
fn rho_commutes_with_differential() {
    let cases = [
        (Theory::SeqDistinct, Sequence::lit("0", &["1", "z", "1"], "w")),
        (Theory::AGeneric(fe("0")), Sequence::lit("x", &["y", "0", "1"], "w")),
        (binary(), Sequence::lit("z", &["1", "0", "1"], "w")),
        (binary(), Sequence::lit("z", &["0", "1", "1"], "w")),
    ];
    for (theory, a) in cases {
        let c = rho_commutes_with_d(&Engine::new(theory), &a).unwrap();
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn loops_integrate_to_zero() {
    let e = Engine::new(Theory::SeqDistinct);
    for a in [
        Sequence::lit("0", &["1", "z"], "0"),
        Sequence::lit("w", &["1", "z", "0"], "w"),
    ] {
        assert!(!e.rho1(&a).unwrap().is_zero());
        assert!(e.rho(&a).unwrap().is_zero());
    }
}

#[test]
fn differential_squares_to_zero_on_theory_cycles() {
    let cases = [
        (Theory::SeqDistinct, Sequence::lit("0", &["1", "z", "1", "0"], "w")),
        (Theory::AGeneric(fe("0")), Sequence::lit("x", &["y", "0", "0"], "w")),
        (binary(), Sequence::lit("z", &["0", "1", "0"], "w")),
    ];
    for (theory, a) in cases {
        let e = Engine::new(theory);
        for k in 1..=a.n() {
            let z = e.rho_k(&a, k).unwrap();
            assert!(differential(&differential(&z).unwrap()).unwrap().is_zero(), "{a} k={k}");
        }
    }
}

#[test]
fn delta_squares_to_zero() {
    let e = Engine::new(Theory::SeqDistinct);
    let a = Sequence::lit("0", &["1", "z", "1"], "w");
    for k in 2..=3 {
        let z = e.rho_k(&a, k).unwrap();
        let once = delta_apply(&z, k, a.start(), a.end()).unwrap();
        let twice = delta_apply(&once, k - 1, a.start(), a.end()).unwrap();
        assert!(twice.is_zero(), "k={k}: {twice}");
    }
}

#[test]
fn delta_is_a_derivation_against_closed_factors() {
    let e = Engine::new(Theory::SeqDistinct);
    let a = Sequence::lit("0", &["1", "z"], "w");
    let b = Sequence::lit("1", &["0"], "y");
    let z = e.rho_k(&a, 2).unwrap();
    let closed = e.rho(&b).unwrap();
    let lhs = delta_apply(&product(&z, &closed), 2, a.start(), a.end()).unwrap();
    let rhs = product(&delta_apply(&z, 2, a.start(), a.end()).unwrap(), &closed);
    assert_eq!(lhs, rhs);
}

#[test]
fn tree_expansion_sums_to_rho1() {
    let cases = [
        (Theory::SeqDistinct, Sequence::lit("0", &["1", "z", "1", "0"], "w")),
        (Theory::AGeneric(fe("0")), Sequence::lit("x", &["y", "0", "1"], "w")),
        (binary(), Sequence::lit("z", &["1", "0", "1"], "w")),
        (binary(), Sequence::lit("z", &["0", "1", "1"], "w")),
    ];
    for (theory, a) in cases {
        let e = Engine::new(theory);
        let mut sum = Cycle::zero();
        for t in tree_terms(&e, &a).unwrap() {
            assert_eq!(t.tree.leaves(), a.n());
            sum.add_scaled(&t.cycle, &q(1));
        }
        assert_eq!(sum, e.rho1(&a).unwrap(), "{a}");
    }
}

/// Decorated trees with nonzero contribution, counted from the decoration
/// rule alone: a leaf equal to `α_ε` is empty, a two-leaf block is empty when
/// its letters agree, and root terms 2, 3 (5, 6) need more than one leaf in
/// the left (right) block.
fn decorated_count(w: &[u8], eps: u8) -> usize {
    match w.len() {
        1 => usize::from(w[0] != eps),
        2 => usize::from(w[0] != w[1]),
        n => {
            let mut total = 0;
            for m in 1..n {
                let (l, r) = w.split_at(m);
                let c = |x: &[u8], e| decorated_count(x, e);
                total += c(l, 1) * c(r, 0) + c(l, 0) * c(r, 1);
                if l.len() > 1 {
                    total += c(l, 1) * c(r, 0) + c(l, 0) * c(r, 1);
                }
                if r.len() > 1 {
                    total += c(l, 0) * c(r, 1) + c(l, 1) * c(r, 0);
                }
            }
            total
        }
    }
}

#[test]
fn binary_decorated_tree_counts() {
    let e = Engine::new(binary());
    for w in words(&["0", "1"], 3) {
        let a = Sequence::lit("z", &w, "w");
        let letters: Vec<u8> = w.iter().map(|x| x.parse().unwrap()).collect();
        let terms = tree_terms(&e, &a).unwrap();
        let expect = decorated_count(&letters, 0) + decorated_count(&letters, 1);
        let nonzero = terms.iter().filter(|t| !t.cycle.is_zero()).count();
        assert_eq!(nonzero, expect, "{a}");
        for t in &terms {
            assert!(t.eps.is_some());
            assert!(matches!(t.decoration[0], 1..=6));
        }
    }
}

#[test]
fn inadmissible_sequences_are_rejected() {
    let e = Engine::new(binary());
    let err = e.rho1(&Sequence::lit("z", &["0", "2"], "w")).unwrap_err();
    assert!(matches!(err, CycleError::NotAdmitted { .. }));
    let e = Engine::new(Theory::SeqDistinct);
    let err = e.rho1(&Sequence::lit("0", &["1", "1"], "w")).unwrap_err();
    assert!(matches!(err, CycleError::NotAdmitted { .. }));
    let err = e.rho1(&Sequence::lit("0", &["t1"], "w")).unwrap_err();
    assert!(matches!(err, CycleError::ReservedName(_)));
}
