//! The acceptance criteria as runnable checks, one report line each.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::time::Instant;

use bar_complex::{coproduct, empty_word, shuffle_product, word, Bar, BarComplex};
use cut_dga::{
    all_cuts, certify, elementary_cut_classes, realize, regularize, shuffle_words, Cs, Mono,
    RelationIdeal, Sequence, TMono,
};
use cycle_engine::verify::rho_commutes_with_d;
use cycle_engine::{verify_theory, Engine, Theory};
use exact_kernel::{parse_field, q, FieldElement, Lin};
use hodge_ledger::{
    build_z_gamma, comparison_map, formal_differential, lambda_realize, phi_image, FormalModule,
    Realization,
};
use path_comodule::comodule_check;
use period_lab::{
    epsilon_extrapolate, feynman_dyson, iterated_integral, li_word, mhts_check, multiple_polylog,
    shuffle_residual, zeta, FramedMhts, NumericConfig, PathSpec, PeriodEntry, C64,
};
use serde::Serialize;

pub const LI2_TOL: f64 = 1e-10;
pub const SERIES_QUADRATURE_TOL: f64 = 1e-8;
pub const EULER_TOL: f64 = 1e-8;
pub const REGULARIZED_LOG_TOL: f64 = 1e-6;
pub const PHI_SHUFFLE_TOL: f64 = 1e-8;
pub const PHI_COEFFICIENT_TOL: f64 = 1e-6;
pub const LAMBDA_PHI_TOL: f64 = 1e-6;
pub const NUMERIC_ITEM_SECONDS: f64 = 30.0;

type Check = fn(&SuiteOptions) -> Result<String, String>;

/// Number, name, time budget in seconds and check of each criterion.
pub const CRITERIA: [(usize, &str, Option<f64>, Check); 11] = [
    (1, "d^2 = 0 on generators", Some(10.0), d_squared),
    (2, "T(A) is a bar cocycle", Some(60.0), t_cocycle),
    (3, "coproduct of T(A) over elementary cuts", None, coproduct_formula),
    (4, "relations of T~ modulo the ideal", None, ideal_identities),
    (5, "regularization soundness", None, regularization),
    (6, "comodule axioms", None, comodule_axioms),
    (7, "integration theory axioms", Some(300.0), theory_axioms),
    (8, "rho is a DGA morphism killing loops", None, rho_morphism),
    (9, "period numerics", Some(6.0 * NUMERIC_ITEM_SECONDS), numerics),
    (10, "Hodge ledger", None, hodge_ledger),
    (11, "MHTS condition check", None, mhts_examples),
];

#[derive(Clone, Debug, Default)]
pub struct SuiteOptions {
    /// Caps every interior length below its default.
    pub max_n: Option<usize>,
}

impl SuiteOptions {
    fn cap(&self, n: usize) -> usize {
        self.max_n.map_or(n, |m| m.min(n))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: Option<f64>,
}

impl Outcome {
    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        let budget = self.budget_seconds.map(|b| format!(" / {b:.0} s")).unwrap_or_default();
        format!("[{mark}] {:>2}. {} ({:.2} s{budget}): {}", self.id, self.name, self.seconds, self.detail)
    }
}

pub fn run(id: usize, opts: &SuiteOptions) -> Option<Outcome> {
    let &(id, name, budget, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let t = Instant::now();
    let result = check(opts);
    let seconds = t.elapsed().as_secs_f64();
    let over = budget.is_some_and(|b| seconds > b);
    let (passed, mut detail) = match result {
        Ok(d) => (!over, d),
        Err(d) => (false, d),
    };
    if over {
        detail = format!("over the time budget; {detail}");
    }
    Some(Outcome { id, name: name.to_string(), passed, detail, seconds, budget_seconds: budget })
}

pub fn run_all(opts: &SuiteOptions) -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run(c.0, opts)).collect()
}

fn fe(s: &str) -> FieldElement {
    parse_field(s).expect("literal")
}

fn fes(xs: &[&str]) -> Vec<FieldElement> {
    xs.iter().map(|s| fe(s)).collect()
}

fn seq(a: &FieldElement, w: &[FieldElement], b: &FieldElement) -> Sequence {
    Sequence::new(a.clone(), w.to_vec(), b.clone()).expect("nonempty")
}

/// All words of length `n` over `letters`.
pub fn words(letters: &[FieldElement], n: usize) -> Vec<Vec<FieldElement>> {
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

/// Every `(a; w; b)` with `|w| = n`, letters from `letters`, ends from `ends`.
pub fn generators(letters: &[FieldElement], ends: &[FieldElement], n: usize) -> Vec<Sequence> {
    let mut out = Vec::new();
    for w in words(letters, n) {
        for a in ends {
            for b in ends {
                out.push(seq(a, &w, b));
            }
        }
    }
    out
}

/// Start point, interior letters and end point swept for a theory by default.
pub fn default_alphabet(theory: &Theory) -> (FieldElement, Vec<FieldElement>, FieldElement) {
    match theory {
        Theory::SeqDistinct => (fe("0"), fes(&["1", "z", "0"]), fe("w")),
        Theory::AGeneric(a) => {
            let mut letters = vec![a.clone()];
            for l in fes(&["y", "1", "0"]) {
                if !letters.contains(&l) && letters.len() < 3 {
                    letters.push(l);
                }
            }
            (fe("x"), letters, fe("w"))
        }
        Theory::Binary(x, y) => (fe("z"), vec![x.clone(), y.clone()], fe("w")),
    }
}

/// Sequences `(start; w; end)` admitted by `theory` with `1 ≤ |w| ≤ max_n`.
pub fn admitted(
    theory: &Theory,
    start: &FieldElement,
    letters: &[FieldElement],
    end: &FieldElement,
    max_n: usize,
) -> Vec<Sequence> {
    (1..=max_n)
        .flat_map(|n| words(letters, n))
        .map(|w| seq(start, &w, end))
        .filter(|a| theory.admits(a))
        .collect()
}

fn capped(opts: &SuiteOptions, n: usize) -> String {
    let m = opts.cap(n);
    if m < n {
        format!(" (capped at n ≤ {m})")
    } else {
        String::new()
    }
}

fn d_squared(opts: &SuiteOptions) -> Result<String, String> {
    let (letters, ends) = (fes(&["0", "1", "z"]), fes(&["0", "1", "z", "w"]));
    let mut count = 0;
    for cs in [Cs::default(), Cs::keeping_loops()] {
        for n in 1..=opts.cap(5) {
            for a in generators(&letters, &ends, n) {
                if !cs.differential(&cs.d_gen(&a)).is_zero() {
                    return Err(format!("d^2({a}) != 0 (kill_loops = {})", cs.kill_loops));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} generators, loops killed and kept{}", capped(opts, 5)))
}

fn t_cocycle(opts: &SuiteOptions) -> Result<String, String> {
    let (letters, ends) = (fes(&["0", "1", "z"]), fes(&["0", "1", "z", "w"]));
    let mut count = 0;
    let cs = Cs::default();
    let bar = BarComplex::trivial(&cs);
    for n in 1..=opts.cap(5) {
        for a in generators(&letters, &ends, n) {
            if let Err(r) = bar.is_cocycle(&cs.t_element(&a)) {
                return Err(format!("d T({a}) has {} terms", r.len()));
            }
            count += 1;
        }
    }
    Ok(format!("{count} generators{}", capped(opts, 5)))
}

fn coproduct_formula(opts: &SuiteOptions) -> Result<String, String> {
    let mut count = 0;
    for cs in [Cs::default(), Cs::keeping_loops()] {
        for n in 1..=opts.cap(4) {
            let symbols = fes(&["x1", "x2", "x3", "x4"]);
            let mut cases = vec![seq(&fe("b0"), &symbols[..n], &fe("b1"))];
            cases.extend(generators(&fes(&["0", "1"]), &fes(&["0", "1", "z"]), n));
            for a in cases {
                let t = cs.t_element(&a);
                let mut expect: Lin<(Vec<Mono>, Vec<Mono>)> = Lin::zero();
                for (w, c) in t.iter() {
                    expect.add_term((Vec::new(), w.slots.clone()), c.clone());
                }
                for idx in elementary_cut_classes(a.n()) {
                    let cut = realize(&a, &idx);
                    let left = cs.t_element(&cut[0]);
                    let mut right = empty_word();
                    for p in &cut[1..] {
                        right = shuffle_product(&cs, &right, &cs.t_element(p)).map_err(|e| e.to_string())?;
                    }
                    for (l, cl) in left.iter() {
                        for (r, cr) in right.iter() {
                            expect.add_term((l.slots.clone(), r.slots.clone()), cl * cr);
                        }
                    }
                }
                if coproduct(&t) != expect {
                    return Err(format!("coproduct of T({a}) differs (kill_loops = {})", cs.kill_loops));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} generators{}", capped(opts, 4)))
}

fn tp(a: &Sequence) -> Bar<(), Mono> {
    Cs::default().t_element(a)
}

fn tp_or_one(a: &FieldElement, w: &[FieldElement], b: &FieldElement) -> Bar<(), Mono> {
    if w.is_empty() {
        empty_word()
    } else {
        tp(&seq(a, w, b))
    }
}

fn mul(x: &Bar<(), Mono>, y: &Bar<(), Mono>) -> Bar<(), Mono> {
    shuffle_product(&Cs::default(), x, y).expect("commutative algebra")
}

fn in_ideal(ideal: &RelationIdeal, x: &Bar<(), Mono>, what: impl Fn() -> String) -> Result<(), String> {
    match ideal.is_zero_bar(x) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("{} is not in the ideal", what())),
        Err(e) => Err(format!("{}: {e}", what())),
    }
}

fn ideal_identities(opts: &SuiteOptions) -> Result<String, String> {
    let letters = fes(&["0", "1", "z"]);
    let points = fes(&["0", "1", "z", "w"]);
    let ideal = RelationIdeal::new(letters.clone(), points.clone());
    let mut counts = [0usize; 3];
    for n in 1..=opts.cap(3) {
        for w in words(&letters, n) {
            for a in &points {
                for b in &points {
                    for c in &points {
                        let mut lhs = Lin::zero();
                        for i in 0..=n {
                            lhs = &lhs + &mul(&tp_or_one(a, &w[..i], c), &tp_or_one(c, &w[i..], b));
                        }
                        let diff = &lhs - &tp(&seq(a, &w, b));
                        in_ideal(&ideal, &diff, || format!("path composition of {} via {c}", seq(a, &w, b)))?;
                        counts[0] += 1;
                    }
                }
            }
        }
    }
    let points = fes(&["0", "1", "w"]);
    let ideal = RelationIdeal::new(letters.clone(), points.clone());
    for total in 2..=opts.cap(4) {
        for nu in 1..total {
            for u in words(&letters, nu) {
                for v in words(&letters, total - nu) {
                    for a in &points {
                        for b in &points {
                            let lhs = mul(&tp(&seq(a, &u, b)), &tp(&seq(a, &v, b)));
                            let mut rhs = Lin::zero();
                            for s in shuffle_words(&u, &v) {
                                rhs = &rhs + &tp(&seq(a, &s, b));
                            }
                            in_ideal(&ideal, &(&lhs - &rhs), || {
                                format!("shuffle of {} and {}", seq(a, &u, b), seq(a, &v, b))
                            })?;
                            counts[1] += 1;
                        }
                    }
                }
            }
        }
    }
    for n in 1..=opts.cap(4) {
        for w in words(&letters, n) {
            for a in &points {
                for b in &points {
                    let mut r = w.clone();
                    r.reverse();
                    let sign = if n % 2 == 0 { q(1) } else { q(-1) };
                    let diff = &tp(&seq(a, &w, b)) - &tp(&seq(b, &r, a)).scale(&sign);
                    in_ideal(&ideal, &diff, || format!("inversion of {}", seq(a, &w, b)))?;
                    counts[2] += 1;
                }
            }
        }
    }
    Ok(format!(
        "{} compositions, {} shuffles, {} inversions{}",
        counts[0],
        counts[1],
        counts[2],
        capped(opts, 4)
    ))
}

fn regularization(opts: &SuiteOptions) -> Result<String, String> {
    let zero_one = fes(&["0", "1"]);
    let ideal = RelationIdeal::new(zero_one.clone(), vec![]);
    let mut divergent = 0;
    for n in 1..=opts.cap(3) {
        for a in generators(&zero_one, &zero_one, n) {
            if a.is_convergent() {
                continue;
            }
            let r = regularize(&a);
            for m in r.keys() {
                for f in m.factors() {
                    if !(f.is_convergent() || (f.n() == 1 && f.start() == &f.interior()[0])) {
                        return Err(format!("regularize({a}) contains the divergent factor {f}"));
                    }
                }
            }
            match certify(&ideal, &a, &r) {
                Ok(true) => divergent += 1,
                Ok(false) => return Err(format!("regularize({a}) does not re-expand to T~({a})")),
                Err(e) => return Err(format!("{a}: {e}")),
            }
        }
    }
    let generic = RelationIdeal::new(fes(&["x", "a", "b"]), vec![]);
    for n in 1..=opts.cap(4) {
        let a = seq(&fe("a"), &vec![fe("x"); n], &fe("b"));
        let base = TMono::of(seq(&fe("a"), &[fe("x")], &fe("b")));
        let power = (1..n).fold(base.clone(), |m, _| m.times(&base));
        let fact: i64 = (1..=n as i64).product();
        let expect = Lin::term(power, q(1) / q(fact));
        let r = regularize(&a);
        if r != expect {
            return Err(format!("regularize({a}) is not T~(a;x;b)^{n}/{n}!"));
        }
        if !certify(&generic, &a, &r).map_err(|e| e.to_string())? {
            return Err(format!("(a;x^{n};b) power identity fails modulo the ideal"));
        }
    }
    Ok(format!("{divergent} divergent generators, powers through n = {}{}", opts.cap(4), capped(opts, 4)))
}

fn comodule_axioms(opts: &SuiteOptions) -> Result<String, String> {
    let points = fes(&["0", "1", "z"]);
    let depth = opts.cap(4);
    let mut words_checked = 0;
    for a in &points {
        for b in &points {
            let r = comodule_check(&fes(&["0", "1"]), a, b, depth).map_err(|e| e.to_string())?;
            if !r.passed() {
                return Err(format!("({a},{b}): {r}"));
            }
            words_checked += r.words_checked;
        }
    }
    Ok(format!("{words_checked} words over 9 endpoint pairs, depth {depth}{}", capped(opts, 4)))
}

fn theory_cases(opts: &SuiteOptions) -> Vec<(Theory, usize)> {
    vec![
        (Theory::SeqDistinct, opts.cap(4)),
        (Theory::AGeneric(fe("0")), opts.cap(4)),
        (Theory::Binary(fe("0"), fe("1")), opts.cap(3)),
    ]
}

fn theory_axioms(opts: &SuiteOptions) -> Result<String, String> {
    let mut parts = Vec::new();
    for (theory, n) in theory_cases(opts) {
        let engine = Engine::new(theory.clone());
        let (s, letters, e) = default_alphabet(&theory);
        let seqs = admitted(&theory, &s, &letters, &e, n);
        let mut checks = 0;
        for a in &seqs {
            let report = verify_theory(&engine, a).map_err(|err| format!("{theory} on {a}: {err}"))?;
            if let Some(c) = report.first_failure() {
                return Err(format!("{theory} on {a}: {} {:.300}", c.name, c.detail));
            }
            checks += report.checks.len();
        }
        parts.push(format!("{theory}: {} sequences, {checks} checks", seqs.len()));
    }
    Ok(parts.join("; "))
}

fn rho_morphism(opts: &SuiteOptions) -> Result<String, String> {
    let mut morphism = 0;
    let mut loops = 0;
    for (theory, _) in theory_cases(opts) {
        let engine = Engine::new(theory.clone());
        let (s, letters, e) = default_alphabet(&theory);
        for a in admitted(&theory, &s, &letters, &e, opts.cap(3)) {
            let c = rho_commutes_with_d(&engine, &a).map_err(|err| format!("{theory} on {a}: {err}"))?;
            if !c.passed {
                return Err(format!("{theory}: {} {:.300}", c.name, c.detail));
            }
            morphism += 1;
        }
        for p in [&s, &e] {
            for a in admitted(&theory, p, &letters, p, opts.cap(3)) {
                let z = engine.rho(&a).map_err(|err| format!("{theory} on {a}: {err}"))?;
                if !z.is_zero() {
                    return Err(format!("{theory}: rho({a}) = {z}"));
                }
                loops += 1;
            }
        }
    }
    Ok(format!("{morphism} sequences commute with d, {loops} loops vanish{}", capped(opts, 3)))
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn timed(name: &str, f: impl FnOnce() -> Result<String, String>) -> Result<String, String> {
    let t = Instant::now();
    let r = f();
    let s = t.elapsed().as_secs_f64();
    match r {
        Ok(d) if s <= NUMERIC_ITEM_SECONDS => Ok(format!("{name} {d}")),
        Ok(d) => Err(format!("{name} took {s:.1} s ({d})")),
        Err(d) => Err(format!("{name}: {d}")),
    }
}

fn bounded(what: &str, err: f64, tol: f64) -> Result<String, String> {
    if err < tol {
        Ok(format!("{err:.1e}"))
    } else {
        Err(format!("{what} off by {err:.3e} (tolerance {tol:.0e})"))
    }
}

fn numerics(_: &SuiteOptions) -> Result<String, String> {
    let cfg = NumericConfig::default();
    let e = |x: period_lab::PeriodError| x.to_string();
    let mut items = Vec::new();
    items.push(timed("Li2(1)", || {
        let v = multiple_polylog(&[2], re(1.0), &cfg).map_err(e)?.value;
        bounded("Li2(1)", (v - re(PI * PI / 6.0)).norm(), LI2_TOL)
    })?);
    items.push(timed("series/quadrature", || {
        let tuples: [&[u32]; 7] = [&[1], &[2], &[3], &[1, 1], &[1, 2], &[2, 1], &[1, 1, 1]];
        let mut worst: f64 = 0.0;
        for z in [0.25, 0.5, 0.75] {
            for exps in tuples {
                let s = multiple_polylog(exps, re(z), &cfg).map_err(e)?.value;
                let letters: Vec<C64> =
                    li_word(exps).iter().map(|&b| if b == 1 { re(1.0 / z) } else { re(0.0) }).collect();
                let path = PathSpec::straight(re(0.0), re(1.0), vec![re(0.0), re(1.0 / z)]).map_err(e)?;
                let sign = if exps.len() % 2 == 0 { 1.0 } else { -1.0 };
                let i = iterated_integral(&letters, &path, &cfg).map_err(e)?.value * sign;
                worst = worst.max((s - i).norm());
            }
        }
        bounded("series against quadrature", worst, SERIES_QUADRATURE_TOL)
    })?);
    items.push(timed("zeta(1,2)-zeta(3)", || {
        let d = zeta(&[1, 2], &cfg).map_err(e)?.value - zeta(&[3], &cfg).map_err(e)?.value;
        bounded("zeta(1,2)", d.norm(), EULER_TOL)
    })?);
    items.push(timed("reg log", || {
        let path = PathSpec::unit_interval();
        let a = epsilon_extrapolate(&[re(0.0)], &path, &cfg).map_err(e)?.value;
        let b = epsilon_extrapolate(&[re(1.0)], &path, &cfg).map_err(e)?.value;
        bounded("regularized logarithm", a.norm().max(b.norm()), REGULARIZED_LOG_TOL)
    })?);
    let phi = feynman_dyson(&PathSpec::unit_interval(), &[re(0.0), re(1.0)], 3, &cfg).map_err(e)?;
    items.push(timed("Phi shuffle", || {
        let all: Vec<Vec<usize>> = (1..=2).flat_map(words_usize).collect();
        let mut worst: f64 = 0.0;
        for u in &all {
            for v in &all {
                if u.len() + v.len() <= 3 {
                    worst = worst.max(shuffle_residual(&phi, u, v).ok_or("word beyond depth")?);
                }
            }
        }
        bounded("shuffle residual", worst, PHI_SHUFFLE_TOL)
    })?);
    items.push(timed("Phi[X1X0]", || {
        let c = phi.coeff(&[1, 0]).ok_or("missing coefficient")?;
        bounded("|Phi[X1X0]|", (c.norm() - 1.0 / 24.0).abs(), PHI_COEFFICIENT_TOL)
    })?);
    Ok(items.join(", "))
}

fn words_usize(n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.iter().flat_map(|w| (0..2).map(move |l| [w.clone(), vec![l]].concat())).collect()
    })
}

fn hodge_ledger(opts: &SuiteOptions) -> Result<String, String> {
    let mut closed = 0;
    let letters = fes(&["0", "1", "z"]);
    for module in [FormalModule::default(), FormalModule { cs: Cs::keeping_loops() }] {
        for n in 1..=opts.cap(4) {
            for a in generators(&letters, &letters, n) {
                let r = formal_differential(&build_z_gamma(&a, &module).bar, &module);
                if !r.is_zero() {
                    return Err(format!("dZ({a}) has {} terms (kill_loops = {})", r.len(), module.cs.kill_loops));
                }
                closed += 1;
            }
        }
    }
    let cs = Cs::default();
    let mut grouped = 0;
    for n in 1..=opts.cap(4) {
        let symbols = fes(&["x1", "x2", "x3", "x4"]);
        let mut cases = vec![seq(&fe("b0"), &symbols[..n], &fe("b1"))];
        if n <= 3 {
            cases.extend(generators(&letters, &letters, n));
        }
        for a in cases {
            let r = Realization { sequence: a.clone(), motivic: cs.t_element(&a), terms: vec![] };
            if !r.grouping_holds(&cs) {
                return Err(format!("Λ({a}) is not indexed by elementary cuts"));
            }
            grouped += 1;
        }
    }
    let theory = Theory::SeqDistinct;
    let (s, alphabet, e) = default_alphabet(&theory);
    let mut compared = 0;
    for a in admitted(&theory, &s, &alphabet, &e, opts.cap(3)) {
        let err = |x: hodge_ledger::LedgerError| format!("{a}: {x}");
        if comparison_map(&[], &a, &theory, &cs).map_err(err)? != cs.t_element(&a) {
            return Err(format!("1 does not map to T({a})"));
        }
        for w in words(&alphabet, a.n()) {
            let image = comparison_map(&w, &a, &theory, &cs).map_err(err)?;
            let expect = if w == a.interior() { word(vec![]) } else { Lin::zero() };
            if image != expect {
                return Err(format!("comparison map of {w:?} for {a} is wrong"));
            }
        }
        compared += 1;
    }
    let (worst, coefficients) = lambda_against_phi(opts)?;
    Ok(format!(
        "dZ = 0 on {closed}, elementary grouping on {grouped}, comparison map on {compared}, {coefficients} Λ coefficients match Φ within {worst:.1e}{}",
        capped(opts, 4)
    ))
}

/// Largest gap between Λ coefficients and Φ-image coefficients over binary
/// words starting with 1, on `0 → 1` (ending in 0) and on `0 → 1/2`.
fn lambda_against_phi(opts: &SuiteOptions) -> Result<(f64, usize), String> {
    let cfg = NumericConfig::default();
    let theory = Theory::Binary(fe("0"), fe("1"));
    let n = opts.cap(3);
    let punctures = [re(0.0), re(1.0)];
    let unit = PathSpec::unit_interval();
    let half = PathSpec::straight(re(0.0), re(0.5), punctures.to_vec()).map_err(|e| e.to_string())?;
    let values = BTreeMap::from([("z".to_string(), re(0.5))]);
    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for (path, end) in [(&unit, "1"), (&half, "z")] {
        let phi = feynman_dyson(path, &punctures, n, &cfg).map_err(|e| e.to_string())?;
        for k in 1..=n {
            for w in words(&fes(&["0", "1"]), k) {
                let a = seq(&fe("0"), &w, &fe(end));
                if w[0] != fe("1") || !a.is_convergent() {
                    continue;
                }
                let err = |x: hodge_ledger::LedgerError| format!("{a}: {x}");
                let image = phi_image(&phi, &a, &theory, &values).map_err(err)?;
                let lambda = lambda_realize(&a, &theory, path, &values, &cfg).map_err(err)?;
                let expected: BTreeSet<Vec<Sequence>> = all_cuts(&a)
                    .into_iter()
                    .filter(|c| !c.iter().any(Sequence::is_loop))
                    .map(|c| c[1..].to_vec())
                    .collect();
                let realized: BTreeSet<Vec<Sequence>> = lambda.terms.iter().map(|t| t.word.clone()).collect();
                if expected != realized {
                    return Err(format!("Λ({a}) terms are not the loop-free cuts"));
                }
                let coefficients = lambda.coefficients();
                for key in image.keys().chain(coefficients.keys()) {
                    let x = image.get(key).copied().unwrap_or_default();
                    let y = coefficients.get(key).copied().unwrap_or_default();
                    worst = worst.max((x - y).norm());
                    compared += 1;
                }
            }
        }
    }
    if worst < LAMBDA_PHI_TOL {
        Ok((worst, compared))
    } else {
        Err(format!("Λ and the image of Φ differ by {worst:.3e}"))
    }
}

fn entries(xs: &[&str]) -> Vec<PeriodEntry> {
    xs.iter().map(|s| s.parse().expect("period literal")).collect()
}

fn mhts_examples(_: &SuiteOptions) -> Result<String, String> {
    let dims = BTreeMap::from([(-1, 1), (0, 1)]);
    let good = FramedMhts::new(dims.clone(), vec![entries(&["alpha", "1"]), entries(&["1", "0"])])
        .map_err(|e| e.to_string())?;
    let r = mhts_check(&good);
    if !r.passed() {
        return Err(format!("Kummer-type structure rejected: {r}"));
    }
    let bad = FramedMhts::new(dims, vec![entries(&["alpha", "1"])]).map_err(|e| e.to_string())?;
    let r = mhts_check(&bad);
    match r.first_failure() {
        Some(l) if l.m == -1 && l.rank == 0 => {}
        _ => return Err(format!("structure without a weight -2 Betti vector accepted: {r}")),
    }
    Ok("Kummer-type structure passes; missing Betti vector fails at m = -1".into())
}
