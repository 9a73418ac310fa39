//! The cycle-valued maps `ρ_k` for the a-generic, sequentially distinct and
//! binary classes of sequences, and the specialization operator `δ`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use cut_dga::Sequence;
use exact_kernel::{q, qf, FieldElement, Q};
use num_traits::Zero;

use crate::cycle::{attach, ext, is_reserved, product, specialize, Cycle, Slot};
use crate::CycleError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    /// Repeated interior entries must equal `a`.
    AGeneric(FieldElement),
    /// Neighbouring interior entries differ.
    SeqDistinct,
    /// Interior entries lie in `{α₀, α₁}`.
    Binary(FieldElement, FieldElement),
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::AGeneric(a) => write!(f, "{a}-generic"),
            Theory::SeqDistinct => write!(f, "sequentially distinct"),
            Theory::Binary(x, y) => write!(f, "binary({x},{y})"),
        }
    }
}

impl Theory {
    pub fn admits(&self, a: &Sequence) -> bool {
        let w = a.interior();
        match self {
            Theory::AGeneric(x) => {
                for i in 0..w.len() {
                    for j in i + 1..w.len() {
                        if w[i] == w[j] && &w[i] != x {
                            return false;
                        }
                    }
                }
                true
            }
            Theory::SeqDistinct => a.entries()[1..].windows(2).all(|p| p[0] != p[1]),
            Theory::Binary(x, y) => x != y && w.iter().all(|e| e == x || e == y),
        }
    }

    pub fn base_point_free(&self) -> bool {
        !matches!(self, Theory::SeqDistinct)
    }

    /// Whether the shuffle and reversal identities are expected.
    pub fn permuting(&self) -> bool {
        self.base_point_free()
    }
}

/// Which block size indexes `δ` in the binary recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DeltaRule {
    /// `ρ^ε(X|Y)` carries `δ_{|X|}`.
    #[default]
    FirstBlock,
    /// Both `ρ^ε(A_i|A_i')` and `ρ^ε(A_i'|A_i)` carry `δ_i`.
    SplitIndex,
    /// Terms evaluating the left subtree at `t` carry `δ` of the right
    /// subtree size, the mirrored terms `δ` of the left subtree size.
    RightLeaves,
}

/// `Alt(1 - (s₁ - c)/b)` for `b ≠ 0`, else `Alt(s₁ - c)`.
pub fn rho_hat1_at(b: &FieldElement, c: &FieldElement) -> Cycle {
    let u = &FieldElement::var(&ext(1)) - c;
    let coord = if b.is_zero() {
        u
    } else {
        &FieldElement::one() - &u.checked_div(b).expect("nonzero")
    };
    Cycle::from_coords(vec![coord], &[], q(1))
}

/// `ρ̂₁(a₁)(s₁)`.
pub fn rho_hat1(a1: &FieldElement) -> Cycle {
    rho_hat1_at(a1, &FieldElement::zero())
}

/// `Z(s := at)`, or `Z(s := 1 + at)` when `divergent`.
pub fn sp_specialize(z: &Cycle, at: &FieldElement, divergent: bool) -> Result<Cycle, CycleError> {
    let v = if divergent {
        &FieldElement::one() + at
    } else {
        at.clone()
    };
    specialize(z, &[(ext(1), v, false)])
}

/// `(δZ)(s₁…s_{k-1})` for a cycle in `s₁…s_k` with base points `a0`, `b`.
/// Base point specializations use the `1 + a` rule on coordinates that
/// would otherwise vanish.
pub fn delta_apply(
    z: &Cycle,
    k: usize,
    a0: &FieldElement,
    b: &FieldElement,
) -> Result<Cycle, CycleError> {
    let s = |i: usize| FieldElement::var(&ext(i));
    let mut out = Cycle::zero();
    let mut first = vec![(ext(1), a0.clone(), true)];
    for i in 2..=k {
        first.push((ext(i), s(i - 1), false));
    }
    out.add_scaled(&specialize(z, &first)?, &q(1));
    for j in 1..k {
        let subs: Vec<_> = (j + 1..=k).map(|i| (ext(i), s(i - 1), false)).collect();
        let sign = if j % 2 == 0 { q(1) } else { q(-1) };
        out.add_scaled(&specialize(z, &subs)?, &sign);
    }
    let sign = if k.is_multiple_of(2) { q(1) } else { q(-1) };
    out.add_scaled(&specialize(z, &[(ext(k), b.clone(), true)])?, &sign);
    Ok(out)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    Rho1(Vec<FieldElement>),
    Eps(Vec<FieldElement>, usize),
}

/// Evaluates one theory, memoizing `ρ₁`.
pub struct Engine {
    theory: Theory,
    rule: DeltaRule,
    negated_back: bool,
    memo: Mutex<HashMap<Key, Cycle>>,
}

impl Engine {
    pub fn new(theory: Theory) -> Self {
        Self::with_rule(theory, DeltaRule::default())
    }

    pub fn with_rule(theory: Theory, rule: DeltaRule) -> Self {
        Engine {
            theory,
            rule,
            negated_back: false,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Uses `(t-s)/(α-t)` as the leading coordinate of the binary terms that
    /// evaluate one block at `s`, instead of `(t-s)/(t-α)`. Under this sign
    /// condition (3) fails from three letters on.
    pub fn with_negated_back(mut self, negated: bool) -> Self {
        self.negated_back = negated;
        self
    }

    pub fn negated_back(&self) -> bool {
        self.negated_back
    }

    /// A fresh engine with the same settings and an empty memo.
    pub fn fresh(&self) -> Self {
        Engine::with_rule(self.theory.clone(), self.rule).with_negated_back(self.negated_back)
    }

    /// Leading coordinate of a binary term with one block at `t`, one at `s`.
    pub(crate) fn back(&self, alpha: &FieldElement, t: &FieldElement) -> FieldElement {
        let s = FieldElement::var(&ext(1));
        let den = if self.negated_back { alpha - t } else { t - alpha };
        (t - &s).checked_div(&den).expect("generic")
    }

    pub fn theory(&self) -> &Theory {
        &self.theory
    }

    pub fn rule(&self) -> DeltaRule {
        self.rule
    }

    pub fn check(&self, a: &Sequence) -> Result<(), CycleError> {
        for e in a.entries() {
            if let Some(v) = e.vars().into_iter().find(|v| is_reserved(v)) {
                return Err(CycleError::ReservedName(v.to_string()));
            }
        }
        if let Theory::Binary(x, y) = &self.theory {
            if x == y {
                return Err(CycleError::NotAdmitted {
                    theory: self.theory.to_string(),
                    seq: a.to_string(),
                });
            }
        }
        if !self.theory.admits(a) {
            return Err(CycleError::NotAdmitted {
                theory: self.theory.to_string(),
                seq: a.to_string(),
            });
        }
        Ok(())
    }

    /// `ρ₁(a₀;a₁;a₂)(s₁)`.
    pub fn base(&self, a0: &FieldElement, a1: &FieldElement) -> Cycle {
        match &self.theory {
            Theory::AGeneric(a) => rho_hat1_at(&(a1 - a), a),
            Theory::SeqDistinct => rho_hat1_at(&(a1 - a0), a0),
            Theory::Binary(x, y) => {
                let other = if a1 != x { x } else { y };
                let s = FieldElement::var(&ext(1));
                let coord = (&s - a1).checked_div(&(other - a1)).expect("distinct");
                Cycle::from_coords(vec![coord], &[], q(1))
            }
        }
    }

    /// `ρ₁(A)(s₁)`.
    pub fn rho1(&self, a: &Sequence) -> Result<Cycle, CycleError> {
        self.check(a)?;
        Ok(self.rho1_entries(a.entries()))
    }

    fn key(&self, e: &[FieldElement]) -> Vec<FieldElement> {
        if self.theory.base_point_free() {
            e[1..e.len() - 1].to_vec()
        } else {
            e[..e.len() - 1].to_vec()
        }
    }

    fn cached(&self, key: Key, build: impl FnOnce() -> Cycle) -> Cycle {
        if let Some(c) = self.memo.lock().unwrap().get(&key) {
            return c.clone();
        }
        let c = build();
        self.memo.lock().unwrap().insert(key, c.clone());
        c
    }

    fn rho1_entries(&self, e: &[FieldElement]) -> Cycle {
        let n = e.len() - 2;
        if n == 1 {
            return self.base(&e[0], &e[1]);
        }
        self.cached(Key::Rho1(self.key(e)), || match &self.theory {
            Theory::Binary(..) => {
                let w = &e[1..=n];
                &self.eps(w, 0) + &self.eps(w, 1)
            }
            Theory::AGeneric(a) => self.nested(e, a),
            Theory::SeqDistinct => self.nested(e, &e[0]),
        })
    }

    /// `Alt((s-t)/(c-t), ρ₂(A)(t,t))`.
    fn nested(&self, e: &[FieldElement], c: &FieldElement) -> Cycle {
        let n = e.len() - 2;
        let s = FieldElement::var(&ext(1));
        let lead = |t: &FieldElement| (&s - t).checked_div(&(c - t)).expect("generic");
        let mut out = Cycle::zero();
        for i in 1..n {
            let left = self.rho1_entries(&e[..=i + 1]);
            let right = self.rho1_entries(&e[i..]);
            out.add_scaled(
                &attach(&lead, &[(&left, Slot::Fresh), (&right, Slot::Fresh)], &q(1)),
                &q(1),
            );
        }
        out
    }

    fn alpha(&self, eps: usize) -> &FieldElement {
        match &self.theory {
            Theory::Binary(x, y) => {
                if eps == 0 {
                    x
                } else {
                    y
                }
            }
            _ => unreachable!("binary only"),
        }
    }

    /// Single letter `ρ₁(a)(s₁)` of the binary theory.
    fn letter(&self, a: &FieldElement) -> Cycle {
        self.base(a, a)
    }

    /// `ρ₁^ε(w)(s₁)` for a binary word.
    pub(crate) fn eps(&self, w: &[FieldElement], eps: usize) -> Cycle {
        let n = w.len();
        if n == 1 {
            return if &w[0] == self.alpha(eps) {
                Cycle::zero()
            } else {
                self.letter(&w[0])
            };
        }
        self.cached(Key::Eps(w.to_vec(), eps), || {
            let s = FieldElement::var(&ext(1));
            let ae = self.alpha(eps).clone();
            if n == 2 {
                let lead = |t: &FieldElement| (&s - t).checked_div(&(&ae - t)).expect("generic");
                let (x, y) = (self.letter(&w[0]), self.letter(&w[1]));
                return attach(&lead, &[(&x, Slot::Fresh), (&y, Slot::Fresh)], &qf(1, 2));
            }
            let mut out = Cycle::zero();
            for i in 1..n {
                let (l, r) = (&w[..i], &w[i..]);
                let (first, second) = match self.rule {
                    DeltaRule::FirstBlock => (delta_coeff(i, n), delta_coeff(n - i, n)),
                    DeltaRule::SplitIndex => (delta_coeff(i, n), delta_coeff(i, n)),
                    DeltaRule::RightLeaves => (delta_coeff(n - i, n), delta_coeff(i, n)),
                };
                out.add_scaled(&self.split(l, r, eps, &first), &q(1));
                out.add_scaled(&self.split(r, l, eps, &second), &q(-1));
            }
            out
        })
    }

    /// `ρ₁^ε(X|Y)` with coefficient `d` on the two mixed terms.
    fn split(&self, x: &[FieldElement], y: &[FieldElement], eps: usize, d: &Q) -> Cycle {
        let s = FieldElement::var(&ext(1));
        let ae = self.alpha(eps).clone();
        let lead = |t: &FieldElement| (&s - t).checked_div(&(&ae - t)).expect("generic");
        let back = |t: &FieldElement| self.back(&ae, t);
        let (x0, x1, y0, y1) = (self.eps(x, 0), self.eps(x, 1), self.eps(y, 0), self.eps(y, 1));
        let mut out = attach(&lead, &[(&x1, Slot::Fresh), (&y0, Slot::Fresh)], &q(1));
        if !d.is_zero() {
            out.add_scaled(
                &attach(&back, &[(&x1, Slot::Fresh), (&y0, Slot::External)], d),
                &q(1),
            );
            out.add_scaled(
                &attach(&back, &[(&x0, Slot::Fresh), (&y1, Slot::External)], d),
                &q(1),
            );
        }
        out
    }

    /// `ρ_k(A)(s₁…s_k)`.
    pub fn rho_k(&self, a: &Sequence, k: usize) -> Result<Cycle, CycleError> {
        self.check(a)?;
        Ok(self.rho_k_entries(a.entries(), k))
    }

    fn rho_k_entries(&self, e: &[FieldElement], k: usize) -> Cycle {
        let n = e.len() - 2;
        if k == 0 || k > n {
            return Cycle::zero();
        }
        if k == 1 {
            return self.rho1_entries(e);
        }
        let mut out = Cycle::zero();
        for i in 1..=n - k + 1 {
            let left = self.rho1_entries(&e[..=i + 1]);
            let right = self.rho_k_entries(&e[i..], k - 1).shift_externals(1);
            out.add_scaled(&product(&left, &right), &q(1));
        }
        out
    }

    /// `δρ_k(A)` with the base points of `A`.
    pub fn delta_rho(&self, a: &Sequence, k: usize) -> Result<Cycle, CycleError> {
        let z = self.rho_k(a, k)?;
        delta_apply(&z, k, a.start(), a.end())
    }

    /// `ρ(A) = δρ₁(A)`.
    pub fn rho(&self, a: &Sequence) -> Result<Cycle, CycleError> {
        self.delta_rho(a, 1)
    }
}

/// `δ_i` of the binary recursion in depth `n > 2`.
pub fn delta_coeff(i: usize, n: usize) -> Q {
    if i == 1 {
        q(0)
    } else if i == n - 1 {
        q(-1)
    } else {
        qf(-1, 2)
    }
}
