//! Rewriting `T̃(A)` for divergent `A` as a polynomial in convergent classes
//! and the symbols `T̃(b₀;b₀;b₁)`.

use std::fmt;

use bar_complex::{empty_word, shuffle_product, Bar};
use exact_kernel::{q, FieldElement, Lin, Q};

use crate::algebra::{Cs, Mono};
use crate::ideal::{shuffle_words, RelationIdeal};
use crate::{DgaError, Sequence};

/// A commuting product of `T̃` classes, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct TMono(Vec<Sequence>);

impl TMono {
    pub fn unit() -> Self {
        TMono(Vec::new())
    }

    pub fn of(a: Sequence) -> Self {
        TMono(vec![a])
    }

    pub fn factors(&self) -> &[Sequence] {
        &self.0
    }

    pub fn times(&self, other: &TMono) -> TMono {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        v.sort();
        TMono(v)
    }
}

impl fmt::Display for TMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| format!("T({s})")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub type TPoly = Lin<TMono>;

pub fn tpoly_mul(x: &TPoly, y: &TPoly) -> TPoly {
    let mut out = Lin::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term(a.times(b), ca * cb);
        }
    }
    out
}

fn tpoly_pow(x: &TPoly, n: usize) -> TPoly {
    let mut out = Lin::single(TMono::unit());
    for _ in 0..n {
        out = tpoly_mul(&out, x);
    }
    out
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(q(1), |acc, k| acc * q(k))
}

fn seq(a: &FieldElement, w: &[FieldElement], b: &FieldElement) -> Sequence {
    Sequence::new(a.clone(), w.to_vec(), b.clone()).expect("nonempty")
}

/// `T̃(a;b;b)` rewritten through reversal as `-T̃(b;b;a)`.
fn trailing_symbol(a: &FieldElement, b: &FieldElement) -> TPoly {
    Lin::term(TMono::of(seq(b, std::slice::from_ref(b), a)), q(-1))
}

/// An expression equal to `T̃(A)` modulo the relation ideal.
pub fn regularize(a: &Sequence) -> TPoly {
    let (a0, b, w) = (a.start(), a.end(), a.interior());
    if a0 == b {
        return Lin::zero();
    }
    let n = w.len();
    if w.iter().all(|x| x == &w[0]) {
        let base = if &w[0] == b {
            trailing_symbol(a0, b)
        } else {
            Lin::single(TMono::of(seq(a0, &w[..1], b)))
        };
        return tpoly_pow(&base, n).scale(&(q(1) / factorial(n)));
    }
    if a.is_convergent() {
        return Lin::single(TMono::of(a.clone()));
    }
    let i = w.iter().take_while(|x| *x == a0).count();
    let j = w[i..].iter().rev().take_while(|x| *x == b).count();
    let u = &w[i..n - j];
    let mut product = Lin::single(TMono::unit());
    let mut pieces: Vec<Vec<FieldElement>> = Vec::new();
    for part in [&w[..i], u, &w[n - j..]] {
        if !part.is_empty() {
            product = tpoly_mul(&product, &regularize(&seq(a0, part, b)));
            pieces.push(part.to_vec());
        }
    }
    let mut others: Lin<Vec<FieldElement>> = Lin::zero();
    let mut acc: Vec<Vec<FieldElement>> = vec![Vec::new()];
    for p in &pieces {
        acc = acc.iter().flat_map(|x| shuffle_words(x, p)).collect();
    }
    for s in acc {
        others.add_term(s, q(1));
    }
    debug_assert_eq!(others.coeff(&w.to_vec()), q(1));
    others.add_term(w.to_vec(), q(-1));
    let mut out = product;
    for (s, c) in others.iter() {
        out.add_scaled(&regularize(&seq(a0, s, b)), &-c);
    }
    out
}

/// Bar representative of a polynomial in `T̃` classes, multiplied out by
/// the shuffle product.
pub fn expand(cs: &Cs, p: &TPoly) -> Bar<(), Mono> {
    let mut out = Lin::zero();
    for (m, c) in p.iter() {
        let mut acc = empty_word();
        for f in m.factors() {
            acc = shuffle_product(cs, &acc, &cs.t_element(f)).expect("commutative");
            if acc.is_zero() {
                break;
            }
        }
        out.add_scaled(&acc, c);
    }
    out
}

/// Checks `expand(p) ≡ T(A)` modulo the ideal.
pub fn certify(ideal: &RelationIdeal, a: &Sequence, p: &TPoly) -> Result<bool, DgaError> {
    let cs = ideal.algebra();
    let diff = &expand(&cs, p) - &cs.t_element(a);
    ideal.is_zero_bar(&diff)
}

/// `regularize` followed by its certificate.
pub fn regularize_certified(
    ideal: &RelationIdeal,
    a: &Sequence,
) -> Result<(TPoly, bool), DgaError> {
    let p = regularize(a);
    let ok = certify(ideal, a, &p)?;
    Ok((p, ok))
}
