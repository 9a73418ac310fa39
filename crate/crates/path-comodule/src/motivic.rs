//! The coaction pushed through a cycle map, slot by slot.

use cut_dga::Mono;
use cycle_engine::{product, Cycle, Engine, Term};
use exact_kernel::{FieldElement, Lin};

use crate::coaction::{Coacted, Comodule};
use crate::series::Word;
use crate::ComoduleError;

/// `Σ c · X_w ⊗ [z₂|…|z_k]` with each `z_i` a single cycle term.
pub type MotivicCoacted = Lin<(Word, Vec<Term>)>;

/// Adams degree of a cycle term of `ρ(A)`: `2n - 1` coordinates for `n` letters.
pub fn term_adams(t: &Term) -> usize {
    t.dim().div_ceil(2)
}

fn mono_cycle(engine: &Engine, m: &Mono) -> Result<Cycle, ComoduleError> {
    let mut factors = m.factors().iter();
    let Some(first) = factors.next() else {
        return Ok(Cycle::zero());
    };
    let mut z = engine.rho(first)?;
    for f in factors {
        z = product(&z, &engine.rho(f)?);
    }
    Ok(z)
}

/// Applies `ρ` to every slot of the bar words and expands multilinearly.
pub fn push_forward(engine: &Engine, x: &Coacted) -> Result<MotivicCoacted, ComoduleError> {
    let mut out = Lin::zero();
    for ((left, slots), c) in x.iter() {
        let mut acc: Lin<Vec<Term>> = Lin::single(Vec::new());
        for m in slots {
            let z = mono_cycle(engine, m)?;
            let mut next = Lin::zero();
            for (pre, a) in acc.iter() {
                for (t, b) in z.terms() {
                    let mut v = pre.clone();
                    v.push(t.clone());
                    next.add_term(v, a * b);
                }
            }
            acc = next;
        }
        for (terms, a) in acc.iter() {
            out.add_term((left.clone(), terms.clone()), c * a);
        }
    }
    Ok(out)
}

/// `X_w ↦ Σ X_{A₁} ⊗ [ρ(A₂)|…|ρ(A_k)]` on the path from `a` to `b`.
pub fn motivic_coaction(
    m: &Comodule,
    engine: &Engine,
    w: &Word,
    a: &FieldElement,
    b: &FieldElement,
) -> Result<MotivicCoacted, ComoduleError> {
    push_forward(engine, &m.coaction(w, a, b)?)
}
