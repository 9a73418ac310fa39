//! The period map `Λ` applied to `Z_γ(A)`.
//!
//! `ξ_γ(A₁)` goes to `(2πi)^{-m} ∫_γ dt/(t - b₁)∘…∘dt/(t - b_m)` for
//! `A₁ = (a₀; b₁,…,b_m; a_{n+1})`, and `1⊗𝕀(A)` goes to `𝕀(A)`.

use std::collections::BTreeMap;

use bar_complex::{empty_word, shuffle_product, word, Bar};
use cut_dga::{all_cut_indices, elementary_cut_classes, Cs, Mono, Sequence};
use cycle_engine::Theory;
use exact_kernel::{q_to_f64, FieldElement, Lin};
use period_lab::{regularized_iterated_integral, Evaluation, NumericConfig, PathSpec, C64};

use crate::LedgerError;

/// The complex value of `f` with its variables taken from `values`.
pub fn evaluate_point(f: &FieldElement, values: &BTreeMap<String, C64>) -> Result<C64, LedgerError> {
    for v in f.vars() {
        if !values.contains_key(v.as_ref()) {
            return Err(LedgerError::MissingValue(v.to_string()));
        }
    }
    Ok(f.eval(|v| values[v]))
}

/// One summand `(∫_γ ω_{A₁})·[A₂|…|A_k]` for a cut `A₁,…,A_k`.
#[derive(Clone, Debug)]
pub struct RealizedTerm {
    pub cut: Vec<Sequence>,
    pub scalar: Evaluation,
    pub word: Vec<Sequence>,
    /// The cut with `A₁ = A`, whose scalar is the full period of `A` on the
    /// empty word.
    pub full: bool,
}

#[derive(Clone, Debug)]
pub struct Realization {
    pub sequence: Sequence,
    /// `𝕀(A) = Σ [A₁|…|A_k]`, the image of `1⊗𝕀(A)`.
    pub motivic: Bar<(), Mono>,
    pub terms: Vec<RealizedTerm>,
}

fn slots(pieces: &[Sequence]) -> Vec<Mono> {
    pieces.iter().map(|p| Mono::from_factors(vec![p.clone()]).expect("one factor").0).collect()
}

impl Realization {
    /// The complex coefficient of each bar word.
    pub fn coefficients(&self) -> BTreeMap<Vec<Mono>, C64> {
        let mut out: BTreeMap<Vec<Mono>, C64> = BTreeMap::new();
        for (w, c) in self.motivic.iter() {
            *out.entry(w.slots.clone()).or_default() += q_to_f64(c);
        }
        for t in &self.terms {
            *out.entry(slots(&t.word)).or_default() += t.scalar.value;
        }
        out.retain(|_, v| v.norm() > 0.0);
        out
    }

    pub fn max_error(&self) -> f64 {
        self.terms.iter().map(|t| t.scalar.error_bound).fold(0.0, f64::max)
    }

    /// `Σ (∫_γ ω_{A₁}) 𝕀(A₂)⋯𝕀(A_k)` over elementary cuts, as pairs of the
    /// first piece and the shuffle product of the remaining `𝕀`'s.
    pub fn grouped(&self, cs: &Cs) -> Vec<(Sequence, Bar<(), Mono>)> {
        let a = &self.sequence;
        let mut out = Vec::new();
        for cut in elementary_cut_classes(a.n()) {
            let mut prod = empty_word();
            for p in &cut[1..] {
                prod = shuffle_product(cs, &prod, &cs.t_element(&a.piece(p))).expect("commutative");
            }
            out.push((a.piece(&cut[0]), prod));
        }
        out
    }

    /// Whether the all-cuts form and the elementary-cut form agree word by
    /// word for every first piece.
    pub fn grouping_holds(&self, cs: &Cs) -> bool {
        let a = &self.sequence;
        let mut by_first: BTreeMap<Vec<usize>, Bar<(), Mono>> = BTreeMap::new();
        for cut in all_cut_indices(a.n()).iter() {
            let pieces: Vec<Sequence> = cut.iter().map(|p| a.piece(p)).collect();
            let entry = by_first.entry(cut[0].clone()).or_insert_with(Lin::zero);
            if !pieces[1..].iter().any(|p| cs.kill_loops && p.is_loop()) {
                entry.add_scaled(&word(slots(&pieces[1..])), &exact_kernel::q(1));
            }
        }
        let mut grouped: BTreeMap<Vec<usize>, Bar<(), Mono>> = BTreeMap::new();
        for cut in elementary_cut_classes(a.n()) {
            let mut prod = empty_word();
            for p in &cut[1..] {
                prod = shuffle_product(cs, &prod, &cs.t_element(&a.piece(p))).expect("commutative");
            }
            grouped.entry(cut[0].clone()).or_insert_with(Lin::zero).add_scaled(&prod, &exact_kernel::q(1));
        }
        by_first.retain(|_, v| !v.is_zero());
        grouped.retain(|_, v| !v.is_zero());
        by_first == grouped
    }
}

/// `Λ(Z_γ(A)) = 𝕀(A) + Σ (∫_γ ω_{A₁})[A₂|…|A_k]` over all cuts, with
/// `ω_{A₁} = (2πi)^{-m} dt/(t - b₁)∘…∘dt/(t - b_m)`.
///
/// Needs `a₀ ≠ a₁` and `a_n ≠ a_{n+1}`; the path must run from `a₀` to
/// `a_{n+1}` with the variables of `A` set by `values`.
pub fn lambda_realize(
    a: &Sequence,
    theory: &Theory,
    path: &PathSpec,
    values: &BTreeMap<String, C64>,
    cfg: &NumericConfig,
) -> Result<Realization, LedgerError> {
    if !theory.admits(a) {
        return Err(LedgerError::NotAdmitted { theory: theory.to_string(), seq: a.to_string() });
    }
    let w = a.interior();
    if &w[0] == a.start() || &w[w.len() - 1] == a.end() {
        return Err(LedgerError::NeedsRegularization(a.to_string()));
    }
    let start = evaluate_point(a.start(), values)?;
    let end = evaluate_point(a.end(), values)?;
    let scale = 1e-12 * (1.0 + start.norm() + end.norm());
    if (path.start() - start).norm() > scale || (path.end() - end).norm() > scale {
        return Err(LedgerError::PathMismatch {
            expected: format!("{start} to {end}"),
            found: format!("{} to {}", path.start(), path.end()),
        });
    }
    let cs = Cs::default();
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let mut cache: BTreeMap<Sequence, Evaluation> = BTreeMap::new();
    let mut terms = Vec::new();
    for cut in all_cut_indices(a.n()).iter() {
        let pieces: Vec<Sequence> = cut.iter().map(|p| a.piece(p)).collect();
        if pieces.iter().any(|p| p.is_loop()) {
            continue;
        }
        let first = pieces[0].clone();
        let scalar = match cache.get(&first) {
            Some(e) => *e,
            None => {
                let letters = first
                    .interior()
                    .iter()
                    .map(|b| evaluate_point(b, values))
                    .collect::<Result<Vec<_>, _>>()?;
                let e = regularized_iterated_integral(&letters, path, cfg)?;
                let f = two_pi_i.powi(-(letters.len() as i32));
                let e = Evaluation::new(e.value * f, e.error_bound * f.norm(), e.method);
                cache.insert(first.clone(), e);
                e
            }
        };
        terms.push(RealizedTerm { full: cut.len() == 1, cut: pieces.clone(), scalar, word: pieces[1..].to_vec() });
    }
    Ok(Realization { sequence: a.clone(), motivic: cs.t_element(a), terms })
}
