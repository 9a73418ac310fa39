//! The comparison map from the de Rham side of the path torsor to the bar
//! construction, and the two framings it relates.

use std::collections::BTreeMap;

use bar_complex::{word, Bar};
use cut_dga::{all_cut_indices, Cs, Mono, Sequence};
use cycle_engine::Theory;
use exact_kernel::{q, FieldElement, Lin, Q};
use period_lab::{PhiSeries, C64};

use crate::realize::evaluate_point;
use crate::LedgerError;

/// `X_{b₁}⋯X_{b_k} ↦ Σ [A₂|…|A_m]` over the cuts with
/// `A₁ = (a₀; b₁,…,b_k; a_{n+1})`, and `1 ↦ 𝕀(A)`.
pub fn comparison_map(letters: &[FieldElement], a: &Sequence, theory: &Theory, cs: &Cs) -> Result<Bar<(), Mono>, LedgerError> {
    if !theory.admits(a) {
        return Err(LedgerError::NotAdmitted { theory: theory.to_string(), seq: a.to_string() });
    }
    if letters.is_empty() {
        return Ok(cs.t_element(a));
    }
    let mut out = Lin::zero();
    for cut in all_cut_indices(a.n()).iter() {
        let first = a.piece(&cut[0]);
        if first.interior() != letters {
            continue;
        }
        let rest: Vec<Sequence> = cut[1..].iter().map(|p| a.piece(p)).collect();
        if cs.kill_loops && rest.iter().any(|p| p.is_loop()) {
            continue;
        }
        let slots = rest.iter().map(|p| Mono::from_factors(vec![p.clone()]).expect("one factor").0).collect();
        out.add_scaled(&word(slots), &q(1));
    }
    Ok(out)
}

/// The image of `Φ(γ)` under the comparison map, word by word.
///
/// Letters of `phi` are matched with the interior entries of `A` through
/// `values`; words in other letters map to zero.
pub fn phi_image(
    phi: &PhiSeries,
    a: &Sequence,
    theory: &Theory,
    values: &BTreeMap<String, C64>,
) -> Result<BTreeMap<Vec<Mono>, C64>, LedgerError> {
    let cs = Cs::default();
    let mut names: Vec<Option<FieldElement>> = vec![None; phi.letters().len()];
    for b in a.interior() {
        if let Some(i) = phi.letter_index(evaluate_point(b, values)?) {
            names[i] = Some(b.clone());
        }
    }
    let mut out: BTreeMap<Vec<Mono>, C64> = BTreeMap::new();
    let mut add = |x: &Bar<(), Mono>, c: C64| {
        for (w, k) in x.iter() {
            *out.entry(w.slots.clone()).or_default() += c * exact_kernel::q_to_f64(k);
        }
    };
    add(&comparison_map(&[], a, theory, &cs)?, C64::new(1.0, 0.0));
    for (w, e) in phi.iter() {
        let Some(letters) = w.iter().map(|&i| names[i].clone()).collect::<Option<Vec<_>>>() else {
            continue;
        };
        add(&comparison_map(&letters, a, theory, &cs)?, e.value);
    }
    out.retain(|_, v| v.norm() > 0.0);
    Ok(out)
}

/// The frames of the two structures attached to `A`: `(𝕀(A), ε)` on the bar
/// side and `(1, (X_{a₁}⋯X_{a_n})')` on the path side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framing {
    pub sequence: Sequence,
    pub weight: usize,
    pub motivic_vector: Bar<(), Mono>,
    /// The word dual to the functional `v̂` on the path side.
    pub hodge_functional: Vec<FieldElement>,
}

impl Framing {
    /// `ε`, the coefficient of the empty word.
    pub fn augmentation(x: &Bar<(), Mono>) -> Q {
        x.iter().filter(|(w, _)| w.slots.is_empty()).map(|(_, c)| c.clone()).sum()
    }

    /// `1 ∈ H_0`, the empty word.
    pub fn hodge_vector(&self) -> Vec<FieldElement> {
        Vec::new()
    }

    /// `v̂` on a monomial of degree `n`.
    pub fn hodge_functional_at(&self, letters: &[FieldElement]) -> Q {
        if letters == self.hodge_functional.as_slice() {
            q(1)
        } else {
            q(0)
        }
    }
}

pub fn framing_data(a: &Sequence, cs: &Cs) -> Framing {
    Framing {
        sequence: a.clone(),
        weight: a.n(),
        motivic_vector: cs.t_element(a),
        hodge_functional: a.interior().to_vec(),
    }
}
