//! The generating series `Φ(γ) = Σ_w (∫_γ ω_w) X_w` with
//! `ω_a = (2πi)^{-1} dt/(t - a)`, truncated at a word length.

use std::collections::BTreeMap;

use cut_dga::shuffle_words;

use crate::path::PathSpec;
use crate::quad::integrate_words;
use crate::regularized::regularized_iterated_integral;
use crate::{Evaluation, NumericConfig, PeriodError, C64};

/// Coefficients of `Φ(γ)` on words in the punctures, as index lists into
/// [`PhiSeries::letters`].
#[derive(Clone, Debug)]
pub struct PhiSeries {
    letters: Vec<C64>,
    depth: usize,
    coeffs: BTreeMap<Vec<usize>, Evaluation>,
}

impl PhiSeries {
    pub fn letters(&self) -> &[C64] {
        &self.letters
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The coefficient of `X_w`, or `None` past the truncation.
    pub fn coeff(&self, w: &[usize]) -> Option<C64> {
        if w.is_empty() {
            return Some(C64::new(1.0, 0.0));
        }
        self.coeffs.get(w).map(|e| e.value)
    }

    pub fn evaluation(&self, w: &[usize]) -> Option<&Evaluation> {
        self.coeffs.get(w)
    }

    /// Nonempty words with their evaluations, shortest first.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<usize>, &Evaluation)> {
        let mut v: Vec<_> = self.coeffs.iter().collect();
        v.sort_by_key(|(w, _)| w.len());
        v.into_iter()
    }

    pub fn max_error(&self) -> f64 {
        self.coeffs.values().map(|e| e.error_bound).fold(0.0, f64::max)
    }

    /// Index of `a` among the letters.
    pub fn letter_index(&self, a: C64) -> Option<usize> {
        self.letters.iter().position(|&b| (a - b).norm() <= 1e-13 * (1.0 + a.norm()))
    }
}

fn all_words(letters: usize, depth: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..letters {
                let mut v: Vec<usize> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// `Φ(γ)` through words of length `depth`. Words whose first letter is the
/// start or whose last letter is the end are regularized at the tangential
/// endpoints.
pub fn feynman_dyson(
    path: &PathSpec,
    punctures: &[C64],
    depth: usize,
    cfg: &NumericConfig,
) -> Result<PhiSeries, PeriodError> {
    cfg.validate()?;
    let scale = C64::new(0.0, -1.0 / (2.0 * std::f64::consts::PI));
    let tiny = 1e-13 * path.vertices().iter().chain(punctures).map(|z| z.norm()).fold(1.0, f64::max);
    let at = |a: C64, b: C64| (a - b).norm() <= tiny;
    let (mut direct, mut divergent) = (Vec::new(), Vec::new());
    for w in all_words(punctures.len(), depth) {
        let first = punctures[w[0]];
        let last = punctures[*w.last().expect("nonempty")];
        if path.vertices().len() > 1 && (at(first, path.start()) || at(last, path.end())) {
            divergent.push(w);
        } else {
            direct.push(w);
        }
    }
    let mut coeffs = BTreeMap::new();
    for (w, e) in direct.iter().zip(integrate_words(path, punctures, &direct, scale, cfg)?) {
        coeffs.insert(w.clone(), e);
    }
    for w in divergent {
        let letters: Vec<C64> = w.iter().map(|&i| punctures[i]).collect();
        let e = regularized_iterated_integral(&letters, path, cfg)?;
        let f = scale.powi(w.len() as i32);
        coeffs.insert(w, Evaluation::new(e.value * f, e.error_bound * f.norm(), e.method));
    }
    Ok(PhiSeries { letters: punctures.to_vec(), depth, coeffs })
}

/// `|c(w₁)c(w₂) − Σ_{w ∈ w₁ ⧢ w₂} c(w)|`, which vanishes for a group-like
/// series. `None` when the shuffles are longer than the truncation.
pub fn shuffle_residual(phi: &PhiSeries, w1: &[usize], w2: &[usize]) -> Option<f64> {
    let mut sum = C64::new(0.0, 0.0);
    for w in shuffle_words(w1, w2) {
        sum += phi.coeff(&w)?;
    }
    Some((phi.coeff(w1)? * phi.coeff(w2)? - sum).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_by_length() {
        let w = all_words(2, 3);
        assert_eq!(w.len(), 2 + 4 + 8);
        assert_eq!(w[0], vec![0]);
        assert_eq!(w.last().unwrap(), &vec![1, 1, 1]);
    }

    #[test]
    fn straight_path_away_from_punctures() {
        let p = PathSpec::straight(C64::new(2.0, 0.0), C64::new(3.0, 0.0), vec![C64::new(0.0, 0.0)]).unwrap();
        let phi = feynman_dyson(&p, &[C64::new(0.0, 0.0)], 2, &NumericConfig::default()).unwrap();
        let l = (1.5f64).ln();
        let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
        assert!((phi.coeff(&[0]).unwrap() - l / two_pi_i).norm() < 1e-12);
        assert!((phi.coeff(&[0, 0]).unwrap() - l * l / 2.0 / (two_pi_i * two_pi_i)).norm() < 1e-12);
        assert!(phi.coeff(&[0, 0, 0]).is_none());
        assert_eq!(shuffle_residual(&phi, &[0], &[]), Some(0.0));
    }
}
