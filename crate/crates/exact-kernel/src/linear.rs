//! Exact row reduction over Q with membership certificates.
//!
//! `LinearSpan` keeps a reduced row echelon basis of the inserted vectors
//! together with, for every pivot row, its expression in terms of the
//! original inserted vectors. Coordinates are sparse and keyed by any
//! ordered label type.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::lincomb::Lin;
use crate::{KernelError, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanAnswer {
    /// Coefficients expressing the vector in terms of the generators.
    InSpan(Vec<Q>),
    /// Reduced residual, nonzero.
    NotInSpan(Vec<Q>),
}

#[derive(Clone, Debug)]
struct Row<K: Ord> {
    vec: Lin<K>,
    /// Expression of `vec` in the original generators.
    combo: Lin<usize>,
}

/// Row-reduced span of labelled sparse vectors.
#[derive(Clone, Debug)]
pub struct LinearSpan<K: Ord> {
    /// Pivot label -> row whose pivot coefficient is 1 and which has zero
    /// coefficient on every other pivot label.
    rows: BTreeMap<K, Row<K>>,
    generators: usize,
}

impl<K: Ord + Clone> Default for LinearSpan<K> {
    fn default() -> Self {
        LinearSpan { rows: BTreeMap::new(), generators: 0 }
    }
}

impl<K: Ord + Clone> LinearSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    /// Reduces `v` against the pivots. Returns the residual and the
    /// combination of generators that was subtracted.
    pub fn reduce_with_certificate(&self, v: &Lin<K>) -> (Lin<K>, Lin<usize>) {
        let mut res = v.clone();
        let mut used = Lin::zero();
        for (p, row) in &self.rows {
            let c = res.coeff(p);
            if c.is_zero() {
                continue;
            }
            res.add_scaled(&row.vec, &-c.clone());
            used.add_scaled(&row.combo, &c);
        }
        (res, used)
    }

    pub fn reduce(&self, v: &Lin<K>) -> Lin<K> {
        self.reduce_with_certificate(v).0
    }

    pub fn contains(&self, v: &Lin<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts a generator. Returns true when the rank grew.
    pub fn insert(&mut self, v: Lin<K>) -> bool {
        let idx = self.generators;
        self.generators += 1;
        let (res, used) = self.reduce_with_certificate(&v);
        if res.is_zero() {
            return false;
        }
        let (p, c) = res.iter().next().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let inv = c.recip();
        let vec = res.scale(&inv);
        let mut combo = Lin::single(idx);
        combo.add_scaled(&used, &-Q::one());
        let combo = combo.scale(&inv);
        for row in self.rows.values_mut() {
            let e = row.vec.coeff(&p);
            if !e.is_zero() {
                row.vec.add_scaled(&vec, &-e.clone());
                row.combo.add_scaled(&combo, &-e);
            }
        }
        self.rows.insert(p, Row { vec, combo });
        true
    }
}

/// Decides whether `v` lies in the span of `vectors`.
pub fn span_reduce(vectors: &[Vec<Q>], v: &[Q]) -> Result<SpanAnswer, KernelError> {
    let dim = v.len();
    for w in vectors {
        if w.len() != dim {
            return Err(KernelError::DimensionMismatch { expected: dim, got: w.len() });
        }
    }
    let to_lin = |w: &[Q]| -> Lin<usize> {
        w.iter().enumerate().map(|(i, c)| (i, c.clone())).collect()
    };
    let mut span = LinearSpan::new();
    for w in vectors {
        span.insert(to_lin(w));
    }
    let (res, used) = span.reduce_with_certificate(&to_lin(v));
    if res.is_zero() {
        Ok(SpanAnswer::InSpan((0..vectors.len()).map(|i| used.coeff(&i)).collect()))
    } else {
        Ok(SpanAnswer::NotInSpan((0..dim).map(|i| res.coeff(&i)).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    fn vq(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn unit_basis() {
        let a = span_reduce(&[vq(&[1, 0]), vq(&[0, 1])], &vq(&[3, -2])).unwrap();
        assert_eq!(a, SpanAnswer::InSpan(vq(&[3, -2])));
    }

    #[test]
    fn residual_is_nonzero_and_stable() {
        let a = span_reduce(&[vq(&[1, 1])], &vq(&[1, 0])).unwrap();
        let SpanAnswer::NotInSpan(r) = a else { panic!() };
        assert_eq!(r, vq(&[0, -1]));
        let b = span_reduce(&[vq(&[1, 1])], &r).unwrap();
        assert_eq!(b, SpanAnswer::NotInSpan(r));
    }

    #[test]
    fn empty_span() {
        assert_eq!(span_reduce(&[], &vq(&[0, 0])).unwrap(), SpanAnswer::InSpan(vec![]));
        assert!(matches!(
            span_reduce(&[vq(&[1])], &vq(&[1, 2])),
            Err(KernelError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn dependent_generators_certificate() {
        let gens = [vq(&[1, 2, 3]), vq(&[2, 4, 6]), vq(&[0, 1, 1])];
        let target = vq(&[1, 3, 4]);
        let SpanAnswer::InSpan(c) = span_reduce(&gens, &target).unwrap() else { panic!() };
        for j in 0..3 {
            let s: Q = (0..3).map(|i| &c[i] * &gens[i][j]).fold(q(0), |a, b| a + b);
            assert_eq!(s, target[j]);
        }
    }
}
