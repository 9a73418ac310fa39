//! Sparse rational linear combinations over an ordered basis.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::{One, Zero};

use crate::Q;

/// A finite Q-linear combination of basis keys. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lin<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for Lin<K> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lin<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K) -> Self {
        Self::term(k, Q::one())
    }

    pub fn term(k: K, c: Q) -> Self {
        let mut l = Self::zero();
        l.add_term(k, c);
        l
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Lin<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Lin { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, v) in &self.terms {
            out.add_term(f(k), v.clone());
        }
        out
    }

    /// Applies a linear map given on basis elements.
    pub fn apply<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<K2>) -> Lin<K2> {
        let mut out = Lin::zero();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    pub fn into_map(self) -> BTreeMap<K, Q> {
        self.terms
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Lin<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut l = Lin::zero();
        for (k, c) in iter {
            l.add_term(k, c);
        }
        l
    }
}

impl<K: Ord + Clone> AddAssign<&Lin<K>> for Lin<K> {
    fn add_assign(&mut self, rhs: &Lin<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone> Add for &Lin<K> {
    type Output = Lin<K>;
    fn add(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for &Lin<K> {
    type Output = Lin<K>;
    fn sub(self, rhs: &Lin<K>) -> Lin<K> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &Lin<K> {
    type Output = Lin<K>;
    fn neg(self) -> Lin<K> {
        Lin { terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect() }
    }
}
