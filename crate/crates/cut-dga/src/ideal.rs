//! The relation ideal over a finite alphabet and its linear reduction.
//!
//! All relations are linear in generators of a fixed Adams degree, so the
//! quotient algebra is exterior on `V/R`. Reduction replaces each generator
//! by its residual modulo the span `R` of relation vectors and multiplies
//! the residuals back out.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, RwLock};

use bar_complex::{Bar, BarWord, Dga};
use exact_kernel::{q, FieldElement, Lin, LinearSpan};

use crate::algebra::{AlgElement, Cs, Mono};
use crate::{DgaError, Sequence};

/// Which families of relations to impose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationKinds {
    pub path: bool,
    pub shuffle: bool,
    pub reversal: bool,
    pub loops: bool,
}

impl Default for RelationKinds {
    fn default() -> Self {
        RelationKinds {
            path: true,
            shuffle: true,
            reversal: true,
            loops: true,
        }
    }
}

struct Degree {
    relations: Vec<Lin<Sequence>>,
    span: LinearSpan<Sequence>,
}

pub struct RelationIdeal {
    letters: Vec<FieldElement>,
    points: Vec<FieldElement>,
    kinds: RelationKinds,
    cs: Cs,
    degrees: RwLock<BTreeMap<usize, Arc<Degree>>>,
}

fn words(letters: &[FieldElement], n: usize) -> Vec<Vec<FieldElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for w in &out {
            for l in letters {
                let mut v = w.clone();
                v.push(l.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Shuffles of two words, with multiplicity.
pub fn shuffle_words<T: Clone>(u: &[T], v: &[T]) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let odd = |w: &[T]| vec![false; w.len()];
    bar_complex::shuffles(u, v, &odd(u), &odd(v), &mut |w, _| out.push(w));
    out
}

fn seq(a: &FieldElement, w: &[FieldElement], b: &FieldElement) -> Sequence {
    Sequence::new(a.clone(), w.to_vec(), b.clone()).expect("nonempty")
}

impl RelationIdeal {
    /// Interior entries range over `letters`; endpoints over `endpoints ∪ letters`.
    pub fn new(letters: Vec<FieldElement>, endpoints: Vec<FieldElement>) -> Self {
        Self::with_kinds(letters, endpoints, RelationKinds::default())
    }

    pub fn with_kinds(
        letters: Vec<FieldElement>,
        endpoints: Vec<FieldElement>,
        kinds: RelationKinds,
    ) -> Self {
        let letters: Vec<FieldElement> = letters
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut points: BTreeSet<FieldElement> = endpoints.into_iter().collect();
        points.extend(letters.iter().cloned());
        RelationIdeal {
            letters,
            points: points.into_iter().collect(),
            kinds,
            cs: Cs {
                kill_loops: kinds.loops,
            },
            degrees: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn letters(&self) -> &[FieldElement] {
        &self.letters
    }

    pub fn points(&self) -> &[FieldElement] {
        &self.points
    }

    pub fn algebra(&self) -> Cs {
        self.cs
    }

    pub fn check_alphabet(&self, a: &Sequence) -> Result<(), DgaError> {
        let bad = |e: &FieldElement| DgaError::AlphabetOverflow(e.to_string());
        for e in a.interior() {
            if self.letters.binary_search(e).is_err() {
                return Err(bad(e));
            }
        }
        for e in [a.start(), a.end()] {
            if self.points.binary_search(e).is_err() {
                return Err(bad(e));
            }
        }
        Ok(())
    }

    fn build(&self, n: usize) -> Degree {
        let (p, k) = (&self.points, &self.kinds);
        let mut rels: Vec<Lin<Sequence>> = Vec::new();
        let ws = words(&self.letters, n);
        for w in &ws {
            for a in p {
                if k.loops {
                    rels.push(Lin::single(seq(a, w, a)));
                }
                for b in p {
                    if k.reversal {
                        let mut r = Lin::single(seq(a, w, b));
                        let mut rw = w.clone();
                        rw.reverse();
                        let sign = if n % 2 == 1 { q(1) } else { q(-1) };
                        r.add_term(seq(b, &rw, a), sign);
                        rels.push(r);
                    }
                    if k.path {
                        for c in p {
                            let mut r = Lin::single(seq(a, w, b));
                            r.add_term(seq(b, w, c), q(1));
                            r.add_term(seq(a, w, c), q(-1));
                            rels.push(r);
                        }
                    }
                }
            }
        }
        if k.shuffle {
            for split in 1..n {
                for u in words(&self.letters, split) {
                    for v in words(&self.letters, n - split) {
                        let sh = shuffle_words(&u, &v);
                        for a in p {
                            for b in p {
                                let mut r = Lin::zero();
                                for w in &sh {
                                    r.add_term(seq(a, w, b), q(1));
                                }
                                rels.push(r);
                            }
                        }
                    }
                }
            }
        }
        let mut span = LinearSpan::new();
        for r in &rels {
            span.insert(r.clone());
        }
        Degree {
            relations: rels,
            span,
        }
    }

    fn degree(&self, n: usize) -> Arc<Degree> {
        if let Some(d) = self.degrees.read().unwrap().get(&n) {
            return d.clone();
        }
        let built = Arc::new(self.build(n));
        self.degrees
            .write()
            .unwrap()
            .entry(n)
            .or_insert(built)
            .clone()
    }

    /// The relation vectors of Adams degree `n`.
    pub fn relations(&self, n: usize) -> Vec<Lin<Sequence>> {
        self.degree(n).relations.clone()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.degree(n).span.rank()
    }

    /// Residual of a generator modulo the relations.
    pub fn reduce_generator(&self, a: &Sequence) -> Result<Lin<Sequence>, DgaError> {
        self.check_alphabet(a)?;
        Ok(self.degree(a.n()).span.reduce(&Lin::single(a.clone())))
    }

    pub fn reduce_mono(&self, m: &Mono) -> Result<AlgElement, DgaError> {
        let mut acc: AlgElement = Lin::single(Mono::unit());
        for a in m.factors() {
            let r = self.reduce_generator(a)?;
            let lifted: AlgElement = r.apply(|s| self.cs.gen(s));
            acc = self.cs.mul_lin(&acc, &lifted);
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn reduce_alg(&self, x: &AlgElement) -> Result<AlgElement, DgaError> {
        let mut out = Lin::zero();
        for (m, c) in x.iter() {
            out.add_scaled(&self.reduce_mono(m)?, c);
        }
        Ok(out)
    }

    /// Reduces every slot of every word and expands multilinearly.
    pub fn reduce_bar(&self, x: &Bar<(), Mono>) -> Result<Bar<(), Mono>, DgaError> {
        let mut out = Lin::zero();
        for (w, c) in x.iter() {
            let mut partial: Vec<(Vec<Mono>, exact_kernel::Q)> = vec![(Vec::new(), c.clone())];
            for slot in &w.slots {
                let r = self.reduce_mono(slot)?;
                let mut next = Vec::with_capacity(partial.len() * r.len());
                for (pre, pc) in &partial {
                    for (m, mc) in r.iter() {
                        let mut v = pre.clone();
                        v.push(m.clone());
                        next.push((v, pc * mc));
                    }
                }
                partial = next;
                if partial.is_empty() {
                    break;
                }
            }
            for (slots, c) in partial {
                out.add_term(BarWord { module: (), slots }, c);
            }
        }
        Ok(out)
    }

    pub fn is_zero_alg(&self, x: &AlgElement) -> Result<bool, DgaError> {
        Ok(self.reduce_alg(x)?.is_zero())
    }

    pub fn is_zero_bar(&self, x: &Bar<(), Mono>) -> Result<bool, DgaError> {
        Ok(self.reduce_bar(x)?.is_zero())
    }

    /// Checks that the differential of every relation vector of Adams degree
    /// at most `max_n` lies in the ideal; returns the first offender.
    pub fn check_differential_stable(
        &self,
        max_n: usize,
    ) -> Result<(), (Lin<Sequence>, AlgElement)> {
        for n in 1..=max_n {
            for r in self.relations(n) {
                let x: AlgElement = r.apply(|s| self.cs.gen(s));
                let d = self.cs.differential(&x);
                let red = self.reduce_alg(&d).expect("alphabet closed under cuts");
                if !red.is_zero() {
                    return Err((r, red));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_kernel::parse_field as p;

    fn ideal(letters: &[&str], ends: &[&str]) -> RelationIdeal {
        RelationIdeal::new(
            letters.iter().map(|s| p(s).unwrap()).collect(),
            ends.iter().map(|s| p(s).unwrap()).collect(),
        )
    }

    fn gens(cs: &Cs, xs: &[(i64, Sequence)]) -> AlgElement {
        let mut out = Lin::zero();
        for (c, s) in xs {
            out.add_scaled(&cs.gen(s), &q(*c));
        }
        out
    }

    #[test]
    fn relation_examples() {
        let id = ideal(&["a1", "a2"], &["a0", "a3"]);
        let cs = id.algebra();
        let s = Sequence::lit;
        let path = gens(
            &cs,
            &[
                (1, s("a0", &["a1"], "a2")),
                (1, s("a2", &["a1"], "a3")),
                (-1, s("a0", &["a1"], "a3")),
            ],
        );
        assert!(id.is_zero_alg(&path).unwrap());
        let shuffle = gens(
            &cs,
            &[
                (1, s("a0", &["a1", "a2"], "a3")),
                (1, s("a0", &["a2", "a1"], "a3")),
            ],
        );
        assert!(id.is_zero_alg(&shuffle).unwrap());
        let rev = gens(
            &cs,
            &[(1, s("a0", &["a1"], "a2")), (1, s("a2", &["a1"], "a0"))],
        );
        assert!(id.is_zero_alg(&rev).unwrap());
        let not_rel = gens(&cs, &[(1, s("a0", &["a1"], "a2"))]);
        assert!(!id.is_zero_alg(&not_rel).unwrap());
    }

    #[test]
    fn alphabet_overflow() {
        let id = ideal(&["0", "1"], &["z"]);
        assert!(matches!(
            id.reduce_generator(&Sequence::lit("0", &["w"], "1")),
            Err(DgaError::AlphabetOverflow(_))
        ));
    }
}
