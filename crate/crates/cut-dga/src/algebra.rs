//! The graded-commutative algebra on sequences and its differential.

use std::fmt;

use bar_complex::{word, Bar, Dga};
use exact_kernel::{q, Lin, Q};

use crate::cuts::{all_cut_indices, two_cuts};
use crate::Sequence;

/// A product of distinct generators in sorted order. All generators have
/// degree 1, so the algebra is exterior on them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Mono(Vec<Sequence>);

impl Mono {
    pub fn unit() -> Self {
        Mono(Vec::new())
    }

    pub fn factors(&self) -> &[Sequence] {
        &self.0
    }

    /// Sorts with the permutation sign; `None` when a factor repeats.
    pub fn from_factors(mut v: Vec<Sequence>) -> Option<(Mono, bool)> {
        let mut odd = false;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                odd = !odd;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Mono(v), odd))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|s| format!("({s})")).collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub type AlgElement = Lin<Mono>;

/// The DGA generated by sequences over a field, with `dA = -Σ A'A''`.
#[derive(Clone, Copy, Debug)]
pub struct Cs {
    /// Identify sequences with equal endpoints with zero.
    pub kill_loops: bool,
}

impl Default for Cs {
    fn default() -> Self {
        Cs { kill_loops: true }
    }
}

impl Cs {
    pub fn keeping_loops() -> Self {
        Cs { kill_loops: false }
    }

    pub fn gen(&self, a: &Sequence) -> AlgElement {
        if self.kill_loops && a.is_loop() {
            Lin::zero()
        } else {
            Lin::single(Mono(vec![a.clone()]))
        }
    }

    pub fn product(&self, factors: Vec<Sequence>) -> AlgElement {
        if self.kill_loops && factors.iter().any(|a| a.is_loop()) {
            return Lin::zero();
        }
        match Mono::from_factors(factors) {
            Some((m, odd)) => Lin::term(m, if odd { q(-1) } else { q(1) }),
            None => Lin::zero(),
        }
    }

    /// `dA = -Σ A'A''` over the 2-cuts of `A`.
    pub fn d_gen(&self, a: &Sequence) -> AlgElement {
        if self.kill_loops && a.is_loop() {
            return Lin::zero();
        }
        let mut out = Lin::zero();
        for (l, r) in two_cuts(a) {
            out.add_scaled(&self.product(vec![l, r]), &q(-1));
        }
        out
    }

    pub fn differential(&self, x: &AlgElement) -> AlgElement {
        self.d_lin(x)
    }

    /// Bar word for one slot holding a generator (zero if the generator vanishes).
    fn slot(&self, a: &Sequence) -> Option<Mono> {
        (!(self.kill_loops && a.is_loop())).then(|| Mono(vec![a.clone()]))
    }

    /// `T(A) = Σ [A₁|…|A_k]` over all cuts of `A`.
    pub fn t_element(&self, a: &Sequence) -> Bar<(), Mono> {
        let mut out = Lin::zero();
        'cuts: for cut in all_cut_indices(a.n()).iter() {
            let mut slots = Vec::with_capacity(cut.len());
            for p in cut {
                match self.slot(&a.piece(p)) {
                    Some(m) => slots.push(m),
                    None => continue 'cuts,
                }
            }
            out.add_scaled(&word(slots), &q(1));
        }
        out
    }
}

impl Dga for Cs {
    type Gen = Mono;

    fn degree(&self, a: &Mono) -> i32 {
        a.0.len() as i32
    }

    fn adams(&self, a: &Mono) -> u32 {
        a.0.iter().map(|s| s.n() as u32).sum()
    }

    fn d(&self, a: &Mono) -> Lin<Mono> {
        let mut out = Lin::zero();
        for i in 0..a.0.len() {
            let sign = if i % 2 == 1 { q(-1) } else { q(1) };
            for (dm, c) in self.d_gen(&a.0[i]).iter() {
                let mut v = a.0[..i].to_vec();
                v.extend(dm.0.iter().cloned());
                v.extend(a.0[i + 1..].iter().cloned());
                out.add_scaled(&self.product(v), &(&sign * c));
            }
        }
        out
    }

    fn mul(&self, a: &Mono, b: &Mono) -> Lin<Mono> {
        let mut v = a.0.clone();
        v.extend(b.0.iter().cloned());
        self.product(v)
    }

    fn augmentation(&self, a: &Mono) -> Q {
        if a.0.is_empty() {
            q(1)
        } else {
            q(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bar_complex::BarComplex;

    #[test]
    fn differential_of_two_interior() {
        let cs = Cs::default();
        let a = Sequence::lit("a0", &["a1", "a2"], "a3");
        let d = cs.d_gen(&a);
        let expect = &cs
            .product(vec![
                Sequence::lit("a0", &["a2"], "a3"),
                Sequence::lit("a0", &["a1"], "a2"),
            ])
            .scale(&q(-1))
            - &cs.product(vec![
                Sequence::lit("a0", &["a1"], "a3"),
                Sequence::lit("a1", &["a2"], "a3"),
            ]);
        assert_eq!(d, expect);
        assert!(cs.d_gen(&Sequence::lit("a0", &["a1"], "a2")).is_zero());
    }

    #[test]
    fn t_of_two_interior_has_three_words() {
        let cs = Cs::default();
        let a = Sequence::lit("a0", &["a1", "a2"], "a3");
        let t = cs.t_element(&a);
        assert_eq!(t.len(), 3);
        let b = BarComplex::trivial(&cs);
        assert!(b.is_cocycle(&t).is_ok());
        assert!(b.is_cocycle(&word(vec![Mono(vec![a])])).is_err());
    }
}
