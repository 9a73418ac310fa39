//! The bar construction B(M, A) over an augmented DGA given through [`Dga`].
//!
//! Elements are Q-linear combinations of words `m ⊗ [a₁|…|a_r]` where `m`
//! is a basis element of a right module and each `aᵢ` is a basis element
//! of the augmentation ideal.

use std::fmt::Debug;

use exact_kernel::{q, Lin, Q};

pub mod toy;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BarError {
    #[error("shuffle product needs a commutative base")]
    NoncommutativeBase,
    #[error("slot entry {0} has nonzero augmentation")]
    NotInAugmentationIdeal(String),
}

/// An augmented differential graded algebra presented on a basis.
///
/// `mul` must be associative and satisfy the Leibniz rule with `d`;
/// the augmentation of every basis element is either zero or the
/// element is the unit.
pub trait Dga {
    type Gen: Clone + Ord + Debug;

    fn degree(&self, a: &Self::Gen) -> i32;
    fn adams(&self, _a: &Self::Gen) -> u32 {
        0
    }
    fn d(&self, a: &Self::Gen) -> Lin<Self::Gen>;
    fn mul(&self, a: &Self::Gen, b: &Self::Gen) -> Lin<Self::Gen>;
    fn augmentation(&self, a: &Self::Gen) -> Q;
    fn is_commutative(&self) -> bool {
        true
    }

    fn mul_lin(&self, x: &Lin<Self::Gen>, y: &Lin<Self::Gen>) -> Lin<Self::Gen> {
        let mut out = Lin::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.mul(a, b), &(ca * cb));
            }
        }
        out
    }

    fn d_lin(&self, x: &Lin<Self::Gen>) -> Lin<Self::Gen> {
        x.apply(|a| self.d(a))
    }
}

/// A right differential module over `A`.
pub trait RightModule<A: Dga> {
    type Elt: Clone + Ord + Debug;

    fn degree(&self, m: &Self::Elt) -> i32;
    fn d(&self, m: &Self::Elt) -> Lin<Self::Elt>;
    fn act(&self, dga: &A, m: &Self::Elt, a: &A::Gen) -> Lin<Self::Elt>;
}

/// The ground field as a module, acting through the augmentation.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

impl<A: Dga> RightModule<A> for Trivial {
    type Elt = ();

    fn degree(&self, _: &()) -> i32 {
        0
    }
    fn d(&self, _: &()) -> Lin<()> {
        Lin::zero()
    }
    fn act(&self, dga: &A, _: &(), a: &A::Gen) -> Lin<()> {
        Lin::term((), dga.augmentation(a))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarWord<M, G> {
    pub module: M,
    pub slots: Vec<G>,
}

pub type Bar<M, G> = Lin<BarWord<M, G>>;

/// Bar element over the trivial module from a single word.
pub fn word<G: Clone + Ord>(slots: Vec<G>) -> Bar<(), G> {
    Lin::single(BarWord { module: (), slots })
}

pub fn empty_word<G: Clone + Ord>() -> Bar<(), G> {
    word(Vec::new())
}

fn sign(odd: bool) -> Q {
    if odd {
        -q(1)
    } else {
        q(1)
    }
}

/// J(a) = (-1)^{deg a - 1} a as a scalar.
fn j_sign(deg: i32) -> Q {
    sign((deg - 1).rem_euclid(2) == 1)
}

/// Differentials of B(M, A).
pub struct BarComplex<'a, A: Dga, M: RightModule<A>> {
    pub dga: &'a A,
    pub module: &'a M,
}

impl<'a, A: Dga> BarComplex<'a, A, Trivial> {
    pub fn trivial(dga: &'a A) -> Self {
        BarComplex { dga, module: &Trivial }
    }
}

impl<'a, A: Dga, M: RightModule<A>> BarComplex<'a, A, M> {
    pub fn new(dga: &'a A, module: &'a M) -> Self {
        BarComplex { dga, module }
    }

    /// Total degree `deg m + Σ (deg aᵢ - 1)`.
    pub fn degree(&self, w: &BarWord<M::Elt, A::Gen>) -> i32 {
        self.module.degree(&w.module) + w.slots.iter().map(|a| self.dga.degree(a) - 1).sum::<i32>()
    }

    pub fn adams(&self, w: &BarWord<M::Elt, A::Gen>) -> u32 {
        w.slots.iter().map(|a| self.dga.adams(a)).sum()
    }

    pub fn check(&self, x: &Bar<M::Elt, A::Gen>) -> Result<(), BarError> {
        for (w, _) in x.iter() {
            for a in &w.slots {
                if self.dga.augmentation(a) != q(0) {
                    return Err(BarError::NotInAugmentationIdeal(format!("{a:?}")));
                }
            }
        }
        Ok(())
    }

    pub fn d_ext(&self, x: &Bar<M::Elt, A::Gen>) -> Bar<M::Elt, A::Gen> {
        x.apply(|w| self.d_ext_word(w))
    }

    pub fn d_int(&self, x: &Bar<M::Elt, A::Gen>) -> Bar<M::Elt, A::Gen> {
        x.apply(|w| self.d_int_word(w))
    }

    pub fn d(&self, x: &Bar<M::Elt, A::Gen>) -> Bar<M::Elt, A::Gen> {
        &self.d_ext(x) + &self.d_int(x)
    }

    /// Returns `Ok(())` when `d x = 0`, otherwise the residual.
    pub fn is_cocycle(&self, x: &Bar<M::Elt, A::Gen>) -> Result<(), Bar<M::Elt, A::Gen>> {
        let r = self.d(x);
        if r.is_zero() {
            Ok(())
        } else {
            Err(r)
        }
    }

    fn d_ext_word(&self, w: &BarWord<M::Elt, A::Gen>) -> Bar<M::Elt, A::Gen> {
        let mut out = Lin::zero();
        for (dm, c) in self.module.d(&w.module).iter() {
            out.add_term(BarWord { module: dm.clone(), slots: w.slots.clone() }, c.clone());
        }
        let jm = j_sign(self.module.degree(&w.module));
        // prefix sign accumulates J on a₁…a_{i-1}
        let mut prefix = jm;
        for i in 0..w.slots.len() {
            for (da, c) in self.dga.d(&w.slots[i]).iter() {
                let mut slots = w.slots.clone();
                slots[i] = da.clone();
                out.add_term(BarWord { module: w.module.clone(), slots }, &prefix * c);
            }
            prefix *= j_sign(self.dga.degree(&w.slots[i]));
        }
        out
    }

    fn d_int_word(&self, w: &BarWord<M::Elt, A::Gen>) -> Bar<M::Elt, A::Gen> {
        let mut out = Lin::zero();
        if w.slots.is_empty() {
            return out;
        }
        let jm = j_sign(self.module.degree(&w.module));
        for (ma, c) in self.module.act(self.dga, &w.module, &w.slots[0]).iter() {
            out.add_term(
                BarWord { module: ma.clone(), slots: w.slots[1..].to_vec() },
                &jm * c,
            );
        }
        let mut prefix = jm;
        for i in 0..w.slots.len().saturating_sub(1) {
            let ji = j_sign(self.dga.degree(&w.slots[i]));
            let s = &prefix * &ji;
            for (p, c) in self.dga.mul(&w.slots[i], &w.slots[i + 1]).iter() {
                let mut slots = Vec::with_capacity(w.slots.len() - 1);
                slots.extend_from_slice(&w.slots[..i]);
                slots.push(p.clone());
                slots.extend_from_slice(&w.slots[i + 2..]);
                out.add_term(BarWord { module: w.module.clone(), slots }, &s * c);
            }
            prefix *= ji;
        }
        out
    }
}

/// Deconcatenation coproduct on B(A): pairs of slot lists.
pub fn coproduct<G: Clone + Ord>(x: &Bar<(), G>) -> Lin<(Vec<G>, Vec<G>)> {
    let mut out = Lin::zero();
    for (w, c) in x.iter() {
        for s in 0..=w.slots.len() {
            out.add_term((w.slots[..s].to_vec(), w.slots[s..].to_vec()), c.clone());
        }
    }
    out
}

/// Counit: coefficient of the empty word.
pub fn counit<G: Clone + Ord>(x: &Bar<(), G>) -> Q {
    x.coeff(&BarWord { module: (), slots: Vec::new() })
}

/// Graded shuffle product on B(A), slot weights `deg - 1`.
pub fn shuffle_product<A: Dga>(
    dga: &A,
    x: &Bar<(), A::Gen>,
    y: &Bar<(), A::Gen>,
) -> Result<Bar<(), A::Gen>, BarError> {
    if !dga.is_commutative() {
        return Err(BarError::NoncommutativeBase);
    }
    let mut out = Lin::zero();
    for (u, cu) in x.iter() {
        for (v, cv) in y.iter() {
            let wu: Vec<bool> = u.slots.iter().map(|a| (dga.degree(a) - 1).rem_euclid(2) == 1).collect();
            let wv: Vec<bool> = v.slots.iter().map(|a| (dga.degree(a) - 1).rem_euclid(2) == 1).collect();
            let c = cu * cv;
            shuffles(&u.slots, &v.slots, &wu, &wv, &mut |slots, odd| {
                out.add_term(BarWord { module: (), slots }, if odd { -c.clone() } else { c.clone() });
            });
        }
    }
    Ok(out)
}

/// Enumerates the (r,s)-shuffles of `u` and `v` with the Koszul sign
/// for the given odd weights.
pub fn shuffles<G: Clone>(
    u: &[G],
    v: &[G],
    wu: &[bool],
    wv: &[bool],
    f: &mut impl FnMut(Vec<G>, bool),
) {
    fn rec<G: Clone>(
        u: &[G],
        v: &[G],
        wu: &[bool],
        wv: &[bool],
        acc: &mut Vec<G>,
        odd: bool,
        f: &mut impl FnMut(Vec<G>, bool),
    ) {
        if u.is_empty() && v.is_empty() {
            f(acc.clone(), odd);
            return;
        }
        if !u.is_empty() {
            acc.push(u[0].clone());
            rec(&u[1..], v, &wu[1..], wv, acc, odd, f);
            acc.pop();
        }
        if !v.is_empty() {
            // v₀ jumps over the remaining letters of u.
            let jumps = wv[0] && (wu.iter().filter(|&&b| b).count() % 2 == 1);
            acc.push(v[0].clone());
            rec(u, &v[1..], wu, &wv[1..], acc, odd ^ jumps, f);
            acc.pop();
        }
    }
    rec(u, v, wu, wv, &mut Vec::new(), false, f);
}

/// Applies a linear map slot-wise to the left and right factors of a
/// tensor of slot lists.
pub fn tensor_map<G: Clone + Ord, H: Clone + Ord>(
    x: &Lin<(Vec<G>, Vec<G>)>,
    mut f: impl FnMut(&[G]) -> Lin<Vec<H>>,
) -> Lin<(Vec<H>, Vec<H>)> {
    let mut out = Lin::zero();
    for ((l, r), c) in x.iter() {
        let fl = f(l);
        let fr = f(r);
        for (a, ca) in fl.iter() {
            for (b, cb) in fr.iter() {
                out.add_term((a.clone(), b.clone()), c * &(ca * cb));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toy::{Massey, MasseyGen};
    use exact_kernel::q;

    #[test]
    fn shuffle_of_two_letters() {
        let m = Massey;
        let x = word(vec![MasseyGen::mono(&["e1"])]);
        let y = word(vec![MasseyGen::mono(&["e2"])]);
        let p = shuffle_product(&m, &x, &y).unwrap();
        let expect = &word(vec![MasseyGen::mono(&["e1"]), MasseyGen::mono(&["e2"])])
            + &word(vec![MasseyGen::mono(&["e2"]), MasseyGen::mono(&["e1"])]);
        assert_eq!(p, expect);
        assert_eq!(shuffle_product(&m, &x, &empty_word()).unwrap(), x);
    }

    #[test]
    fn empty_word_is_closed() {
        let m = Massey;
        let b = BarComplex::trivial(&m);
        assert!(b.is_cocycle(&empty_word()).is_ok());
        assert_eq!(counit(&empty_word::<MasseyGen>()), q(1));
    }

    #[test]
    fn single_slot_d_ext() {
        let m = Massey;
        let b = BarComplex::trivial(&m);
        let f1 = MasseyGen::mono(&["f1"]);
        let d = b.d_ext(&word(vec![f1]));
        // Jm = -1 on the unit and d f1 = e1 e2.
        assert_eq!(d, word(vec![MasseyGen::mono(&["e1", "e2"])]).scale(&q(-1)));
        assert!(b.d_int(&word(vec![MasseyGen::mono(&["f1"])])).is_zero());
    }
}
