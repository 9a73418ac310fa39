//! A small commutative DGA carrying a triple Massey product, used to
//! exercise the bar complex independently of any particular application.
//!
//! Generators e1, e2, e3, f1, f2, g all have degree 1, with
//! d f1 = e1 e2, d f2 = e2 e3 and d g = f1 e3 + e1 f2.

use exact_kernel::{q, Lin, Q};

use crate::Dga;

pub const GENERATORS: [&str; 6] = ["e1", "e2", "e3", "f1", "f2", "g"];

/// Sorted product of distinct odd generators; the empty product is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MasseyGen(pub Vec<String>);

impl MasseyGen {
    pub fn mono(names: &[&str]) -> Self {
        let (sign, m) = Self::sorted(names.iter().map(|s| s.to_string()).collect());
        assert!(sign == 1, "use Massey::mul for unsorted products");
        m.expect("repeated generator")
    }

    fn sorted(mut v: Vec<String>) -> (i32, Option<MasseyGen>) {
        let mut sign = 1;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return (sign, None);
        }
        (sign, Some(MasseyGen(v)))
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Massey;

impl Massey {
    fn d_gen(name: &str) -> Lin<MasseyGen> {
        let m = |a: &[&str]| MasseyGen::mono(a);
        match name {
            "f1" => Lin::single(m(&["e1", "e2"])),
            "f2" => Lin::single(m(&["e2", "e3"])),
            "g" => &Lin::single(m(&["e3", "f1"])).scale(&q(-1)) + &Lin::single(m(&["e1", "f2"])),
            _ => Lin::zero(),
        }
    }
}

impl Dga for Massey {
    type Gen = MasseyGen;

    fn degree(&self, a: &MasseyGen) -> i32 {
        a.0.len() as i32
    }

    fn d(&self, a: &MasseyGen) -> Lin<MasseyGen> {
        let mut out = Lin::zero();
        for i in 0..a.0.len() {
            let sign = if i % 2 == 1 { q(-1) } else { q(1) };
            let left = MasseyGen(a.0[..i].to_vec());
            let right = MasseyGen(a.0[i + 1..].to_vec());
            for (da, c) in Massey::d_gen(&a.0[i]).iter() {
                let t = self.mul_lin(&self.mul(&left, da), &Lin::single(right.clone()));
                out.add_scaled(&t, &(&sign * c));
            }
        }
        out
    }

    fn mul(&self, a: &MasseyGen, b: &MasseyGen) -> Lin<MasseyGen> {
        let mut v = a.0.clone();
        v.extend(b.0.iter().cloned());
        match MasseyGen::sorted(v) {
            (s, Some(m)) => Lin::term(m, q(s as i64)),
            (_, None) => Lin::zero(),
        }
    }

    fn augmentation(&self, a: &MasseyGen) -> Q {
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

    #[test]
    fn d_squares_to_zero_on_all_monomials() {
        let m = Massey;
        for mask in 1u32..64 {
            let names: Vec<&str> =
                (0..6).filter(|i| mask >> i & 1 == 1).map(|i| GENERATORS[i]).collect();
            let x = MasseyGen::mono(&names);
            assert!(m.d_lin(&m.d(&x)).is_zero(), "{x:?}");
        }
    }
}
