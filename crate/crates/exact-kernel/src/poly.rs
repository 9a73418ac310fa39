//! Sparse multivariate polynomials over Q in named indeterminates.
//!
//! Monomials are ordered graded-lexicographically, variables compared by
//! name (an earlier name is the more significant variable). The leading
//! term of a polynomial is therefore the last entry of its map.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::{fmt_q, Q};

pub type Var = Arc<str>;

/// Product of variables with positive exponents, sorted by name.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: &str) -> Self {
        Monomial(vec![(Arc::from(v), 1)])
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exp(&self, v: &str) -> u32 {
        self.0.iter().find(|(w, _)| &**w == v).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (v, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 == *v {
                let f = other.0[j].1;
                if f > *e {
                    return None;
                }
                if e > &f {
                    out.push((v.clone(), e - f));
                }
                j += 1;
            } else if j < other.0.len() && other.0[j].0 < *v {
                return None;
            } else {
                out.push((v.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits off the power of `v`.
    pub fn split(&self, v: &str) -> (u32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for (w, k) in &self.0 {
            if &**w == v {
                e = *k;
            } else {
                rest.push((w.clone(), *k));
            }
        }
        (e, Monomial(rest))
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Monomial {
        let mut out: Vec<(Var, u32)> = self
            .0
            .iter()
            .map(|(v, e)| (map.get(v).cloned().unwrap_or_else(|| v.clone()), *e))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(out.len());
        for (v, e) in out {
            match merged.last_mut() {
                Some((w, k)) if *w == v => *k += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial(merged)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    let c = a[i].1.cmp(&b[j].1);
                    if c != Ordering::Equal {
                        return c;
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: &str) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Q::one());
        p
    }

    pub fn monomial(m: Monomial, c: Q) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.leading().map(|(m, _)| m.degree()).unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Scales so the leading coefficient is 1; returns the old leading coefficient.
    pub fn monic(&self) -> (Poly, Q) {
        match self.leading() {
            None => (Poly::zero(), Q::one()),
            Some((_, lc)) => {
                let lc = lc.clone();
                (self.scale(&lc.recip()), lc)
            }
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                out.insert(v.clone());
            }
        }
        out
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Coefficients as a polynomial in `v`; entry `i` multiplies `v^i`.
    pub fn coeffs_in(&self, v: &str) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn mul_monomial(&self, m: &Monomial, c: &Q) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect() }
    }

    /// Substitutes `v := g` (a polynomial).
    pub fn substitute(&self, v: &str, g: &Poly) -> Poly {
        if !self.contains_var(v) {
            return self.clone();
        }
        let cs = self.coeffs_in(v);
        let mut acc = Poly::zero();
        for c in cs.iter().rev() {
            acc = &(&acc * g) + c;
        }
        acc
    }

    /// Homogenized substitution `v := gn/gd`, multiplied through by `gd^deg`.
    pub fn substitute_fraction(&self, v: &str, gn: &Poly, gd: &Poly) -> (Poly, u32) {
        let cs = self.coeffs_in(v);
        let d = (cs.len() - 1) as u32;
        let mut acc = Poly::zero();
        let mut gn_pow = Poly::one();
        for (i, c) in cs.iter().enumerate() {
            if !c.is_zero() {
                let t = &(c * &gn_pow) * &gd.pow(d - i as u32);
                acc = &acc + &t;
            }
            if i + 1 < cs.len() {
                gn_pow = &gn_pow * gn;
            }
        }
        (acc, d)
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            p.add_term(m.rename(map), c.clone());
        }
        p
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut quo = Poly::zero();
        let mut rem = self.clone();
        while let Some((lm, lc)) = rem.leading() {
            let m = lm.div(&dm)?;
            let c = lc / &dc;
            rem = &rem - &d.mul_monomial(&m, &c);
            quo.add_term(m, c);
        }
        Some(quo)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic().0;
        }
        if b.is_zero() {
            return a.monic().0;
        }
        if a.is_constant() || b.is_constant() {
            return Poly::one();
        }
        if a == b {
            return a.monic().0;
        }
        if a.num_terms() == 1 || b.num_terms() == 1 {
            let m = a.terms.keys().chain(b.terms.keys()).fold(None, |acc: Option<Monomial>, m| {
                Some(match acc {
                    None => m.clone(),
                    Some(g) => g.gcd(m),
                })
            });
            return Poly::monomial(m.unwrap(), Q::one());
        }
        let (va, vb) = (a.vars(), b.vars());
        // A variable present on one side only can be eliminated through the content.
        if let Some(v) = va.difference(&vb).next() {
            return Poly::gcd_many(b, &a.coeffs_in(v));
        }
        if let Some(v) = vb.difference(&va).next() {
            return Poly::gcd_many(a, &b.coeffs_in(v));
        }
        if a.exact_div(b).is_some() {
            return b.monic().0;
        }
        if b.exact_div(a).is_some() {
            return a.monic().0;
        }
        let x = va.iter().min_by_key(|v| (a.degree_in(v) + b.degree_in(v), (*v).clone())).unwrap().clone();
        let (ca, pa) = a.content_primitive(&x);
        let (cb, pb) = b.content_primitive(&x);
        let c = Poly::gcd(&ca, &cb);
        let (mut f, mut g) = if pa.degree_in(&x) >= pb.degree_in(&x) { (pa, pb) } else { (pb, pa) };
        // Subresultant pseudo-remainder sequence.
        let mut gl = Poly::one();
        let mut h = Poly::one();
        loop {
            let delta = f.degree_in(&x) - g.degree_in(&x);
            let r = f.prem(&g, &x);
            if r.is_zero() {
                break;
            }
            if r.degree_in(&x) == 0 {
                g = Poly::one();
                break;
            }
            let div = &gl * &h.pow(delta);
            f = g;
            g = r.exact_div(&div).expect("subresultant division is exact");
            gl = f.coeffs_in(&x).pop().unwrap();
            h = match delta {
                0 => h,
                1 => gl.clone(),
                _ => gl.pow(delta).exact_div(&h.pow(delta - 1)).expect("exact"),
            };
        }
        let (_, gp) = g.content_primitive(&x);
        (&c * &gp).monic().0
    }

    fn gcd_many(start: &Poly, others: &[Poly]) -> Poly {
        let mut g = start.clone();
        for c in others.iter().filter(|c| !c.is_zero()) {
            g = Poly::gcd(&g, c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g.monic().0
    }

    /// Content with respect to `x` (a polynomial free of `x`) and the primitive part.
    pub fn content_primitive(&self, x: &str) -> (Poly, Poly) {
        let cs = self.coeffs_in(x);
        let mut content = Poly::zero();
        for c in cs.iter().filter(|c| !c.is_zero()) {
            content = Poly::gcd(&content, c);
            if content.is_constant() {
                break;
            }
        }
        if content.is_constant() {
            return (Poly::one(), self.clone());
        }
        let prim = self.exact_div(&content).expect("content divides");
        (content, prim)
    }

    /// Pseudo-remainder of `self` by `g` as polynomials in `x`.
    fn prem(&self, g: &Poly, x: &str) -> Poly {
        let dg = g.degree_in(x);
        let gc = g.coeffs_in(x);
        let lg = gc[dg as usize].clone();
        let mut f = self.clone();
        while !f.is_zero() && f.degree_in(x) >= dg {
            let df = f.degree_in(x);
            let lf = f.coeffs_in(x)[df as usize].clone();
            let shift = Poly::monomial(Monomial::var(x).pow_of(df - dg), Q::one());
            f = &(&lg * &f) - &(&(&lf * &shift) * g);
        }
        f
    }

    pub fn derivative(&self, v: &str) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(v);
            if e > 0 {
                let lowered = rest.mul(&Monomial::var(v).pow_of(e - 1));
                p.add_term(lowered, c * Q::from_integer(e.into()));
            }
        }
        p
    }

    /// Exact value at a rational point; every variable must be bound.
    pub fn eval_q(&self, env: &BTreeMap<Var, Q>) -> Option<Q> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = env.get(v)?;
                for _ in 0..*e {
                    t = &t * x;
                }
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn eval<T>(&self, mut env: impl FnMut(&str) -> T) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T> + From<f64>,
    {
        let mut acc = T::from(0.0);
        for (m, c) in &self.terms {
            let mut t = T::from(crate::q_to_f64(c));
            for (v, e) in m.factors() {
                let x = env(v);
                for _ in 0..*e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl Monomial {
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(v, e)| {
                    let f = other.exp(v);
                    (f > 0).then(|| (v.clone(), (*e).min(f)))
                })
                .collect(),
        )
    }

    fn pow_of(self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.into_iter().map(|(v, k)| (v, k * e)).collect())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_q(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&a))?;
            }
        }
        Ok(())
    }
}
