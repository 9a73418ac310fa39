//! Rational functions over Q in named indeterminates.
//!
//! Canonical form: numerator and denominator coprime, denominator monic
//! (leading coefficient 1 under the graded-lex order). Distinct names are
//! distinct generic points, so equality is decidable by comparing forms.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::poly::{Poly, Var};
use crate::{KernelError, Q};

#[derive(PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Parts {
    num: Poly,
    den: Poly,
}

/// Shared so that clones are cheap; comparison short-circuits on identity.
#[derive(Clone, Debug)]
pub struct FieldElement(Arc<Parts>);

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.0, &other.0) {
            Ordering::Equal
        } else {
            self.0.cmp(&other.0)
        }
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Zero,
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Affine {
    Unique(FieldElement),
    NoSolution,
    Identical,
}

impl FieldElement {
    fn raw(num: Poly, den: Poly) -> Self {
        FieldElement(Arc::new(Parts { num, den }))
    }

    pub fn new(num: Poly, den: Poly) -> Result<Self, KernelError> {
        if den.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(FieldElement::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(FieldElement::raw(num.scale(&c.recip()), Poly::one()));
        }
        let (num, den) = if num.is_constant() {
            (num, den)
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
            }
        };
        let (den, lc) = den.monic();
        let num = num.scale(&lc.recip());
        Ok(FieldElement::raw(num, den))
    }

    pub fn zero() -> Self {
        FieldElement::raw(Poly::zero(), Poly::one())
    }

    pub fn one() -> Self {
        FieldElement::raw(Poly::one(), Poly::one())
    }

    pub fn from_q(c: Q) -> Self {
        FieldElement::raw(Poly::constant(c), Poly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_q(crate::q(n))
    }

    pub fn var(name: &str) -> Self {
        FieldElement::raw(Poly::var(name), Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        FieldElement::raw(p, Poly::one())
    }

    pub fn num(&self) -> &Poly {
        &self.0.num
    }

    pub fn den(&self) -> &Poly {
        &self.0.den
    }

    pub fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.den.is_one_poly() && self.0.num.is_one_poly()
    }

    pub fn as_constant(&self) -> Option<Q> {
        if !self.0.den.is_one_poly() {
            return None;
        }
        self.0.num.as_constant()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut v = self.0.num.vars();
        v.extend(self.0.den.vars());
        v
    }

    pub fn contains_var(&self, v: &str) -> bool {
        self.0.num.contains_var(v) || self.0.den.contains_var(v)
    }

    pub fn degree_in(&self, v: &str) -> u32 {
        self.0.num.degree_in(v).max(self.0.den.degree_in(v))
    }

    pub fn inv(&self) -> Result<Self, KernelError> {
        if self.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        // Already coprime, so only the leading coefficient needs fixing.
        let (den, lc) = self.0.num.monic();
        Ok(FieldElement::raw(self.0.den.scale(&lc.recip()), den))
    }

    pub fn derivative(&self, v: &str) -> Self {
        if !self.contains_var(v) {
            return FieldElement::zero();
        }
        let (n, d) = (&self.0.num, &self.0.den);
        let top = &(&n.derivative(v) * d) - &(n * &d.derivative(v));
        FieldElement::new(top, d * d).expect("nonzero denominator")
    }

    /// Exact value at a rational point, `None` at a pole or an unbound variable.
    pub fn eval_q(&self, env: &BTreeMap<Var, Q>) -> Option<Q> {
        let d = self.0.den.eval_q(env)?;
        if d.is_zero() {
            return None;
        }
        Some(self.0.num.eval_q(env)? / d)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, KernelError> {
        if other.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        FieldElement::new(&self.0.num * &other.0.den, &self.0.den * &other.0.num)
    }

    /// Substitutes `var := g`, re-canonicalized.
    pub fn substitute(&self, var: &str, g: &FieldElement) -> Result<Self, KernelError> {
        if !self.contains_var(var) {
            return Ok(self.clone());
        }
        let (pn, dn) = self.0.num.substitute_fraction(var, &g.0.num, &g.0.den);
        let (pd, dd) = self.0.den.substitute_fraction(var, &g.0.num, &g.0.den);
        if pd.is_zero() {
            return Err(KernelError::DivisionByZero);
        }
        // num(g) = pn / gd^dn and den(g) = pd / gd^dd
        let (n, d) = if dd >= dn {
            (&pn * &g.0.den.pow(dd - dn), pd)
        } else {
            (pn, &pd * &g.0.den.pow(dn - dd))
        };
        FieldElement::new(n, d)
    }

    pub fn rename(&self, map: &BTreeMap<Var, Var>) -> Self {
        let num = self.0.num.rename(map);
        let den = self.0.den.rename(map);
        let (den, lc) = den.monic();
        FieldElement::raw(num.scale(&lc.recip()), den)
    }

    /// Solves `self = target` for `var`, requiring a nonzero constant leading coefficient.
    pub fn solve_affine(&self, var: &str, target: Target) -> Result<Affine, KernelError> {
        self.solve_affine_with(var, target, |_| true)
    }

    /// Like [`solve_affine`](Self::solve_affine) but the leading coefficient only has to be
    /// free of variables for which `is_param` holds.
    pub fn solve_affine_with(
        &self,
        var: &str,
        target: Target,
        is_param: impl Fn(&str) -> bool,
    ) -> Result<Affine, KernelError> {
        if !self.contains_var(var) {
            return Ok(match target {
                Target::Zero if self.is_zero() => Affine::Identical,
                _ => Affine::NoSolution,
            });
        }
        if self.0.num.degree_in(var) > 1 || self.0.den.degree_in(var) > 1 {
            return Err(KernelError::NonAffine(var.to_string()));
        }
        let p = match target {
            Target::Zero => &self.0.num,
            Target::Infinity => &self.0.den,
        };
        let cs = p.coeffs_in(var);
        if cs.len() < 2 || cs[1].is_zero() {
            return Ok(Affine::NoSolution);
        }
        let alpha = &cs[1];
        if alpha.vars().iter().any(|v| is_param(v)) {
            return Err(KernelError::NonConstantLeadingCoefficient(var.to_string()));
        }
        let sol = FieldElement::new(-&cs[0], alpha.clone())?;
        Ok(Affine::Unique(sol))
    }

    pub fn eval<T>(&self, env: impl Fn(&str) -> T) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T> + std::ops::Div<Output = T> + From<f64>,
    {
        let n = self.0.num.eval(&env);
        let d = self.0.den.eval(&env);
        n / d
    }
}

trait IsOnePoly {
    fn is_one_poly(&self) -> bool;
}

impl IsOnePoly for Poly {
    fn is_one_poly(&self) -> bool {
        self.as_constant().map(|c| c.is_one()).unwrap_or(false)
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.0.den == rhs.0.den {
            return FieldElement::new(&self.0.num + &rhs.0.num, self.0.den.clone()).unwrap();
        }
        FieldElement::new(&(&self.0.num * &rhs.0.den) + &(&rhs.0.num * &self.0.den), &self.0.den * &rhs.0.den)
            .unwrap()
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self + &(-rhs)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        if self.is_zero() || rhs.is_zero() {
            return FieldElement::zero();
        }
        FieldElement::new(&self.0.num * &rhs.0.num, &self.0.den * &rhs.0.den).unwrap()
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::raw(-&self.0.num, self.0.den.clone())
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn is_zero(&self) -> bool {
        self.0.num.is_zero()
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.0.den.is_one_poly() {
            write!(f, "{}", self.0.num)
        } else {
            let n = wrap(&self.0.num);
            let d = if self.0.den.num_terms() > 1
                || self.0.den.terms().next().map(|(m, _)| m.factors().len() > 1).unwrap_or(false)
            {
                format!("({})", self.0.den)
            } else {
                self.0.den.to_string()
            };
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse_field as p;

    #[test]
    fn canonical_equality() {
        assert_eq!(p("(x^2 - y^2)/(x + y)").unwrap(), p("x - y").unwrap());
        assert_eq!(p("1/2 + 1/3").unwrap(), p("5/6").unwrap());
        assert_ne!(p("x").unwrap(), p("y").unwrap());
        assert_ne!(p("x").unwrap(), p("1").unwrap());
    }

    #[test]
    fn substitute_examples() {
        let f = p("(s - t)/(c - t)").unwrap();
        assert!(f.substitute("t", &p("s").unwrap()).unwrap().is_zero());
        let g = p("1 - s/a").unwrap();
        assert!(g.substitute("s", &p("a").unwrap()).unwrap().is_zero());
        assert_eq!(f.substitute("t", &p("c").unwrap()), Err(KernelError::DivisionByZero));
    }

    #[test]
    fn solve_affine_examples() {
        let f = p("(s - t)/(c - t)").unwrap();
        assert_eq!(f.solve_affine("t", Target::Zero).unwrap(), Affine::Unique(p("s").unwrap()));
        assert_eq!(f.solve_affine("t", Target::Infinity).unwrap(), Affine::Unique(p("c").unwrap()));
        let g = p("1 - s/a").unwrap();
        assert_eq!(g.solve_affine("t", Target::Zero).unwrap(), Affine::NoSolution);
        assert!(matches!(
            p("t^2 - s").unwrap().solve_affine("t", Target::Zero),
            Err(KernelError::NonAffine(_))
        ));
        assert!(matches!(
            p("s*t - 1").unwrap().solve_affine("t", Target::Zero),
            Err(KernelError::NonConstantLeadingCoefficient(_))
        ));
        assert_eq!(FieldElement::zero().solve_affine("t", Target::Zero).unwrap(), Affine::Identical);
    }

    #[test]
    fn display_round_trips() {
        for s in ["(s - t)/(c - t)", "-x*y + 1/2", "1/x", "3/(2*x)", "0", "x^2/(y + 1)"] {
            let f = p(s).unwrap();
            assert_eq!(p(&f.to_string()).unwrap(), f, "{s} -> {f}");
        }
    }
}
