//! Parametrized cycles in cubes, kept in Alt normal form.
//!
//! A term is a tuple of rational functions in the external parameters
//! `s1, s2, …` and internal parameters `t1…tp`. The cycle it represents is
//! the closure of the image of the internal parameter space, with the
//! externals treated as generic. Terms are stored as canonical
//! representatives of their orbit under coordinate permutations and
//! inversions `z ↦ 1/z`, together with internal parameter renamings.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use exact_kernel::{q, Affine, FieldElement, KernelError, Lin, Target, Var, Q};
use itertools::Itertools;
use num_traits::Zero;

use crate::CycleError;

/// External parameter `s_i` (1-based).
pub fn ext(i: usize) -> Var {
    format!("s{i}").into()
}

/// Internal parameter `t_i` (1-based).
pub fn int(i: usize) -> Var {
    format!("t{i}").into()
}

fn numbered(v: &str, prefix: char) -> bool {
    let mut c = v.chars();
    c.next() == Some(prefix) && {
        let rest = c.as_str();
        !rest.is_empty() && rest.chars().all(|d| d.is_ascii_digit())
    }
}

pub fn is_internal(v: &str) -> bool {
    numbered(v, 't')
}

pub fn is_external(v: &str) -> bool {
    numbered(v, 's')
}

/// Names the engine generates itself and callers may not use.
pub fn is_reserved(v: &str) -> bool {
    is_internal(v) || is_external(v)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Term {
    coords: Vec<FieldElement>,
    internal: usize,
}

impl Term {
    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// Number of internal parameters.
    pub fn internal(&self) -> usize {
        self.internal
    }

    /// Ambient cube dimension.
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn params(&self) -> Vec<Var> {
        (1..=self.internal).map(int).collect()
    }

    pub fn externals(&self) -> BTreeSet<Var> {
        self.coords
            .iter()
            .flat_map(|f| f.vars())
            .filter(|v| is_external(v))
            .collect()
    }

    /// Coordinates with internal parameters renamed `t_j ↦ t_{j+offset}`.
    pub fn shifted(&self, offset: usize) -> Vec<FieldElement> {
        if offset == 0 {
            return self.coords.clone();
        }
        let map: BTreeMap<Var, Var> = (1..=self.internal)
            .map(|j| (int(j), int(j + offset)))
            .collect();
        self.coords.iter().map(|f| f.rename(&map)).collect()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Deterministic sample points for rank tests.
fn sample_point(vars: &BTreeSet<Var>, round: usize) -> BTreeMap<Var, Q> {
    vars.iter()
        .enumerate()
        .map(|(k, v)| {
            let num = ((7 + 13 * k + 31 * round) % 97) as i64 + 2;
            let den = ((3 + 5 * k + 11 * round) % 23) as i64 + 1;
            (v.clone(), q(num) / q(den))
        })
        .collect()
}

fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map(|x| x.len()).unwrap_or(0);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let v = &rows[r][j] * &f;
                rows[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Generic rank of the Jacobian with respect to `params`.
fn jacobian_rank(coords: &[FieldElement], params: &[Var]) -> usize {
    let vars: BTreeSet<Var> = coords.iter().flat_map(|f| f.vars()).collect();
    let mut best = 0;
    for round in 0..3 {
        let env = sample_point(&vars, round);
        let mut rows = Vec::with_capacity(params.len());
        let mut pole = false;
        'rows: for v in params {
            let mut row = Vec::with_capacity(coords.len());
            for f in coords {
                if !f.contains_var(v) {
                    row.push(q(0));
                    continue;
                }
                let (n, d) = (f.num(), f.den());
                let vals = (
                    n.eval_q(&env),
                    d.eval_q(&env),
                    n.derivative(v).eval_q(&env),
                    d.derivative(v).eval_q(&env),
                );
                match vals {
                    (Some(n0), Some(d0), Some(n1), Some(d1)) if !d0.is_zero() => {
                        row.push((n1 * &d0 - n0 * d1) / (&d0 * &d0));
                    }
                    _ => {
                        pole = true;
                        break 'rows;
                    }
                }
            }
            rows.push(row);
        }
        if pole {
            continue;
        }
        best = best.max(rank(rows));
        if best == params.len() {
            break;
        }
    }
    best
}

/// Orients each coordinate to `min(f, 1/f)` and sorts; `None` if the
/// result is fixed by a sign-reversing symmetry.
fn orient(coords: Vec<FieldElement>) -> Option<(Vec<FieldElement>, bool)> {
    let mut neg = false;
    let mut v = Vec::with_capacity(coords.len());
    for f in coords {
        if f.is_zero() {
            v.push(f);
            continue;
        }
        let g = f.inv().expect("nonzero");
        match g.cmp(&f) {
            Ordering::Equal => return None,
            Ordering::Less => {
                neg = !neg;
                v.push(g);
            }
            Ordering::Greater => v.push(f),
        }
    }
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, neg))
}

/// Canonical representative of `Alt(coords)` with parameters `params`.
/// Returns the term and whether `Alt(coords) = -Alt(term)`; `None` when
/// the cycle vanishes.
pub fn canonical(coords: Vec<FieldElement>, params: &[Var]) -> Option<(Term, bool)> {
    if coords.iter().any(|f| f.is_one()) {
        return None;
    }
    if params
        .iter()
        .any(|v| !coords.iter().any(|f| f.contains_var(v)))
    {
        return None;
    }
    if params.len() > 1 && jacobian_rank(&coords, params) < params.len() {
        return None;
    }
    let p = params.len();
    let mut best: Option<(Vec<FieldElement>, bool)> = None;
    let mut conflict = false;
    for perm in (0..p).permutations(p) {
        let map: BTreeMap<Var, Var> = perm
            .iter()
            .enumerate()
            .map(|(j, &i)| (params[i].clone(), int(j + 1)))
            .collect();
        let renamed: Vec<FieldElement> = if map.iter().all(|(a, b)| a == b) {
            coords.clone()
        } else {
            coords.iter().map(|f| f.rename(&map)).collect()
        };
        let (list, neg) = orient(renamed)?;
        match &best {
            None => best = Some((list, neg)),
            Some((b, bn)) => match list.cmp(b) {
                Ordering::Less => {
                    best = Some((list, neg));
                    conflict = false;
                }
                Ordering::Equal => conflict |= neg != *bn,
                Ordering::Greater => {}
            },
        }
    }
    if conflict {
        return None;
    }
    best.map(|(coords, neg)| (Term { coords, internal: p }, neg))
}

/// A rational combination of Alt-normalized terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cycle(Lin<Term>);

impl Default for Cycle {
    fn default() -> Self {
        Cycle::zero()
    }
}

impl Cycle {
    pub fn zero() -> Self {
        Cycle(Lin::zero())
    }

    /// `c · Alt(coords)`.
    pub fn from_coords(coords: Vec<FieldElement>, params: &[Var], c: Q) -> Self {
        let mut out = Cycle::zero();
        out.add_coords(coords, params, c);
        out
    }

    pub fn add_coords(&mut self, coords: Vec<FieldElement>, params: &[Var], c: Q) {
        if c.is_zero() {
            return;
        }
        if let Some((t, neg)) = canonical(coords, params) {
            self.0.add_term(t, if neg { -c } else { c });
        }
    }

    pub fn add_scaled(&mut self, other: &Cycle, c: &Q) {
        self.0.add_scaled(&other.0, c);
    }

    pub fn scale(&self, c: &Q) -> Cycle {
        Cycle(self.0.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Term, &Q)> {
        self.0.iter()
    }

    pub fn coeff(&self, t: &Term) -> Q {
        self.0.coeff(t)
    }

    pub fn externals(&self) -> BTreeSet<Var> {
        self.terms().flat_map(|(t, _)| t.externals()).collect()
    }

    /// Renames `s_j ↦ s_{j+by}`.
    pub fn shift_externals(&self, by: usize) -> Cycle {
        if by == 0 {
            return self.clone();
        }
        let mut out = Cycle::zero();
        for (t, c) in self.terms() {
            let map: BTreeMap<Var, Var> = t
                .externals()
                .into_iter()
                .map(|v| {
                    let j: usize = v[1..].parse().expect("numbered");
                    (v, ext(j + by))
                })
                .collect();
            let coords = t.coords.iter().map(|f| f.rename(&map)).collect();
            out.add_coords(coords, &t.params(), c.clone());
        }
        out
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    fn add(self, rhs: &Cycle) -> Cycle {
        Cycle(&self.0 + &rhs.0)
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, rhs: &Cycle) -> Cycle {
        Cycle(&self.0 - &rhs.0)
    }
}

impl Neg for &Cycle {
    type Output = Cycle;
    fn neg(self) -> Cycle {
        Cycle(self.0.scale(&q(-1)))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(t, c)| format!("{}*Alt{t}", exact_kernel::fmt_q(c)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// External product followed by Alt.
pub fn product(y: &Cycle, z: &Cycle) -> Cycle {
    let mut out = Cycle::zero();
    for (ty, cy) in y.terms() {
        for (tz, cz) in z.terms() {
            let mut coords = ty.coords.clone();
            coords.extend(tz.shifted(ty.internal));
            let params: Vec<Var> = (1..=ty.internal + tz.internal).map(int).collect();
            out.add_coords(coords, &params, cy * cz);
        }
    }
    out
}

/// Where a part of a composite term is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `s1` replaced by the new internal parameter.
    Fresh,
    /// `s1` kept.
    External,
}

/// `c · Alt(lead(t), parts…)` for a new internal parameter `t`, where each
/// part is a cycle in `s1` evaluated per its slot.
pub fn attach(
    lead: &dyn Fn(&FieldElement) -> FieldElement,
    parts: &[(&Cycle, Slot)],
    c: &Q,
) -> Cycle {
    let mut out = Cycle::zero();
    let s1 = ext(1);
    let mut stack: Vec<(usize, Vec<(&Term, Q)>)> = vec![(0, Vec::new())];
    while let Some((depth, chosen)) = stack.pop() {
        if depth < parts.len() {
            for (t, ct) in parts[depth].0.terms() {
                let mut next = chosen.clone();
                next.push((t, ct.clone()));
                stack.push((depth + 1, next));
            }
            continue;
        }
        let total: usize = chosen.iter().map(|(t, _)| t.internal).sum();
        let fresh = int(total + 1);
        let tf = FieldElement::var(&fresh);
        let mut coords = vec![lead(&tf)];
        let mut offset = 0;
        let mut coeff = c.clone();
        for ((t, ct), (_, slot)) in chosen.iter().zip(parts) {
            for f in t.shifted(offset) {
                coords.push(match slot {
                    Slot::Fresh => f.substitute(&s1, &tf).expect("no pole in a fresh parameter"),
                    Slot::External => f,
                });
            }
            offset += t.internal;
            coeff *= ct;
        }
        let params: Vec<Var> = (1..=total + 1).map(int).collect();
        out.add_coords(coords, &params, coeff);
    }
    out
}

/// Restriction of one term to the face `x_i = target`, before Alt.
/// `Ok(None)` is the empty intersection.
pub fn restrict_raw(
    coords: &[FieldElement],
    params: &[Var],
    i: usize,
    target: Target,
) -> Result<Option<(Vec<FieldElement>, Vec<Var>)>, CycleError> {
    let f = &coords[i];
    let poly = match target {
        Target::Zero => f.num(),
        Target::Infinity => f.den(),
    };
    let candidates: Vec<&Var> = params
        .iter()
        .rev()
        .filter(|v| poly.contains_var(v))
        .collect();
    if candidates.is_empty() {
        if target == Target::Zero && f.is_zero() {
            return Err(CycleError::NonProper(format!("coordinate {} vanishes identically", i + 1)));
        }
        return Ok(None);
    }
    for v in candidates {
        let sol = match f.solve_affine_with(v, target, is_internal) {
            Ok(Affine::Unique(sol)) => sol,
            Ok(Affine::NoSolution) | Err(_) => continue,
            Ok(Affine::Identical) => {
                return Err(CycleError::NonProper(format!("coordinate {} vanishes identically", i + 1)))
            }
        };
        let mut out = Vec::with_capacity(coords.len() - 1);
        let mut infinite = None;
        for (j, g) in coords.iter().enumerate() {
            if j == i {
                continue;
            }
            match g.substitute(v, &sol) {
                Ok(h) if h.is_one() => return Ok(None),
                Ok(h) => out.push(h),
                Err(KernelError::DivisionByZero) => infinite = infinite.or(Some(j)),
                Err(e) => return Err(e.into()),
            }
        }
        if let Some(j) = infinite {
            return Err(CycleError::NonProper(format!(
                "coordinate {} is infinite on the face x{} = {:?}",
                j + 1,
                i + 1,
                target
            )));
        }
        let rest: Vec<Var> = params.iter().filter(|w| *w != v).cloned().collect();
        return Ok(Some((out, rest)));
    }
    Err(CycleError::UnsupportedShape(format!(
        "cannot solve coordinate {f} = {target:?} for an internal parameter"
    )))
}

/// `Z|_{x_i = target}` (coordinate index is 0-based).
pub fn face_restrict(z: &Cycle, i: usize, target: Target) -> Result<Cycle, CycleError> {
    let mut out = Cycle::zero();
    for (t, c) in z.terms() {
        if i >= t.dim() {
            return Err(CycleError::UnsupportedShape(format!(
                "coordinate {} outside a cube of dimension {}",
                i + 1,
                t.dim()
            )));
        }
        if let Some((coords, params)) = restrict_raw(&t.coords, &t.params(), i, target)? {
            out.add_coords(coords, &params, c.clone());
        }
    }
    Ok(out)
}

/// `dZ = Σ (-1)^{i-1} (Z|_{x_i=0} - Z|_{x_i=∞})`.
pub fn differential(z: &Cycle) -> Result<Cycle, CycleError> {
    let mut out = Cycle::zero();
    for (t, c) in z.terms() {
        let params = t.params();
        for i in 0..t.dim() {
            let sign = if i % 2 == 0 { c.clone() } else { -c };
            for (target, s) in [(Target::Zero, sign.clone()), (Target::Infinity, -&sign)] {
                if let Some((coords, ps)) = restrict_raw(&t.coords, &params, i, target)? {
                    out.add_coords(coords, &ps, s);
                }
            }
        }
    }
    Ok(out)
}

/// Substitutes external parameters in order. With `sp` set, a coordinate
/// that would vanish identically under `s := v` takes `s := 1 + v` instead.
pub fn specialize(z: &Cycle, subs: &[(Var, FieldElement, bool)]) -> Result<Cycle, CycleError> {
    let one = FieldElement::one();
    let mut out = Cycle::zero();
    for (t, c) in z.terms() {
        let mut coords = Vec::with_capacity(t.dim());
        let mut neg = false;
        for f in &t.coords {
            let mut g = f.clone();
            for (v, val, sp) in subs {
                if !g.contains_var(v) {
                    continue;
                }
                let fail = |e: KernelError| {
                    CycleError::InadmissibleSpecialization(format!("{v} := {val} in {f}: {e}"))
                };
                let h = match g.substitute(v, val) {
                    Ok(h) if !(*sp && h.is_zero()) => h,
                    Ok(_) => g.substitute(v, &(&one + val)).map_err(fail)?,
                    Err(KernelError::DivisionByZero) if *sp => {
                        g.substitute(v, &(&one + val)).map_err(fail)?
                    }
                    Err(KernelError::DivisionByZero) => {
                        // An infinite coordinate is recorded through its inverse.
                        neg = !neg;
                        g.inv().map_err(fail)?.substitute(v, val).map_err(fail)?
                    }
                    Err(e) => return Err(fail(e)),
                };
                g = h;
            }
            coords.push(g);
        }
        out.add_coords(coords, &t.params(), if neg { -c } else { c.clone() });
    }
    Ok(out)
}

/// One failure of proper intersection with a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub term: String,
    /// 1-based coordinates of the original term with their face values.
    pub face: Vec<(usize, Target)>,
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let face: Vec<String> = self
            .face
            .iter()
            .map(|(i, t)| format!("x{i}={}", if *t == Target::Zero { "0" } else { "inf" }))
            .collect();
        write!(f, "{} on face {{{}}}: {}", self.term, face.join(", "), self.reason)
    }
}

/// Sweeps every face of every term by iterated restriction. Each nonempty
/// intersection must lose one internal parameter per constraint.
pub fn admissible_check(z: &Cycle) -> Vec<Violation> {
    let mut out = Vec::new();
    for (t, _) in z.terms() {
        let idx: Vec<usize> = (1..=t.dim()).collect();
        sweep(t, &t.coords, &t.params(), &idx, 0, &mut Vec::new(), &mut out);
    }
    out
}

fn sweep(
    term: &Term,
    coords: &[FieldElement],
    params: &[Var],
    idx: &[usize],
    from: usize,
    face: &mut Vec<(usize, Target)>,
    out: &mut Vec<Violation>,
) {
    for i in from..coords.len() {
        for target in [Target::Zero, Target::Infinity] {
            face.push((idx[i], target));
            match restrict_raw(coords, params, i, target) {
                Ok(None) => {}
                Ok(Some((rest, ps))) => {
                    let mut sub = idx.to_vec();
                    sub.remove(i);
                    sweep(term, &rest, &ps, &sub, i, face, out);
                }
                Err(e) => out.push(Violation {
                    term: term.to_string(),
                    face: face.clone(),
                    reason: e.to_string(),
                }),
            }
            face.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_kernel::parse_field as p;

    fn fe(s: &str) -> FieldElement {
        p(s).unwrap()
    }

    fn cyc(coords: &[&str], internal: usize) -> Cycle {
        let params: Vec<Var> = (1..=internal).map(int).collect();
        Cycle::from_coords(coords.iter().map(|s| fe(s)).collect(), &params, q(1))
    }

    #[test]
    fn alt_signs() {
        let a = cyc(&["s1", "1-s1"], 0);
        let b = cyc(&["1-s1", "s1"], 0);
        assert_eq!(a, -&b);
        let c = cyc(&["1/s1", "1-s1"], 0);
        assert_eq!(a, -&c);
        assert!(cyc(&["s1", "s1"], 0).is_zero());
        assert!(cyc(&["s1", "1/s1"], 0).is_zero());
        assert!(cyc(&["-1"], 0).is_zero());
        assert!(cyc(&["1", "s1"], 0).is_zero());
    }

    #[test]
    fn renaming_internal_parameters() {
        let a = cyc(&["(s1-t1)/(c-t1)", "t1-t2", "1-t2"], 2);
        let b = cyc(&["(s1-t2)/(c-t2)", "t2-t1", "1-t1"], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn degenerate_parametrization_vanishes() {
        assert!(cyc(&["t1+t2", "2*t1+2*t2"], 2).is_zero());
        assert!(cyc(&["s1", "2"], 1).is_zero());
    }

    #[test]
    fn repeated_coordinate_vanishes() {
        assert!(cyc(&["(s1-t1)/(c-t1)", "(s1-t1)/(c-t1)"], 1).is_zero());
    }

    #[test]
    fn face_examples() {
        let coords = vec![fe("(s1-t1)/(c-t1)"), fe("1-t1")];
        let face = |target| {
            let (c, ps) = restrict_raw(&coords, &[int(1)], 0, target).unwrap().unwrap();
            Cycle::from_coords(c, &ps, q(1))
        };
        assert_eq!(face(Target::Zero), cyc(&["1-s1"], 0));
        assert_eq!(face(Target::Infinity), cyc(&["1-c"], 0));
        let w = cyc(&["1-s1"], 0);
        assert!(face_restrict(&w, 0, Target::Zero).unwrap().is_zero());
    }

    #[test]
    fn differential_squares_to_zero_on_a_sample() {
        let z = cyc(&["(s1-t1)/(c-t1)", "(t1-t2)/(c-t2)", "1-t2/a", "t1/b"], 2);
        let d = differential(&z).unwrap();
        assert!(!d.is_zero());
        assert!(differential(&d).unwrap().is_zero());
    }

    #[test]
    fn specialize_with_sp() {
        let z = cyc(&["1-s1"], 0);
        let at = |s: &str| vec![(ext(1), fe(s), true)];
        assert!(specialize(&z, &at("0")).unwrap().is_zero());
        assert_eq!(specialize(&z, &at("z")).unwrap(), cyc(&["1-z"], 0));
        assert_eq!(specialize(&z, &at("1")).unwrap(), cyc(&["-1"], 0));
        let s = cyc(&["s1"], 0);
        assert!(specialize(&s, &at("0")).unwrap().is_zero());
    }

    #[test]
    fn product_commutes_with_sign() {
        let y = cyc(&["s1", "1-s1"], 0);
        let z = cyc(&["(s1-t1)/(c-t1)", "1-t1", "t1"], 1);
        let yz = product(&y, &z);
        let zy = product(&z, &y);
        assert_eq!(yz, zy);
        let u = cyc(&["1-s1"], 0);
        assert_eq!(product(&u, &z), -&product(&z, &u));
        assert!(product(&u, &Cycle::zero()).is_zero());
    }

    #[test]
    fn improper_face_is_reported() {
        let z = cyc(&["t1", "0"], 1);
        assert!(!admissible_check(&z).is_empty());
        let ok = cyc(&["(s1-t1)/(c-t1)", "1-t1/a", "t1/b"], 1);
        assert!(admissible_check(&ok).is_empty(), "{:?}", admissible_check(&ok));
    }
}
