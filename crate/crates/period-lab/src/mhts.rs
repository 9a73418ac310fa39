//! Exact check of the mixed Hodge-Tate condition on explicit data.
//!
//! Complex numbers enter only as formal `Q`-linear combinations of named
//! periods, with distinct names taken to be linearly independent over `Q`
//! and the name `1` standing for the rationals. All linear algebra is then
//! over `Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use exact_kernel::{fmt_q, parse_field, q, Lin, LinearSpan, Q};
use num_traits::Zero;

use crate::PeriodError;

/// A `Q`-linear combination of named periods.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PeriodEntry(pub Lin<String>);

impl PeriodEntry {
    pub const ONE: &'static str = "1";

    pub fn zero() -> Self {
        PeriodEntry(Lin::zero())
    }

    pub fn rational(c: Q) -> Self {
        PeriodEntry(Lin::term(Self::ONE.to_string(), c))
    }

    pub fn period(name: &str) -> Self {
        PeriodEntry(Lin::single(name.to_string()))
    }

    /// The value when it is rational.
    pub fn as_rational(&self) -> Option<Q> {
        self.0
            .keys()
            .all(|k| k == Self::ONE)
            .then(|| self.0.coeff(&Self::ONE.to_string()))
    }
}

impl FromStr for PeriodEntry {
    type Err = PeriodError;

    /// Sums of terms `c`, `name` or `c*name` with rational `c`, e.g.
    /// `1/2 - 3*zeta3 + alpha`.
    fn from_str(s: &str) -> Result<Self, PeriodError> {
        let bad = |m: &str| PeriodError::Config(format!("period entry `{s}`: {m}"));
        let mut out = Lin::zero();
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(bad("empty"));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, c) in text.char_indices() {
            if (c == '+' || c == '-') && i > 0 && !text[..i].ends_with(['*', '/', '+', '-']) {
                terms.push(&text[start..i]);
                start = i;
            }
        }
        terms.push(&text[start..]);
        for t in terms {
            let body = t.trim_start_matches(['+', '-']);
            let minus = t[..t.len() - body.len()].matches('-').count();
            let sign = if minus % 2 == 1 { q(-1) } else { q(1) };
            let coeff = |c: &str| -> Result<Q, PeriodError> {
                parse_field(c)
                    .ok()
                    .and_then(|f| f.as_constant())
                    .ok_or_else(|| bad(&format!("`{c}` is not rational")))
            };
            let (c, name) = match body.rsplit_once('*') {
                Some((c, n)) => (coeff(c)?, n.to_string()),
                None if body.starts_with(|c: char| c.is_ascii_alphabetic()) => (q(1), body.to_string()),
                None => (coeff(body)?, Self::ONE.to_string()),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(bad(&format!("bad period name `{name}`")));
            }
            out.add_term(name, sign * c);
        }
        Ok(PeriodEntry(out))
    }
}

impl fmt::Display for PeriodEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, c)| if k == Self::ONE { fmt_q(c) } else { format!("{}*{k}", fmt_q(c)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `H = ⊕ H_{2n}` with standard bases, a Betti lattice given by vectors in
/// `H ⊗ C` and an optional frame `v ∈ H_0`, `v̂ ∈ Hom(H_{-2N}, Q)`.
///
/// Coordinates are ordered by increasing `n`, then by basis index.
#[derive(Clone, Debug)]
pub struct FramedMhts {
    dims: BTreeMap<i64, usize>,
    betti: Vec<Vec<PeriodEntry>>,
    frame: Option<(i64, Vec<Q>, Vec<Q>)>,
    verified: bool,
}

impl FramedMhts {
    /// `dims` maps `n` to `dim H_{2n}`; each Betti vector lists one entry per
    /// coordinate.
    pub fn new(dims: BTreeMap<i64, usize>, betti: Vec<Vec<PeriodEntry>>) -> Result<Self, PeriodError> {
        let total: usize = dims.values().sum();
        if let Some(v) = betti.iter().find(|v| v.len() != total) {
            return Err(PeriodError::Config(format!(
                "Betti vector has {} entries, expected {total}",
                v.len()
            )));
        }
        let mut h = FramedMhts { dims, betti, frame: None, verified: false };
        h.verified = mhts_check(&h).passed();
        Ok(h)
    }

    /// Attaches `v ∈ H_0` and `v̂` on `H_{-2n}`.
    pub fn with_frame(mut self, n: i64, v: Vec<Q>, vhat: Vec<Q>) -> Result<Self, PeriodError> {
        let (d0, dn) = (self.dim(0), self.dim(-n));
        if v.len() != d0 || vhat.len() != dn {
            return Err(PeriodError::Config(format!(
                "frame sizes ({}, {}) do not match dim H_0 = {d0}, dim H_{} = {dn}",
                v.len(),
                vhat.len(),
                -2 * n
            )));
        }
        self.frame = Some((n, v, vhat));
        Ok(self)
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims.get(&n).copied().unwrap_or(0)
    }

    pub fn dims(&self) -> &BTreeMap<i64, usize> {
        &self.dims
    }

    pub fn betti(&self) -> &[Vec<PeriodEntry>] {
        &self.betti
    }

    pub fn frame(&self) -> Option<&(i64, Vec<Q>, Vec<Q>)> {
        self.frame.as_ref()
    }

    /// Whether the structure passed [`mhts_check`] when it was built.
    pub fn verified(&self) -> bool {
        self.verified
    }

    /// `(n, basis index)` for each coordinate.
    fn coordinates(&self) -> Vec<(i64, usize)> {
        self.dims.iter().flat_map(|(&n, &d)| (0..d).map(move |i| (n, i))).collect()
    }
}

/// The condition at one weight: the Betti vectors lying in `⊕_{n≤m} H_{2n}`
/// must project onto exactly `H_{2m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub m: i64,
    pub dim: usize,
    /// Rank of the rational part of the projected image.
    pub rank: usize,
    /// Whether every projected vector is rational.
    pub rational: bool,
}

impl LevelReport {
    pub fn passed(&self) -> bool {
        self.rational && self.rank == self.dim
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MhtsReport {
    pub levels: Vec<LevelReport>,
}

impl MhtsReport {
    pub fn passed(&self) -> bool {
        self.levels.iter().all(LevelReport::passed)
    }

    pub fn first_failure(&self) -> Option<&LevelReport> {
        self.levels.iter().find(|l| !l.passed())
    }
}

impl fmt::Display for MhtsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.levels {
            let mark = if l.passed() { "ok  " } else { "FAIL" };
            let note = if l.rational { "" } else { ", irrational image" };
            writeln!(f, "{mark} m = {}: image rank {} of {}{note}", l.m, l.rank, l.dim)?;
        }
        Ok(())
    }
}

/// Checks `Im(H_B ∩ ⊕_{n≤m} H_{2n} ⊗ C → H_{2m} ⊗ C) = H_{2m}` for every
/// `m` with `H_{2m} ≠ 0`.
pub fn mhts_check(h: &FramedMhts) -> MhtsReport {
    let coords = h.coordinates();
    let mut levels = Vec::new();
    for (&m, &dim) in &h.dims {
        if dim == 0 {
            continue;
        }
        let mut high = LinearSpan::<(usize, String)>::new();
        let mut kernel: Vec<Lin<usize>> = Vec::new();
        for (j, b) in h.betti.iter().enumerate() {
            let mut v = Lin::zero();
            for (k, (n, _)) in coords.iter().enumerate() {
                if *n > m {
                    for (name, c) in b[k].0.iter() {
                        v.add_term((k, name.clone()), c.clone());
                    }
                }
            }
            let (res, used) = high.reduce_with_certificate(&v);
            if res.is_zero() {
                let mut combo = Lin::single(j);
                combo.add_scaled(&used, &q(-1));
                kernel.push(combo);
            }
            high.insert(v);
        }
        let mut image = LinearSpan::<usize>::new();
        let mut rational = true;
        for combo in &kernel {
            let mut proj = Lin::zero();
            for (k, (n, i)) in coords.iter().enumerate() {
                if *n != m {
                    continue;
                }
                let mut entry = PeriodEntry::zero();
                for (j, c) in combo.iter() {
                    entry.0.add_scaled(&h.betti[*j][k].0, c);
                }
                match entry.as_rational() {
                    Some(c) if !c.is_zero() => proj.add_term(*i, c),
                    Some(_) => {}
                    None => rational = false,
                }
            }
            image.insert(proj);
        }
        levels.push(LevelReport { m, dim, rank: image.rank(), rational });
    }
    MhtsReport { levels }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> PeriodEntry {
        s.parse().unwrap()
    }

    #[test]
    fn entries_parse() {
        let x = e("1/2 - 3*zeta3 + alpha");
        assert_eq!(x.0.coeff(&"zeta3".to_string()), q(-3));
        assert_eq!(x.0.coeff(&"1".to_string()), exact_kernel::qf(1, 2));
        assert_eq!(e("-2").as_rational(), Some(q(-2)));
        assert_eq!(e("alpha - alpha").as_rational(), Some(q(0)));
        assert!(e("alpha").as_rational().is_none());
        assert!("2*".parse::<PeriodEntry>().is_err());
        assert!("x y".parse::<PeriodEntry>().is_ok());
        assert!("1/0".parse::<PeriodEntry>().is_err());
    }

    #[test]
    fn irrational_projection_fails() {
        let dims = BTreeMap::from([(0, 1)]);
        let h = FramedMhts::new(dims, vec![vec![e("alpha")]]).unwrap();
        let r = mhts_check(&h);
        assert!(!r.passed() && !r.levels[0].rational);
        assert!(!h.verified());
    }
}
