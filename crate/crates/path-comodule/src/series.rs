use std::fmt;
use std::str::FromStr;

use cut_dga::Sequence;
use exact_kernel::{parse_field, q, FieldElement, Lin, Q};

use crate::ComoduleError;

/// A word `X_{s₁}⋯X_{s_k}` in the letters of `S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<FieldElement>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Each letter has weight 2.
    pub fn weight(&self) -> usize {
        2 * self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `(a; s₁,…,s_k; b)`, or `None` for the empty word.
    pub fn sequence(&self, a: &FieldElement, b: &FieldElement) -> Option<Sequence> {
        Sequence::new(a.clone(), self.0.clone(), b.clone()).ok()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "X[{l}]")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ComoduleError;

    /// Accepts `X[1]X[0]X[1]` or a string of one-character letters such as
    /// `101`. The empty string is the empty word.
    fn from_str(s: &str) -> Result<Self, ComoduleError> {
        let text = s.trim();
        let err = |msg: &str| ComoduleError::Parse {
            text: s.to_string(),
            msg: msg.to_string(),
        };
        let parse = |t: &str| parse_field(t).map_err(|e| err(&e.to_string()));
        if text.is_empty() {
            return Ok(Word::empty());
        }
        if !text.starts_with('X') {
            return text
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| parse(&c.to_string()))
                .collect::<Result<_, _>>()
                .map(Word);
        }
        let mut out = Vec::new();
        let mut rest = text;
        while !rest.is_empty() {
            let body = rest
                .strip_prefix("X[")
                .ok_or_else(|| err("expected `X[`"))?;
            let close = body.find(']').ok_or_else(|| err("missing `]`"))?;
            out.push(parse(&body[..close])?);
            rest = body[close + 1..].trim_start();
        }
        Ok(Word(out))
    }
}

/// A truncated element of `Q⟨⟨X_s⟩⟩` attached to the endpoints `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcSeries {
    start: FieldElement,
    end: FieldElement,
    depth: usize,
    terms: Lin<Word>,
}

impl NcSeries {
    pub const DEFAULT_DEPTH: usize = 4;

    pub fn zero(start: FieldElement, end: FieldElement, depth: usize) -> Self {
        NcSeries {
            start,
            end,
            depth,
            terms: Lin::zero(),
        }
    }

    pub fn one(start: FieldElement, end: FieldElement, depth: usize) -> Self {
        Self::word(start, end, depth, Word::empty())
    }

    pub fn word(start: FieldElement, end: FieldElement, depth: usize, w: Word) -> Self {
        let mut s = Self::zero(start, end, depth);
        s.add_term(w, q(1));
        s
    }

    /// Adds `c·w`, dropping words longer than the truncation depth.
    pub fn add_term(&mut self, w: Word, c: Q) {
        if w.len() <= self.depth {
            self.terms.add_term(w, c);
        }
    }

    pub fn add_scaled(&mut self, other: &NcSeries, c: &Q) {
        for (w, d) in other.terms.iter() {
            self.add_term(w.clone(), c * d);
        }
    }

    pub fn start(&self) -> &FieldElement {
        &self.start
    }

    pub fn end(&self) -> &FieldElement {
        &self.end
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn terms(&self) -> &Lin<Word> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.coeff(w)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }
}

impl fmt::Display for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Concatenation product of a series on `(a, b)` with one on `(b, c)`.
pub fn path_compose(u: &NcSeries, v: &NcSeries) -> Result<NcSeries, ComoduleError> {
    if u.end != v.start {
        return Err(ComoduleError::EndpointMismatch {
            left: u.end.to_string(),
            right: v.start.to_string(),
        });
    }
    if u.depth != v.depth {
        return Err(ComoduleError::DepthMismatch(u.depth, v.depth));
    }
    let mut out = NcSeries::zero(u.start.clone(), v.end.clone(), u.depth);
    for (x, cx) in u.terms.iter() {
        for (y, cy) in v.terms.iter() {
            out.add_term(x.concat(y), cx * cy);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElement {
        parse_field(s).unwrap()
    }

    #[test]
    fn word_literals() {
        let w: Word = "X[1]X[0]X[1]".parse().unwrap();
        assert_eq!(w, "101".parse().unwrap());
        assert_eq!(w.to_string(), "X[1]X[0]X[1]");
        assert_eq!(w.weight(), 6);
        let z: Word = "X[z]X[1/2]".parse().unwrap();
        assert_eq!(z.letters(), &[fe("z"), fe("1/2")]);
        assert!("X[1".parse::<Word>().is_err());
        assert!("X[1]Y".parse::<Word>().is_err());
    }

    #[test]
    fn compose_concatenates_and_truncates() {
        let (a, b, c) = (fe("0"), fe("z"), fe("1"));
        let x1 = NcSeries::word(a.clone(), b.clone(), 2, "1".parse().unwrap());
        let x0 = NcSeries::word(b.clone(), c.clone(), 2, "0".parse().unwrap());
        let uv = path_compose(&x1, &x0).unwrap();
        assert_eq!(uv, NcSeries::word(a.clone(), c.clone(), 2, "10".parse().unwrap()));
        let one = NcSeries::one(a.clone(), a.clone(), 2);
        assert_eq!(path_compose(&one, &x1).unwrap(), x1);
        let long = path_compose(&uv, &NcSeries::word(c.clone(), c.clone(), 2, "1".parse().unwrap()));
        assert!(long.unwrap().is_zero());
        let mut s = NcSeries::one(b.clone(), c.clone(), 2);
        s.add_term("01".parse().unwrap(), q(3));
        assert_eq!(s.coeff(&"01".parse().unwrap()), q(3));
    }

    #[test]
    fn compose_checks_endpoints() {
        let u = NcSeries::one(fe("0"), fe("1"), 3);
        let v = NcSeries::one(fe("z"), fe("1"), 3);
        assert!(matches!(
            path_compose(&u, &v),
            Err(ComoduleError::EndpointMismatch { .. })
        ));
        let w = NcSeries::one(fe("1"), fe("1"), 2);
        assert_eq!(path_compose(&u, &w), Err(ComoduleError::DepthMismatch(3, 2)));
    }
}
