use std::fmt;
use std::str::FromStr;

use exact_kernel::{parse_field, FieldElement};

use crate::DgaError;

/// A generator `(a₀; a₁,…,a_n; a_{n+1})`, stored as its full entry list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Sequence(Vec<FieldElement>);

impl Sequence {
    pub fn new(
        start: FieldElement,
        interior: Vec<FieldElement>,
        end: FieldElement,
    ) -> Result<Self, DgaError> {
        if interior.is_empty() {
            return Err(DgaError::EmptyInterior);
        }
        let mut v = Vec::with_capacity(interior.len() + 2);
        v.push(start);
        v.extend(interior);
        v.push(end);
        Ok(Sequence(v))
    }

    /// Builds from the full entry list `a₀,…,a_{n+1}`.
    pub fn from_entries(entries: Vec<FieldElement>) -> Result<Self, DgaError> {
        if entries.len() < 3 {
            return Err(DgaError::EmptyInterior);
        }
        Ok(Sequence(entries))
    }

    /// Shorthand for tests and examples: entries are field-element literals.
    pub fn lit(start: &str, interior: &[&str], end: &str) -> Self {
        let p = |s: &str| parse_field(s).expect("valid literal");
        Sequence::new(p(start), interior.iter().map(|s| p(s)).collect(), p(end))
            .expect("nonempty interior")
    }

    pub fn n(&self) -> usize {
        self.0.len() - 2
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn start(&self) -> &FieldElement {
        &self.0[0]
    }

    pub fn end(&self) -> &FieldElement {
        &self.0[self.0.len() - 1]
    }

    pub fn interior(&self) -> &[FieldElement] {
        &self.0[1..self.0.len() - 1]
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    /// a₀ ≠ a₁ and a_n ≠ a_{n+1}.
    pub fn is_convergent(&self) -> bool {
        let n = self.0.len();
        self.0[0] != self.0[1] && self.0[n - 2] != self.0[n - 1]
    }

    pub fn reversed(&self) -> Sequence {
        let mut v = self.0.clone();
        v.reverse();
        Sequence(v)
    }

    /// The subsequence at the given positions.
    pub fn piece(&self, idx: &[usize]) -> Sequence {
        Sequence(idx.iter().map(|&i| self.0[i].clone()).collect())
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.interior().iter().map(|e| e.to_string()).collect();
        write!(f, "{};{};{}", self.start(), inner.join(","), self.end())
    }
}

impl FromStr for Sequence {
    type Err = DgaError;

    /// Parses `a0;a1,…,an;a(n+1)`.
    fn from_str(s: &str) -> Result<Self, DgaError> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(DgaError::Parse {
                pos: s.len(),
                msg: "expected `start;interior;end`".into(),
            });
        }
        let base = |i: usize| parts[..i].iter().map(|p| p.len() + 1).sum::<usize>();
        let elem = |text: &str, offset: usize| {
            parse_field(text).map_err(|e| match e {
                exact_kernel::KernelError::Parse { pos, msg } => DgaError::Parse {
                    pos: offset + pos,
                    msg,
                },
                other => DgaError::Parse {
                    pos: offset,
                    msg: other.to_string(),
                },
            })
        };
        let start = elem(parts[0], 0)?;
        let end = elem(parts[2], base(2))?;
        if parts[1].trim().is_empty() {
            return Err(DgaError::Parse {
                pos: base(1),
                msg: "empty interior".into(),
            });
        }
        let mut interior = Vec::new();
        let mut off = base(1);
        for item in parts[1].split(',') {
            interior.push(elem(item, off)?);
            off += item.len() + 1;
        }
        Sequence::new(start, interior, end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let a: Sequence = "0;1,0;z".parse().unwrap();
        assert_eq!(a.n(), 2);
        assert_eq!(a.to_string(), "0;1,0;z");
        assert_eq!(a, Sequence::lit("0", &["1", "0"], "z"));
        assert!(matches!(
            "0;;1".parse::<Sequence>(),
            Err(DgaError::Parse { pos: 2, .. })
        ));
        assert!("0;1".parse::<Sequence>().is_err());
        let l: Sequence = "a;b,b;a".parse().unwrap();
        assert!(l.is_loop());
    }

    #[test]
    fn convergence() {
        assert!(Sequence::lit("0", &["1", "0"], "1").is_convergent());
        assert!(!Sequence::lit("0", &["0", "1"], "1").is_convergent());
        assert!(!Sequence::lit("0", &["1", "1"], "1").is_convergent());
    }
}
