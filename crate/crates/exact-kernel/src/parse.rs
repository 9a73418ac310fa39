//! Field-element literals: integers, names `[a-zA-Z][a-zA-Z0-9_]*`,
//! `+ - * / ( )` and integer powers `^`.

use num_bigint::BigInt;

use crate::{FieldElement, KernelError, Q};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Name(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, KernelError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && (b[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Num(s[st..i].parse().unwrap())));
        } else if c.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && ((b[i] as char).is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Name(s[st..i].to_string())));
        } else if "+-*/()^".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(KernelError::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, KernelError> {
        Err(KernelError::Parse { pos: self.at(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<FieldElement, KernelError> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(c @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement, KernelError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(c @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let at = self.at();
            let rhs = self.unary()?;
            acc = if c == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs)
                    .map_err(|_| KernelError::Parse { pos: at, msg: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElement, KernelError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<FieldElement, KernelError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    let mut acc = FieldElement::one();
                    for _ in 0..e {
                        acc = &acc * &base;
                    }
                    Ok(acc)
                }
                _ => self.err("expected integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<FieldElement, KernelError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(FieldElement::from_q(Q::from_integer(n)))
            }
            Some(Tok::Name(v)) => {
                self.pos += 1;
                Ok(FieldElement::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected `)`"),
                }
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses a field-element literal such as `(s - t)/(c - t)` or `3/4`.
pub fn parse_field(s: &str) -> Result<FieldElement, KernelError> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
