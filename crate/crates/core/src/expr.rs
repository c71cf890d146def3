//! A small expression language for naming ring elements in claim tables.
//!
//! `y123` is the monomial `y1*y2*y3`, `x13` is `x1*x3 = (1+y1)(1+y3)`, and
//! `z13` is `x13 - 1`. Variable indices are single digits. Juxtaposition
//! multiplies, `^` takes powers, integers scale. Any other identifier must be
//! supplied as a named shorthand.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::truncring::{RingSpec, TruncPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("unresolvable shorthand {0:?}")]
    UnresolvableShorthand(String),
    #[error("variable {index} out of range in {name:?} (ring has {n} variables)")]
    VariableOutOfRange { name: String, index: usize, n: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(s[start..i].parse().unwrap())));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < b.len() && (b[i].is_ascii_alphabetic() || b[i] == b'_' || b[i] == b'\'') {
                    i += 1;
                }
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Ident(s[start..i].to_string())));
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            _ => {
                return Err(ExprError::Parse {
                    pos: start,
                    msg: format!("unexpected character {:?}", c as char),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    spec: &'a RingSpec,
    names: &'a BTreeMap<String, TruncPoly>,
    len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse { pos: self.here(), msg: msg.into() })
    }

    fn sum(&mut self) -> Result<TruncPoly, ExprError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -&self.product()?
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<TruncPoly, ExprError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen) => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<TruncPoly, ExprError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(&n).or_else(|_| self.err("exponent too large"))?;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected an integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<TruncPoly, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(TruncPoly::constant(self.spec, n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                self.ident(&name)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }

    fn ident(&self, name: &str) -> Result<TruncPoly, ExprError> {
        if let Some(p) = self.names.get(name) {
            return Ok(p.clone());
        }
        let (head, digits) = name.split_at(name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len()));
        if digits.is_empty() || !matches!(head, "x" | "y" | "z") {
            return Err(ExprError::UnresolvableShorthand(name.to_string()));
        }
        let n = self.spec.n();
        let mut acc = TruncPoly::one(self.spec);
        for d in digits.bytes() {
            let i = (d - b'0') as usize;
            if i == 0 || i > n {
                return Err(ExprError::VariableOutOfRange { name: name.to_string(), index: i, n });
            }
            let y = TruncPoly::var(self.spec, i);
            acc = match head {
                "y" => &acc * &y,
                _ => &acc * &(&y + &TruncPoly::one(self.spec)),
            };
        }
        if head == "z" {
            acc = &acc - &TruncPoly::one(self.spec);
        }
        Ok(acc)
    }
}

/// Evaluates `text` in the ring `spec`, resolving other identifiers in `names`.
pub fn parse_element(
    spec: &RingSpec,
    text: &str,
    names: &BTreeMap<String, TruncPoly>,
) -> Result<TruncPoly, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, spec, names, len: text.len() };
    let v = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(text: &str) -> Result<String, ExprError> {
        let spec = RingSpec::uniform(4, 2).unwrap();
        parse_element(&spec, text, &BTreeMap::new()).map(|p| p.to_string())
    }

    #[test]
    fn monomial_shorthand() {
        assert_eq!(eval("y123").unwrap(), "y1*y2*y3");
        assert_eq!(eval("2(y12 + y34)").unwrap(), "2*y1*y2 + 2*y3*y4");
        assert_eq!(eval("z12").unwrap(), "y1 + y2 + y1*y2");
        assert_eq!(eval("x1 - 1").unwrap(), "y1");
        assert_eq!(eval("(y1+y2)(y3+y4)").unwrap(), "y1*y3 + y1*y4 + y2*y3 + y2*y4");
        assert_eq!(eval("-y1^2 + 3*y2").unwrap(), "3*y2");
    }

    #[test]
    fn named_shorthand() {
        let spec = RingSpec::uniform(4, 2).unwrap();
        let mut names = BTreeMap::new();
        names.insert("u".to_string(), parse_element(&spec, "y123 + y124", &BTreeMap::new()).unwrap());
        let v = parse_element(&spec, "2u - 2y123", &names).unwrap();
        assert_eq!(v.to_string(), "2*y1*y2*y4");
    }

    #[test]
    fn errors() {
        assert_eq!(eval("w"), Err(ExprError::UnresolvableShorthand("w".into())));
        assert!(matches!(eval("y15"), Err(ExprError::VariableOutOfRange { index: 5, .. })));
        assert!(matches!(eval("(y1"), Err(ExprError::Parse { .. })));
        assert!(matches!(eval("y1 $"), Err(ExprError::Parse { pos: 3, .. })));
    }
}
