//! Recursive-descent parser for polynomial expressions such as
//! `x^2 - 3*y^3 + (x + y)*z`.

use std::sync::Arc;

use num_bigint::BigInt;
use super::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at offset {offset}")]
pub struct ParseError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

impl<'a> Lexer<'a> {
    fn run(src: &'a str) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut lx = Lexer { src, toks: Vec::new() };
        let bytes = src.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_whitespace() {
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = lx.src[start..i].parse().expect("digits");
                lx.toks.push((Tok::Num(n), start));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                lx.toks.push((Tok::Ident(lx.src[start..i].to_string()), start));
            } else if "+-*/^()".contains(c) {
                lx.toks.push((Tok::Sym(c), i));
                i += 1;
            } else {
                return Err(ParseError { offset: i, message: format!("unexpected character '{c}'") });
            }
        }
        lx.toks.push((Tok::End, src.len()));
        Ok(lx.toks)
    }
}

struct Parser<'r, F> {
    ring: &'r Arc<PolyRing>,
    toks: Vec<(Tok, usize)>,
    pos: usize,
    _f: std::marker::PhantomData<F>,
}

impl<F: Scalar> Parser<'_, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: msg.into() })
    }

    fn expr(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = if *self.peek() == Tok::Sym('-') {
            self.bump();
            -self.term()?
        } else {
            if *self.peek() == Tok::Sym('+') {
                self.bump();
            }
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Sym('/') => {
                    self.bump();
                    let at = self.offset();
                    let d = self.factor()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(ParseError { offset: at, message: "division only by nonzero constants".into() });
                    }
                    let inv = d.constant_term().inv().ok_or(ParseError {
                        offset: at,
                        message: "division by zero in the coefficient field".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly<F>, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Sym('^') {
            self.bump();
            let at = self.offset();
            match self.bump() {
                Tok::Num(n) => {
                    let e: u32 = n.try_into().map_err(|_| ParseError { offset: at, message: "exponent too large".into() })?;
                    Ok(base.pow(e))
                }
                _ => Err(ParseError { offset: at, message: "expected a nonnegative integer exponent".into() }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Poly<F>, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => Ok(Poly::constant(self.ring, F::from_bigint(&n))),
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Poly::var(self.ring, i)),
                None => Err(ParseError { offset: at, message: format!("unknown variable '{name}'") }),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return self.err("expected ')'");
                }
                self.bump();
                Ok(e)
            }
            Tok::End => Err(ParseError { offset: at, message: "unexpected end of expression".into() }),
            Tok::Sym(c) => Err(ParseError { offset: at, message: format!("unexpected '{c}'") }),
        }
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_poly<F: Scalar>(ring: &Arc<PolyRing>, src: &str) -> Result<Poly<F>, ParseError> {
    let toks = Lexer::run(src)?;
    let mut p = Parser { ring, toks, pos: 0, _f: std::marker::PhantomData };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Q};

    #[test]
    fn parses_and_prints() {
        let r = PolyRing::standard(&["x", "y"]);
        let p: Poly<Fp<32003>> = parse_poly(&r, "(x+y)*(x-y)").unwrap();
        assert_eq!(p.to_string(), "x^2 - y^2");
        let q: Poly<Q> = parse_poly(&r, "x/2 - 3*y^2").unwrap();
        assert_eq!(q.to_string(), "-3*y^2 + (1/2)*x");
    }

    #[test]
    fn unknown_variable_position() {
        let r = PolyRing::standard(&["x"]);
        let e = parse_poly::<Fp<7>>(&r, "x + zz").unwrap_err();
        assert_eq!(e.offset, 4);
    }

    #[test]
    fn non_constant_division_rejected() {
        let r = PolyRing::standard(&["x"]);
        assert!(parse_poly::<Fp<7>>(&r, "1/x").is_err());
    }
}
