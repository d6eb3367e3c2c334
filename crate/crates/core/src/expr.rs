//! A small infix expression grammar shared by every textual format in the crate.
//!
//! The grammar is deliberately tiny:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' INT)?
//! atom   := INT | IDENT ('[' expr (',' expr)* ']')? '\''* | '(' expr ')'
//! ```
//!
//! Parsing yields an [`Expr`] tree; each consumer (cyclotomic numbers,
//! commutative polynomials, algebra elements) interprets identifiers itself.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {pos}: expected {expected}, found {found}")]
pub struct ParseError {
    pub pos: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub fn new(pos: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            pos,
            expected: expected.into(),
            found: found.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub args: Vec<Expr>,
    pub primes: u8,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(Ident),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Returns the value if this node is a (possibly negated) integer literal.
    pub fn as_int(&self) -> Option<BigInt> {
        match self {
            Expr::Int(v) => Some(v.clone()),
            Expr::Neg(e) => e.as_int().map(|v| -v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(v) => write!(f, "`{v}`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
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
            let v: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(v)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()[],'".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(ParseError::new(i, "an expression token", format!("`{ch}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn found(&self) -> String {
        self.peek()
            .map_or_else(|| "end of input".to_string(), |t| t.to_string())
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(ParseError::new(self.pos(), format!("`{c}`"), self.found()))
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Int(v)) => {
                    self.at += 1;
                    let e = u32::try_from(v)
                        .map_err(|_| ParseError::new(pos, "a small exponent", "a huge integer"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(ParseError::new(pos, "a non-negative integer exponent", self.found())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                Ok(Expr::Int(v))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let mut args = Vec::new();
                if self.eat('[') {
                    args.push(self.expr()?);
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(']')?;
                }
                let mut primes = 0u8;
                while self.eat('\'') {
                    primes = primes.saturating_add(1);
                }
                Ok(Expr::Ident(Ident {
                    name,
                    args,
                    primes,
                    pos,
                }))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(ParseError::new(pos, "a number, identifier or `(`", self.found())),
        }
    }
}

/// Parses a complete expression; trailing input is an error.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ParseError::new(p.pos(), "an operator or end of input", p.found()));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("1 + 2*x^3").unwrap();
        match e {
            Expr::Add(l, r) => {
                assert_eq!(*l, Expr::Int(1.into()));
                assert!(matches!(*r, Expr::Mul(_, _)));
            }
            _ => panic!("{e:?}"),
        }
    }

    #[test]
    fn bracketed_identifiers_and_primes() {
        let e = parse("t[1,x*y^2] * d[1,2]'").unwrap();
        let Expr::Mul(l, r) = e else { panic!() };
        let Expr::Ident(t) = *l else { panic!() };
        assert_eq!(t.name, "t");
        assert_eq!(t.args.len(), 2);
        let Expr::Ident(d) = *r else { panic!() };
        assert_eq!(d.primes, 1);
        assert_eq!(d.args[1].as_int(), Some(2.into()));
    }

    #[test]
    fn error_positions() {
        let err = parse("x + * y").unwrap_err();
        assert_eq!(err.pos, 4);
        let err = parse("(x + y").unwrap_err();
        assert_eq!(err.pos, 6);
        assert_eq!(err.found, "end of input");
        let err = parse("x ^ y").unwrap_err();
        assert!(err.expected.contains("exponent"));
        assert!(parse("x $ y").is_err());
        assert!(parse("x y").is_err());
    }
}
