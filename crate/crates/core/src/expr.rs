//! Recursive-descent parser for the arithmetic text syntax shared by scalars,
//! free-algebra polynomials, skew Laurent elements and commutative
//! polynomials.
//!
//! ```text
//! expr  := ['+'|'-'] term (('+'|'-') term)*
//! term  := unary (('*'|'/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' ['-'] INT)?
//! atom  := INT | IDENT | '(' expr ')'
//! ```
//!
//! The parser evaluates as it goes through an [`Interpreter`], so the same
//! grammar produces values in whichever algebra the caller supplies.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

/// Semantic actions for the grammar. Errors are plain messages; the parser
/// attaches positions.
pub trait Interpreter {
    type Value;

    fn number(&self, n: Rational) -> Result<Self::Value, String>;
    fn ident(&self, name: &str) -> Result<Self::Value, String>;
    fn add(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn neg(&self, a: Self::Value) -> Result<Self::Value, String>;
    fn mul(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn div(&self, a: Self::Value, b: Self::Value) -> Result<Self::Value, String>;
    fn pow(&self, a: Self::Value, k: i64) -> Result<Self::Value, String>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    col: usize,
}

fn tokenize(src: &str, line: usize, col0: usize) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = col0 + i;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), col });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), col });
        } else if "+-*/^()".contains(c) {
            out.push(Token { tok: Tok::Sym(c), col });
            i += 1;
        } else {
            return Err(ParseError { line, col, message: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a, I: Interpreter> {
    toks: Vec<Token>,
    pos: usize,
    line: usize,
    end_col: usize,
    interp: &'a I,
}

impl<I: Interpreter> Parser<'_, I> {
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, col: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, col, message: message.into() }
    }

    fn peek_sym(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Sym(c), .. }) => Some(*c),
            _ => None,
        }
    }

    fn lift<T>(&self, col: usize, r: Result<T, String>) -> Result<T, ParseError> {
        r.map_err(|m| self.err(col, m))
    }

    fn expr(&mut self) -> Result<I::Value, ParseError> {
        let col = self.col();
        let mut acc = match self.peek_sym() {
            Some('-') => {
                self.pos += 1;
                let t = self.term()?;
                self.lift(col, self.interp.neg(t))?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(c @ ('+' | '-')) = self.peek_sym() {
            let col = self.col();
            self.pos += 1;
            let t = self.term()?;
            let t = if c == '-' { self.lift(col, self.interp.neg(t))? } else { t };
            acc = self.lift(col, self.interp.add(acc, t))?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<I::Value, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek_sym() {
            let col = self.col();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == '*' {
                self.lift(col, self.interp.mul(acc, rhs))?
            } else {
                self.lift(col, self.interp.div(acc, rhs))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<I::Value, ParseError> {
        if self.peek_sym() == Some('-') {
            let col = self.col();
            self.pos += 1;
            let v = self.unary()?;
            return self.lift(col, self.interp.neg(v));
        }
        self.power()
    }

    fn power(&mut self) -> Result<I::Value, ParseError> {
        let base = self.atom()?;
        if self.peek_sym() != Some('^') {
            return Ok(base);
        }
        let col = self.col();
        self.pos += 1;
        let neg = if self.peek_sym() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let ecol = self.col();
        let k: i64 = match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Int(n), .. }) => {
                let k = i64::try_from(n.clone()).map_err(|_| self.err(ecol, "exponent too large"))?;
                self.pos += 1;
                k
            }
            _ => return Err(self.err(ecol, "expected integer exponent")),
        };
        self.lift(col, self.interp.pow(base, if neg { -k } else { k }))
    }

    fn atom(&mut self) -> Result<I::Value, ParseError> {
        let col = self.col();
        match self.toks.get(self.pos).cloned() {
            Some(Token { tok: Tok::Int(n), .. }) => {
                self.pos += 1;
                self.lift(col, self.interp.number(Rational::from_integer(n)))
            }
            Some(Token { tok: Tok::Ident(name), .. }) => {
                self.pos += 1;
                self.lift(col, self.interp.ident(&name))
            }
            Some(Token { tok: Tok::Sym('('), .. }) => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek_sym() != Some(')') {
                    return Err(self.err(self.col(), "expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(Token { tok: Tok::Sym(c), .. }) => Err(self.err(col, format!("unexpected '{c}'"))),
            None => Err(self.err(col, "unexpected end of input")),
        }
    }
}

/// Parses `src` (a single line) with positions reported relative to
/// `line`/`col0` (both 1-based).
pub fn parse_at<I: Interpreter>(src: &str, interp: &I, line: usize, col0: usize) -> Result<I::Value, ParseError> {
    let toks = tokenize(src, line, col0)?;
    let end_col = col0 + src.chars().count();
    if toks.is_empty() {
        return Err(ParseError { line, col: col0, message: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, line, end_col, interp };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err(p.col(), "unexpected trailing input"));
    }
    Ok(v)
}

pub fn parse<I: Interpreter>(src: &str, interp: &I) -> Result<I::Value, ParseError> {
    parse_at(src, interp, 1, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};

    /// Plain rational arithmetic, enough to exercise the grammar.
    struct Calc;

    impl Interpreter for Calc {
        type Value = Rational;
        fn number(&self, n: Rational) -> Result<Rational, String> {
            Ok(n)
        }
        fn ident(&self, name: &str) -> Result<Rational, String> {
            Err(format!("unknown name '{name}'"))
        }
        fn add(&self, a: Rational, b: Rational) -> Result<Rational, String> {
            Ok(a + b)
        }
        fn neg(&self, a: Rational) -> Result<Rational, String> {
            Ok(-a)
        }
        fn mul(&self, a: Rational, b: Rational) -> Result<Rational, String> {
            Ok(a * b)
        }
        fn div(&self, a: Rational, b: Rational) -> Result<Rational, String> {
            if b == rat(0) {
                return Err("division by zero".into());
            }
            Ok(a / b)
        }
        fn pow(&self, a: Rational, k: i64) -> Result<Rational, String> {
            Ok(crate::scalar::pow_rational(&a, k))
        }
    }

    #[test]
    fn precedence_and_signs() {
        assert_eq!(parse("1 - 2*3 + 4/8", &Calc).unwrap(), ratio(-9, 2));
        assert_eq!(parse("-(1/2)^-2", &Calc).unwrap(), rat(-4));
        assert_eq!(parse("-2^2", &Calc).unwrap(), rat(-4));
        assert_eq!(parse("3/2", &Calc).unwrap(), ratio(3, 2));
    }

    #[test]
    fn error_positions() {
        let e = parse_at("1 + y", &Calc, 7, 3).unwrap_err();
        assert_eq!((e.line, e.col), (7, 7));
        let e = parse("(1 + 2", &Calc).unwrap_err();
        assert!(e.message.contains("')'"));
        let e = parse("1 $ 2", &Calc).unwrap_err();
        assert_eq!(e.col, 3);
        assert!(parse("", &Calc).is_err());
        assert!(parse("2 3", &Calc).is_err());
    }
}
