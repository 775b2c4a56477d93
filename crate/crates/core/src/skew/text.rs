use std::fmt;

use super::base::{power, write_term};
use super::{BaseElem, BaseRing, ReversingContext, SkewElem, SkewError};
use crate::expr::{self, Interpreter, ParseError};
use crate::scalar::Rational;

struct SkewText<'a>(&'a ReversingContext);

impl SkewText<'_> {
    fn lift<T>(r: Result<T, SkewError>) -> Result<T, String> {
        r.map_err(|e| e.to_string())
    }
}

impl Interpreter for SkewText<'_> {
    type Value = SkewElem;

    fn number(&self, n: Rational) -> Result<SkewElem, String> {
        Ok(SkewElem::base(BaseElem::constant(n.into())))
    }

    fn ident(&self, name: &str) -> Result<SkewElem, String> {
        let base = &self.0.base;
        if name == base.var {
            Ok(self.0.y())
        } else if name == "x" {
            Ok(SkewElem::x(1))
        } else if base.scalars.has_param() && name == base.scalars.param {
            let p = base.scalars.param().map_err(|e| e.to_string())?;
            Ok(SkewElem::base(BaseElem::constant(p)))
        } else {
            Err(format!("unknown name '{name}'"))
        }
    }

    fn add(&self, a: SkewElem, b: SkewElem) -> Result<SkewElem, String> {
        Ok(&a + &b)
    }

    fn neg(&self, a: SkewElem) -> Result<SkewElem, String> {
        Ok(-&a)
    }

    fn mul(&self, a: SkewElem, b: SkewElem) -> Result<SkewElem, String> {
        Self::lift(self.0.mul(&a, &b))
    }

    fn div(&self, a: SkewElem, b: SkewElem) -> Result<SkewElem, String> {
        let inv = Self::lift(self.0.inv(&b))?;
        Self::lift(self.0.mul(&a, &inv))
    }

    fn pow(&self, a: SkewElem, k: i64) -> Result<SkewElem, String> {
        Self::lift(self.0.pow(&a, k))
    }
}

impl ReversingContext {
    /// Parses text such as `y*x - y*x^-1`; products use the twisted rule.
    pub fn parse(&self, text: &str) -> Result<SkewElem, SkewError> {
        self.parse_at(text, 1, 1)
    }

    pub fn parse_at(&self, text: &str, line: usize, col: usize) -> Result<SkewElem, SkewError> {
        let s = expr::parse_at(text, &SkewText(self), line, col)?;
        self.check(&s).map_err(|e| ParseError { line, col, message: e.to_string() })?;
        Ok(s)
    }

    /// Parses an element of the base ring.
    pub fn parse_base(&self, text: &str) -> Result<BaseElem, SkewError> {
        let s = self.parse(text)?;
        let mut it = s.terms();
        match (it.next(), it.next()) {
            (None, _) => Ok(BaseElem::zero()),
            (Some((0, r)), None) => Ok(r.clone()),
            _ => Err(SkewError::Parse(ParseError { line: 1, col: 1, message: format!("'{text}' involves x") })),
        }
    }

    pub fn show<'a>(&'a self, s: &'a SkewElem) -> SkewDisplay<'a> {
        SkewDisplay { base: &self.base, elem: s }
    }
}

/// Terms by descending power of `x`, then descending power of the base
/// variable, written `c*y^k*x^i`.
pub struct SkewDisplay<'a> {
    base: &'a BaseRing,
    elem: &'a SkewElem,
}

impl fmt::Display for SkewDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, r) in self.elem.terms().rev() {
            for (k, c) in r.terms().rev() {
                let factors: Vec<String> = power(&self.base.var, k).into_iter().chain(power("x", i)).collect();
                write_term(f, first, c, &self.base.scalars.param, &factors)?;
                first = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::presets;

    #[test]
    fn round_trip() {
        let c = presets::wq_symbolic();
        for t in ["y*x - Q^-1*y^-1*x^-1", "(1 - Q^2)*y^2*x + 3", "-x^-2", "0"] {
            let s = c.parse(t).unwrap();
            let shown = c.show(&s).to_string();
            assert_eq!(c.parse(&shown).unwrap(), s, "{t} -> {shown}");
        }
    }

    #[test]
    fn rejects_bad_input() {
        let v = presets::v();
        assert!(v.parse("y^-1").is_err());
        assert!(v.parse("z").is_err());
        assert!(v.parse_base("x + y").is_err());
        assert_eq!(v.parse("x^-1*y").unwrap(), v.parse("(y - 1)*x^-1").unwrap());
    }
}
