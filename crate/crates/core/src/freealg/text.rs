use std::fmt;

use super::order::display_compare;
use super::{Alphabet, FreeAlgebra, MonomialOrder, NCPoly, Word};
use crate::expr::{self, Interpreter, ParseError};
use crate::scalar::{Rational, Scalar};

struct PolyText<'a>(&'a FreeAlgebra);

impl PolyText<'_> {
    fn scalar_of(p: &NCPoly) -> Option<Scalar> {
        match p.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (w, c) = p.terms().next()?;
                w.is_empty().then(|| c.clone())
            }
            _ => None,
        }
    }
}

impl Interpreter for PolyText<'_> {
    type Value = NCPoly;

    fn number(&self, n: Rational) -> Result<NCPoly, String> {
        Ok(NCPoly::constant(n.into()))
    }

    fn ident(&self, name: &str) -> Result<NCPoly, String> {
        let alg = self.0;
        if let Ok(g) = alg.alphabet.index(name) {
            return Ok(NCPoly::letter(g));
        }
        if alg.ring.has_param() && alg.ring.param == name {
            return Ok(NCPoly::constant(alg.ring.param().map_err(|e| e.to_string())?));
        }
        Err(format!("unknown generator or parameter '{name}'"))
    }

    fn add(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, String> {
        Ok(&a + &b)
    }

    fn neg(&self, a: NCPoly) -> Result<NCPoly, String> {
        Ok(-&a)
    }

    fn mul(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, String> {
        Ok(&a * &b)
    }

    fn div(&self, a: NCPoly, b: NCPoly) -> Result<NCPoly, String> {
        let d = Self::scalar_of(&b).ok_or("only scalars may divide")?;
        let inv = d.inv().map_err(|e| e.to_string())?;
        Ok(a.scale(&inv))
    }

    fn pow(&self, a: NCPoly, k: i64) -> Result<NCPoly, String> {
        if k >= 0 {
            return Ok(a.pow(k as u32));
        }
        let s = Self::scalar_of(&a).ok_or("negative powers apply only to scalars")?;
        Ok(NCPoly::constant(s.pow(k).map_err(|e| e.to_string())?))
    }
}

pub(super) fn parse_poly(alg: &FreeAlgebra, text: &str, line: usize, col: usize) -> Result<NCPoly, ParseError> {
    let p = expr::parse_at(text, &PolyText(alg), line, col)?;
    alg.validate(&p).map_err(|e| ParseError { line, col, message: e.to_string() })?;
    Ok(p)
}

pub struct WordDisplay<'a> {
    pub(super) word: &'a Word,
    pub(super) alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.word.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.alphabet.name(letters[i]))?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

pub struct NCPolyDisplay<'a> {
    pub(super) poly: &'a NCPoly,
    pub(super) alg: &'a FreeAlgebra,
    pub(super) order: Option<&'a MonomialOrder>,
}

fn term_text(alg: &FreeAlgebra, w: &Word, c: &Scalar) -> String {
    let ws = w.show(&alg.alphabet).to_string();
    let cs = alg.ring.show(c).to_string();
    if w.is_empty() {
        return if c.is_compound() { format!("({cs})") } else { cs };
    }
    if c.is_one() {
        ws
    } else if (-c).is_one() {
        format!("-{ws}")
    } else if c.is_compound() {
        format!("({cs})*{ws}")
    } else {
        format!("{cs}*{ws}")
    }
}

impl fmt::Display for NCPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.poly.terms().collect();
        match self.order {
            Some(o) => terms.sort_by(|x, y| o.compare(y.0, x.0)),
            None => terms.sort_by(|x, y| display_compare(self.alg.alphabet.ranks(), x.0, y.0)),
        }
        for (i, (w, c)) in terms.into_iter().enumerate() {
            let t = term_text(self.alg, w, c);
            match (i, t.strip_prefix('-')) {
                (0, _) => f.write_str(&t)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {t}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{DegreeFunction, OrderKind};
    use crate::scalar::ScalarRing;

    fn alg() -> FreeAlgebra {
        FreeAlgebra::new(Alphabet::new(&["x1", "x2", "x3"]).unwrap(), ScalarRing::laurent("Q"))
    }

    #[test]
    fn print_parse_round_trip() {
        let a = alg();
        for s in [
            "Q*x3*x2*x1 + (Q^-1 - Q)*x1^2 + (-Q^-1 + Q)*x2^2 + (1 - Q^2)*x3^2",
            "x1*x2 - Q*x2*x1",
            "-x3 + 2",
            "0",
        ] {
            let p = a.parse(s).unwrap();
            let shown = a.show(&p).to_string();
            assert_eq!(a.parse(&shown).unwrap(), p, "{s} -> {shown}");
        }
    }

    #[test]
    fn ordered_printing() {
        let a = alg();
        let o = MonomialOrder::new(OrderKind::AugmentedDlex, DegreeFunction::new(vec![0, 1, 1], 0), &a.alphabet).unwrap();
        let p = a.parse("(1 - Q^2)*x3 + Q*x2*x1").unwrap();
        assert_eq!(a.show_ordered(&p, &o).to_string(), "Q*x2*x1 + (1 - Q^2)*x3");
        assert_eq!(a.show(&a.parse("x3^2*x1 - 1").unwrap()).to_string(), "x3^2*x1 - 1");
    }

    #[test]
    fn parse_errors() {
        let a = alg();
        assert!(a.parse("x4").is_err());
        assert!(a.parse("x1^-1").is_err());
        assert!(a.parse("x1/x2").is_err());
        assert_eq!(a.parse("x1/Q").unwrap(), a.parse("Q^-1*x1").unwrap());
        let e = a.parse_at("x1 + t", 3, 10).unwrap_err();
        assert_eq!((e.line, e.col), (3, 15));
    }
}
