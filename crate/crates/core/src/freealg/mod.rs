//! Words and noncommutative polynomials over a finite alphabet.

mod cyclic;
mod order;
mod poly;
mod text;

pub use cyclic::cyclic_derivative;
pub(crate) use order::display_compare;
pub use order::{DegreeFunction, MonomialOrder, OrderKind};
pub use poly::NCPoly;
pub use text::{NCPolyDisplay, WordDisplay};

use std::fmt;

use thiserror::Error;

use crate::expr::ParseError;
use crate::scalar::{Scalar, ScalarError, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("generator names must be unique and nonempty")]
    BadAlphabet,
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("precedence list is not a permutation of the generators")]
    BadPrecedence,
    #[error("word uses letter {0}, outside the alphabet")]
    LetterOutOfRange(usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Index of a generator inside its [`Alphabet`].
pub type Gen = u8;

/// Generator names plus a lexicographic precedence (rank 0 is the largest
/// letter). Declaration order is the default precedence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
    rank: Vec<usize>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, FreeAlgError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.is_empty() || names.len() > Gen::MAX as usize || names.iter().any(String::is_empty) {
            return Err(FreeAlgError::BadAlphabet);
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(FreeAlgError::BadAlphabet);
            }
        }
        let rank = (0..names.len()).collect();
        Ok(Alphabet { names, rank })
    }

    /// Overrides the precedence; `order[0]` becomes the largest letter.
    pub fn with_precedence<S: AsRef<str>>(mut self, order: &[S]) -> Result<Self, FreeAlgError> {
        if order.len() != self.names.len() {
            return Err(FreeAlgError::BadPrecedence);
        }
        let mut rank = vec![usize::MAX; self.names.len()];
        for (r, name) in order.iter().enumerate() {
            let g = self.index(name.as_ref())?;
            if rank[g as usize] != usize::MAX {
                return Err(FreeAlgError::BadPrecedence);
            }
            rank[g as usize] = r;
        }
        self.rank = rank;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.names[g as usize]
    }

    pub fn index(&self, name: &str) -> Result<Gen, FreeAlgError> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| i as Gen)
            .ok_or_else(|| FreeAlgError::UnknownGenerator(name.to_string()))
    }

    /// Precedence rank of each generator.
    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Generators from largest to smallest precedence.
    pub fn precedence(&self) -> Vec<&str> {
        let mut gens: Vec<usize> = (0..self.len()).collect();
        gens.sort_by_key(|&g| self.rank[g]);
        gens.into_iter().map(|g| self.names[g].as_str()).collect()
    }

    pub fn has_default_precedence(&self) -> bool {
        self.rank.iter().enumerate().all(|(i, &r)| i == r)
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        (0..self.names.len()).map(|g| g as Gen)
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, FreeAlgError> {
        names.iter().map(|n| self.index(n)).collect::<Result<Vec<_>, _>>().map(Word)
    }

    pub fn check_word(&self, w: &Word) -> Result<(), FreeAlgError> {
        match w.0.iter().find(|&&g| g as usize >= self.len()) {
            Some(&g) => Err(FreeAlgError::LetterOutOfRange(g as usize)),
            None => Ok(()),
        }
    }
}

/// A monomial of the free monoid; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Starting positions where `factor` occurs inside `self`.
    pub fn occurrences<'a>(&'a self, factor: &'a Word) -> impl Iterator<Item = usize> + 'a {
        let n = factor.len();
        (0..=self.len().saturating_sub(n))
            .filter(move |&i| self.len() >= n && self.0[i..i + n] == factor.0[..])
    }

    pub fn contains(&self, factor: &Word) -> bool {
        self.occurrences(factor).next().is_some()
    }

    pub fn count(&self, g: Gen) -> usize {
        self.0.iter().filter(|&&x| x == g).count()
    }

    pub fn show<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay { word: self, alphabet }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// An alphabet together with a coefficient ring: the context in which
/// polynomials are parsed, printed and combined with mode checking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAlgebra {
    pub alphabet: Alphabet,
    pub ring: ScalarRing,
}

impl FreeAlgebra {
    pub fn new(alphabet: Alphabet, ring: ScalarRing) -> Self {
        FreeAlgebra { alphabet, ring }
    }

    pub fn gen(&self, name: &str) -> Result<NCPoly, FreeAlgError> {
        Ok(NCPoly::word(Word::letter(self.alphabet.index(name)?)))
    }

    /// Confirms every word is over the alphabet and every coefficient is
    /// either a plain rational or already in the coefficient ring's mode.
    pub fn validate(&self, p: &NCPoly) -> Result<(), FreeAlgError> {
        for (w, c) in p.terms() {
            self.alphabet.check_word(w)?;
            self.check_scalar(c)?;
        }
        Ok(())
    }

    pub fn check_scalar(&self, c: &Scalar) -> Result<(), FreeAlgError> {
        let k = c.kind();
        if k == self.ring.kind || k == crate::scalar::ScalarKind::Rational {
            Ok(())
        } else {
            Err(ScalarError::ModeMismatch(k, self.ring.kind).into())
        }
    }

    pub fn add(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(p + q)
    }

    pub fn mul(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(p * q)
    }

    pub fn neg(&self, p: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.validate(p)?;
        Ok(-p)
    }

    pub fn scale(&self, p: &NCPoly, c: &Scalar) -> Result<NCPoly, FreeAlgError> {
        self.validate(p)?;
        self.check_scalar(c)?;
        Ok(p.scale(c))
    }

    pub fn commutator(&self, p: &NCPoly, q: &NCPoly) -> Result<NCPoly, FreeAlgError> {
        self.validate(p)?;
        self.validate(q)?;
        Ok(p.commutator(q))
    }

    pub fn parse(&self, text: &str) -> Result<NCPoly, FreeAlgError> {
        Ok(text::parse_poly(self, text, 1, 1)?)
    }

    pub fn parse_at(&self, text: &str, line: usize, col: usize) -> Result<NCPoly, ParseError> {
        text::parse_poly(self, text, line, col)
    }

    pub fn show<'a>(&'a self, p: &'a NCPoly) -> NCPolyDisplay<'a> {
        NCPolyDisplay { poly: p, alg: self, order: None }
    }

    pub fn show_ordered<'a>(&'a self, p: &'a NCPoly, order: &'a MonomialOrder) -> NCPolyDisplay<'a> {
        NCPolyDisplay { poly: p, alg: self, order: Some(order) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ScalarRing};

    fn alg() -> FreeAlgebra {
        FreeAlgebra::new(Alphabet::new(&["x1", "x2", "x3"]).unwrap(), ScalarRing::laurent("Q"))
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new(&["a", "a"]).is_err());
        assert!(Alphabet::new::<&str>(&[]).is_err());
        let a = Alphabet::new(&["a", "b"]).unwrap().with_precedence(&["b", "a"]).unwrap();
        assert_eq!(a.precedence(), vec!["b", "a"]);
        assert!(Alphabet::new(&["a", "b"]).unwrap().with_precedence(&["a", "a"]).is_err());
    }

    #[test]
    fn multiplication_keeps_order() {
        let a = alg();
        let x1 = a.gen("x1").unwrap();
        let x2 = a.gen("x2").unwrap();
        let p = a.mul(&x1, &x2).unwrap();
        assert_eq!(p, NCPoly::word(a.alphabet.word(&["x1", "x2"]).unwrap()));
        let s = a.mul(&(&x1 + &x2), &(&x1 - &x2)).unwrap();
        assert_eq!(s, a.parse("x1^2 - x1*x2 + x2*x1 - x2^2").unwrap());
    }

    #[test]
    fn scale_by_parameter_coefficient() {
        let a = alg();
        let x3 = a.gen("x3").unwrap();
        let c = a.ring.parse("1 - Q^2").unwrap();
        let p = a.scale(&x3, &c).unwrap();
        assert_eq!(a.show(&p).to_string(), "(1 - Q^2)*x3");
    }

    #[test]
    fn mode_and_alphabet_mismatch() {
        let a = alg();
        let t = ScalarRing::polynomial("t").param().unwrap();
        let bad = NCPoly::constant(t);
        assert!(matches!(a.add(&bad, &NCPoly::zero()), Err(FreeAlgError::Scalar(_))));
        let stray = NCPoly::word(Word(vec![7]));
        assert!(matches!(a.mul(&stray, &stray), Err(FreeAlgError::LetterOutOfRange(7))));
    }

    #[test]
    fn commutators() {
        let a = alg();
        let x1 = a.gen("x1").unwrap();
        let x2 = a.gen("x2").unwrap();
        assert!(a.commutator(&x1, &x1).unwrap().is_zero());
        assert_eq!(a.commutator(&x1, &x2).unwrap(), a.parse("x1*x2 - x2*x1").unwrap());
        let p = &x1.scale(&rat(3).into()) + &x2;
        assert!(p.commutator(&p).is_zero());
    }
}
