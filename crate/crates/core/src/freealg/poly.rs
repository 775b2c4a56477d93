use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops;

use super::{Gen, Word};
use crate::scalar::Scalar;

/// Finite linear combination of words. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, Scalar::one())
    }

    pub fn letter(g: Gen) -> Self {
        Self::word(Word::letter(g))
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// `self += c * w`
    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn remove_term(&mut self, w: &Word) -> Option<Scalar> {
        self.terms.remove(w)
    }

    /// `self += c * a * p * b`
    pub fn add_sandwich(&mut self, c: &Scalar, a: &Word, p: &NCPoly, b: &Word) {
        for (w, d) in p.terms() {
            let mut v = Vec::with_capacity(a.len() + w.len() + b.len());
            v.extend_from_slice(a.letters());
            v.extend_from_slice(w.letters());
            v.extend_from_slice(b.letters());
            self.add_term(Word(v), c * d);
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, d) in self.terms() {
            out.add_term(w.clone(), d * c);
        }
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<E>(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar, E>) -> Result<NCPoly, E> {
        let mut out = NCPoly::zero();
        for (w, c) in self.terms() {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &NCPoly) -> NCPoly {
        &(self * other) - &(other * self)
    }

    /// Length of the longest word, or `None` for zero.
    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Algebra endomorphism sending generator `g` to `image` and fixing the
    /// other generators.
    pub fn substitute(&self, g: Gen, image: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in self.terms() {
            let mut acc = NCPoly::constant(c.clone());
            for &l in w.letters() {
                acc = if l == g { &acc * image } else { acc.times_letter(l) };
            }
            out = &out + &acc;
        }
        out
    }

    fn times_letter(&self, g: Gen) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in self.terms() {
            let mut v = w.0.clone();
            v.push(g);
            out.add_term(Word(v), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> NCPoly {
        (0..k).fold(NCPoly::one(), |acc, _| &acc * self)
    }
}

impl ops::Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl ops::Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (w, c) in rhs.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }
}

impl ops::Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        NCPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl ops::Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in self.terms() {
            for (v, b) in rhs.terms() {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }
}

impl ops::AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl ops::SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in rhs.terms() {
            self.add_term(w.clone(), -c);
        }
    }
}

impl From<Scalar> for NCPoly {
    fn from(c: Scalar) -> Self {
        NCPoly::constant(c)
    }
}
