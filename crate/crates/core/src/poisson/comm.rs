use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_traits::{One, Signed, Zero};

use super::PoissonError;
use crate::expr::{self, Interpreter, ParseError};
use crate::scalar::{pow_rational, Rational};

/// Polynomial in `n` commuting variables with rational coefficients.
/// Exponents may be negative; whether that is allowed is decided by the
/// caller (see [`CommPoly::check_laurent`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl CommPoly {
    pub fn zero(n: usize) -> Self {
        CommPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(e, Rational::one())
    }

    pub fn monomial(exps: Vec<i64>, c: Rational) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.n
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

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i64]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rational) {
        assert_eq!(exps.len(), self.n, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &Rational) -> CommPoly {
        let mut out = Self::zero(self.n);
        for (e, v) in self.terms() {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> CommPoly {
        (0..k).fold(Self::one(self.n), |acc, _| &acc * self)
    }

    pub fn partial(&self, i: usize) -> CommPoly {
        let mut out = Self::zero(self.n);
        for (e, c) in self.terms() {
            if e[i] != 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c * Rational::from_integer(e[i].into()));
            }
        }
        out
    }

    /// Errors if some variable not flagged as invertible has a negative
    /// exponent.
    pub fn check_laurent(&self, laurent: &[bool]) -> Result<(), PoissonError> {
        for e in self.terms.keys() {
            for (i, &k) in e.iter().enumerate() {
                if k < 0 && !laurent[i] {
                    return Err(PoissonError::Underflow(i));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PoissonError> {
        if point.len() != self.n {
            return Err(PoissonError::Arity(self.n, point.len()));
        }
        let mut acc = Rational::zero();
        for (e, c) in self.terms() {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k < 0 && point[i].is_zero() {
                    return Err(PoissonError::Pole(i));
                }
                t *= pow_rational(&point[i], k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// The single term, when there is exactly one.
    pub fn as_monomial(&self) -> Option<(&Vec<i64>, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Multiplicative inverse of a monomial.
    pub fn inv_monomial(&self) -> Result<CommPoly, PoissonError> {
        let (e, c) = self.as_monomial().ok_or(PoissonError::NotMonomial)?;
        Ok(CommPoly::monomial(e.iter().map(|k| -k).collect(), c.recip()))
    }

    /// Replaces variable `i` by `images[i]`; negative exponents need
    /// monomial images.
    pub fn substitute(&self, images: &[CommPoly]) -> Result<CommPoly, PoissonError> {
        if images.len() != self.n {
            return Err(PoissonError::Arity(self.n, images.len()));
        }
        let m = images.first().map_or(0, CommPoly::nvars);
        let mut out = CommPoly::zero(m);
        for (e, c) in self.terms() {
            let mut t = CommPoly::constant(m, c.clone());
            for (i, &k) in e.iter().enumerate() {
                let base = if k < 0 { images[i].inv_monomial()? } else { images[i].clone() };
                t = &t * &base.pow(k.unsigned_abs() as u32);
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn show<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> CommPolyDisplay<'a, S> {
        CommPolyDisplay { poly: self, names }
    }

    pub fn parse<S: AsRef<str>>(names: &[S], text: &str) -> Result<CommPoly, ParseError> {
        expr::parse(text, &CommText(names))
    }
}

impl ops::Add<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn add(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl ops::Sub<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    fn sub(self, rhs: &CommPoly) -> CommPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl ops::Neg for &CommPoly {
    type Output = CommPoly;
    fn neg(self) -> CommPoly {
        self.scale(&-Rational::one())
    }
}

impl ops::Mul<&CommPoly> for &CommPoly {
    type Output = CommPoly;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &CommPoly) -> CommPoly {
        let mut out = CommPoly::zero(self.n);
        for (a, c) in self.terms() {
            for (b, d) in rhs.terms() {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), c * d);
            }
        }
        out
    }
}

/// Total degree descending, then lexicographic with the first variable
/// largest.
fn display_order(a: &[i64], b: &[i64]) -> Ordering {
    let da: i64 = a.iter().sum();
    let db: i64 = b.iter().sum();
    db.cmp(&da).then_with(|| b.cmp(a))
}

pub struct CommPolyDisplay<'a, S> {
    poly: &'a CommPoly,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for CommPolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut terms: Vec<_> = self.poly.terms().collect();
        terms.sort_by(|x, y| display_order(x.0, y.0));
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| {
                    let name = self.names[j].as_ref();
                    if k == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let mag = c.abs();
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
                (false, true) => mono.join("*"),
                (false, false) => format!("{mag}*{}", mono.join("*")),
            };
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

struct CommText<'a, S>(&'a [S]);

impl<S: AsRef<str>> Interpreter for CommText<'_, S> {
    type Value = CommPoly;

    fn number(&self, n: Rational) -> Result<CommPoly, String> {
        Ok(CommPoly::constant(self.0.len(), n))
    }

    fn ident(&self, name: &str) -> Result<CommPoly, String> {
        self.0
            .iter()
            .position(|s| s.as_ref() == name)
            .map(|i| CommPoly::var(self.0.len(), i))
            .ok_or_else(|| format!("unknown variable '{name}'"))
    }

    fn add(&self, a: CommPoly, b: CommPoly) -> Result<CommPoly, String> {
        Ok(&a + &b)
    }

    fn neg(&self, a: CommPoly) -> Result<CommPoly, String> {
        Ok(-&a)
    }

    fn mul(&self, a: CommPoly, b: CommPoly) -> Result<CommPoly, String> {
        Ok(&a * &b)
    }

    fn div(&self, a: CommPoly, b: CommPoly) -> Result<CommPoly, String> {
        let inv = b.inv_monomial().map_err(|_| "only monomials may divide".to_string())?;
        Ok(&a * &inv)
    }

    fn pow(&self, a: CommPoly, k: i64) -> Result<CommPoly, String> {
        if k >= 0 {
            Ok(a.pow(k as u32))
        } else {
            let inv = a.inv_monomial().map_err(|_| "negative powers apply only to monomials".to_string())?;
            Ok(inv.pow(k.unsigned_abs() as u32))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    const XYZ: [&str; 3] = ["x1", "x2", "x3"];

    #[test]
    fn parse_and_show() {
        let p = CommPoly::parse(&XYZ, "x1*(4 - x3^2) + x2^2").unwrap();
        assert_eq!(p.show(&XYZ).to_string(), "-x1*x3^2 + x2^2 + 4*x1");
        let l = CommPoly::parse(&["x", "y"], "x^-1*y - 2/3").unwrap();
        assert_eq!(l.show(&["x", "y"]).to_string(), "-2/3 + x^-1*y");
        assert!(CommPoly::parse(&XYZ, "(x1 + x2)^-1").is_err());
    }

    #[test]
    fn partials_and_evaluation() {
        let p = CommPoly::parse(&XYZ, "x1*x2*x3 - x1^2").unwrap();
        assert_eq!(p.partial(0), CommPoly::parse(&XYZ, "x2*x3 - 2*x1").unwrap());
        assert_eq!(p.eval(&[rat(2), rat(3), rat(1)]).unwrap(), rat(2));
        let l = CommPoly::parse(&["x"], "x^-2").unwrap();
        assert_eq!(l.partial(0), CommPoly::parse(&["x"], "-2*x^-3").unwrap());
        assert!(l.eval(&[rat(0)]).is_err());
        assert!(l.check_laurent(&[false]).is_err());
        assert!(l.check_laurent(&[true]).is_ok());
    }

    #[test]
    fn monomial_substitution() {
        let p = CommPoly::parse(&["x", "y"], "x^-1*y + y^2").unwrap();
        let images = [
            CommPoly::parse(&["x", "y"], "x^-1").unwrap(),
            CommPoly::parse(&["x", "y"], "-y").unwrap(),
        ];
        assert_eq!(p.substitute(&images).unwrap(), CommPoly::parse(&["x", "y"], "-x*y + y^2").unwrap());
    }
}
