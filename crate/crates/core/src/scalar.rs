//! Exact coefficient arithmetic.
//!
//! Every algebra in the workbench has one central parameter (`t`, `q`, `Q`, ...)
//! which lives in the coefficient ring rather than in the generator alphabet.
//! A [`Scalar`] is a rational number, a polynomial, a Laurent polynomial or a
//! rational function in that parameter. Values are always kept in canonical
//! form so that structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number; zero is `0/1` and denominators are positive.
pub type Rational = BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit in the {1} coefficient ring")]
    NotAUnit(String, ScalarKind),
    #[error("coefficient mode mismatch: {0} vs {1}")]
    ModeMismatch(ScalarKind, ScalarKind),
    #[error("cannot substitute {value} for the parameter: it is a pole")]
    Pole { value: Rational },
    #[error("{0} is not divisible by the parameter minus {1}")]
    NotDivisible(String, Rational),
}

/// The four coefficient modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    Polynomial,
    Laurent,
    RatFunc,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::Rational => "rational",
            ScalarKind::Polynomial => "polynomial",
            ScalarKind::Laurent => "laurent",
            ScalarKind::RatFunc => "ratfunc",
        })
    }
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over Q
// ---------------------------------------------------------------------------

/// Dense polynomial in one variable; `coeffs[i]` multiplies `p^i`.
/// Never stores trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * p^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
            .collect();
        Self::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = &rem[rem.len() - 1] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
                quot[k] = c;
            }
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * v + c)
    }

    /// Number of leading zero coefficients, i.e. the exponent of the
    /// lowest nonzero monomial.
    fn low_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    fn shift_down(&self, k: usize) -> UniPoly {
        UniPoly { coeffs: self.coeffs[k..].to_vec() }
    }

    fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Exact division by `(p - v)`; `None` when the remainder is nonzero.
    pub fn div_linear(&self, v: &Rational) -> Option<UniPoly> {
        let divisor = UniPoly::from_coeffs(vec![-v.clone(), Rational::one()]);
        let (q, r) = self.div_rem(&divisor);
        r.is_zero().then_some(q)
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials
// ---------------------------------------------------------------------------

/// `p^low * body` where `body` has a nonzero constant term (or is zero, in
/// which case `low == 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    body: UniPoly,
}

impl LaurentPoly {
    pub fn new(low: i64, body: UniPoly) -> Self {
        if body.is_zero() {
            return LaurentPoly { low: 0, body };
        }
        let k = body.low_order();
        LaurentPoly { low: low + k as i64, body: body.shift_down(k) }
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::new(k, UniPoly::constant(c))
    }

    pub fn from_poly(p: UniPoly) -> Self {
        Self::new(0, p)
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.body.degree().map_or(0, |d| d as i64)
    }

    /// `(exponent, coefficient)` pairs, ascending, nonzero only.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.body
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        let i = k - self.low;
        if i < 0 {
            return Rational::zero();
        }
        self.body.coeffs.get(i as usize).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let a = self.body.shift_up((self.low - low) as usize);
        let b = other.body.shift_up((other.low - low) as usize);
        Self::new(low, a.add(&b))
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { low: self.low, body: self.body.neg() }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        Self::new(self.low + other.low, self.body.mul(&other.body))
    }

    /// A Laurent polynomial is a unit iff it is a nonzero monomial.
    pub fn inv(&self) -> Option<LaurentPoly> {
        let c = self.body.as_constant()?;
        if c.is_zero() {
            return None;
        }
        Some(Self::monomial(c.recip(), -self.low))
    }

    pub fn eval(&self, v: &Rational) -> Option<Rational> {
        if v.is_zero() && !self.is_zero() {
            return None;
        }
        let body = self.body.eval(v);
        Some(body * pow_rational(v, self.low))
    }

    /// Numerator/denominator pair with the denominator a power of `p`.
    pub fn to_fraction(&self) -> (UniPoly, UniPoly) {
        if self.low >= 0 {
            (self.body.shift_up(self.low as usize), UniPoly::constant(Rational::one()))
        } else {
            (self.body.clone(), UniPoly::monomial(Rational::one(), (-self.low) as usize))
        }
    }
}

pub(crate) fn pow_rational(v: &Rational, k: i64) -> Rational {
    if k >= 0 {
        num_traits::pow(v.clone(), k as usize)
    } else {
        num_traits::pow(v.recip(), (-k) as usize)
    }
}

// ---------------------------------------------------------------------------
// Rational functions
// ---------------------------------------------------------------------------

/// Reduced fraction `num / den` with `den` monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc { num: UniPoly::zero(), den: UniPoly::constant(Rational::one()) }
    }
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::default());
        }
        let g = num.gcd(&den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let l = d.leading().expect("nonzero").recip();
        Ok(RatFunc { num: n.scale(&l), den: d.scale(&l) })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc { num: p, den: UniPoly::constant(Rational::one()) }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(self.den.clone(), self.num.clone()).expect("nonzero numerator"))
    }

    pub fn eval(&self, v: &Rational) -> Option<Rational> {
        let d = self.den.eval(v);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(v) / d)
    }
}

// ---------------------------------------------------------------------------
// Scalar
// ---------------------------------------------------------------------------

/// A coefficient. Plain rationals are promoted silently when combined with a
/// parametric value; mixing two different parametric modes is an error.
#[derive(Debug, Clone)]
pub enum Scalar {
    Rational(Rational),
    Polynomial(UniPoly),
    Laurent(LaurentPoly),
    RatFunc(RatFunc),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rational(rat(n))
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Polynomial(_) => ScalarKind::Polynomial,
            Scalar::Laurent(_) => ScalarKind::Laurent,
            Scalar::RatFunc(_) => ScalarKind::RatFunc,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Polynomial(p) => p.is_zero(),
            Scalar::Laurent(l) => l.is_zero(),
            Scalar::RatFunc(f) => f.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a plain rational, if it is constant in the parameter.
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Rational(r) => Some(r.clone()),
            Scalar::Polynomial(p) => p.as_constant(),
            Scalar::Laurent(l) if l.is_zero() => Some(Rational::zero()),
            Scalar::Laurent(l) => (l.low == 0).then(|| l.body.as_constant()).flatten(),
            Scalar::RatFunc(f) => {
                if f.den.degree() == Some(0) {
                    f.num.as_constant()
                } else {
                    None
                }
            }
        }
    }

    /// Re-expresses a value in `kind`, promoting where the embedding exists
    /// (rational into anything, polynomial and Laurent into rational functions,
    /// polynomial into Laurent).
    pub fn promote(&self, kind: ScalarKind) -> Result<Scalar, ScalarError> {
        use ScalarKind as K;
        Ok(match (self, kind) {
            (s, k) if s.kind() == k => s.clone(),
            (Scalar::Rational(r), K::Polynomial) => Scalar::Polynomial(UniPoly::constant(r.clone())),
            (Scalar::Rational(r), K::Laurent) => Scalar::Laurent(LaurentPoly::monomial(r.clone(), 0)),
            (Scalar::Rational(r), K::RatFunc) => Scalar::RatFunc(RatFunc::from_poly(UniPoly::constant(r.clone()))),
            (Scalar::Polynomial(p), K::Laurent) => Scalar::Laurent(LaurentPoly::from_poly(p.clone())),
            (Scalar::Polynomial(p), K::RatFunc) => Scalar::RatFunc(RatFunc::from_poly(p.clone())),
            (Scalar::Laurent(l), K::RatFunc) => {
                let (n, d) = l.to_fraction();
                Scalar::RatFunc(RatFunc::new(n, d)?)
            }
            (s, K::Rational) => Scalar::Rational(
                s.as_rational().ok_or(ScalarError::ModeMismatch(s.kind(), K::Rational))?,
            ),
            (s, k) => return Err(ScalarError::ModeMismatch(s.kind(), k)),
        })
    }

    fn common(&self, other: &Scalar) -> Result<(Scalar, Scalar), ScalarError> {
        let (ka, kb) = (self.kind(), other.kind());
        if ka == kb {
            return Ok((self.clone(), other.clone()));
        }
        if ka == ScalarKind::Rational {
            return Ok((self.promote(kb)?, other.clone()));
        }
        if kb == ScalarKind::Rational {
            return Ok((self.clone(), other.promote(ka)?));
        }
        Err(ScalarError::ModeMismatch(ka, kb))
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (self, other) {
            return Ok(Scalar::Rational(a + b));
        }
        let (a, b) = self.common(other)?;
        Ok(match (a, b) {
            (Scalar::Polynomial(a), Scalar::Polynomial(b)) => Scalar::Polynomial(a.add(&b)),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(a.add(&b)),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.add(&b)),
            _ => unreachable!("common() aligns modes"),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => return Ok(Scalar::Rational(a * b)),
            (Scalar::Rational(a), s) | (s, Scalar::Rational(a)) => return Ok(s.scale(a)),
            _ => {}
        }
        let (a, b) = self.common(other)?;
        Ok(match (a, b) {
            (Scalar::Polynomial(a), Scalar::Polynomial(b)) => Scalar::Polynomial(a.mul(&b)),
            (Scalar::Laurent(a), Scalar::Laurent(b)) => Scalar::Laurent(a.mul(&b)),
            (Scalar::RatFunc(a), Scalar::RatFunc(b)) => Scalar::RatFunc(a.mul(&b)),
            _ => unreachable!("common() aligns modes"),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Polynomial(p) => Scalar::Polynomial(p.neg()),
            Scalar::Laurent(l) => Scalar::Laurent(l.neg()),
            Scalar::RatFunc(f) => Scalar::RatFunc(f.neg()),
        }
    }

    /// Multiplication by a rational constant.
    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(r * c),
            Scalar::Polynomial(p) => Scalar::Polynomial(p.scale(c)),
            Scalar::Laurent(l) => Scalar::Laurent(LaurentPoly::new(l.low, l.body.scale(c))),
            Scalar::RatFunc(f) => {
                if c.is_zero() {
                    Scalar::RatFunc(RatFunc::default())
                } else {
                    Scalar::RatFunc(RatFunc { num: f.num.scale(c), den: f.den.clone() })
                }
            }
        }
    }

    /// Multiplicative inverse inside the value's own coefficient ring.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let not_unit = || ScalarError::NotAUnit(format!("{self:?}"), self.kind());
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Polynomial(p) => {
                let c = p.as_constant().ok_or_else(not_unit)?;
                Scalar::Polynomial(UniPoly::constant(c.recip()))
            }
            Scalar::Laurent(l) => Scalar::Laurent(l.inv().ok_or_else(not_unit)?),
            Scalar::RatFunc(f) => Scalar::RatFunc(f.inv().ok_or(ScalarError::DivisionByZero)?),
        })
    }

    pub fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Scalar, ScalarError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Substitutes `v` for the parameter.
    pub fn specialize(&self, v: &Rational) -> Result<Rational, ScalarError> {
        let pole = || ScalarError::Pole { value: v.clone() };
        match self {
            Scalar::Rational(r) => Ok(r.clone()),
            Scalar::Polynomial(p) => Ok(p.eval(v)),
            Scalar::Laurent(l) => {
                // The evaluation map from the Laurent ring only exists away from 0.
                if v.is_zero() {
                    return Err(pole());
                }
                l.eval(v).ok_or_else(pole)
            }
            Scalar::RatFunc(f) => f.eval(v).ok_or_else(pole),
        }
    }

    /// Exact quotient by `(parameter - v)`.
    pub fn div_by_linear(&self, v: &Rational) -> Result<Scalar, ScalarError> {
        let fail = || ScalarError::NotDivisible(format!("{self:?}"), v.clone());
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Ok(Scalar::zero())
                } else {
                    Err(fail())
                }
            }
            Scalar::Polynomial(p) => Ok(Scalar::Polynomial(p.div_linear(v).ok_or_else(fail)?)),
            Scalar::Laurent(l) => {
                if l.is_zero() {
                    return Ok(self.clone());
                }
                // p - v is not a factor of any monomial when v == 0 is excluded;
                // for v == 0 divide by p itself.
                if v.is_zero() {
                    return Ok(Scalar::Laurent(LaurentPoly::new(l.low - 1, l.body.clone())));
                }
                let q = l.body.div_linear(v).ok_or_else(fail)?;
                Ok(Scalar::Laurent(LaurentPoly::new(l.low, q)))
            }
            Scalar::RatFunc(f) => {
                let q = f.num.div_linear(v).ok_or_else(fail)?;
                Ok(Scalar::RatFunc(RatFunc::new(q, f.den.clone())?))
            }
        }
    }

    /// Net degree in the parameter, clamped below at zero; used by degree
    /// functions that give the parameter a positive weight.
    pub fn param_degree(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 0,
            Scalar::Polynomial(p) => p.degree().unwrap_or(0) as u32,
            Scalar::Laurent(l) => l.high().max(0) as u32,
            Scalar::RatFunc(f) => {
                let n = f.num.degree().unwrap_or(0) as i64;
                let d = f.den.degree().unwrap_or(0) as i64;
                (n - d).max(0) as u32
            }
        }
    }

    /// Splits a polynomial or Laurent value into `(exponent, coefficient)`
    /// monomials. Rational functions that are not Laurent are returned whole
    /// with their clamped net degree.
    pub fn monomials(&self) -> Vec<(i64, Scalar)> {
        match self {
            Scalar::Rational(r) if r.is_zero() => vec![],
            Scalar::Rational(_) => vec![(0, self.clone())],
            Scalar::Polynomial(p) => p
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64, Scalar::Polynomial(UniPoly::monomial(c.clone(), i))))
                .collect(),
            Scalar::Laurent(l) => l
                .terms()
                .map(|(k, c)| (k, Scalar::Laurent(LaurentPoly::monomial(c.clone(), k))))
                .collect(),
            Scalar::RatFunc(f) if f.is_zero() => vec![],
            Scalar::RatFunc(_) => vec![(self.param_degree() as i64, self.clone())],
        }
    }

    /// Canonical text, writing the parameter as `param`.
    pub fn display<'a>(&'a self, param: &'a str) -> ScalarDisplay<'a> {
        ScalarDisplay { value: self, param }
    }

    /// True when the printed form needs parentheses to act as a factor.
    pub fn is_compound(&self) -> bool {
        match self {
            Scalar::Rational(_) => false,
            Scalar::Polynomial(p) => p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1,
            Scalar::Laurent(l) => l.terms().count() > 1,
            Scalar::RatFunc(f) => {
                f.den.degree() != Some(0) || f.num.coeffs.iter().filter(|c| !c.is_zero()).count() > 1
            }
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Scalar) -> bool {
        match self.common(other) {
            Ok((a, b)) => match (a, b) {
                (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
                (Scalar::Polynomial(a), Scalar::Polynomial(b)) => a == b,
                (Scalar::Laurent(a), Scalar::Laurent(b)) => a == b,
                (Scalar::RatFunc(a), Scalar::RatFunc(b)) => a == b,
                _ => false,
            },
            Err(_) => false,
        }
    }
}

impl Eq for Scalar {}

macro_rules! scalar_op {
    ($trait:ident, $method:ident, $call:ident) => {
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            /// Panics on a coefficient mode mismatch; use the `try_` form at API boundaries.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$call(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_op!(Add, add, try_add);
scalar_op!(Sub, sub, try_sub);
scalar_op!(Mul, mul, try_mul);

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

// ---------------------------------------------------------------------------
// Coefficient rings
// ---------------------------------------------------------------------------

/// A coefficient mode together with the name of its parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarRing {
    pub kind: ScalarKind,
    pub param: String,
}

impl ScalarRing {
    pub fn rational() -> Self {
        ScalarRing { kind: ScalarKind::Rational, param: String::new() }
    }

    pub fn polynomial(param: &str) -> Self {
        ScalarRing { kind: ScalarKind::Polynomial, param: param.to_string() }
    }

    pub fn laurent(param: &str) -> Self {
        ScalarRing { kind: ScalarKind::Laurent, param: param.to_string() }
    }

    pub fn ratfunc(param: &str) -> Self {
        ScalarRing { kind: ScalarKind::RatFunc, param: param.to_string() }
    }

    pub fn has_param(&self) -> bool {
        self.kind != ScalarKind::Rational
    }

    /// The parameter itself as an element.
    pub fn param(&self) -> Result<Scalar, ScalarError> {
        let p = UniPoly::monomial(Rational::one(), 1);
        Ok(match self.kind {
            ScalarKind::Rational => return Err(ScalarError::ModeMismatch(ScalarKind::Polynomial, ScalarKind::Rational)),
            ScalarKind::Polynomial => Scalar::Polynomial(p),
            ScalarKind::Laurent => Scalar::Laurent(LaurentPoly::from_poly(p)),
            ScalarKind::RatFunc => Scalar::RatFunc(RatFunc::from_poly(p)),
        })
    }

    /// `c * param^k`, failing for negative `k` outside Laurent/ratfunc modes.
    pub fn monomial(&self, c: Rational, k: i64) -> Result<Scalar, ScalarError> {
        if k == 0 {
            return Scalar::Rational(c).promote(self.kind);
        }
        self.param()?.pow(k).map(|s| s.scale(&c))
    }

    pub fn constant(&self, c: Rational) -> Scalar {
        Scalar::Rational(c).promote(self.kind).expect("rationals embed everywhere")
    }

    /// Brings `s` into this ring, promoting if needed.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar, ScalarError> {
        s.promote(self.kind)
    }

    pub fn show<'a>(&'a self, s: &'a Scalar) -> ScalarDisplay<'a> {
        s.display(&self.param)
    }
}

impl fmt::Display for ScalarRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ScalarKind::Rational => write!(f, "rational"),
            k => write!(f, "{k} {}", self.param),
        }
    }
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

pub struct ScalarDisplay<'a> {
    value: &'a Scalar,
    param: &'a str,
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Writes `sum c_k p^k` in ascending order of `k`.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Rational)>,
    param: &str,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        first = false;
        if k == 0 {
            write_rational(f, &mag)?;
            continue;
        }
        if !mag.is_one() {
            write_rational(f, &mag)?;
            f.write_str("*")?;
        }
        if k == 1 {
            write!(f, "{param}")?;
        } else {
            write!(f, "{param}^{k}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

fn poly_terms(p: &UniPoly) -> impl Iterator<Item = (i64, &Rational)> {
    p.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as i64, c))
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Scalar::Rational(r) => write_rational(f, r),
            Scalar::Polynomial(p) => write_terms(f, poly_terms(p), self.param),
            Scalar::Laurent(l) => write_terms(f, l.terms(), self.param),
            Scalar::RatFunc(rf) => {
                if rf.den.degree() == Some(0) {
                    return write_terms(f, poly_terms(&rf.num), self.param);
                }
                let wrap_num = poly_terms(&rf.num).count() > 1;
                if wrap_num {
                    f.write_str("(")?;
                }
                write_terms(f, poly_terms(&rf.num), self.param)?;
                if wrap_num {
                    f.write_str(")")?;
                }
                f.write_str("/(")?;
                write_terms(f, poly_terms(&rf.den), self.param)?;
                f.write_str(")")
            }
        }
    }
}

/// Orders rationals; re-exported for callers that sort printed output.
pub fn cmp_rational(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

/// `gcd(|n|, d) == 1` and `d >= 1`; num-rational maintains this, the check is
/// exposed for tests.
pub fn is_reduced(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

struct ScalarText<'a>(&'a ScalarRing);

impl crate::expr::Interpreter for ScalarText<'_> {
    type Value = Scalar;

    fn number(&self, n: Rational) -> Result<Scalar, String> {
        Ok(self.0.constant(n))
    }
    fn ident(&self, name: &str) -> Result<Scalar, String> {
        if self.0.has_param() && name == self.0.param {
            self.0.param().map_err(|e| e.to_string())
        } else {
            Err(format!("unknown name '{name}' in a {} scalar", self.0))
        }
    }
    fn add(&self, a: Scalar, b: Scalar) -> Result<Scalar, String> {
        a.try_add(&b).map_err(|e| e.to_string())
    }
    fn neg(&self, a: Scalar) -> Result<Scalar, String> {
        Ok(-a)
    }
    fn mul(&self, a: Scalar, b: Scalar) -> Result<Scalar, String> {
        a.try_mul(&b).map_err(|e| e.to_string())
    }
    fn div(&self, a: Scalar, b: Scalar) -> Result<Scalar, String> {
        a.try_div(&b).map_err(|e| e.to_string())
    }
    fn pow(&self, a: Scalar, k: i64) -> Result<Scalar, String> {
        a.pow(k).map_err(|e| e.to_string())
    }
}

impl ScalarRing {
    /// Parses scalar text such as `1 - Q^2`, `Q^-1 - Q` or `3/2`.
    pub fn parse(&self, text: &str) -> Result<Scalar, crate::expr::ParseError> {
        crate::expr::parse(text, &ScalarText(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lq() -> ScalarRing {
        ScalarRing::laurent("Q")
    }

    fn q(k: i64) -> Scalar {
        lq().monomial(rat(1), k).unwrap()
    }

    #[test]
    fn laurent_unit_inverse() {
        assert_eq!(q(2).inv().unwrap(), q(-2));
        assert_eq!(lq().show(&q(-2)).to_string(), "Q^-2");
    }

    #[test]
    fn laurent_product_matches_commutator_coefficient() {
        let one_minus_q2 = Scalar::one() - q(2);
        let prod = &one_minus_q2 * &q(-1);
        assert_eq!(prod, q(-1) - q(1));
        assert_eq!(lq().show(&prod).to_string(), "Q^-1 - Q");
    }

    #[test]
    fn polynomial_non_unit() {
        let t = ScalarRing::polynomial("t");
        let s = Scalar::one() + t.param().unwrap();
        assert!(matches!(s.inv(), Err(ScalarError::NotAUnit(..))));
        assert!(matches!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero)));
    }

    #[test]
    fn mode_mismatch() {
        let t = ScalarRing::polynomial("t").param().unwrap();
        assert!(matches!(t.try_add(&q(1)), Err(ScalarError::ModeMismatch(..))));
        // plain rationals promote
        assert_eq!(t.try_add(&Scalar::from(2)).unwrap().kind(), ScalarKind::Polynomial);
    }

    #[test]
    fn specialize_examples() {
        let one_minus_q2 = Scalar::one() - q(2);
        assert_eq!(one_minus_q2.specialize(&rat(1)).unwrap(), rat(0));
        assert_eq!((q(-1) - q(1)).specialize(&rat(2)).unwrap(), ratio(-3, 2));
        assert!(matches!(q(-1).specialize(&rat(0)), Err(ScalarError::Pole { .. })));
    }

    #[test]
    fn ratfunc_canonical_denominator() {
        let r = ScalarRing::ratfunc("q");
        let one_minus_q2 = Scalar::one() - r.monomial(rat(1), 2).unwrap();
        let x = one_minus_q2.inv().unwrap();
        match &x {
            Scalar::RatFunc(f) => assert_eq!(f.denominator().leading(), Some(&rat(1))),
            _ => panic!(),
        }
        assert_eq!(r.show(&x).to_string(), "-1/(-1 + q^2)");
        assert!((&x * &one_minus_q2).is_one());
        assert!(matches!(x.specialize(&rat(1)), Err(ScalarError::Pole { .. })));
    }

    #[test]
    fn divide_by_linear_factor() {
        let one_minus_q2 = Scalar::one() - q(2);
        let d = one_minus_q2.div_by_linear(&rat(1)).unwrap();
        assert_eq!(d, -(Scalar::one() + q(1)));
        assert!(q(1).div_by_linear(&rat(1)).is_err());
    }

    #[test]
    fn parse_and_print_round_trip() {
        let r = lq();
        for text in ["Q^-1 - Q", "1 - Q^2", "-Q^5", "3/2*Q^-3 + 2", "0"] {
            let s = r.parse(text).unwrap();
            assert_eq!(r.show(&s).to_string(), text);
        }
        assert!(ScalarRing::polynomial("t").parse("1/(1+t)").is_err());
        assert!(r.parse("x").is_err());
    }

    #[test]
    fn reduced_rationals() {
        let r = ratio(6, -4);
        assert!(is_reduced(&r));
        assert_eq!(r, ratio(-3, 2));
        assert_eq!(rat(0), ratio(0, 7));
    }

    fn laurent_strategy() -> impl proptest::strategy::Strategy<Value = Scalar> {
        use proptest::prelude::*;
        (-3i64..3, proptest::collection::vec(-4i64..5, 0..4))
            .prop_map(|(low, cs)| Scalar::Laurent(LaurentPoly::new(low, UniPoly::from_coeffs(cs.into_iter().map(rat).collect()))))
    }

    fn ratfunc_strategy() -> impl proptest::strategy::Strategy<Value = Scalar> {
        use proptest::prelude::*;
        let poly = || proptest::collection::vec(-3i64..4, 1..3).prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(rat).collect()));
        (poly(), poly()).prop_filter_map("zero denominator", |(n, d)| RatFunc::new(n, d).ok().map(Scalar::RatFunc))
    }

    proptest::proptest! {
        #[test]
        fn laurent_ring_axioms(a in laurent_strategy(), b in laurent_strategy(), c in laurent_strategy()) {
            proptest::prop_assert_eq!(&a * &b, &b * &a);
            proptest::prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            proptest::prop_assert_eq!(&a * &(b.clone() + c.clone()), &a * &b + &a * &c);
            proptest::prop_assert!((a.clone() - a.clone()).is_zero());
        }

        #[test]
        fn specialization_is_a_ring_map(a in laurent_strategy(), b in laurent_strategy(), v in 1i64..5) {
            let v = rat(v);
            let (sa, sb) = (a.specialize(&v).unwrap(), b.specialize(&v).unwrap());
            proptest::prop_assert_eq!((&a * &b).specialize(&v).unwrap(), &sa * &sb);
            proptest::prop_assert_eq!((a + b).specialize(&v).unwrap(), sa + sb);
        }

        #[test]
        fn ratfunc_inverse(a in ratfunc_strategy()) {
            if !a.is_zero() {
                proptest::prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
