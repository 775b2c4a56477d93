use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use rand::Rng;

use super::SkewError;
use crate::scalar::{rat, Scalar, ScalarRing};

/// One-variable commutative base ring: polynomials or Laurent polynomials in
/// `var` with coefficients in `scalars`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRing {
    pub var: String,
    pub laurent: bool,
    pub scalars: ScalarRing,
}

/// Finite combination of powers of the base variable.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaseElem {
    terms: BTreeMap<i64, Scalar>,
}

impl BaseElem {
    pub fn zero() -> Self {
        BaseElem::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut e = Self::zero();
        e.add_term(k, c);
        e
    }

    /// The variable itself.
    pub fn var() -> Self {
        Self::monomial(Scalar::one(), 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, k: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> BaseElem {
        let mut out = BaseElem::zero();
        for (k, v) in self.terms() {
            out.add_term(k, v * c);
        }
        out
    }

    /// The single term, when there is exactly one.
    pub fn as_monomial(&self) -> Option<(i64, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms().next()
        } else {
            None
        }
    }

    /// Inverse of a unit: a single term with invertible coefficient.
    /// Whether negative powers are allowed is the ring's business.
    pub fn inv_monomial(&self) -> Option<BaseElem> {
        let (k, c) = self.as_monomial()?;
        Some(BaseElem::monomial(c.inv().ok()?, -k))
    }

    pub fn pow(&self, k: u32) -> BaseElem {
        (0..k).fold(BaseElem::one(), |acc, _| &acc * self)
    }
}

impl ops::Add<&BaseElem> for &BaseElem {
    type Output = BaseElem;
    fn add(self, rhs: &BaseElem) -> BaseElem {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl ops::Sub<&BaseElem> for &BaseElem {
    type Output = BaseElem;
    fn sub(self, rhs: &BaseElem) -> BaseElem {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, -c);
        }
        out
    }
}

impl ops::Neg for &BaseElem {
    type Output = BaseElem;
    fn neg(self) -> BaseElem {
        let mut out = BaseElem::zero();
        for (k, c) in self.terms() {
            out.add_term(k, -c);
        }
        out
    }
}

impl ops::Mul<&BaseElem> for &BaseElem {
    type Output = BaseElem;
    fn mul(self, rhs: &BaseElem) -> BaseElem {
        let mut out = BaseElem::zero();
        for (a, c) in self.terms() {
            for (b, d) in rhs.terms() {
                out.add_term(a + b, c * d);
            }
        }
        out
    }
}

impl From<Scalar> for BaseElem {
    fn from(c: Scalar) -> Self {
        BaseElem::constant(c)
    }
}

impl BaseRing {
    pub fn polynomial(var: &str, scalars: ScalarRing) -> Self {
        BaseRing { var: var.to_string(), laurent: false, scalars }
    }

    pub fn laurent(var: &str, scalars: ScalarRing) -> Self {
        BaseRing { var: var.to_string(), laurent: true, scalars }
    }

    /// Errors if `e` uses a negative power in polynomial mode or carries a
    /// coefficient from another scalar mode.
    pub fn check(&self, e: &BaseElem) -> Result<(), SkewError> {
        for (k, c) in e.terms() {
            if k < 0 && !self.laurent {
                return Err(SkewError::NegativePower(self.var.clone()));
            }
            if c.kind() != self.scalars.kind && c.as_rational().is_none() {
                return Err(SkewError::ModeMismatch(format!(
                    "coefficient of {} mode in a {} base",
                    c.kind(),
                    self.scalars
                )));
            }
        }
        Ok(())
    }

    pub fn is_unit(&self, e: &BaseElem) -> bool {
        match e.as_monomial() {
            Some((k, c)) => (k == 0 || self.laurent) && c.is_unit(),
            None => false,
        }
    }

    pub fn inv(&self, e: &BaseElem) -> Result<BaseElem, SkewError> {
        if !self.is_unit(e) {
            return Err(SkewError::NotAUnit(self.show(e).to_string()));
        }
        e.inv_monomial().ok_or_else(|| SkewError::NotAUnit(self.show(e).to_string()))
    }

    pub fn show<'a>(&'a self, e: &'a BaseElem) -> BaseDisplay<'a> {
        BaseDisplay { ring: self, elem: e }
    }

    /// Random element with small integer coefficients, `var`-degree at most
    /// `deg` in absolute value, and parameter degree at most 2 when the
    /// scalars have a parameter.
    pub fn random<R: Rng>(&self, rng: &mut R, deg: i64) -> BaseElem {
        let lo = if self.laurent { -deg } else { 0 };
        let mut out = BaseElem::zero();
        for k in lo..=deg {
            if rng.gen_bool(0.4) {
                continue;
            }
            let mut c = Scalar::zero();
            let top = if self.scalars.has_param() { 2 } else { 0 };
            let plow = if self.scalars.kind == crate::scalar::ScalarKind::Laurent { -1 } else { 0 };
            for j in plow..=top {
                let v: i64 = rng.gen_range(-3..=3);
                if v != 0 {
                    let m = self.scalars.monomial(rat(v), j).expect("parameter power within the mode");
                    c = &c + &m;
                }
            }
            out.add_term(k, c);
        }
        out
    }
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.laurent { "laurent" } else { "polynomial" };
        write!(f, "{kind} {} over {}", self.var, self.scalars)
    }
}

/// `y^k` with `k == 0` dropped, shared by the base and skew printers.
pub(super) fn power(name: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{k}")),
    }
}

/// Writes `c * factors` into a running sum, pulling a leading minus out
/// as the separator.
pub(super) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &Scalar,
    param: &str,
    factors: &[String],
) -> fmt::Result {
    let cs = c.display(param).to_string();
    let fs = factors.join("*");
    let t = if factors.is_empty() {
        if c.is_compound() { format!("({cs})") } else { cs }
    } else if c.is_one() {
        fs
    } else if (-c).is_one() {
        format!("-{fs}")
    } else if c.is_compound() {
        format!("({cs})*{fs}")
    } else {
        format!("{cs}*{fs}")
    };
    match (first, t.strip_prefix('-')) {
        (true, _) => f.write_str(&t),
        (false, Some(rest)) => write!(f, " - {rest}"),
        (false, None) => write!(f, " + {t}"),
    }
}

pub struct BaseDisplay<'a> {
    ring: &'a BaseRing,
    elem: &'a BaseElem,
}

impl fmt::Display for BaseDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.elem.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.elem.terms().rev().enumerate() {
            let factors: Vec<String> = power(&self.ring.var, k).into_iter().collect();
            write_term(f, i == 0, c, &self.ring.scalars.param, &factors)?;
        }
        Ok(())
    }
}

/// Automorphism of the base ring, given by the image of the variable and the
/// image under the inverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseMap {
    image: BaseElem,
    inverse: BaseElem,
}

impl BaseMap {
    /// Checks the shape of `image` and that the two substitutions compose to
    /// the identity in both orders.
    pub fn new(ring: &BaseRing, image: BaseElem, inverse: BaseElem) -> Result<Self, SkewError> {
        ring.check(&image)?;
        ring.check(&inverse)?;
        for e in [&image, &inverse] {
            let ok = if ring.laurent {
                matches!(e.as_monomial(), Some((k, c)) if k.abs() == 1 && c.is_unit())
            } else {
                e.high() == Some(1) && e.coeff(1).is_unit()
            };
            if !ok {
                let shape = if ring.laurent { "a unit times y^1 or y^-1" } else { "degree 1 with unit leading coefficient" };
                return Err(SkewError::NotAutomorphism(format!("{} is not {shape}", ring.show(e))));
            }
        }
        let map = BaseMap { image, inverse };
        let y = BaseElem::var();
        let there = map.apply(&map.inverse_map().apply(&y)?)?;
        let back = map.inverse_map().apply(&map.apply(&y)?)?;
        if there != y || back != y {
            return Err(SkewError::NotAutomorphism(format!(
                "{} and {} are not mutually inverse",
                ring.show(&map.image),
                ring.show(&map.inverse)
            )));
        }
        Ok(map)
    }

    pub fn identity() -> Self {
        BaseMap { image: BaseElem::var(), inverse: BaseElem::var() }
    }

    pub fn image(&self) -> &BaseElem {
        &self.image
    }

    pub fn inverse_image(&self) -> &BaseElem {
        &self.inverse
    }

    pub fn inverse_map(&self) -> BaseMap {
        BaseMap { image: self.inverse.clone(), inverse: self.image.clone() }
    }

    /// Ring homomorphism determined by `y -> image`.
    pub fn apply(&self, r: &BaseElem) -> Result<BaseElem, SkewError> {
        let mut out = BaseElem::zero();
        let neg = match r.low() {
            Some(k) if k < 0 => Some(
                self.image
                    .inv_monomial()
                    .ok_or_else(|| SkewError::NotAutomorphism("negative power of a non-unit".into()))?,
            ),
            _ => None,
        };
        for (k, c) in r.terms() {
            let p = if k < 0 { neg.as_ref().expect("set above").pow(k.unsigned_abs() as u32) } else { self.image.pow(k as u32) };
            out = &out + &p.scale(c);
        }
        Ok(out)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &BaseMap) -> Result<BaseMap, SkewError> {
        Ok(BaseMap { image: self.apply(&other.image)?, inverse: other.inverse_map().apply(&self.inverse)? })
    }

    /// `self^k` for any integer `k`.
    pub fn power(&self, k: i64) -> Result<BaseMap, SkewError> {
        let step = if k < 0 { self.inverse_map() } else { self.clone() };
        let mut acc = BaseMap::identity();
        for _ in 0..k.unsigned_abs() {
            acc = step.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.image == BaseElem::var()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    fn poly() -> BaseRing {
        BaseRing::polynomial("y", ScalarRing::rational())
    }

    fn lin(a: i64, b: Rational) -> BaseElem {
        &BaseElem::var().scale(&rat(a).into()) + &BaseElem::constant(b.into())
    }

    #[test]
    fn shift_map_and_inverse() {
        let r = poly();
        let a = BaseMap::new(&r, lin(1, rat(1)), lin(1, rat(-1))).unwrap();
        let y2 = BaseElem::var().pow(2);
        assert_eq!(r.show(&a.apply(&y2).unwrap()).to_string(), "y^2 + 2*y + 1");
        assert_eq!(a.power(-2).unwrap().image(), &lin(1, rat(-2)));
        assert!(BaseMap::new(&r, lin(1, rat(1)), lin(1, rat(1))).is_err());
        assert!(BaseMap::new(&r, BaseElem::var().pow(2), BaseElem::var()).is_err());
    }

    #[test]
    fn laurent_inversion_map() {
        let r = BaseRing::laurent("y", ScalarRing::rational());
        let inv = BaseElem::monomial(Scalar::one(), -1);
        let g = BaseMap::new(&r, inv.clone(), inv).unwrap();
        let e = &BaseElem::var() + &BaseElem::monomial(rat(3).into(), -2);
        assert_eq!(r.show(&g.apply(&e).unwrap()).to_string(), "3*y^2 + y^-1");
        assert!(BaseMap::new(&r, lin(1, rat(1)), lin(1, rat(-1))).is_err());
    }

    #[test]
    fn composition_order() {
        let r = poly();
        let a = BaseMap::new(&r, lin(1, rat(1)), lin(1, rat(-1))).unwrap();
        let h = BaseMap::new(&r, lin(2, rat(0)), BaseElem::var().scale(&ratio(1, 2).into())).unwrap();
        // a(h(y)) = 2(y+1), h(a(y)) = 2y + 1.
        assert_eq!(a.compose(&h).unwrap().image(), &lin(2, rat(2)));
        assert_eq!(h.compose(&a).unwrap().image(), &lin(2, rat(1)));
    }

    #[test]
    fn mode_checks() {
        let r = poly();
        assert!(r.check(&BaseElem::monomial(Scalar::one(), -1)).is_err());
        let t = ScalarRing::polynomial("t").param().unwrap();
        assert!(r.check(&BaseElem::constant(t)).is_err());
        assert!(!r.is_unit(&BaseElem::var()));
        let l = BaseRing::laurent("y", ScalarRing::rational());
        assert!(l.is_unit(&BaseElem::var().scale(&rat(2).into())));
    }
}
