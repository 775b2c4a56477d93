//! Skew Laurent rings `R[x, x^-1; alpha]` over a one-variable base, reversing
//! automorphisms and their invariants.

mod base;
mod text;

pub use base::{BaseDisplay, BaseElem, BaseMap, BaseRing};
pub use text::SkewDisplay;

use std::collections::BTreeMap;
use std::ops;

use thiserror::Error;

use crate::expr::ParseError;
use crate::freealg::NCPoly;
use crate::rewrite::ReductionSystem;
use crate::scalar::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("negative power of {0} in a polynomial base")]
    NegativePower(String),
    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("alpha is not gamma-reversible")]
    NotReversible,
    #[error("image of {0} is not invariant under theta")]
    NotInvariant(String),
    #[error("expected {0} images, got {1}")]
    Arity(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Element `sum r_i x^i` of the skew Laurent ring.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SkewElem {
    terms: BTreeMap<i64, BaseElem>,
}

impl SkewElem {
    pub fn zero() -> Self {
        SkewElem::default()
    }

    pub fn one() -> Self {
        Self::base(BaseElem::one())
    }

    pub fn base(r: BaseElem) -> Self {
        Self::term(r, 0)
    }

    /// `r x^i`.
    pub fn term(r: BaseElem, i: i64) -> Self {
        let mut s = Self::zero();
        s.add_term(i, r);
        s
    }

    /// `x^i`.
    pub fn x(i: i64) -> Self {
        Self::term(BaseElem::one(), i)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BaseElem)> {
        self.terms.iter().map(|(k, r)| (*k, r))
    }

    pub fn coeff(&self, i: i64) -> BaseElem {
        self.terms.get(&i).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, i: i64, r: BaseElem) {
        if r.is_zero() {
            return;
        }
        let e = self.terms.entry(i).or_default();
        *e = &*e + &r;
        if e.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn scale(&self, c: &Scalar) -> SkewElem {
        let mut out = SkewElem::zero();
        for (i, r) in self.terms() {
            out.add_term(i, r.scale(c));
        }
        out
    }
}

impl ops::Add<&SkewElem> for &SkewElem {
    type Output = SkewElem;
    fn add(self, rhs: &SkewElem) -> SkewElem {
        let mut out = self.clone();
        for (i, r) in rhs.terms() {
            out.add_term(i, r.clone());
        }
        out
    }
}

impl ops::Sub<&SkewElem> for &SkewElem {
    type Output = SkewElem;
    fn sub(self, rhs: &SkewElem) -> SkewElem {
        let mut out = self.clone();
        for (i, r) in rhs.terms() {
            out.add_term(i, -r);
        }
        out
    }
}

impl ops::Neg for &SkewElem {
    type Output = SkewElem;
    fn neg(self) -> SkewElem {
        &SkewElem::zero() - self
    }
}

/// The data `(R, alpha, gamma)`; `theta` is the map `r x^i -> gamma(r) x^-i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversingContext {
    pub name: String,
    pub base: BaseRing,
    pub alpha: BaseMap,
    pub gamma: BaseMap,
    reversible: bool,
}

/// Outcome of checking the identities satisfied by the `s_n(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SIdentityReport {
    /// `s0(r)s1(r') - s1(r')s0(a^-1 r) - s1((g(r) - a^2 g(r)) r')`.
    pub mixed: SkewElem,
    /// The same with `r' = 1`.
    pub unit: SkewElem,
    /// `s1(r)s1(1) - s1(1)s1(a^-1 r) - s0(r - a^-2 r)`.
    pub first: SkewElem,
    /// `s_{i+1}(r) - s_i(r)s1(1) + s_{i-1}(r)` for `i = 1..=4`.
    pub recursion: Vec<SkewElem>,
}

impl SIdentityReport {
    pub fn ok(&self) -> bool {
        self.mixed.is_zero()
            && self.unit.is_zero()
            && self.first.is_zero()
            && self.recursion.iter().all(SkewElem::is_zero)
    }
}

/// Images of the defining relations and of the probes under a homomorphism
/// into the skew ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomReport {
    pub relations: Vec<SkewElem>,
    pub probes: Vec<SkewElem>,
}

impl HomReport {
    pub fn relations_vanish(&self) -> bool {
        self.relations.iter().all(SkewElem::is_zero)
    }

    pub fn probes_vanish(&self) -> bool {
        self.probes.iter().all(SkewElem::is_zero)
    }

    pub fn ok(&self) -> bool {
        self.relations_vanish() && self.probes_vanish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyVerdict {
    pub on_var: bool,
    pub on_x: bool,
}

impl ConjugacyVerdict {
    pub fn holds(&self) -> bool {
        self.on_var && self.on_x
    }
}

/// True iff `gamma^2 = id` and `gamma alpha gamma = alpha^-1`, both checked on
/// the base variable.
pub fn is_reversible(alpha: &BaseMap, gamma: &BaseMap) -> Result<bool, SkewError> {
    let y = BaseElem::var();
    let gy = gamma.apply(&y)?;
    if gamma.apply(&gy)? != y {
        return Ok(false);
    }
    let gag = gamma.apply(&alpha.apply(&gy)?)?;
    Ok(&gag == alpha.inverse_image())
}

impl ReversingContext {
    /// Builds a context; reversibility is recorded, and only `theta` and
    /// its dependents require it.
    pub fn new(name: &str, base: BaseRing, alpha: BaseMap, gamma: BaseMap) -> Result<Self, SkewError> {
        let reversible = is_reversible(&alpha, &gamma)?;
        Ok(ReversingContext { name: name.to_string(), base, alpha, gamma, reversible })
    }

    pub fn is_reversible(&self) -> bool {
        self.reversible
    }

    pub fn y(&self) -> SkewElem {
        SkewElem::base(BaseElem::var())
    }

    pub fn check(&self, s: &SkewElem) -> Result<(), SkewError> {
        s.terms().try_for_each(|(_, r)| self.base.check(r))
    }

    /// `(r x^i)(s x^j) = r alpha^i(s) x^(i+j)`.
    pub fn mul(&self, a: &SkewElem, b: &SkewElem) -> Result<SkewElem, SkewError> {
        let mut powers: BTreeMap<i64, BaseMap> = BTreeMap::new();
        let mut out = SkewElem::zero();
        for (i, r) in a.terms() {
            if let std::collections::btree_map::Entry::Vacant(e) = powers.entry(i) {
                e.insert(self.alpha.power(i)?);
            }
            let ai = &powers[&i];
            for (j, s) in b.terms() {
                out.add_term(i + j, r * &ai.apply(s)?);
            }
        }
        Ok(out)
    }

    pub fn product(&self, factors: &[&SkewElem]) -> Result<SkewElem, SkewError> {
        factors.iter().try_fold(SkewElem::one(), |acc, f| self.mul(&acc, f))
    }

    /// Inverse of `r x^i` with `r` a unit of the base.
    pub fn inv(&self, s: &SkewElem) -> Result<SkewElem, SkewError> {
        let mut it = s.terms();
        match (it.next(), it.next()) {
            (Some((i, r)), None) => {
                let ri = self.base.inv(r)?;
                Ok(SkewElem::term(self.alpha.power(-i)?.apply(&ri)?, -i))
            }
            _ => Err(SkewError::NotAUnit(self.show(s).to_string())),
        }
    }

    pub fn pow(&self, s: &SkewElem, k: i64) -> Result<SkewElem, SkewError> {
        let b = if k < 0 { self.inv(s)? } else { s.clone() };
        (0..k.unsigned_abs()).try_fold(SkewElem::one(), |acc, _| self.mul(&acc, &b))
    }

    fn require_reversible(&self) -> Result<(), SkewError> {
        if self.reversible {
            Ok(())
        } else {
            Err(SkewError::NotReversible)
        }
    }

    /// `sum r_i x^i -> sum gamma(r_i) x^-i`.
    pub fn theta(&self, s: &SkewElem) -> Result<SkewElem, SkewError> {
        self.require_reversible()?;
        reflect(&self.gamma, s)
    }

    pub fn is_invariant(&self, s: &SkewElem) -> Result<bool, SkewError> {
        Ok(&self.theta(s)? == s)
    }

    /// `s_n(r) = r x^n + gamma(r) x^-n`.
    pub fn s_element(&self, n: u32, r: &BaseElem) -> Result<SkewElem, SkewError> {
        let n = i64::from(n);
        let mut s = SkewElem::term(r.clone(), n);
        s.add_term(-n, self.gamma.apply(r)?);
        Ok(s)
    }

    pub fn verify_s_identities(&self, r: &BaseElem, r2: &BaseElem) -> Result<SIdentityReport, SkewError> {
        self.require_reversible()?;
        let a = &self.alpha;
        let a_inv = a.inverse_map();
        let s0 = |e: &BaseElem| self.s_element(0, e);
        let s1 = |e: &BaseElem| self.s_element(1, e);
        let one = BaseElem::one();
        let s1_one = s1(&one)?;
        let gr = self.gamma.apply(r)?;
        let shifted = a_inv.apply(r)?;
        let twist = &gr - &a.power(2)?.apply(&gr)?;

        let bracket = |right: &BaseElem, coeff: &BaseElem| -> Result<SkewElem, SkewError> {
            let lhs = &self.mul(&s0(r)?, &s1(right)?)? - &self.mul(&s1(right)?, &s0(&shifted)?)?;
            Ok(&lhs - &s1(&(coeff * right))?)
        };
        let mixed = bracket(r2, &twist)?;
        let unit = bracket(&one, &twist)?;
        let first = {
            let lhs = &self.mul(&s1(r)?, &s1_one)? - &self.mul(&s1_one, &s1(&shifted)?)?;
            &lhs - &s0(&(r - &a.power(-2)?.apply(r)?))?
        };
        let mut recursion = Vec::new();
        for i in 1..=4u32 {
            let next = self.s_element(i + 1, r)?;
            let built = &self.mul(&self.s_element(i, r)?, &s1_one)? - &self.s_element(i - 1, r)?;
            recursion.push(&next - &built);
        }
        Ok(SIdentityReport { mixed, unit, first, recursion })
    }

    /// Evaluates `p` with generator `g` sent to `images[g]`.
    pub fn evaluate(&self, p: &NCPoly, images: &[SkewElem]) -> Result<SkewElem, SkewError> {
        let mut out = SkewElem::zero();
        for (w, c) in p.terms() {
            let c = self.coerce_scalar(c)?;
            let mut t = SkewElem::base(BaseElem::constant(c));
            for &g in w.letters() {
                t = self.mul(&t, &images[g as usize])?;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn coerce_scalar(&self, c: &Scalar) -> Result<Scalar, SkewError> {
        if c.as_rational().is_some() || c.kind() == self.base.scalars.kind {
            Ok(c.clone())
        } else {
            Err(SkewError::ModeMismatch(format!("{} coefficient in a {} base", c.kind(), self.base.scalars)))
        }
    }

    /// Checks that each image is invariant, then maps every defining relation
    /// of `sys` and every probe into the skew ring.
    pub fn verify_presentation_hom(
        &self,
        sys: &ReductionSystem,
        images: &[SkewElem],
        probes: &[NCPoly],
    ) -> Result<HomReport, SkewError> {
        let n = sys.alg.alphabet.len();
        if images.len() != n {
            return Err(SkewError::Arity(n, images.len()));
        }
        let ring = &sys.alg.ring;
        if ring.has_param() && (ring.kind != self.base.scalars.kind || ring.param != self.base.scalars.param) {
            return Err(SkewError::ModeMismatch(format!("system over {ring}, skew ring over {}", self.base.scalars)));
        }
        for (g, s) in images.iter().enumerate() {
            self.check(s)?;
            if !self.is_invariant(s)? {
                return Err(SkewError::NotInvariant(sys.alg.alphabet.name(g as u8).to_string()));
            }
        }
        let relations = sys
            .relations()
            .iter()
            .map(|r| self.evaluate(&r.as_poly(), images))
            .collect::<Result<Vec<_>, _>>()?;
        let probes = probes.iter().map(|p| self.evaluate(p, images)).collect::<Result<Vec<_>, _>>()?;
        Ok(HomReport { relations, probes })
    }

    /// With `theta'` the reversing automorphism for `alpha gamma`, checks
    /// `beta theta' beta^-1 = theta` on the base variable and on `x`, where
    /// `beta` fixes `x`. Requires `beta` to be gamma-reversible with
    /// `beta^2 = alpha^-1`.
    pub fn check_conjugacy(&self, beta: &BaseMap) -> Result<ConjugacyVerdict, SkewError> {
        self.require_reversible()?;
        if !is_reversible(beta, &self.gamma)? {
            return Err(SkewError::Precondition("beta is not gamma-reversible".into()));
        }
        if beta.power(2)?.image() != self.alpha.inverse_image() {
            return Err(SkewError::Precondition("beta^2 differs from alpha^-1".into()));
        }
        let gamma2 = self.alpha.compose(&self.gamma)?;
        if !is_reversible(&self.alpha, &gamma2)? {
            return Err(SkewError::Precondition("alpha is not (alpha gamma)-reversible".into()));
        }
        let beta_inv = beta.inverse_map();
        let conj = |s: &SkewElem| -> Result<SkewElem, SkewError> {
            let s = extend(&beta_inv, s)?;
            let s = reflect(&gamma2, &s)?;
            extend(beta, &s)
        };
        let y = self.y();
        let x = SkewElem::x(1);
        Ok(ConjugacyVerdict { on_var: conj(&y)? == self.theta(&y)?, on_x: conj(&x)? == self.theta(&x)? })
    }
}

/// `sum r_i x^i -> sum g(r_i) x^-i`.
fn reflect(g: &BaseMap, s: &SkewElem) -> Result<SkewElem, SkewError> {
    let mut out = SkewElem::zero();
    for (i, r) in s.terms() {
        out.add_term(-i, g.apply(r)?);
    }
    Ok(out)
}

/// Extension of a base automorphism commuting with alpha, fixing `x`.
fn extend(b: &BaseMap, s: &SkewElem) -> Result<SkewElem, SkewError> {
    let mut out = SkewElem::zero();
    for (i, r) in s.terms() {
        out.add_term(i, b.apply(r)?);
    }
    Ok(out)
}
