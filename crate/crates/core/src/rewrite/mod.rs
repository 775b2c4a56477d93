//! Reduction systems over a free algebra and Diamond Lemma machinery.

mod ambiguity;
mod ops;

pub use ambiguity::{Ambiguity, AmbiguityKind, AmbiguityResult, ResolutionReport};
pub use ops::{evaluate, scaling_isomorphism_data, AskeyWilson, CentralVerdict, PointVerdict, ScalingData};

use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::freealg::{display_compare, FreeAlgError, FreeAlgebra, Gen, MonomialOrder, NCPoly, Word};
use crate::scalar::{Scalar, ScalarError};

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// Steps after which explicit-mode reductions start watching for repeated
/// states.
const CYCLE_WATCH: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("reduction exceeded the step cap of {0}; the orientation may not terminate")]
    StepCap(usize),
    #[error("reduction revisited an earlier state; the orientation does not terminate")]
    Cycle,
    #[error("orientation: {0}")]
    Orientation(String),
    #[error("two relations share the leading word {0}")]
    DuplicateLead(String),
    #[error("generator '{0}' has degree 0, so the degree bound does not cut out a finite set")]
    ZeroDegree(String),
    #[error("not central: commutator with {0} has normal form {1}")]
    NotCentral(String, String),
    #[error("leading choice: {0}")]
    LeadingChoice(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `lead -> rhs`, stored monic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub lead: Word,
    pub rhs: NCPoly,
}

impl Relation {
    /// `lead - rhs`, which vanishes in the algebra.
    pub fn as_poly(&self) -> NCPoly {
        &NCPoly::word(self.lead.clone()) - &self.rhs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Leading words are the order-largest monomials; every replacement term
    /// must be smaller.
    ByOrder,
    /// Leading words are supplied by the user.
    Explicit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Reduce the largest reducible term at its leftmost site.
    LeftmostLargest,
    /// Reduce the site with the smallest starting position over all terms.
    LeftmostLeftward,
    /// Pick a reducible term and a site uniformly at random.
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Site {
    pos: usize,
    rel: usize,
}

#[derive(Debug, Clone)]
pub struct ReductionSystem {
    pub name: String,
    pub alg: FreeAlgebra,
    relations: Vec<Relation>,
    orientation: Orientation,
    order: Option<MonomialOrder>,
    pub step_cap: usize,
    by_first: Vec<Vec<usize>>,
}

impl ReductionSystem {
    /// An empty system. `ByOrder` requires an order.
    pub fn new(
        name: &str,
        alg: FreeAlgebra,
        orientation: Orientation,
        order: Option<MonomialOrder>,
    ) -> Result<Self, RewriteError> {
        if orientation == Orientation::ByOrder && order.is_none() {
            return Err(RewriteError::Orientation("ordered orientation needs a monomial order".into()));
        }
        let by_first = vec![Vec::new(); alg.alphabet.len()];
        Ok(ReductionSystem {
            name: name.to_string(),
            alg,
            relations: Vec::new(),
            orientation,
            order,
            step_cap: DEFAULT_STEP_CAP,
            by_first,
        })
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn order(&self) -> Option<&MonomialOrder> {
        self.order.as_ref()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        self.alg.alphabet.gens()
    }

    pub fn gen(&self, name: &str) -> Result<NCPoly, RewriteError> {
        Ok(self.alg.gen(name)?)
    }

    pub fn parse(&self, text: &str) -> Result<NCPoly, RewriteError> {
        Ok(self.alg.parse(text)?)
    }

    pub fn show(&self, p: &NCPoly) -> String {
        match &self.order {
            Some(o) => self.alg.show_ordered(p, o).to_string(),
            None => self.alg.show(p).to_string(),
        }
    }

    pub fn show_word(&self, w: &Word) -> String {
        w.show(&self.alg.alphabet).to_string()
    }

    /// Ascending comparison used for site selection and printing.
    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        match &self.order {
            Some(o) => o.compare(a, b),
            None => display_compare(self.alg.alphabet.ranks(), b, a),
        }
    }

    /// Adds `lead -> rhs` after dividing `rhs` by the unit `coeff`.
    pub fn add_relation(&mut self, lead: Word, coeff: &Scalar, rhs: NCPoly) -> Result<(), RewriteError> {
        self.alg.alphabet.check_word(&lead)?;
        self.alg.validate(&rhs)?;
        self.alg.check_scalar(coeff)?;
        if lead.is_empty() {
            return Err(RewriteError::Orientation("the leading word must be nonempty".into()));
        }
        let inv = coeff
            .inv()
            .map_err(|_| RewriteError::Orientation(format!("leading coefficient of {} is not a unit", self.show_word(&lead))))?;
        let rhs = rhs.scale(&inv);
        if !rhs.coeff(&lead).is_zero() {
            return Err(RewriteError::Orientation(format!(
                "{} appears on both sides",
                self.show_word(&lead)
            )));
        }
        if self.orientation == Orientation::ByOrder {
            let o = self.order.as_ref().expect("checked in new");
            if let Some(w) = rhs.words().find(|w| o.compare(w, &lead) != Ordering::Less) {
                return Err(RewriteError::Orientation(format!(
                    "{} is not below the leading word {}",
                    self.show_word(w),
                    self.show_word(&lead)
                )));
            }
        }
        if self.relations.iter().any(|r| r.lead == lead) {
            return Err(RewriteError::DuplicateLead(self.show_word(&lead)));
        }
        self.by_first[lead.letters()[0] as usize].push(self.relations.len());
        self.relations.push(Relation { lead, rhs });
        Ok(())
    }

    /// Adds `lhs = rhs`, taking the order-largest monomial as leading word.
    pub fn add_equation(&mut self, lhs: &NCPoly, rhs: &NCPoly) -> Result<(), RewriteError> {
        let o = self
            .order
            .as_ref()
            .ok_or_else(|| RewriteError::Orientation("equations need a monomial order to orient".into()))?;
        let top = lhs
            .words()
            .chain(rhs.words())
            .max_by(|a, b| o.compare(a, b))
            .cloned()
            .ok_or_else(|| RewriteError::Orientation("empty equation".into()))?;
        if !lhs.coeff(&top).is_zero() && !rhs.coeff(&top).is_zero() {
            return Err(RewriteError::Orientation(format!(
                "largest monomial {} appears on both sides",
                self.show_word(&top)
            )));
        }
        let diff = lhs - rhs;
        let c = diff.coeff(&top);
        let mut rest = diff;
        rest.remove_term(&top);
        self.add_relation(top, &c, -&rest)
    }

    pub fn with_relation(mut self, lead: &str, rhs: &str) -> Result<Self, RewriteError> {
        let l = self.alg.parse(lead)?;
        let (w, c) = single_term(&l).ok_or_else(|| RewriteError::Orientation(format!("'{lead}' is not a single monomial")))?;
        let r = self.alg.parse(rhs)?;
        self.add_relation(w, &c, r)?;
        Ok(self)
    }

    /// Leftmost reduction site of `w` (smallest position, then the earliest
    /// relation).
    fn first_site(&self, w: &Word) -> Option<Site> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            for &ri in &self.by_first[letters[pos] as usize] {
                let lead = self.relations[ri].lead.letters();
                if letters.len() - pos >= lead.len() && &letters[pos..pos + lead.len()] == lead {
                    return Some(Site { pos, rel: ri });
                }
            }
        }
        None
    }

    fn all_sites(&self, w: &Word) -> Vec<Site> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            for &ri in &self.by_first[letters[pos] as usize] {
                let lead = self.relations[ri].lead.letters();
                if letters.len() - pos >= lead.len() && &letters[pos..pos + lead.len()] == lead {
                    out.push(Site { pos, rel: ri });
                }
            }
        }
        out
    }

    pub fn is_reducible(&self, w: &Word) -> bool {
        self.first_site(w).is_some()
    }

    pub fn is_irreducible(&self, p: &NCPoly) -> bool {
        p.words().all(|w| !self.is_reducible(w))
    }

    /// Chooses a site; irreducible words met on the way are pushed to `irr`.
    fn select(
        &self,
        p: &NCPoly,
        strategy: Strategy,
        rng: &mut Option<ChaCha8Rng>,
        irr: &mut Vec<Word>,
    ) -> Option<(Word, Site)> {
        match strategy {
            Strategy::LeftmostLargest => {
                let mut words: Vec<&Word> = p.words().collect();
                words.sort_by(|a, b| self.compare(b, a));
                for w in words {
                    match self.first_site(w) {
                        Some(s) => return Some((w.clone(), s)),
                        None => irr.push(w.clone()),
                    }
                }
                None
            }
            Strategy::LeftmostLeftward => {
                let mut best: Option<(&Word, Site)> = None;
                for w in p.words() {
                    match self.first_site(w) {
                        None => irr.push(w.clone()),
                        Some(s) => {
                            let better = match &best {
                                None => true,
                                Some((bw, bs)) => {
                                    s.pos < bs.pos || (s.pos == bs.pos && self.compare(w, bw) == Ordering::Greater)
                                }
                            };
                            if better {
                                best = Some((w, s));
                            }
                        }
                    }
                }
                best.map(|(w, s)| (w.clone(), s))
            }
            Strategy::Random(_) => {
                let rng = rng.as_mut().expect("random strategy carries a generator");
                let mut words: Vec<&Word> = p.words().collect();
                while !words.is_empty() {
                    let i = rng.gen_range(0..words.len());
                    let w = words.swap_remove(i);
                    let sites = self.all_sites(w);
                    if sites.is_empty() {
                        irr.push(w.clone());
                    } else {
                        let s = sites[rng.gen_range(0..sites.len())];
                        return Some((w.clone(), s));
                    }
                }
                None
            }
        }
    }

    fn apply(&self, p: &mut NCPoly, w: &Word, site: Site) {
        let c = p.remove_term(w).expect("selected word is present");
        let lead_len = self.relations[site.rel].lead.len();
        let left = w.slice(0, site.pos);
        let right = w.slice(site.pos + lead_len, w.len());
        p.add_sandwich(&c, &left, &self.relations[site.rel].rhs, &right);
    }

    fn rng_for(strategy: Strategy) -> Option<ChaCha8Rng> {
        match strategy {
            Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        }
    }

    /// One rewriting step; the flag is false when `p` is already irreducible.
    pub fn reduce_once(&self, p: &NCPoly, strategy: Strategy) -> Result<(NCPoly, bool), RewriteError> {
        self.alg.validate(p)?;
        let mut rng = Self::rng_for(strategy);
        let mut scratch = Vec::new();
        match self.select(p, strategy, &mut rng, &mut scratch) {
            Some((w, site)) => {
                let mut q = p.clone();
                self.apply(&mut q, &w, site);
                Ok((q, true))
            }
            None => Ok((p.clone(), false)),
        }
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly, RewriteError> {
        self.normal_form_with(p, Strategy::LeftmostLargest)
    }

    pub fn normal_form_with(&self, p: &NCPoly, strategy: Strategy) -> Result<NCPoly, RewriteError> {
        self.normal_form_counted(p, strategy).map(|(q, _)| q)
    }

    /// Normal form together with the number of rewriting steps taken.
    pub fn normal_form_counted(&self, p: &NCPoly, strategy: Strategy) -> Result<(NCPoly, usize), RewriteError> {
        self.alg.validate(p)?;
        let mut rng = Self::rng_for(strategy);
        let mut todo = p.clone();
        let mut done = NCPoly::zero();
        let mut steps = 0usize;
        let mut seen: HashSet<u64> = HashSet::new();
        let mut irr = Vec::new();
        loop {
            irr.clear();
            let pick = self.select(&todo, strategy, &mut rng, &mut irr);
            for w in irr.drain(..) {
                if let Some(c) = todo.remove_term(&w) {
                    done.add_term(w, c);
                }
            }
            let Some((w, site)) = pick else { break };
            steps += 1;
            if steps > self.step_cap {
                return Err(RewriteError::StepCap(self.step_cap));
            }
            self.apply(&mut todo, &w, site);
            if self.orientation == Orientation::Explicit && steps > CYCLE_WATCH {
                let mut h = DefaultHasher::new();
                format!("{:?}", todo.terms().collect::<Vec<_>>()).hash(&mut h);
                if !seen.insert(h.finish()) {
                    return Err(RewriteError::Cycle);
                }
            }
        }
        debug_assert!(todo.is_zero());
        Ok((done, steps))
    }

    /// Normal form of `a - b`.
    pub fn residual(&self, a: &NCPoly, b: &NCPoly) -> Result<NCPoly, RewriteError> {
        self.normal_form(&(a - b))
    }

    /// Copy with every relation's coefficients mapped by `f` and the
    /// coefficient ring replaced.
    pub fn map_coefficients(
        &self,
        ring: crate::scalar::ScalarRing,
        mut f: impl FnMut(&Scalar) -> Result<Scalar, ScalarError>,
    ) -> Result<ReductionSystem, RewriteError> {
        let mut out = ReductionSystem::new(
            &self.name,
            FreeAlgebra::new(self.alg.alphabet.clone(), ring),
            self.orientation,
            self.order.clone(),
        )?;
        for r in &self.relations {
            let rhs = r.rhs.map_coeffs(&mut f)?;
            out.add_relation(r.lead.clone(), &Scalar::one(), rhs)?;
        }
        out.step_cap = self.step_cap;
        Ok(out)
    }

    /// Same relations with explicit orientation, keeping the order for
    /// printing and degree bookkeeping.
    pub fn into_explicit(mut self) -> Self {
        self.orientation = Orientation::Explicit;
        self
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }
}

/// The word and coefficient of a one-term polynomial.
pub fn single_term(p: &NCPoly) -> Option<(Word, Scalar)> {
    if p.len() != 1 {
        return None;
    }
    p.terms().next().map(|(w, c)| (w.clone(), c.clone()))
}

impl fmt::Display for ReductionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            writeln!(f, "{} -> {}", self.show_word(&r.lead), self.show(&r.rhs))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Alphabet, DegreeFunction, OrderKind};
    use crate::scalar::ScalarRing;

    pub(crate) fn tq_laurent() -> ReductionSystem {
        let alg = FreeAlgebra::new(Alphabet::new(&["x1", "x2", "x3"]).unwrap(), ScalarRing::laurent("q"));
        let o = MonomialOrder::new(OrderKind::AugmentedDlex, DegreeFunction::new(vec![0, 1, 1], 0), &alg.alphabet).unwrap();
        ReductionSystem::new("Tq", alg, Orientation::ByOrder, Some(o))
            .unwrap()
            .with_relation("x1*x2", "q*x2*x1 + (1 - q^2)*x3")
            .unwrap()
            .with_relation("x2*x3", "q*x3*x2 + (q^-1 - q)*x1")
            .unwrap()
            .with_relation("x1*x3", "q^-1*x3*x1 + (1 - q^-2)*x2")
            .unwrap()
    }

    #[test]
    fn one_step() {
        let s = tq_laurent();
        let (p, moved) = s.reduce_once(&s.parse("x1*x2").unwrap(), Strategy::LeftmostLargest).unwrap();
        assert!(moved);
        assert_eq!(p, s.parse("q*x2*x1 + (1 - q^2)*x3").unwrap());
        let irr = s.parse("x3*x2*x1").unwrap();
        let (p, moved) = s.reduce_once(&irr, Strategy::LeftmostLargest).unwrap();
        assert!(!moved);
        assert_eq!(p, irr);
    }

    #[test]
    fn orientation_checks() {
        let s = tq_laurent();
        assert!(matches!(
            s.clone().with_relation("x3", "x1*x2"),
            Err(RewriteError::Orientation(_))
        ));
        assert!(matches!(
            s.clone().with_relation("x1*x2", "x3"),
            Err(RewriteError::DuplicateLead(_))
        ));
        let mut t = tq_laurent();
        let lhs = t.parse("x2*x2").unwrap();
        let rhs = t.parse("x2*x2 + x3").unwrap();
        assert!(matches!(t.add_equation(&lhs, &rhs), Err(RewriteError::Orientation(_))));
        let lhs = t.parse("2*x3*x3").unwrap();
        let rhs = t.parse("x1").unwrap();
        t.add_equation(&lhs, &rhs).unwrap();
        assert_eq!(t.relations().last().unwrap().rhs, t.parse("1/2*x1").unwrap());
    }

    #[test]
    fn normal_form_of_zero_and_idempotence() {
        let s = tq_laurent();
        assert!(s.normal_form(&NCPoly::zero()).unwrap().is_zero());
        let p = s.parse("x1*x2*x3 + x3*x1*x2^2").unwrap();
        let n = s.normal_form(&p).unwrap();
        assert!(s.is_irreducible(&n));
        assert_eq!(s.normal_form(&n).unwrap(), n);
    }

    #[test]
    fn strategies_agree_on_confluent_system() {
        let s = tq_laurent();
        let p = s.parse("x1*x2*x3*x1 - 2*x3*x1*x2 + q*x1^2*x3^2").unwrap();
        let a = s.normal_form_with(&p, Strategy::LeftmostLargest).unwrap();
        let b = s.normal_form_with(&p, Strategy::LeftmostLeftward).unwrap();
        let c = s.normal_form_with(&p, Strategy::Random(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn step_cap_and_cycles() {
        let alg = FreeAlgebra::new(Alphabet::new(&["a", "b"]).unwrap(), ScalarRing::rational());
        let mut s = ReductionSystem::new("loop", alg, Orientation::Explicit, None)
            .unwrap()
            .with_relation("a", "b")
            .unwrap()
            .with_relation("b", "a")
            .unwrap();
        let p = s.parse("a").unwrap();
        assert_eq!(s.normal_form(&p), Err(RewriteError::Cycle));
        s.step_cap = 10;
        assert_eq!(s.normal_form(&p), Err(RewriteError::StepCap(10)));
    }
}
