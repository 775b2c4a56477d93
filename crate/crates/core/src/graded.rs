//! Filtrations by degree functions: associated graded presentations,
//! dimension counting over PBW shapes, and growth estimates.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::freealg::{DegreeFunction, Gen, NCPoly, Word};
use crate::rewrite::{ReductionSystem, RewriteError};
use crate::scalar::{Scalar, ScalarKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradedError {
    #[error("degree function has {0} entries for {1} generators")]
    Arity(usize, usize),
    #[error("incompatible degree function: {0}")]
    Incompatible(String),
    #[error("no PBW shape: {0}")]
    NoShape(String),
    #[error("variable {0} has weight 0 and unbounded exponents, so the counts are infinite")]
    ZeroWeight(usize),
    #[error("degenerate growth sequence: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// Degree of `c * w`, splitting `c` into parameter monomials.
fn term_degrees(d: &DegreeFunction, w: &Word, c: &Scalar) -> Vec<(i64, Scalar)> {
    let base = d.word(w) as i64;
    c.monomials()
        .into_iter()
        .map(|(k, m)| (base + k * i64::from(d.parameter_degree), m))
        .collect()
}

fn check_arity(sys: &ReductionSystem, d: &DegreeFunction) -> Result<(), GradedError> {
    let n = sys.alg.alphabet.len();
    if d.generator_degrees.len() != n {
        return Err(GradedError::Arity(d.generator_degrees.len(), n));
    }
    Ok(())
}

/// A replacement term whose degree exceeds that of its leading word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: usize,
    pub word: Word,
    pub degree: i64,
    pub lead_degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compatibility {
    pub violations: Vec<Violation>,
}

impl Compatibility {
    pub fn compatible(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn is_compatible(sys: &ReductionSystem, d: &DegreeFunction) -> Result<Compatibility, GradedError> {
    check_arity(sys, d)?;
    let mut violations = Vec::new();
    for (i, r) in sys.relations().iter().enumerate() {
        let lead_degree = d.word(&r.lead) as i64;
        for (w, c) in r.rhs.terms() {
            for (degree, _) in term_degrees(d, w, c) {
                if degree > lead_degree {
                    violations.push(Violation { relation: i, word: w.clone(), degree, lead_degree });
                }
            }
        }
    }
    Ok(Compatibility { violations })
}

/// Homogeneous component of `p` of the largest degree present.
pub fn top_part(p: &NCPoly, d: &DegreeFunction) -> NCPoly {
    let split: Vec<(Word, i64, Scalar)> = p
        .terms()
        .flat_map(|(w, c)| term_degrees(d, w, c).into_iter().map(move |(k, m)| (w.clone(), k, m)))
        .collect();
    let Some(top) = split.iter().map(|t| t.1).max() else {
        return NCPoly::zero();
    };
    let mut out = NCPoly::zero();
    for (w, k, m) in split {
        if k == top {
            out.add_term(w, m);
        }
    }
    out
}

/// The associated graded presentation and what was cut away.
#[derive(Debug, Clone)]
pub struct GradedPresentation {
    pub system: ReductionSystem,
    /// Per relation, the lower-degree part that was dropped.
    pub dropped: Vec<NCPoly>,
}

/// Truncates each replacement to the terms of the same degree as its
/// leading word; leading words and orientation are unchanged.
pub fn associated_graded(sys: &ReductionSystem, d: &DegreeFunction) -> Result<GradedPresentation, GradedError> {
    let compat = is_compatible(sys, d)?;
    if let Some(v) = compat.violations.first() {
        let r = &sys.relations()[v.relation];
        return Err(GradedError::Incompatible(format!(
            "{} of degree {} exceeds the leading word {} of degree {}",
            sys.show_word(&v.word),
            v.degree,
            sys.show_word(&r.lead),
            v.lead_degree
        )));
    }
    let mut out = ReductionSystem::new(&format!("gr {}", sys.name), sys.alg.clone(), sys.orientation(), sys.order().cloned())?;
    out.step_cap = sys.step_cap;
    let mut dropped = Vec::new();
    for r in sys.relations() {
        let top = d.word(&r.lead) as i64;
        let (mut keep, mut lost) = (NCPoly::zero(), NCPoly::zero());
        for (w, c) in r.rhs.terms() {
            for (k, m) in term_degrees(d, w, c) {
                if k == top {
                    keep.add_term(w.clone(), m);
                } else {
                    lost.add_term(w.clone(), m);
                }
            }
        }
        out.add_relation(r.lead.clone(), &Scalar::one(), keep)?;
        dropped.push(lost);
    }
    Ok(GradedPresentation { system: out, dropped })
}

/// Irreducible words of the form `g1^e1 g2^e2 ... gn^en` for a fixed
/// sequence of generators, with optional exponent bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwShape {
    pub sequence: Vec<Gen>,
    /// `Some(k)` restricts the exponent to `0..k`.
    pub bounds: Vec<Option<u32>>,
}

impl PbwShape {
    /// Reads the shape off the leading words: every pair of distinct
    /// generators must have exactly one order reducible, and a power
    /// `g^k` as a leading word bounds the exponent of `g`. The result is a
    /// candidate; [`PbwShape::matches`] confirms it.
    pub fn detect(sys: &ReductionSystem) -> Result<PbwShape, GradedError> {
        let n = sys.alg.alphabet.len();
        let name = |g: usize| sys.alg.alphabet.name(g as Gen).to_string();
        // wins[a]: how many generators may follow a in an irreducible word.
        let mut wins = vec![0usize; n];
        #[allow(clippy::needless_range_loop)]
        for a in 0..n {
            for b in 0..n {
                if a == b {
                    continue;
                }
                let ab = sys.is_reducible(&Word(vec![a as Gen, b as Gen]));
                let ba = sys.is_reducible(&Word(vec![b as Gen, a as Gen]));
                if ab == ba {
                    return Err(GradedError::NoShape(format!(
                        "{}{} and {}{} are both {}",
                        name(a),
                        name(b),
                        name(b),
                        name(a),
                        if ab { "reducible" } else { "irreducible" }
                    )));
                }
                if !ab {
                    wins[a] += 1;
                }
            }
        }
        let mut sequence: Vec<Gen> = (0..n as Gen).collect();
        sequence.sort_by_key(|&g| std::cmp::Reverse(wins[g as usize]));
        let bounds = sequence
            .iter()
            .map(|&g| {
                sys.relations()
                    .iter()
                    .filter(|r| r.lead.letters().iter().all(|&x| x == g))
                    .map(|r| r.lead.len() as u32)
                    .min()
            })
            .collect();
        Ok(PbwShape { sequence, bounds })
    }

    /// All shape words of `d`-degree at most `bound`.
    pub fn words(&self, d: &DegreeFunction, bound: u64) -> Result<BTreeSet<Word>, GradedError> {
        let mut out = BTreeSet::new();
        self.extend(0, Vec::new(), 0, d, bound, &mut out)?;
        Ok(out)
    }

    fn extend(
        &self,
        i: usize,
        prefix: Vec<Gen>,
        deg: u64,
        d: &DegreeFunction,
        bound: u64,
        out: &mut BTreeSet<Word>,
    ) -> Result<(), GradedError> {
        if i == self.sequence.len() {
            out.insert(Word(prefix));
            return Ok(());
        }
        let g = self.sequence[i];
        let w = u64::from(d.of(g));
        if w == 0 && self.bounds[i].is_none() {
            return Err(GradedError::ZeroWeight(g as usize));
        }
        let mut e = 0u32;
        let mut cur = prefix;
        loop {
            let total = deg + w * u64::from(e);
            if total > bound || self.bounds[i].is_some_and(|k| e >= k) {
                break;
            }
            self.extend(i + 1, cur.clone(), total, d, bound, out)?;
            cur.push(g);
            e += 1;
        }
        Ok(())
    }

    /// Raw-word cross-check: the shape words and the irreducible words of
    /// degree at most `bound` coincide.
    pub fn matches(&self, sys: &ReductionSystem, d: &DegreeFunction, bound: u64) -> Result<bool, GradedError> {
        let irr: BTreeSet<Word> = sys.irreducible_words(d, bound)?.into_iter().collect();
        Ok(irr == self.words(d, bound)?)
    }
}

/// Range of an exponent in the counting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `0, 1, 2, ...`
    OneSided,
    /// All integers, weighted by absolute value.
    TwoSided,
    /// `0..k`.
    Bounded(u32),
}

/// Counting variables with weights and exponent domains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub vars: Vec<(u32, Domain)>,
}

impl Filtration {
    pub fn new(vars: Vec<(u32, Domain)>) -> Self {
        Filtration { vars }
    }

    /// The parameter (when it has positive weight) followed by the
    /// generators in PBW order. Polynomial parameters count one-sided,
    /// Laurent ones two-sided.
    pub fn from_system(sys: &ReductionSystem, d: &DegreeFunction) -> Result<Filtration, GradedError> {
        check_arity(sys, d)?;
        let shape = PbwShape::detect(sys)?;
        let mut vars = Vec::new();
        if d.parameter_degree > 0 {
            match sys.alg.ring.kind {
                ScalarKind::Polynomial => vars.push((d.parameter_degree, Domain::OneSided)),
                ScalarKind::Laurent => vars.push((d.parameter_degree, Domain::TwoSided)),
                _ => {}
            }
        }
        for (&g, b) in shape.sequence.iter().zip(&shape.bounds) {
            vars.push((d.of(g), b.map_or(Domain::OneSided, Domain::Bounded)));
        }
        Ok(Filtration { vars })
    }

    /// `c(n)` for `n = 0..=max`: exponent vectors of weighted degree at most
    /// `n`.
    pub fn dimensions(&self, max: usize) -> Result<Vec<u128>, GradedError> {
        let mut exact = vec![0u128; max + 1];
        exact[0] = 1;
        for (i, &(w, dom)) in self.vars.iter().enumerate() {
            let w = w as usize;
            if w == 0 {
                match dom {
                    Domain::Bounded(k) => {
                        for v in exact.iter_mut() {
                            *v *= u128::from(k);
                        }
                        continue;
                    }
                    _ => return Err(GradedError::ZeroWeight(i)),
                }
            }
            let mut next = vec![0u128; max + 1];
            for (n, slot) in next.iter_mut().enumerate() {
                let mut acc = 0u128;
                let mut e = 0usize;
                while e * w <= n {
                    let mult = match dom {
                        Domain::OneSided => 1,
                        Domain::TwoSided => {
                            if e == 0 {
                                1
                            } else {
                                2
                            }
                        }
                        Domain::Bounded(k) => {
                            if e < k as usize {
                                1
                            } else {
                                0
                            }
                        }
                    };
                    acc += mult * exact[n - e * w];
                    e += 1;
                }
                *slot = acc;
            }
            exact = next;
        }
        let mut total = 0u128;
        Ok(exact
            .into_iter()
            .map(|v| {
                total += v;
                total
            })
            .collect())
    }
}

/// Slope estimate of polynomial growth.
#[derive(Debug, Clone, PartialEq)]
pub struct GkEstimate {
    pub estimate: f64,
    /// `(n, log2(c(n) / c(n/2)))` for `n = N, N/2, N/4, ...`.
    pub slopes: Vec<(usize, f64)>,
}

impl GkEstimate {
    /// Largest gap between consecutive diagnostics, a rough measure of how
    /// far from converged the estimate is.
    pub fn spread(&self) -> f64 {
        self.slopes.windows(2).map(|p| (p[0].1 - p[1].1).abs()).fold(0.0, f64::max)
    }
}

/// `log2(c(N) / c(N/2))` with `N` the last index; slopes at `N / 2^k` down to
/// `n = 2` follow as diagnostics.
pub fn gk_estimate(c: &[u128]) -> Result<GkEstimate, GradedError> {
    if c.len() < 3 {
        return Err(GradedError::Degenerate("need at least c(0), c(1), c(2)".into()));
    }
    if c[0] < 1 {
        return Err(GradedError::Degenerate("c(0) must be at least 1".into()));
    }
    if c.windows(2).any(|p| p[1] < p[0]) {
        return Err(GradedError::Degenerate("sequence is not nondecreasing".into()));
    }
    let slope = |n: usize| ((c[n] as f64) / (c[n / 2] as f64)).log2();
    let mut slopes = Vec::new();
    let mut n = c.len() - 1;
    while n >= 2 {
        slopes.push((n, slope(n)));
        n /= 2;
    }
    Ok(GkEstimate { estimate: slopes[0].1, slopes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn brute(weights: &[usize], n: usize) -> u128 {
        // Independent oracle: nested enumeration.
        fn go(weights: &[usize], left: usize) -> u128 {
            match weights.split_first() {
                None => 1,
                Some((&w, rest)) => (0..=left / w).map(|e| go(rest, left - e * w)).sum(),
            }
        }
        go(weights, n)
    }

    #[test]
    fn compatibility_examples() {
        let t6 = presets::t6();
        assert!(is_compatible(&t6, &DegreeFunction::unit(3)).unwrap().compatible());
        let bad = is_compatible(&t6, &DegreeFunction::new(vec![0, 0, 5], 0)).unwrap();
        assert!(!bad.compatible());
        assert_eq!(bad.violations[0].relation, 0);
        assert_eq!((bad.violations[0].degree, bad.violations[0].lead_degree), (5, 0));
        assert!(is_compatible(&presets::t5(), &presets::t5_degree()).unwrap().compatible());
        assert!(associated_graded(&t6, &DegreeFunction::new(vec![0, 0, 5], 0)).is_err());
        assert!(is_compatible(&t6, &DegreeFunction::unit(2)).is_err());
    }

    #[test]
    fn graded_quantum_presentations() {
        let t6 = presets::t6();
        let g1 = associated_graded(&t6, &presets::t6_degree()).unwrap().system;
        assert_eq!(
            g1.to_string(),
            "x1*x2 -> Q*x2*x1 + (1 - Q^2)*x3\nx2*x3 -> Q*x3*x2\nx1*x3 -> Q^-1*x3*x1 + (-Q^-2 + 1)*x2\n"
        );
        let g2 = associated_graded(&t6, &DegreeFunction::unit(3)).unwrap().system;
        assert_eq!(g2.to_string(), "x1*x2 -> Q*x2*x1\nx2*x3 -> Q*x3*x2\nx1*x3 -> Q^-1*x3*x1\n");
        assert!(g1.check_confluence().unwrap().confluent);
        assert!(g2.check_confluence().unwrap().confluent);
    }

    #[test]
    fn truncated_central_element() {
        let t5 = presets::t5();
        let d = DegreeFunction::new(vec![2, 3, 2], 1);
        let gr = associated_graded(&t5, &d).unwrap();
        assert_eq!(gr.system.relations()[1].rhs, t5.parse("x3*x2 - t*x3^2").unwrap());
        assert_eq!(gr.dropped[1], t5.parse("4*t").unwrap());
        let g = top_part(&presets::t5_central(&t5), &d);
        assert_eq!(g, t5.parse("-x3^2*x1 + x2^2 + 3*t*x3*x2 + t^2*x3^2").unwrap());
        assert!(gr.system.is_central(&g).unwrap().central);
    }

    #[test]
    fn shapes() {
        let s = PbwShape::detect(&presets::t6()).unwrap();
        assert_eq!(s.sequence, vec![2, 1, 0]);
        assert_eq!(s.bounds, vec![None, None, None]);
        assert!(s.matches(&presets::t6(), &DegreeFunction::unit(3), 6).unwrap());
        let q = PbwShape::detect(&presets::t6_quot(&crate::scalar::rat(3))).unwrap();
        assert_eq!(q.bounds, vec![None, Some(2), None]);
    }

    #[test]
    fn counts_match_oracle() {
        let f = Filtration::from_system(&presets::t5(), &presets::t5_degree()).unwrap();
        assert_eq!(f.vars.iter().map(|v| v.0).collect::<Vec<_>>(), vec![1, 2, 4, 6]);
        let c = f.dimensions(40).unwrap();
        assert_eq!(&c[..3], &[1, 2, 4]);
        for (n, &v) in c.iter().enumerate() {
            assert_eq!(v, brute(&[1, 2, 4, 6], n));
        }
        let unit = Filtration::new(vec![(1, Domain::OneSided); 3]).dimensions(30).unwrap();
        for (n, &v) in unit.iter().enumerate() {
            let n = n as u128;
            assert_eq!(v, (n + 1) * (n + 2) * (n + 3) / 6);
        }
        let ball = Filtration::new(vec![(1, Domain::TwoSided); 2]).dimensions(30).unwrap();
        for (n, &v) in ball.iter().enumerate() {
            let n = n as u128;
            assert_eq!(v, 2 * n * n + 2 * n + 1);
        }
        let bounded = Filtration::new(vec![(1, Domain::Bounded(2)), (0, Domain::Bounded(3))]).dimensions(3).unwrap();
        assert_eq!(bounded, vec![3, 6, 6, 6]);
        assert!(Filtration::new(vec![(0, Domain::OneSided)]).dimensions(3).is_err());
    }

    #[test]
    fn growth_estimates() {
        let ball = Filtration::new(vec![(1, Domain::TwoSided); 2]).dimensions(400).unwrap();
        let e = gk_estimate(&ball).unwrap();
        assert!((e.estimate - 2.0).abs() < 0.05);
        assert_eq!(e.slopes[0].0, 400);
        assert_eq!(gk_estimate(&[1, 1, 1, 1]).unwrap().estimate, 0.0);
        assert!(gk_estimate(&[2, 1, 3]).is_err());
        assert!(gk_estimate(&[0, 1, 3]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn counts_are_nondecreasing(ws in proptest::collection::vec(1u32..5, 1..4), two in proptest::bool::ANY) {
            let dom = if two { Domain::TwoSided } else { Domain::OneSided };
            let f = Filtration::new(ws.iter().map(|&w| (w, dom)).collect());
            let c = f.dimensions(60).unwrap();
            proptest::prop_assert!(c.windows(2).all(|p| p[0] <= p[1]));
            proptest::prop_assert_eq!(c[0], 1);
        }
    }
}
