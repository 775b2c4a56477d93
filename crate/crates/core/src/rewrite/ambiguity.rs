use std::fmt;

use super::{ReductionSystem, RewriteError};
use crate::freealg::{NCPoly, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// A word reducible by two relations. For an overlap, `first` matches at the
/// start and `second` at `offset`; for an inclusion, `first` is the whole
/// word and `second` sits at `offset` inside it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub word: Word,
    pub first: usize,
    pub second: usize,
    pub offset: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmbiguityResult {
    pub ambiguity: Ambiguity,
    pub first_nf: NCPoly,
    pub second_nf: NCPoly,
    pub difference: NCPoly,
    pub steps: usize,
}

impl AmbiguityResult {
    pub fn resolved(&self) -> bool {
        self.difference.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionReport {
    pub results: Vec<AmbiguityResult>,
    pub confluent: bool,
    pub steps: usize,
}

impl ResolutionReport {
    /// One `AMB` line per ambiguity followed by the verdict.
    pub fn render(&self, sys: &ReductionSystem) -> String {
        let mut out = String::new();
        for r in &self.results {
            let w = sys.show_word(&r.ambiguity.word);
            if r.resolved() {
                out.push_str(&format!("AMB {w} : RESOLVED\n"));
            } else {
                out.push_str(&format!("AMB {w} : FAIL {}\n", sys.show(&r.difference)));
            }
        }
        out.push_str(if self.confluent { "CONFLUENT\n" } else { "NOT-CONFLUENT\n" });
        out
    }
}

impl fmt::Display for AmbiguityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AmbiguityKind::Overlap => "overlap",
            AmbiguityKind::Inclusion => "inclusion",
        })
    }
}

impl ReductionSystem {
    /// Every overlap (self-overlaps included) and inclusion among leading
    /// words.
    pub fn ambiguities(&self) -> Vec<Ambiguity> {
        let rels = self.relations();
        let mut out = Vec::new();
        for (i, ri) in rels.iter().enumerate() {
            let a = ri.lead.letters();
            for (j, rj) in rels.iter().enumerate() {
                let b = rj.lead.letters();
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Overlap,
                            word: ri.lead.concat(&Word(b[k..].to_vec())),
                            first: i,
                            second: j,
                            offset: a.len() - k,
                        });
                    }
                }
                if i != j && b.len() <= a.len() {
                    for pos in ri.lead.occurrences(&rj.lead) {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Inclusion,
                            word: ri.lead.clone(),
                            first: i,
                            second: j,
                            offset: pos,
                        });
                    }
                }
            }
        }
        out
    }

    /// The two one-step reductions of an ambiguity.
    pub fn ambiguity_parses(&self, amb: &Ambiguity) -> (NCPoly, NCPoly) {
        let rels = self.relations();
        let (ri, rj) = (&rels[amb.first], &rels[amb.second]);
        let w = &amb.word;
        let one = crate::scalar::Scalar::one();
        let mut left = NCPoly::zero();
        left.add_sandwich(&one, &Word::empty(), &ri.rhs, &w.slice(ri.lead.len(), w.len()));
        let mut right = NCPoly::zero();
        let end = amb.offset + rj.lead.len();
        right.add_sandwich(&one, &w.slice(0, amb.offset), &rj.rhs, &w.slice(end, w.len()));
        (left, right)
    }

    pub fn resolve(&self, amb: &Ambiguity) -> Result<AmbiguityResult, RewriteError> {
        let (l, r) = self.ambiguity_parses(amb);
        let (first_nf, s1) = self.normal_form_counted(&l, super::Strategy::LeftmostLargest)?;
        let (second_nf, s2) = self.normal_form_counted(&r, super::Strategy::LeftmostLargest)?;
        let difference = &first_nf - &second_nf;
        Ok(AmbiguityResult { ambiguity: amb.clone(), first_nf, second_nf, difference, steps: s1 + s2 + 2 })
    }

    pub fn check_confluence(&self) -> Result<ResolutionReport, RewriteError> {
        let results = self.ambiguities().iter().map(|a| self.resolve(a)).collect::<Result<Vec<_>, _>>()?;
        let confluent = results.iter().all(AmbiguityResult::resolved);
        let steps = results.iter().map(|r| r.steps).sum();
        Ok(ResolutionReport { results, confluent, steps })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Alphabet, FreeAlgebra};
    use crate::rewrite::tests::tq_laurent;
    use crate::rewrite::Orientation;
    use crate::scalar::ScalarRing;

    fn xyz(ring: ScalarRing) -> FreeAlgebra {
        FreeAlgebra::new(Alphabet::new(&["x1", "x2", "x3"]).unwrap(), ring)
    }

    #[test]
    fn single_overlap_in_quantum_system() {
        let s = tq_laurent();
        let amb = s.ambiguities();
        assert_eq!(amb.len(), 1);
        assert_eq!(s.show_word(&amb[0].word), "x1*x2*x3");
        assert!(s.check_confluence().unwrap().confluent);
    }

    #[test]
    fn toy_system_difference() {
        let s = ReductionSystem::new("toy", xyz(ScalarRing::rational()), Orientation::Explicit, None)
            .unwrap()
            .with_relation("x1*x2", "x3")
            .unwrap()
            .with_relation("x2*x3", "x1")
            .unwrap();
        let rep = s.check_confluence().unwrap();
        assert!(!rep.confluent);
        assert_eq!(rep.results.len(), 1);
        assert_eq!(rep.results[0].difference, s.parse("x3^2 - x1^2").unwrap());
        assert_eq!(rep.render(&s), "AMB x1*x2*x3 : FAIL -x1^2 + x3^2\nNOT-CONFLUENT\n");
    }

    #[test]
    fn self_overlaps_and_inclusions() {
        let s = ReductionSystem::new("s", xyz(ScalarRing::rational()), Orientation::Explicit, None)
            .unwrap()
            .with_relation("x2^2", "x1")
            .unwrap()
            .with_relation("x3*x2^2*x3", "0")
            .unwrap();
        let amb = s.ambiguities();
        let kinds: Vec<_> = amb.iter().map(|a| (a.kind, s.show_word(&a.word))).collect();
        assert!(kinds.contains(&(AmbiguityKind::Overlap, "x2^3".to_string())));
        assert!(kinds.contains(&(AmbiguityKind::Inclusion, "x3*x2^2*x3".to_string())));
        // x3*x2^2*x3 also overlaps itself on x3.
        assert!(kinds.contains(&(AmbiguityKind::Overlap, "x3*x2^2*x3*x2^2*x3".to_string())));
        assert_eq!(amb.len(), 3);
    }

    #[test]
    fn lone_relation_has_no_ambiguity() {
        let s = ReductionSystem::new("s", xyz(ScalarRing::rational()), Orientation::Explicit, None)
            .unwrap()
            .with_relation("x1*x2", "x2*x1")
            .unwrap();
        assert!(s.ambiguities().is_empty());
    }
}
