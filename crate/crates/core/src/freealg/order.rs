use std::cmp::Ordering;

use super::{Alphabet, FreeAlgError, Gen, NCPoly, Word};
use crate::scalar::Scalar;

/// Monoid homomorphism from words to non-negative integers, plus the weight
/// given to the central parameter when it sits in a coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeFunction {
    pub generator_degrees: Vec<u32>,
    pub parameter_degree: u32,
}

impl DegreeFunction {
    pub fn new(generator_degrees: Vec<u32>, parameter_degree: u32) -> Self {
        DegreeFunction { generator_degrees, parameter_degree }
    }

    pub fn unit(n: usize) -> Self {
        DegreeFunction::new(vec![1; n], 0)
    }

    pub fn of(&self, g: Gen) -> u32 {
        self.generator_degrees[g as usize]
    }

    pub fn word(&self, w: &Word) -> u64 {
        w.letters().iter().map(|&g| self.of(g) as u64).sum()
    }

    /// Count of degree-zero letters.
    pub fn zero_letters(&self, w: &Word) -> usize {
        w.letters().iter().filter(|&&g| self.of(g) == 0).count()
    }

    pub fn term(&self, w: &Word, c: &Scalar) -> u64 {
        self.word(w) + self.parameter_degree as u64 * c.param_degree() as u64
    }

    /// Largest term degree, or `None` for zero.
    pub fn poly(&self, p: &NCPoly) -> Option<u64> {
        p.terms().map(|(w, c)| self.term(w, c)).max()
    }

    pub fn has_zero_degree(&self) -> bool {
        self.generator_degrees.contains(&0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Degree, then length, then precedence-lexicographic.
    Dlex,
    /// Degree, then the number of degree-zero letters (more is larger), then
    /// as `Dlex`.
    AugmentedDlex,
    /// As `AugmentedDlex` but words with more degree-zero letters are smaller.
    AugmentedReversed,
}

impl OrderKind {
    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Dlex => "dlex",
            OrderKind::AugmentedDlex => "augmented_dlex",
            OrderKind::AugmentedReversed => "augmented_reversed",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "dlex" => Some(OrderKind::Dlex),
            "augmented_dlex" => Some(OrderKind::AugmentedDlex),
            "augmented_reversed" => Some(OrderKind::AugmentedReversed),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub degree: DegreeFunction,
    rank: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, degree: DegreeFunction, alphabet: &Alphabet) -> Result<Self, FreeAlgError> {
        if degree.generator_degrees.len() != alphabet.len() {
            return Err(FreeAlgError::BadAlphabet);
        }
        Ok(MonomialOrder { kind, degree, rank: alphabet.ranks().to_vec() })
    }

    pub fn compare(&self, a: &Word, b: &Word) -> Ordering {
        let d = &self.degree;
        d.word(a)
            .cmp(&d.word(b))
            .then_with(|| match self.kind {
                OrderKind::Dlex => Ordering::Equal,
                OrderKind::AugmentedDlex => d.zero_letters(a).cmp(&d.zero_letters(b)),
                OrderKind::AugmentedReversed => d.zero_letters(b).cmp(&d.zero_letters(a)),
            })
            .then_with(|| a.len().cmp(&b.len()))
            .then_with(|| self.lex(a, b))
    }

    fn lex(&self, a: &Word, b: &Word) -> Ordering {
        for (x, y) in a.letters().iter().zip(b.letters()) {
            if x != y {
                // Smaller rank means higher precedence, hence a larger word.
                return self.rank[*y as usize].cmp(&self.rank[*x as usize]);
            }
        }
        Ordering::Equal
    }

    /// The largest word of `p`, or `None` for zero.
    pub fn leading<'a>(&self, p: &'a NCPoly) -> Option<(&'a Word, &'a Scalar)> {
        p.terms().max_by(|x, y| self.compare(x.0, y.0))
    }

    /// Terms from largest to smallest.
    pub fn sorted<'a>(&self, p: &'a NCPoly) -> Vec<(&'a Word, &'a Scalar)> {
        let mut v: Vec<_> = p.terms().collect();
        v.sort_by(|x, y| self.compare(y.0, x.0));
        v
    }
}

/// Ordering used for printing when no monomial order is in force: length,
/// then precedence-lexicographic, largest first.
pub(crate) fn display_compare(rank: &[usize], a: &Word, b: &Word) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| {
        for (x, y) in a.letters().iter().zip(b.letters()) {
            if x != y {
                return rank[*x as usize].cmp(&rank[*y as usize]);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Alphabet {
        Alphabet::new(&["z1", "z2", "z3"]).unwrap()
    }

    fn w(v: &[u8]) -> Word {
        Word(v.to_vec())
    }

    #[test]
    fn augmented_counts_zero_letters() {
        let a = abc();
        let d = DegreeFunction::new(vec![0, 1, 1], 0);
        let aug = MonomialOrder::new(OrderKind::AugmentedDlex, d.clone(), &a).unwrap();
        let rev = MonomialOrder::new(OrderKind::AugmentedReversed, d, &a).unwrap();
        let (lhs, rhs) = (w(&[2, 1, 0]), w(&[1, 1]));
        assert_eq!(aug.compare(&lhs, &rhs), Ordering::Greater);
        assert_eq!(rev.compare(&lhs, &rhs), Ordering::Less);
        assert_eq!(aug.compare(&lhs, &lhs), Ordering::Equal);
    }

    #[test]
    fn degree_dominates() {
        let a = abc();
        let o = MonomialOrder::new(OrderKind::Dlex, DegreeFunction::new(vec![6, 4, 2], 1), &a).unwrap();
        assert_eq!(o.compare(&w(&[0, 1]), &w(&[1, 2])), Ordering::Greater);
        // Equal degree and length: z1 has precedence.
        let u = MonomialOrder::new(OrderKind::Dlex, DegreeFunction::unit(3), &a).unwrap();
        assert_eq!(u.compare(&w(&[0, 1]), &w(&[1, 0])), Ordering::Greater);
        assert_eq!(u.compare(&w(&[2]), &w(&[0, 0])), Ordering::Less);
    }

    #[test]
    fn precedence_override() {
        let a = abc().with_precedence(&["z3", "z2", "z1"]).unwrap();
        let u = MonomialOrder::new(OrderKind::Dlex, DegreeFunction::unit(3), &a).unwrap();
        assert_eq!(u.compare(&w(&[0, 1]), &w(&[1, 0])), Ordering::Less);
    }

    #[test]
    fn parameter_weight_in_term_degree() {
        let d = DegreeFunction::new(vec![6, 4, 2], 1);
        let t3 = Scalar::Polynomial(crate::scalar::UniPoly::monomial(crate::scalar::rat(2), 3));
        assert_eq!(d.term(&w(&[2]), &t3), 5);
    }

    /// Every word strictly below `top` within the same degree level has
    /// bounded length, so the level is finite.
    fn words_below_in_level(o: &MonomialOrder, top: &Word, max_len: usize) -> usize {
        let level = o.degree.word(top);
        let mut count = 0;
        let mut frontier = vec![Word::empty()];
        for _ in 0..=max_len {
            let mut next = Vec::new();
            for u in frontier {
                if o.degree.word(&u) == level && o.compare(&u, top) == Ordering::Less {
                    count += 1;
                }
                for g in 0..3u8 {
                    let mut v = u.0.clone();
                    v.push(g);
                    let v = Word(v);
                    if o.degree.word(&v) <= level {
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        count
    }

    #[test]
    fn augmented_levels_are_finite_below_a_word() {
        let a = abc();
        let o = MonomialOrder::new(OrderKind::AugmentedDlex, DegreeFunction::new(vec![0, 1, 1], 0), &a).unwrap();
        for top in [w(&[1, 1]), w(&[2, 1, 0]), w(&[0, 0, 2, 1, 1, 2]), w(&[1, 2, 1, 2, 1, 2, 1, 2])] {
            let e = o.degree.zero_letters(&top);
            // Below `top` in its degree level, the zero-letter count is at most e,
            // so lengths are bounded by degree + e.
            let bound = o.degree.word(&top) as usize + e;
            let within = words_below_in_level(&o, &top, bound);
            let beyond = words_below_in_level(&o, &top, bound + 3);
            assert_eq!(within, beyond);
        }
    }

    #[test]
    fn augmented_rank_is_well_founded() {
        // The map w -> (d(w), e(w), len, ...) lands in a well-ordered set, and
        // every step down in the order lowers it lexicographically.
        let a = abc();
        let o = MonomialOrder::new(OrderKind::AugmentedDlex, DegreeFunction::new(vec![0, 1, 1], 0), &a).unwrap();
        let key = |x: &Word| (o.degree.word(x), o.degree.zero_letters(x), x.len());
        let words = [w(&[]), w(&[0]), w(&[0, 0]), w(&[1]), w(&[1, 0]), w(&[2, 1, 0]), w(&[1, 1])];
        for x in &words {
            for y in &words {
                if o.compare(x, y) == Ordering::Less {
                    assert!(key(x) <= key(y));
                }
            }
        }
    }

    fn word_strategy() -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..3, 0..6).prop_map(Word)
    }

    fn kind_strategy() -> impl Strategy<Value = OrderKind> {
        prop_oneof![Just(OrderKind::Dlex), Just(OrderKind::AugmentedDlex), Just(OrderKind::AugmentedReversed)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn semigroup_compatible(
            kind in kind_strategy(),
            degs in prop::collection::vec(0u32..3, 3),
            a in word_strategy(), u in word_strategy(), v in word_strategy(), b in word_strategy(),
        ) {
            let o = MonomialOrder::new(kind, DegreeFunction::new(degs, 0), &abc()).unwrap();
            let (u, v) = match o.compare(&u, &v) {
                Ordering::Less => (u, v),
                Ordering::Greater => (v, u),
                Ordering::Equal => return Ok(()),
            };
            let left = a.concat(&u).concat(&b);
            let right = a.concat(&v).concat(&b);
            prop_assert_eq!(o.compare(&left, &right), Ordering::Less);
        }

        #[test]
        fn total_and_antisymmetric(kind in kind_strategy(), x in word_strategy(), y in word_strategy()) {
            let o = MonomialOrder::new(kind, DegreeFunction::new(vec![0, 1, 2], 0), &abc()).unwrap();
            prop_assert_eq!(o.compare(&x, &y), o.compare(&y, &x).reverse());
            prop_assert_eq!(o.compare(&x, &y) == Ordering::Equal, x == y);
        }
    }
}
