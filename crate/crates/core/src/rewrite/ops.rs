use std::cmp::Ordering;

use super::{ReductionSystem, RewriteError};
use crate::freealg::{DegreeFunction, FreeAlgebra, Gen, NCPoly, Word};
use crate::poisson::CommPoly;
use crate::scalar::{Rational, Scalar, ScalarKind, ScalarRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralVerdict {
    pub central: bool,
    /// First generator whose commutator survives, with that normal form.
    pub witness: Option<(Gen, NCPoly)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointVerdict {
    pub valid: bool,
    /// Nonzero values of `lead - rhs` by relation index.
    pub residuals: Vec<(usize, Scalar)>,
}

/// Squares of the scaling factors and their triple product, with the
/// outcome of the consistency identities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingData {
    pub l1_sq: Scalar,
    pub l2_sq: Scalar,
    pub l3_sq: Scalar,
    pub product: Scalar,
    pub residuals: [Scalar; 4],
}

impl ScalingData {
    pub fn consistent(&self) -> bool {
        self.residuals.iter().all(Scalar::is_zero)
    }
}

/// Relations in two generators left after eliminating the third.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AskeyWilson {
    pub alg: FreeAlgebra,
    pub first: NCPoly,
    pub second: NCPoly,
}

impl ReductionSystem {
    /// Irreducible words of degree at most `bound`, largest first.
    pub fn irreducible_words(&self, d: &DegreeFunction, bound: u64) -> Result<Vec<Word>, RewriteError> {
        if let Some(g) = self.gens().find(|&g| d.of(g) == 0) {
            return Err(RewriteError::ZeroDegree(self.alg.alphabet.name(g).to_string()));
        }
        let mut out = vec![Word::empty()];
        let mut frontier = vec![(Word::empty(), 0u64)];
        while let Some((w, deg)) = frontier.pop() {
            for g in self.gens() {
                let nd = deg + d.of(g) as u64;
                if nd > bound {
                    continue;
                }
                let mut v = w.0.clone();
                v.push(g);
                let v = Word(v);
                // Only suffixes can newly contain a leading word.
                let hit = self.relations().iter().any(|r| v.letters().ends_with(r.lead.letters()));
                if !hit {
                    out.push(v.clone());
                    frontier.push((v, nd));
                }
            }
        }
        let order = crate::freealg::MonomialOrder::new(crate::freealg::OrderKind::Dlex, d.clone(), &self.alg.alphabet)?;
        out.sort_by(|a, b| order.compare(b, a));
        Ok(out)
    }

    pub fn is_central(&self, c: &NCPoly) -> Result<CentralVerdict, RewriteError> {
        for g in self.gens() {
            let x = NCPoly::letter(g);
            let nf = self.normal_form(&c.commutator(&x))?;
            if !nf.is_zero() {
                return Ok(CentralVerdict { central: false, witness: Some((g, nf)) });
            }
        }
        Ok(CentralVerdict { central: true, witness: None })
    }

    /// Adds the relation obtained by solving `c = 0` for `lead`; the result is
    /// explicitly oriented.
    pub fn adjoin_central_quotient(&self, c: &NCPoly, lead: &Word) -> Result<ReductionSystem, RewriteError> {
        let v = self.is_central(c)?;
        if let Some((g, nf)) = v.witness {
            return Err(RewriteError::NotCentral(self.alg.alphabet.name(g).to_string(), self.show(&nf)));
        }
        let coeff = c.coeff(lead);
        if coeff.is_zero() {
            return Err(RewriteError::LeadingChoice(format!("{} does not occur", self.show_word(lead))));
        }
        if !coeff.is_unit() {
            return Err(RewriteError::LeadingChoice(format!(
                "coefficient {} of {} is not a unit",
                self.alg.ring.show(&coeff),
                self.show_word(lead)
            )));
        }
        let mut rest = c.clone();
        rest.remove_term(lead);
        let mut out = self.clone().into_explicit();
        out.name = format!("{}/({})", self.name, self.show(c));
        out.add_relation(lead.clone(), &coeff, -&rest)?;
        Ok(out)
    }

    /// `{u, v}` on the commutative quotient at `parameter = at`: the normal
    /// form of `[u, v]`, divided by `parameter - at`, then specialized.
    pub fn induced_poisson_bracket(&self, u: &NCPoly, v: &NCPoly, at: &Rational) -> Result<CommPoly, RewriteError> {
        if !self.alg.ring.has_param() {
            return Err(RewriteError::Invalid("induced brackets need a parametric coefficient ring".into()));
        }
        let n = self.alg.alphabet.len();
        for g in self.gens() {
            for h in self.gens().filter(|&h| h > g) {
                let nf = self.normal_form(&NCPoly::letter(g).commutator(&NCPoly::letter(h)))?;
                self.specialize_quotient(&nf, at, n)?;
            }
        }
        let nf = self.normal_form(&u.commutator(v))?;
        self.specialize_quotient(&nf, at, n)
    }

    fn specialize_quotient(&self, p: &NCPoly, at: &Rational, n: usize) -> Result<CommPoly, RewriteError> {
        let mut out = CommPoly::zero(n);
        for (w, c) in p.terms() {
            let q = c.div_by_linear(at)?;
            let mut exps = vec![0i64; n];
            for &g in w.letters() {
                exps[g as usize] += 1;
            }
            out.add_term(exps, q.specialize(at)?);
        }
        Ok(out)
    }

    /// Checks that sending each generator to a scalar kills every relation.
    pub fn verify_point_representation(&self, assignment: &[Scalar]) -> Result<PointVerdict, RewriteError> {
        if assignment.len() != self.alg.alphabet.len() {
            return Err(RewriteError::Invalid("one scalar per generator is required".into()));
        }
        let mut residuals = Vec::new();
        for (i, r) in self.relations().iter().enumerate() {
            let v = evaluate(&r.as_poly(), assignment)?;
            if !v.is_zero() {
                residuals.push((i, v));
            }
        }
        Ok(PointVerdict { valid: residuals.is_empty(), residuals })
    }

    /// Eliminates the third generator through the relation led by `x1 x2`
    /// and returns the other two relations in `x1, x2`, scaled so the
    /// palindromic cubic word carries `1 + q^2` (the parameter, or the
    /// specialized value).
    pub fn askey_wilson_eliminate(&self) -> Result<AskeyWilson, RewriteError> {
        if self.alg.alphabet.len() != 3 {
            return Err(RewriteError::Invalid("elimination expects three generators".into()));
        }
        let ring = match self.alg.ring.kind {
            ScalarKind::Rational => ScalarRing::rational(),
            _ => ScalarRing::ratfunc(&self.alg.ring.param),
        };
        let sys = self.map_coefficients(ring.clone(), |c| c.promote(ring.kind))?;
        let find = |lead: &[u8]| {
            sys.relations()
                .iter()
                .find(|r| r.lead.letters() == lead)
                .ok_or_else(|| RewriteError::Invalid("expected relations led by x1x2, x2x3, x1x3".into()))
        };
        let (r12, r23, r13) = (find(&[0, 1])?, find(&[1, 2])?, find(&[0, 2])?);
        let x3 = Word::letter(2);
        let a = r12.rhs.coeff(&x3);
        if a.is_zero() {
            return Err(RewriteError::Invalid("the x3 coefficient vanishes (q^2 = 1)".into()));
        }
        let mut rest = r12.rhs.clone();
        rest.remove_term(&x3);
        // a*x3 = x1 x2 - rest
        let a_x3 = &NCPoly::word(r12.lead.clone()) - &rest;
        let x3_image = a_x3.scale(&a.inv()?);
        let eliminate = |rel: &super::Relation, pal: Word| -> Result<NCPoly, RewriteError> {
            let e = rel.as_poly().substitute(2, &x3_image).scale(&a);
            let lead = e.coeff(&pal);
            if lead.is_zero() {
                return Ok(e);
            }
            let target = match ring.kind {
                ScalarKind::Rational => {
                    // Recover q from the x1x2 relation: x1x2 = q x2x1 + a x3.
                    let q = rest.coeff(&Word(vec![1, 0]));
                    Scalar::one().try_add(&q.try_mul(&q)?)?
                }
                _ => Scalar::one().try_add(&ring.param()?.pow(2)?)?,
            };
            Ok(e.scale(&target.try_div(&lead)?))
        };
        let first = eliminate(r23, Word(vec![1, 0, 1]))?;
        let second = eliminate(r13, Word(vec![0, 1, 0]))?;
        let alg = FreeAlgebra::new(sys.alg.alphabet.clone(), ring);
        Ok(AskeyWilson { alg, first, second })
    }
}

/// Value of `p` when generator `g` is replaced by `assignment[g]`.
pub fn evaluate(p: &NCPoly, assignment: &[Scalar]) -> Result<Scalar, RewriteError> {
    let mut acc = Scalar::zero();
    for (w, c) in p.terms() {
        let mut t = c.clone();
        for &g in w.letters() {
            t = t.try_mul(&assignment[g as usize])?;
        }
        acc = acc.try_add(&t)?;
    }
    Ok(acc)
}

/// Data forced on `x_i -> l_i x_i` to carry the unit-parameter relations to
/// those with parameters `(a, b, c)`: `a l1 l2 = l3`, `b l2 l3 = l1`,
/// `c l3 l1 = l2`.
pub fn scaling_isomorphism_data(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<ScalingData, RewriteError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(RewriteError::Invalid("scaling parameters must be nonzero".into()));
    }
    let ab = a.try_mul(b)?;
    let l1_sq = a.try_mul(c)?.inv()?;
    let l2_sq = ab.inv()?;
    let l3_sq = b.try_mul(c)?.inv()?;
    let product = ab.try_mul(c)?.inv()?;
    let sq = |s: &Scalar| s.try_mul(s);
    let l12 = l1_sq.try_mul(&l2_sq)?;
    let l23 = l2_sq.try_mul(&l3_sq)?;
    let l31 = l3_sq.try_mul(&l1_sq)?;
    let residuals = [
        sq(a)?.try_mul(&l12)?.try_sub(&l3_sq)?,
        sq(b)?.try_mul(&l23)?.try_sub(&l1_sq)?,
        sq(c)?.try_mul(&l31)?.try_sub(&l2_sq)?,
        sq(&product)?.try_sub(&l12.try_mul(&l3_sq)?)?,
    ];
    Ok(ScalingData { l1_sq, l2_sq, l3_sq, product, residuals })
}

impl ReductionSystem {
    /// Irreducible words grouped by degree: entry `k` counts words of degree
    /// exactly `k`.
    pub fn irreducible_counts(&self, d: &DegreeFunction, bound: u64) -> Result<Vec<u64>, RewriteError> {
        let mut counts = vec![0u64; bound as usize + 1];
        for w in self.irreducible_words(d, bound)? {
            counts[d.word(&w) as usize] += 1;
        }
        Ok(counts)
    }

    /// Whether every relation is led by its order-largest word under `d`.
    pub fn leads_are_maximal(&self, order: &crate::freealg::MonomialOrder) -> bool {
        self.relations()
            .iter()
            .all(|r| r.rhs.words().all(|w| order.compare(w, &r.lead) == Ordering::Less))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::tests::tq_laurent;
    use crate::scalar::rat;

    #[test]
    fn pbw_words_up_to_degree_two() {
        let s = tq_laurent();
        let words = s.irreducible_words(&DegreeFunction::unit(3), 2).unwrap();
        let shown: Vec<String> = words.iter().map(|w| s.show_word(w)).collect();
        assert_eq!(
            shown,
            vec!["x1^2", "x2*x1", "x2^2", "x3*x1", "x3*x2", "x3^2", "x1", "x2", "x3", "1"]
        );
        assert_eq!(s.irreducible_words(&DegreeFunction::unit(3), 0).unwrap(), vec![Word::empty()]);
        let zero = DegreeFunction::new(vec![0, 1, 1], 0);
        assert!(matches!(s.irreducible_words(&zero, 3), Err(RewriteError::ZeroDegree(_))));
    }

    #[test]
    fn generator_is_not_central() {
        let s = tq_laurent();
        let v = s.is_central(&s.parse("x1").unwrap()).unwrap();
        assert!(!v.central);
        assert_eq!(v.witness.unwrap().0, 1);
    }

    #[test]
    fn bracket_at_one() {
        let s = tq_laurent();
        let b = s.induced_poisson_bracket(&s.gen("x1").unwrap(), &s.gen("x2").unwrap(), &rat(1)).unwrap();
        let names = ["x1", "x2", "x3"];
        assert_eq!(b.show(&names).to_string(), "x1*x2 - 2*x3");
        let x1 = s.gen("x1").unwrap();
        assert!(s.induced_poisson_bracket(&x1, &x1, &rat(1)).unwrap().is_zero());
        assert!(s.induced_poisson_bracket(&x1, &s.gen("x2").unwrap(), &rat(2)).is_err());
    }

    #[test]
    fn trivial_point_and_failing_point() {
        let s = tq_laurent();
        let zero = vec![Scalar::zero(); 3];
        assert!(s.verify_point_representation(&zero).unwrap().valid);
        let ones = vec![Scalar::one(); 3];
        assert!(!s.verify_point_representation(&ones).unwrap().valid);
    }

    #[test]
    fn scaling_identity_case() {
        let one = Scalar::one();
        let d = scaling_isomorphism_data(&one, &one, &one).unwrap();
        assert!(d.l1_sq.is_one() && d.l2_sq.is_one() && d.l3_sq.is_one() && d.product.is_one());
        assert!(d.consistent());
        assert!(scaling_isomorphism_data(&Scalar::zero(), &one, &one).is_err());
    }
}
