use super::{Gen, NCPoly};
#[cfg(test)]
use super::Word;

/// Cyclic derivative: every occurrence `w = u g v` contributes `coeff(w) * v u`.
pub fn cyclic_derivative(phi: &NCPoly, g: Gen) -> NCPoly {
    let mut out = NCPoly::zero();
    for (w, c) in phi.terms() {
        for (i, &l) in w.letters().iter().enumerate() {
            if l == g {
                let rotated = w.slice(i + 1, w.len()).concat(&w.slice(0, i));
                out.add_term(rotated, c.clone());
            }
        }
    }
    out
}

/// All cyclic rotations of `w`, used as an independent check.
#[cfg(test)]
fn rotations(w: &Word) -> Vec<Word> {
    (0..w.len()).map(|i| w.slice(i, w.len()).concat(&w.slice(0, i))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{Alphabet, FreeAlgebra};
    use crate::scalar::{Scalar, ScalarRing};
    use proptest::prelude::*;

    fn alg(ring: ScalarRing) -> FreeAlgebra {
        FreeAlgebra::new(Alphabet::new(&["x1", "x2", "x3"]).unwrap(), ring)
    }

    #[test]
    fn potential_partials() {
        let a = alg(ScalarRing::rational());
        let phi = a.parse("x1*x2*x3 - x3*x2*x1 + x1*x3^2 - x2*x3 - x2^2 - 1/2*x3^2 - 4*x1").unwrap();
        assert_eq!(cyclic_derivative(&phi, 1), a.parse("x3*x1 - x1*x3 - x3 - 2*x2").unwrap());
        let single = a.parse("x1*x2*x3").unwrap();
        assert_eq!(cyclic_derivative(&single, 1), a.parse("x3*x1").unwrap());
    }

    #[test]
    fn rotation_oracle_on_quantum_potential() {
        // Oracle: a rotation of w starting with g, minus its first letter.
        let a = alg(ScalarRing::laurent("q"));
        let pi = a
            .parse("x1*x2*x3 - q*x3*x2*x1 + 1/2*(q - q^-1)*(x1^2 + x2^2 + q*x3^2)")
            .unwrap();
        let mut oracle = NCPoly::zero();
        for (w, c) in pi.terms() {
            for r in rotations(w) {
                if r.letters().first() == Some(&2) {
                    oracle.add_term(r.slice(1, r.len()), c.clone());
                }
            }
        }
        let d3 = cyclic_derivative(&pi, 2);
        assert_eq!(d3, oracle);
        assert_eq!(d3, a.parse("x1*x2 - q*x2*x1 + (q^2 - 1)*x3").unwrap());
    }

    fn poly_strategy() -> impl Strategy<Value = NCPoly> {
        prop::collection::vec((prop::collection::vec(0u8..3, 0..5), -5i64..6), 0..6).prop_map(|ts| {
            let mut p = NCPoly::zero();
            for (w, c) in ts {
                p.add_term(Word(w), Scalar::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn linear(p in poly_strategy(), q in poly_strategy(), g in 0u8..3) {
            let lhs = cyclic_derivative(&(&p + &q), g);
            let rhs = &cyclic_derivative(&p, g) + &cyclic_derivative(&q, g);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
