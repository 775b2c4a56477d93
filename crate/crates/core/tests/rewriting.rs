use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use revring::presets;
use revring::rewrite::Strategy;
use revring::{DegreeFunction, NCPoly, ReductionSystem, Scalar, Word};

fn confluent_systems() -> Vec<ReductionSystem> {
    vec![
        presets::t5(),
        presets::t1(),
        presets::t6(),
        presets::tq(&revring::ratio(3, 2), false).unwrap(),
        presets::t6_quot(&revring::rat(0)),
        presets::ut(),
    ]
}

fn random_poly(rng: &mut ChaCha8Rng, sys: &ReductionSystem, max_len: usize) -> NCPoly {
    let n = sys.alg.alphabet.len() as u8;
    let mut p = NCPoly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_len);
        let w = Word((0..len).map(|_| rng.gen_range(0..n)).collect());
        p.add_term(w, Scalar::from(revring::rat(rng.gen_range(-4..=4))));
    }
    p
}

#[test]
fn systems_are_confluent() {
    for s in confluent_systems() {
        assert!(s.check_confluence().unwrap().confluent, "{}", s.name);
    }
}

#[test]
fn strategies_agree_and_normal_forms_are_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for s in confluent_systems() {
        for i in 0..200 {
            let p = random_poly(&mut rng, &s, 5);
            let a = s.normal_form_with(&p, Strategy::LeftmostLargest).unwrap();
            let b = s.normal_form_with(&p, Strategy::LeftmostLeftward).unwrap();
            let c = s.normal_form_with(&p, Strategy::Random(i)).unwrap();
            assert_eq!(a, b, "{}: {}", s.name, s.show(&p));
            assert_eq!(a, c, "{}: {}", s.name, s.show(&p));
            assert!(s.is_irreducible(&a));
            assert_eq!(s.normal_form(&a).unwrap(), a);
        }
    }
}

#[test]
fn products_of_basis_words_stay_in_the_basis_span() {
    for s in confluent_systems() {
        let d = DegreeFunction::unit(s.alg.alphabet.len());
        let words = s.irreducible_words(&d, 2).unwrap();
        for u in &words {
            for v in &words {
                let nf = s.normal_form(&NCPoly::word(u.concat(v))).unwrap();
                assert!(nf.words().all(|w| !s.is_reducible(w)), "{}", s.name);
            }
        }
    }
}

#[test]
fn central_elements_survive_every_strategy() {
    let t6 = presets::t6();
    let g = presets::quantum_central(&t6);
    for strategy in [Strategy::LeftmostLargest, Strategy::LeftmostLeftward, Strategy::Random(5)] {
        for x in ["x1", "x2", "x3"] {
            let c = t6.gen(x).unwrap().commutator(&g);
            assert!(t6.normal_form_with(&c, strategy).unwrap().is_zero());
        }
    }
}

#[test]
fn quotient_by_central_element() {
    let t6 = presets::t6();
    let g = presets::quantum_central(&t6);
    let kappa = t6.parse("3").unwrap();
    let lead = t6.alg.alphabet.word(&["x2", "x2"]).unwrap();
    let q = t6.adjoin_central_quotient(&(&g - &kappa), &lead).unwrap();
    assert_eq!(q.relations().len(), 4);
    assert!(q.check_confluence().unwrap().confluent);
    let t5 = presets::t5();
    let g5 = presets::t5_central(&t5);
    let q5 = t5.adjoin_central_quotient(&g5, &lead).unwrap();
    assert!(q5.check_confluence().unwrap().confluent);
}

#[test]
fn semiclassical_brackets_are_antisymmetric() {
    let t6 = presets::t6();
    let one = revring::rat(1);
    for (a, b) in [("x1", "x2"), ("x2", "x3"), ("x1", "x3")] {
        let (u, v) = (t6.gen(a).unwrap(), t6.gen(b).unwrap());
        let uv = t6.induced_poisson_bracket(&u, &v, &one).unwrap();
        let vu = t6.induced_poisson_bracket(&v, &u, &one).unwrap();
        assert!((&uv + &vu).is_zero());
    }
}
