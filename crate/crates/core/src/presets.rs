//! Built-in presentations and skew contexts.
//!
//! Central parameters (`t`, `Q`, `q`) live in the coefficient ring, so the
//! commutation relations making them central are implicit.

use thiserror::Error;

use crate::freealg::{Alphabet, DegreeFunction, FreeAlgebra, MonomialOrder, NCPoly, OrderKind};
use crate::rewrite::{Orientation, ReductionSystem, RewriteError};
use crate::scalar::{rat, Rational, Scalar, ScalarRing};
use crate::skew::{BaseElem, BaseMap, BaseRing, ReversingContext, SkewError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("unknown preset '{0}'")]
    Unknown(String),
    #[error("bad preset argument: {0}")]
    Argument(String),
    #[error("parameter {0} is excluded for {1}; pass the override to use it anyway")]
    Excluded(String, String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Skew(#[from] SkewError),
}

pub const XS: [&str; 3] = ["x1", "x2", "x3"];

/// Either kind of preset object.
#[derive(Debug, Clone)]
pub enum Preset {
    System(ReductionSystem),
    Skew(ReversingContext),
}

fn algebra(names: &[&str], ring: ScalarRing) -> FreeAlgebra {
    FreeAlgebra::new(Alphabet::new(names).expect("static names"), ring)
}

fn ordered(name: &str, alg: FreeAlgebra, kind: OrderKind, d: DegreeFunction) -> ReductionSystem {
    let o = MonomialOrder::new(kind, d, &alg.alphabet).expect("degree vector matches");
    ReductionSystem::new(name, alg, Orientation::ByOrder, Some(o)).expect("order given")
}

fn build(mut sys: ReductionSystem, rels: &[(&str, &str)]) -> Result<ReductionSystem, RewriteError> {
    for (l, r) in rels {
        sys = sys.with_relation(l, r)?;
    }
    Ok(sys)
}

/// Degree function for the system over `poly(t)`: `(6, 4, 2)` with `t`
/// of degree 1.
pub fn t5_degree() -> DegreeFunction {
    DegreeFunction::new(vec![6, 4, 2], 1)
}

/// `x1` of degree 0, `x2` and `x3` of degree 1.
pub fn t6_degree() -> DegreeFunction {
    DegreeFunction::new(vec![0, 1, 1], 0)
}

pub fn t5() -> ReductionSystem {
    let sys = ordered("T5", algebra(&XS, ScalarRing::polynomial("t")), OrderKind::Dlex, t5_degree());
    build(
        sys,
        &[
            ("x1*x2", "x2*x1 - 2*t*x3*x1 + 3*t^2*x2 + 2*t^3*x3"),
            ("x2*x3", "x3*x2 - t*x3^2 + 4*t"),
            ("x1*x3", "x3*x1 - t^2*x3 - 2*t*x2"),
        ],
    )
    .expect("preset relations are oriented")
}

/// The central element of [`t5`].
pub fn t5_central(sys: &ReductionSystem) -> NCPoly {
    sys.parse("(4 - x3^2)*x1 + x2^2 + 3*t*x3*x2 + t^2*x3^2 + 4*t^2").expect("static text")
}

pub fn t1() -> ReductionSystem {
    let sys = ordered("T1", algebra(&XS, ScalarRing::rational()), OrderKind::Dlex, DegreeFunction::new(vec![6, 4, 2], 0));
    build(
        sys,
        &[
            ("x1*x3", "x3*x1 - x3 - 2*x2"),
            ("x2*x3", "x3*x2 - x3^2 + 4"),
            ("x1*x2", "x2*x1 - 2*x3*x1 + 3*x2 + 2*x3"),
        ],
    )
    .expect("preset relations are oriented")
}

pub fn t1_central(sys: &ReductionSystem) -> NCPoly {
    sys.parse("(4 - x3^2)*x1 + x2^2 + 3*x3*x2 + x3^2 + 4").expect("static text")
}

fn quantum_rels(p: &str) -> Vec<(String, String)> {
    vec![
        ("x1*x2".into(), format!("{p}*x2*x1 + (1 - {p}^2)*x3")),
        ("x2*x3".into(), format!("{p}*x3*x2 + ({p}^-1 - {p})*x1")),
        ("x1*x3".into(), format!("{p}^-1*x3*x1 + (1 - {p}^-2)*x2")),
    ]
}

fn quantum(name: &str, p: &str) -> ReductionSystem {
    let sys = ordered(name, algebra(&XS, ScalarRing::laurent(p)), OrderKind::AugmentedDlex, t6_degree());
    let rels = quantum_rels(p);
    let refs: Vec<(&str, &str)> = rels.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    build(sys, &refs).expect("preset relations are oriented")
}

pub fn t6() -> ReductionSystem {
    quantum("T6", "Q")
}

/// `x3 x2 x1 - p x3^2 - p^-2 x2^2 - x1^2 + 2(1 + p^-2)` for the parameter
/// (or value) `p` of the system.
pub fn quantum_central(sys: &ReductionSystem) -> NCPoly {
    let p = if sys.alg.ring.has_param() { sys.alg.ring.param.clone() } else { String::new() };
    if p.is_empty() {
        let q = tq_value(sys).expect("specialized quantum preset");
        let s = |v: Rational| NCPoly::constant(v.into());
        let q2 = &q * &q;
        let base = sys.parse("x3*x2*x1 - x1^2").expect("static text");
        let x3 = sys.parse("x3^2").expect("static text");
        let x2 = sys.parse("x2^2").expect("static text");
        let two = rat(2) * (rat(1) + q2.recip());
        return &(&(&base - &x3.scale(&q.into())) - &x2.scale(&q2.recip().into())) + &s(two);
    }
    sys.parse(&format!("x3*x2*x1 - {p}*x3^2 - {p}^-2*x2^2 - x1^2 + 2*(1 + {p}^-2)")).expect("static text")
}

/// The value of `q` in a specialized quantum system, read off the `x1 x2`
/// relation.
pub fn tq_value(sys: &ReductionSystem) -> Option<Rational> {
    let r = sys.relations().iter().find(|r| r.lead.letters() == [0, 1])?;
    r.rhs.coeff(&crate::freealg::Word(vec![1, 0])).as_rational()
}

pub fn tq_symbolic() -> ReductionSystem {
    quantum("Tq", "q")
}

fn check_q(q: &Rational, what: &str, allow: bool) -> Result<(), PresetError> {
    if q == &rat(0) {
        return Err(PresetError::Argument(format!("{what} needs a nonzero parameter")));
    }
    if !allow && (q == &rat(1) || q == &rat(-1)) {
        return Err(PresetError::Excluded(q.to_string(), what.to_string()));
    }
    Ok(())
}

/// The quantum system at a rational `q`; `q = 0` is always rejected and
/// `q = +-1` unless `allow_degenerate`.
pub fn tq(q: &Rational, allow_degenerate: bool) -> Result<ReductionSystem, PresetError> {
    check_q(q, "Tq", allow_degenerate)?;
    let sym = tq_symbolic();
    let name = format!("Tq({q})");
    Ok(sym.map_coefficients(ScalarRing::rational(), |c| c.specialize(q).map(Scalar::from))?.renamed(&name))
}

/// `x1x2 - q x2x1 = a x3`, `x2x3 - q x3x2 = b x1`, `x3x1 - q x1x3 = c x2`
/// over Laurent polynomials in `q`.
pub fn tq_abc(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<ReductionSystem, PresetError> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(PresetError::Argument("a, b and c must be nonzero".into()));
    }
    let ring = ScalarRing::laurent("q");
    let alg = algebra(&XS, ring.clone());
    let mut sys = ordered("Tq_abc", alg, OrderKind::AugmentedDlex, t6_degree());
    let q = ring.param().map_err(|e| PresetError::Argument(e.to_string()))?;
    let qi = q.inv().map_err(|e| PresetError::Argument(e.to_string()))?;
    let co = |s: &Scalar| ring.coerce(s).map_err(|e| PresetError::Argument(e.to_string()));
    let (a, b, c) = (co(a)?, co(b)?, co(c)?);
    let w = |t: &str| sys.parse(t).expect("static text");
    let (x1, x2, x3) = (w("x1"), w("x2"), w("x3"));
    let (x1x2, x2x1, x2x3, x3x2, x1x3, x3x1) = (w("x1*x2"), w("x2*x1"), w("x2*x3"), w("x3*x2"), w("x1*x3"), w("x3*x1"));
    sys.add_equation(&x1x2, &(&x2x1.scale(&q) + &x3.scale(&a)))?;
    sys.add_equation(&x2x3, &(&x3x2.scale(&q) + &x1.scale(&b)))?;
    sys.add_equation(&x1x3, &(&x3x1.scale(&qi) - &x2.scale(&(&qi * &c))))?;
    Ok(sys)
}

/// Quotient of [`t6`] by `g - kappa`, on generators `u1, u2, u3` with the
/// extra relation led by `u2^2`. Orientation is explicit: the new leading
/// word is not the order-largest term.
pub fn t6_quot(kappa: &Rational) -> ReductionSystem {
    let alg = algebra(&["u1", "u2", "u3"], ScalarRing::laurent("Q"));
    let sys = ReductionSystem::new(&format!("T6_quot({kappa})"), alg, Orientation::Explicit, None).expect("explicit");
    let k = kappa.to_string();
    let rels = [
        ("u1*u2", "Q*u2*u1 + (1 - Q^2)*u3".to_string()),
        ("u2*u3", "Q*u3*u2 + (Q^-1 - Q)*u1".to_string()),
        ("u1*u3", "Q^-1*u3*u1 + (1 - Q^-2)*u2".to_string()),
        ("u2^2", format!("Q^2*u3*u2*u1 - Q^3*u3^2 - Q^2*u1^2 + 2*(Q^2 + 1) - ({k})*Q^2")),
    ];
    let refs: Vec<(&str, &str)> = rels.iter().map(|(a, b)| (*a, b.as_str())).collect();
    build(sys, &refs).expect("preset relations are valid")
}

/// Two-generator enveloping algebra of the nonabelian Lie algebra, with `t`.
pub fn ut() -> ReductionSystem {
    let sys = ordered("Ut", algebra(&["x", "y"], ScalarRing::polynomial("t")), OrderKind::Dlex, DegreeFunction::new(vec![1, 1], 1));
    build(sys, &[("x*y", "y*x + t*x")]).expect("preset relations are oriented")
}

/// Generic quantum plane.
pub fn oq() -> ReductionSystem {
    let sys = ordered("OQ", algebra(&["x", "y"], ScalarRing::laurent("Q")), OrderKind::Dlex, DegreeFunction::unit(2));
    build(sys, &[("x*y", "Q*y*x")]).expect("preset relations are oriented")
}

fn linear(c: i64, shift: Scalar) -> BaseElem {
    &BaseElem::var().scale(&rat(c).into()) + &BaseElem::constant(shift)
}

fn context(name: &str, base: BaseRing, alpha: (BaseElem, BaseElem), gamma: (BaseElem, BaseElem)) -> Result<ReversingContext, SkewError> {
    let a = BaseMap::new(&base, alpha.0, alpha.1)?;
    let g = BaseMap::new(&base, gamma.0, gamma.1)?;
    ReversingContext::new(name, base, a, g)
}

/// `Q[y]` with `alpha(y) = y + 1`, `gamma(y) = -y`.
pub fn v() -> ReversingContext {
    let base = BaseRing::polynomial("y", ScalarRing::rational());
    let neg = linear(-1, Scalar::zero());
    context("V", base, (linear(1, rat(1).into()), linear(1, rat(-1).into())), (neg.clone(), neg)).expect("valid maps")
}

/// `Q[t][y]` with `alpha(y) = y + t`, `gamma(y) = -y`.
pub fn vt() -> ReversingContext {
    let ring = ScalarRing::polynomial("t");
    let t = ring.param().expect("has parameter");
    let base = BaseRing::polynomial("y", ring);
    let neg = linear(-1, Scalar::zero());
    context("Vt", base, (linear(1, t.clone()), linear(1, -t)), (neg.clone(), neg)).expect("valid maps")
}

fn torus(name: &str, ring: ScalarRing, q: Scalar) -> Result<ReversingContext, SkewError> {
    let base = BaseRing::laurent("y", ring);
    let qi = q.inv()?;
    let inv = BaseElem::monomial(Scalar::one(), -1);
    context(name, base, (BaseElem::monomial(q, 1), BaseElem::monomial(qi, 1)), (inv.clone(), inv))
}

/// Quantum torus at a rational `q`: `alpha(y) = q y`, `gamma(y) = y^-1`.
pub fn wq(q: &Rational) -> Result<ReversingContext, PresetError> {
    if q == &rat(0) {
        return Err(PresetError::Argument("Wq needs a nonzero parameter".into()));
    }
    Ok(torus(&format!("Wq({q})"), ScalarRing::rational(), q.clone().into())?)
}

/// Generic quantum torus over Laurent polynomials in `Q`.
pub fn wq_symbolic() -> ReversingContext {
    wq_generic("WQ", "Q")
}

/// Generic quantum torus with a parameter of the given name, for pairing
/// with systems over Laurent polynomials in that parameter.
pub fn wq_generic(name: &str, param: &str) -> ReversingContext {
    let ring = ScalarRing::laurent(param);
    let q = ring.param().expect("has parameter");
    torus(name, ring, q).expect("valid maps")
}

/// Splits `name(args)` into the name and comma-separated arguments.
fn split_call(spec: &str) -> Result<(&str, Vec<&str>), PresetError> {
    let spec = spec.trim();
    match spec.find('(') {
        None => Ok((spec, Vec::new())),
        Some(i) => {
            let inner = spec[i + 1..]
                .strip_suffix(')')
                .ok_or_else(|| PresetError::Argument(format!("unbalanced parentheses in '{spec}'")))?;
            let mut args = Vec::new();
            let (mut depth, mut start) = (0i32, 0);
            for (j, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth -= 1,
                    ',' if depth == 0 => {
                        args.push(inner[start..j].trim());
                        start = j + 1;
                    }
                    _ => {}
                }
            }
            args.push(inner[start..].trim());
            Ok((spec[..i].trim(), args))
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, PresetError> {
    ScalarRing::rational()
        .parse(s)
        .ok()
        .and_then(|v| v.as_rational())
        .ok_or_else(|| PresetError::Argument(format!("'{s}' is not a rational number")))
}

pub const NAMES: [&str; 12] =
    ["V", "Vt", "Wq(q)", "WQ", "T5", "T1", "T6", "Tq(q)", "Tq_abc(a,b,c)", "T6_quot(k)", "Ut", "OQ"];

/// Looks up a preset such as `T6`, `Tq(3/2)`, `Tq` (symbolic) or
/// `Tq_abc(1, 1, 1)`.
pub fn by_name(spec: &str, allow_degenerate: bool) -> Result<Preset, PresetError> {
    let (name, args) = split_call(spec)?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(PresetError::Argument(format!("{name} takes {n} argument(s)")))
        }
    };
    Ok(match name {
        "V" => Preset::Skew(v()),
        "Vt" => Preset::Skew(vt()),
        "WQ" => Preset::Skew(wq_symbolic()),
        "Wq" => {
            arity(1)?;
            let q = rational_arg(args[0])?;
            check_q(&q, "Wq", allow_degenerate)?;
            Preset::Skew(wq(&q)?)
        }
        "T5" => Preset::System(t5()),
        "T1" => Preset::System(t1()),
        "T6" => Preset::System(t6()),
        "Tq" if args.is_empty() => Preset::System(tq_symbolic()),
        "Tq" => {
            arity(1)?;
            Preset::System(tq(&rational_arg(args[0])?, allow_degenerate)?)
        }
        "Tq_abc" => {
            arity(3)?;
            let ring = ScalarRing::laurent("q");
            let p = |s: &str| ring.parse(s).map_err(|e| PresetError::Argument(e.to_string()));
            Preset::System(tq_abc(&p(args[0])?, &p(args[1])?, &p(args[2])?)?)
        }
        "T6_quot" => {
            arity(1)?;
            Preset::System(t6_quot(&rational_arg(args[0])?))
        }
        "Ut" => Preset::System(ut()),
        "OQ" => Preset::System(oq()),
        _ => return Err(PresetError::Unknown(spec.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn systems_have_expected_shape() {
        for (s, n) in [(t5(), 3), (t1(), 3), (t6(), 3), (tq_symbolic(), 3), (t6_quot(&rat(0)), 4), (ut(), 1), (oq(), 1)] {
            assert_eq!(s.relations().len(), n, "{}", s.name);
        }
        let s = tq(&ratio(3, 2), false).unwrap();
        assert_eq!(s.to_string().lines().next().unwrap(), "x1*x2 -> 3/2*x2*x1 - 5/4*x3");
        assert_eq!(tq_value(&s), Some(ratio(3, 2)));
    }

    #[test]
    fn excluded_parameters() {
        assert!(matches!(tq(&rat(1), false), Err(PresetError::Excluded(..))));
        assert!(tq(&rat(-1), true).is_ok());
        assert!(tq(&rat(0), true).is_err());
        assert!(matches!(by_name("Wq(1)", false), Err(PresetError::Excluded(..))));
    }

    #[test]
    fn lookup() {
        assert!(matches!(by_name("Tq(3/2)", false), Ok(Preset::System(_))));
        assert!(matches!(by_name("Wq(4)", false), Ok(Preset::Skew(_))));
        let Preset::System(s) = by_name("Tq_abc(1 - q^2, q^-1 - q, q^-1 - q)", false).unwrap() else { panic!() };
        assert_eq!(s.relations(), tq_symbolic().relations());
        assert!(matches!(by_name("T7", false), Err(PresetError::Unknown(_))));
        assert!(by_name("Tq(1,2)", false).is_err());
    }

    #[test]
    fn central_elements_print() {
        let s = t6();
        assert_eq!(
            s.show(&quantum_central(&s)),
            "x3*x2*x1 - Q^-2*x2^2 - Q*x3^2 - x1^2 + (2*Q^-2 + 2)"
        );
        let s = tq(&rat(2), false).unwrap();
        assert_eq!(quantum_central(&s), s.parse("x3*x2*x1 - 2*x3^2 - 1/4*x2^2 - x1^2 + 5/2").unwrap());
    }
}
