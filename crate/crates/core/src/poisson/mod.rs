//! Exact Poisson brackets on three commuting variables and brackets on
//! two-variable (Laurent) polynomial rings.

mod comm;

pub use comm::{CommPoly, CommPolyDisplay};

use num_traits::Zero;
use thiserror::Error;

use crate::expr::ParseError;
use crate::scalar::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PoissonError {
    #[error("negative exponent in variable {0}, which is not invertible here")]
    Underflow(usize),
    #[error("evaluation at a pole of variable {0}")]
    Pole(usize),
    #[error("expected {0} values, got {1}")]
    Arity(usize, usize),
    #[error("expected a single monomial")]
    NotMonomial,
    #[error("the substitution is not invertible: it is not an involution and no inverse was supplied")]
    NonInvertible,
    #[error("the point is not on the surface: f = {0}")]
    OffSurface(Rational),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

pub const XYZ: [&str; 3] = ["x1", "x2", "x3"];
pub const PLANE: [&str; 2] = ["x", "y"];

/// `{g, h}_f`: the Jacobian determinant of `(f, g, h)`.
pub fn exact_bracket(f: &CommPoly, g: &CommPoly, h: &CommPoly) -> CommPoly {
    let p = |q: &CommPoly| [q.partial(0), q.partial(1), q.partial(2)];
    let (a, b, c) = (p(f), p(g), p(h));
    let minor = |i: usize, j: usize| &(&b[i] * &c[j]) - &(&b[j] * &c[i]);
    let t0 = &a[0] * &minor(1, 2);
    let t1 = &a[1] * &minor(0, 2);
    let t2 = &a[2] * &minor(0, 1);
    &(&t0 - &t1) + &t2
}

/// Coefficients of `d/dx1, d/dx2, d/dx3` in the derivation `{g, -}_f`.
pub fn hamiltonian(f: &CommPoly, g: &CommPoly) -> [CommPoly; 3] {
    [0, 1, 2].map(|i| exact_bracket(f, g, &CommPoly::var(3, i)))
}

/// Bracket on a two-variable ring determined by the value of `{x, y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneBracket {
    pub structure: CommPoly,
    pub laurent: [bool; 2],
}

impl PlaneBracket {
    pub fn new(structure: CommPoly, laurent: [bool; 2]) -> Result<Self, PoissonError> {
        if structure.nvars() != 2 {
            return Err(PoissonError::Arity(2, structure.nvars()));
        }
        structure.check_laurent(&laurent)?;
        Ok(PlaneBracket { structure, laurent })
    }

    pub fn bracket(&self, g: &CommPoly, h: &CommPoly) -> Result<CommPoly, PoissonError> {
        g.check_laurent(&self.laurent)?;
        h.check_laurent(&self.laurent)?;
        let jac = &(&g.partial(0) * &h.partial(1)) - &(&g.partial(1) * &h.partial(0));
        let out = &self.structure * &jac;
        out.check_laurent(&self.laurent)?;
        Ok(out)
    }

    /// Coefficients of `d/dx, d/dy` in `{g, -}`.
    pub fn hamiltonian(&self, g: &CommPoly) -> [CommPoly; 2] {
        [-&(&self.structure * &g.partial(1)), &self.structure * &g.partial(0)]
    }
}

/// Substitution `x -> images[0], y -> images[1]` with monomial images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMap {
    pub images: [CommPoly; 2],
}

impl MonomialMap {
    pub fn new(x: CommPoly, y: CommPoly) -> Result<Self, PoissonError> {
        for im in [&x, &y] {
            if im.nvars() != 2 {
                return Err(PoissonError::Arity(2, im.nvars()));
            }
            im.as_monomial().ok_or(PoissonError::NotMonomial)?;
        }
        Ok(MonomialMap { images: [x, y] })
    }

    pub fn apply(&self, p: &CommPoly) -> Result<CommPoly, PoissonError> {
        p.substitute(&self.images)
    }

    fn compose_is_identity(&self, other: &MonomialMap) -> Result<bool, PoissonError> {
        Ok((0..2).all(|i| matches!(self.apply(&other.images[i]), Ok(p) if p == CommPoly::var(2, i))))
    }
}

/// Whether `pi` preserves the bracket. Invertibility is established by
/// `pi` being an involution or by the supplied inverse.
pub fn is_poisson_automorphism(
    p: &PlaneBracket,
    pi: &MonomialMap,
    inverse: Option<&MonomialMap>,
) -> Result<bool, PoissonError> {
    let invertible = match inverse {
        Some(inv) => pi.compose_is_identity(inv)? && inv.compose_is_identity(pi)?,
        None => pi.compose_is_identity(pi)?,
    };
    if !invertible {
        return Err(PoissonError::NonInvertible);
    }
    for im in &pi.images {
        im.check_laurent(&p.laurent)?;
    }
    let lhs = p.bracket(&pi.images[0], &pi.images[1])?;
    let rhs = pi.apply(&p.structure)?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceCase {
    /// `{x, y} = x` on polynomials in `x^{±1}, y`.
    LocEnv,
    /// `{x, y} = xy` on Laurent polynomials in `x, y`.
    QTorus,
}

impl SurfaceCase {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceCase::LocEnv => "locenv",
            SurfaceCase::QTorus => "qtorus",
        }
    }

    pub fn plane(self) -> PlaneBracket {
        let (s, laurent) = match self {
            SurfaceCase::LocEnv => ("x", [true, false]),
            SurfaceCase::QTorus => ("x*y", [true, true]),
        };
        PlaneBracket::new(CommPoly::parse(&PLANE, s).expect("fixed text"), laurent).expect("valid structure")
    }

    pub fn involution(self) -> MonomialMap {
        let y = match self {
            SurfaceCase::LocEnv => "-y",
            SurfaceCase::QTorus => "y^-1",
        };
        MonomialMap::new(
            CommPoly::parse(&PLANE, "x^-1").expect("fixed text"),
            CommPoly::parse(&PLANE, y).expect("fixed text"),
        )
        .expect("monomial images")
    }

    pub fn invariants(self) -> [CommPoly; 3] {
        let texts = match self {
            SurfaceCase::LocEnv => ["y^2", "y*(x - x^-1)", "x + x^-1"],
            SurfaceCase::QTorus => ["y + y^-1", "x + x^-1", "x*y + x^-1*y^-1"],
        };
        texts.map(|t| CommPoly::parse(&PLANE, t).expect("fixed text"))
    }

    pub fn potential(self) -> CommPoly {
        let t = match self {
            SurfaceCase::LocEnv => "x1*(4 - x3^2) + x2^2",
            SurfaceCase::QTorus => "x1*x2*x3 - x1^2 - x2^2 - x3^2 + 4",
        };
        CommPoly::parse(&XYZ, t).expect("fixed text")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketCheck {
    pub pair: (usize, usize),
    pub plane: CommPoly,
    pub exact: CommPoly,
}

impl BracketCheck {
    pub fn ok(&self) -> bool {
        self.plane == self.exact
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceReport {
    pub invariant: [bool; 3],
    pub surface_residual: CommPoly,
    pub brackets: Vec<BracketCheck>,
}

impl SurfaceReport {
    pub fn ok(&self) -> bool {
        self.invariant.iter().all(|&b| b) && self.surface_residual.is_zero() && self.brackets.iter().all(BracketCheck::ok)
    }
}

/// Checks that the invariants are fixed by the involution, satisfy the
/// surface relation, and that their plane brackets agree with the exact
/// bracket of the potential evaluated at them.
pub fn verify_surface_model(case: SurfaceCase) -> Result<SurfaceReport, PoissonError> {
    let plane = case.plane();
    let pi = case.involution();
    let a = case.invariants();
    let f = case.potential();
    let mut invariant = [false; 3];
    for i in 0..3 {
        invariant[i] = pi.apply(&a[i])? == a[i];
    }
    let surface_residual = f.substitute(&a)?;
    let mut brackets = Vec::new();
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let plane_value = plane.bracket(&a[i], &a[j])?;
        let exact = exact_bracket(&f, &CommPoly::var(3, i), &CommPoly::var(3, j)).substitute(&a)?;
        brackets.push(BracketCheck { pair: (i, j), plane: plane_value, exact });
    }
    Ok(SurfaceReport { invariant, surface_residual, brackets })
}

/// Whether the maximal ideal of `point` is Poisson for `{-,-}_f` on the
/// surface `f = 0`.
pub fn is_poisson_point(f: &CommPoly, point: &[Rational; 3]) -> Result<bool, PoissonError> {
    let v = f.eval(point)?;
    if !v.is_zero() {
        return Err(PoissonError::OffSurface(v));
    }
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        let b = exact_bracket(f, &CommPoly::var(3, i), &CommPoly::var(3, j));
        if !b.eval(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points of `{lo..=hi}^3` on the surface that pass [`is_poisson_point`].
pub fn poisson_points_in_grid(f: &CommPoly, lo: i64, hi: i64) -> Result<Vec<[i64; 3]>, PoissonError> {
    let mut out = Vec::new();
    for a in lo..=hi {
        for b in lo..=hi {
            for c in lo..=hi {
                let p = [rat(a), rat(b), rat(c)];
                if f.eval(&p)?.is_zero() && is_poisson_point(f, &p)? {
                    out.push([a, b, c]);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylCheck {
    pub pair: (String, String),
    pub value: CommPoly,
    /// The value rewritten as a combination of the generators of the ideal.
    pub expected: CommPoly,
}

/// In `Q[x, y]` with `{x, y} = 1`, brackets among `x^2, xy, y^2` stay in the
/// ideal those elements generate.
pub fn weyl_invariant_ideal_check() -> Result<Vec<WeylCheck>, PoissonError> {
    let plane = PlaneBracket::new(CommPoly::one(2), [false, false])?;
    let expected = [("x^2", "x*y", "2*x^2"), ("x^2", "y^2", "4*x*y"), ("x*y", "y^2", "2*y^2")];
    let parse = |t: &str| CommPoly::parse(&PLANE, t);
    expected
        .iter()
        .map(|(g, h, e)| {
            Ok(WeylCheck {
                pair: (g.to_string(), h.to_string()),
                value: plane.bracket(&parse(g)?, &parse(h)?)?,
                expected: parse(e)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p3(t: &str) -> CommPoly {
        CommPoly::parse(&XYZ, t).unwrap()
    }

    fn p2(t: &str) -> CommPoly {
        CommPoly::parse(&PLANE, t).unwrap()
    }

    #[test]
    fn bracket_tables() {
        let f = SurfaceCase::LocEnv.potential();
        assert_eq!(exact_bracket(&f, &p3("x1"), &p3("x2")), p3("-2*x1*x3"));
        let g = SurfaceCase::QTorus.potential();
        assert_eq!(exact_bracket(&g, &p3("x2"), &p3("x3")), p3("x2*x3 - 2*x1"));
        assert!(exact_bracket(&f, &f, &p3("x1*x2 + x3^3")).is_zero());
    }

    #[test]
    fn hamiltonians() {
        let f = SurfaceCase::LocEnv.potential();
        assert_eq!(hamiltonian(&f, &p3("x1")), [p3("0"), p3("-2*x1*x3"), p3("-2*x2")]);
        assert_eq!(hamiltonian(&f, &p3("x3")), [p3("2*x2"), p3("x3^2 - 4"), p3("0")]);
        assert!(hamiltonian(&f, &f).iter().all(CommPoly::is_zero));
        let plane = SurfaceCase::LocEnv.plane();
        assert_eq!(plane.hamiltonian(&p2("x")), [p2("0"), p2("x")]);
    }

    #[test]
    fn plane_brackets() {
        let loc = SurfaceCase::LocEnv.plane();
        assert_eq!(loc.bracket(&p2("x^-1"), &p2("y")).unwrap(), p2("-x^-1"));
        let tor = SurfaceCase::QTorus.plane();
        assert_eq!(tor.bracket(&p2("x^-1"), &p2("y^-1")).unwrap(), p2("x^-1*y^-1"));
        assert!(tor.bracket(&p2("x + y^2"), &p2("x + y^2")).unwrap().is_zero());
        assert!(matches!(loc.bracket(&p2("y^-1"), &p2("x")), Err(PoissonError::Underflow(1))));
    }

    #[test]
    fn automorphisms() {
        let loc = SurfaceCase::LocEnv.plane();
        assert!(is_poisson_automorphism(&loc, &SurfaceCase::LocEnv.involution(), None).unwrap());
        let tor = SurfaceCase::QTorus.plane();
        assert!(is_poisson_automorphism(&tor, &SurfaceCase::QTorus.involution(), None).unwrap());
        let bad = MonomialMap::new(p2("x^-1"), p2("y")).unwrap();
        assert!(!is_poisson_automorphism(&loc, &bad, None).unwrap());
        let scale = MonomialMap::new(p2("2*x"), p2("y")).unwrap();
        assert_eq!(is_poisson_automorphism(&loc, &scale, None), Err(PoissonError::NonInvertible));
        let half = MonomialMap::new(p2("1/2*x"), p2("y")).unwrap();
        assert!(is_poisson_automorphism(&loc, &scale, Some(&half)).unwrap());
    }

    #[test]
    fn surfaces() {
        for case in [SurfaceCase::LocEnv, SurfaceCase::QTorus] {
            let r = verify_surface_model(case).unwrap();
            assert!(r.ok(), "{case:?}: {r:?}");
        }
        let r = verify_surface_model(SurfaceCase::LocEnv).unwrap();
        let a = SurfaceCase::LocEnv.invariants();
        assert_eq!(r.brackets[2].plane, a[1].scale(&rat(2)));
    }

    #[test]
    fn points() {
        let f = SurfaceCase::LocEnv.potential();
        assert!(is_poisson_point(&f, &[rat(0), rat(0), rat(2)]).unwrap());
        let g = SurfaceCase::QTorus.potential();
        assert!(is_poisson_point(&g, &[rat(2), rat(2), rat(2)]).unwrap());
        assert_eq!(
            is_poisson_point(&g, &[rat(0), rat(0), rat(0)]),
            Err(PoissonError::OffSurface(rat(4)))
        );
    }

    #[test]
    fn weyl_example() {
        for c in weyl_invariant_ideal_check().unwrap() {
            assert_eq!(c.value, c.expected);
        }
    }

    fn small_poly() -> impl Strategy<Value = CommPoly> {
        prop::collection::vec(((0i64..3, 0i64..3, 0i64..3), -3i64..4), 0..5).prop_map(|ts| {
            let mut p = CommPoly::zero(3);
            for ((a, b, c), k) in ts {
                if a + b + c <= 3 {
                    p.add_term(vec![a, b, c], rat(k));
                }
            }
            p
        })
    }

    proptest! {
        #[test]
        fn jacobi(f in small_poly(), g in small_poly(), h in small_poly(), k in small_poly()) {
            let b = |u: &CommPoly, v: &CommPoly| exact_bracket(&f, u, v);
            let s = &(&b(&g, &b(&h, &k)) + &b(&h, &b(&k, &g))) + &b(&k, &b(&g, &h));
            prop_assert!(s.is_zero());
        }

        #[test]
        fn potential_is_central(f in small_poly(), i in 0usize..3) {
            prop_assert!(exact_bracket(&f, &f, &CommPoly::var(3, i)).is_zero());
        }

        #[test]
        fn leibniz(f in small_poly(), g in small_poly(), h in small_poly(), k in small_poly()) {
            let lhs = exact_bracket(&f, &g, &(&h * &k));
            let rhs = &(&exact_bracket(&f, &g, &h) * &k) + &(&h * &exact_bracket(&f, &g, &k));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
