//! Exact computations for small finitely presented noncommutative algebras:
//! Diamond Lemma rewriting, skew Laurent rings with reversing automorphisms,
//! exact Poisson brackets, associated graded presentations and growth.
pub mod expr;
pub mod format;
pub mod freealg;
pub mod graded;
pub mod poisson;
pub mod presets;
pub mod rewrite;
pub mod scalar;
pub mod skew;
pub mod suite;

pub use expr::ParseError;
pub use freealg::{Alphabet, DegreeFunction, FreeAlgebra, MonomialOrder, NCPoly, OrderKind, Word};
pub use poisson::CommPoly;
pub use rewrite::{Orientation, ReductionSystem, RewriteError, Strategy};
pub use scalar::{rat, ratio, Rational, Scalar, ScalarError, ScalarKind, ScalarRing};
pub use skew::{BaseElem, BaseMap, BaseRing, ReversingContext, SkewElem, SkewError};
