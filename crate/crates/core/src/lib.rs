//! String polytopes of reduced decompositions of the longest Weyl element in
//! type A, their polar duals, and the associated mirror Laurent families.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate. The main entry points are:
//!
//! * [`weyl`] — reduced words of the longest element and braid moves,
//! * [`diagram`] — string (wiring) diagrams, boxes and braid regions,
//! * [`cones`] — rigorous paths, string and lambda inequalities,
//! * [`polytope`] — exact vertex enumeration, polar duals, toric invariants,
//! * [`family`] — the Laurent family, box equations and its parameter space,
//! * [`lifting`] — piecewise-linear and geometric-lift transforms under braid
//!   moves, together with the verification drivers.

pub mod algebra;
pub mod cones;
pub mod diagram;
pub mod family;
pub mod lifting;
pub mod polytope;
pub mod weyl;

pub use algebra::{CoeffMonomial, IntegerLattice, RationalExpr, SymbolicLaurent};
pub use cones::{Inequality, InequalityKind, RigorousPath};
pub use diagram::{BraidRegion, DiagramBox, StringDiagram};
pub use family::{BoxEquation, Family, ParamSpace};
pub use polytope::ExactPolytope;
pub use weyl::{BraidMove, MoveKind, ReducedWord};

/// Exact rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer used for lattice and matrix computations.
pub type Int = num_bigint::BigInt;

/// Convenience constructor for an exact rational from a pair of machine ints.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Convenience constructor for an exact integer rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(Int::from(num))
}
