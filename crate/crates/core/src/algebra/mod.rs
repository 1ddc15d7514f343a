//! Exact arithmetic substrate: integer matrix normal forms, integer lattices
//! with canonical coset representatives, and symbolic Laurent polynomials
//! whose coefficients are monomials in opaque coefficient symbols.

mod lattice;
mod laurent;
mod matrix;

pub use lattice::IntegerLattice;
pub use laurent::{CoeffMonomial, CoeffSum, RationalExpr, SymbolicLaurent};
pub use matrix::{hermite_normal_form, integer_kernel_basis, rank_of_rows, smith_invariants};
