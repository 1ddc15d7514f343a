//! Integer lattices given by generating vectors, with exact membership,
//! canonical coset representatives, saturation index, and an integral basis
//! of the orthogonal complement.

use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::{self, Hnf};
use crate::Int;

/// A sublattice of `Z^dim` spanned by integer generator vectors.
///
/// The Hermite normal form of the generators is computed once at
/// construction; membership and coset reduction run against it.
#[derive(Debug, Clone)]
pub struct IntegerLattice {
    dim: usize,
    generators: Vec<Vec<Int>>,
    hnf: Hnf,
}

impl IntegerLattice {
    pub fn new(dim: usize, generators: Vec<Vec<Int>>) -> Self {
        assert!(
            generators.iter().all(|g| g.len() == dim),
            "generator dimension mismatch"
        );
        let hnf = matrix::hermite_normal_form(&generators);
        IntegerLattice { dim, generators, hnf }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<Int>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.hnf.rows.len()
    }

    /// Exact membership test via Hermite normal form reduction.
    pub fn contains(&self, v: &[Int]) -> bool {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut w: Vec<Int> = v.to_vec();
        for (row, &p) in self.hnf.rows.iter().zip(&self.hnf.pivots) {
            if !(&w[p] % &row[p]).is_zero() {
                return false;
            }
            let q = &w[p] / &row[p];
            if !q.is_zero() {
                for c in 0..self.dim {
                    let sub = &q * &row[c];
                    w[c] -= sub;
                }
            }
        }
        w.iter().all(Zero::is_zero)
    }

    /// Canonical representative of the coset `v + L`.
    ///
    /// Two vectors are congruent modulo the lattice iff their reductions are
    /// identical; at pivot columns the representative lies in `[0, pivot)`.
    pub fn reduce(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut w: Vec<Int> = v.to_vec();
        for (row, &p) in self.hnf.rows.iter().zip(&self.hnf.pivots) {
            let q = w[p].div_floor(&row[p]);
            if !q.is_zero() {
                for c in 0..self.dim {
                    let sub = &q * &row[c];
                    w[c] -= sub;
                }
            }
        }
        w
    }

    /// Index of the lattice inside its saturation: the product of the
    /// nontrivial Smith invariant factors of the generator matrix.
    ///
    /// An index of 1 means the binomial subvariety cut out by the lattice
    /// equations in the torus is irreducible.
    pub fn saturation_index(&self) -> Int {
        matrix::smith_invariants(&self.generators)
            .into_iter()
            .fold(Int::one(), |acc, d| acc * d)
    }

    /// Integral basis of `{ w : <g, w> = 0 for all generators g }`.
    pub fn orthogonal_complement_basis(&self) -> Vec<Vec<Int>> {
        matrix::integer_kernel_basis(&self.generators, self.dim)
    }
}
