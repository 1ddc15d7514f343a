//! The mirror Laurent family of a reduced word, its combinatorial box
//! equations, and the parameter space they cut out of the coefficient torus.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{CoeffMonomial, IntegerLattice, SymbolicLaurent};
use crate::cones::{self, HRep};
use crate::diagram::{DiagramBox, StringDiagram};
use crate::weyl::ReducedWord;
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("torus coordinate t_{0} is zero")]
    ZeroCoordinate(usize),
    #[error("coefficient a_{0} is zero")]
    ZeroCoefficient(usize),
    #[error("box equation {0} is violated by the coefficient vector")]
    BoxEquationViolated(usize),
}

/// The family `f = 1 - sum_d a_d T^{M_d}` attached to a word, one monomial
/// per distinct defining inequality of the string polytope.
#[derive(Debug, Clone)]
pub struct Family {
    pub word: ReducedWord,
    pub hrep: HRep,
    /// `(inequality id, exponent vector M_d)` in canonical inequality order.
    pub monomials: Vec<(String, Vec<i64>)>,
    pub f: SymbolicLaurent,
}

/// One combinatorial box equation `a_{p1} a_{top} = a_{p2} a_{bot}`,
/// stored as indices into the family monomials plus its exponent vector
/// `e_{p1} + e_{top} - e_{p2} - e_{bot}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxEquation {
    pub region: DiagramBox,
    pub p1: usize,
    pub lam_top: usize,
    pub p2: usize,
    pub lam_bot: usize,
    pub exponent: Vec<Int>,
}

/// The subscheme of the coefficient torus cut out by the box equations.
#[derive(Debug, Clone)]
pub struct ParamSpace {
    pub r: usize,
    pub equations: Vec<BoxEquation>,
    pub lattice: IntegerLattice,
    pub dim: usize,
}

impl Family {
    pub fn monomial_count(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.monomials.iter().position(|(mid, _)| mid == id)
    }

    pub fn exponent_of(&self, id: &str) -> Option<&Vec<i64>> {
        self.monomials.iter().find(|(mid, _)| mid == id).map(|(_, m)| m)
    }
}

/// Build the family of a word from its string-polytope inequalities.
pub fn build_family(word: &ReducedWord) -> Family {
    let hrep = cones::delta_hrep(word);
    family_from_hrep(word, hrep)
}

pub fn family_from_hrep(word: &ReducedWord, hrep: HRep) -> Family {
    let r = hrep.len();
    let monomials: Vec<(String, Vec<i64>)> = hrep
        .iter()
        .map(|q| (q.id.clone(), q.coeffs.clone()))
        .collect();
    let mut f = SymbolicLaurent::one(word.len(), r);
    for (d, (_, m)) in monomials.iter().enumerate() {
        let mut exps = vec![Int::zero(); r];
        exps[d] = Int::one();
        let term = SymbolicLaurent::term(m.clone(), CoeffMonomial { scalar: -Rat::one(), exps });
        f = f.add(&term);
    }
    Family { word: word.clone(), hrep, monomials, f }
}

/// Detect the box conditions on every box and emit the box equations.
///
/// For each box and each ordered pair of *string* inequalities `(p1, p2)`:
/// the products `T^{p1} T^{top}` and `T^{p2} T^{bot}` must agree, the
/// `t_top` degree of `T^{p1}` must be -1, and the `t_bot` degree of
/// `T^{p2}` must be +1. Equations are deduplicated by exponent vector.
pub fn box_equations(family: &Family) -> ParamSpace {
    let diagram = StringDiagram::new(&family.word);
    let total = family.word.len();
    let r = family.monomial_count();
    let string_indices: Vec<usize> = family
        .hrep
        .iter()
        .enumerate()
        .filter(|(_, q)| q.is_string())
        .map(|(i, _)| i)
        .collect();

    let mut equations: Vec<BoxEquation> = Vec::new();
    for region in diagram.boxes() {
        // lambda rows come first, indexed by crossing
        let lam_top = region.top - 1;
        let lam_bot = region.bot - 1;
        let top_m = family.monomials[lam_top].1.clone();
        let bot_m = family.monomials[lam_bot].1.clone();
        for &p1 in &string_indices {
            let m1 = &family.monomials[p1].1;
            if m1[region.top - 1] != -1 {
                continue;
            }
            for &p2 in &string_indices {
                let m2 = &family.monomials[p2].1;
                if m2[region.bot - 1] != 1 {
                    continue;
                }
                let m1 = &family.monomials[p1].1;
                let matches = (0..total).all(|c| m1[c] + top_m[c] == m2[c] + bot_m[c]);
                if !matches {
                    continue;
                }
                let mut exponent = vec![Int::zero(); r];
                exponent[p1] += 1;
                exponent[lam_top] += 1;
                exponent[p2] -= 1;
                exponent[lam_bot] -= 1;
                if equations.iter().any(|e| e.exponent == exponent) {
                    continue;
                }
                equations.push(BoxEquation { region, p1, lam_top, p2, lam_bot, exponent });
            }
        }
    }
    let lattice = IntegerLattice::new(r, equations.iter().map(|e| e.exponent.clone()).collect());
    let dim = r - lattice.rank();
    ParamSpace { r, equations, lattice, dim }
}

impl ParamSpace {
    pub fn saturation_index(&self) -> Int {
        self.lattice.saturation_index()
    }

    /// Check that a coefficient vector lies on the parameter space: all
    /// coordinates nonzero and every box equation exactly satisfied.
    pub fn check_membership(&self, a: &[Rat]) -> Result<(), FamilyError> {
        assert_eq!(a.len(), self.r);
        if let Some(i) = a.iter().position(Rat::is_zero) {
            return Err(FamilyError::ZeroCoefficient(i));
        }
        for (idx, eq) in self.equations.iter().enumerate() {
            let lhs = &a[eq.p1] * &a[eq.lam_top];
            let rhs = &a[eq.p2] * &a[eq.lam_bot];
            if lhs != rhs {
                return Err(FamilyError::BoxEquationViolated(idx));
            }
        }
        Ok(())
    }
}

/// Exact value of `f` at a coefficient vector and a torus point; when
/// `space` is given, membership of `a` in the parameter space is enforced.
pub fn evaluate_member(
    family: &Family,
    a: &[Rat],
    t: &[Rat],
    space: Option<&ParamSpace>,
) -> Result<Rat, FamilyError> {
    assert_eq!(a.len(), family.monomial_count());
    assert_eq!(t.len(), family.word.len());
    if let Some(i) = t.iter().position(Rat::is_zero) {
        return Err(FamilyError::ZeroCoordinate(i + 1));
    }
    if let Some(space) = space {
        space.check_membership(a)?;
    }
    let mut value = Rat::one();
    for (d, (_, m)) in family.monomials.iter().enumerate() {
        value -= &a[d] * monomial_value(m, t);
    }
    Ok(value)
}

/// `prod_i t_i^{m_i}` over exact rationals.
pub fn monomial_value(m: &[i64], t: &[Rat]) -> Rat {
    let mut out = Rat::one();
    for (e, x) in m.iter().zip(t) {
        out *= pow_rat(x, *e);
    }
    out
}

pub fn pow_rat(x: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let base = if e < 0 { x.recip() } else { x.clone() };
    let mut out = Rat::one();
    for _ in 0..e.unsigned_abs() {
        out *= &base;
    }
    out
}

/// Deterministic sample of a point on the parameter space.
///
/// Random nonzero rationals `s_e` are assigned to an integral basis of the
/// lattice's orthogonal complement and the coefficients are the character
/// values `a_d = prod_e s_e^{B_{e,d}}`, which satisfy every box equation
/// exactly. When the lattice has torsion this samples only the identity
/// component; callers can inspect [`ParamSpace::saturation_index`].
pub fn sample_param(space: &ParamSpace, seed: u64) -> Vec<Rat> {
    let basis = space.lattice.orthogonal_complement_basis();
    debug_assert_eq!(basis.len(), space.dim);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || loop {
        let numer = rng.random_range(-9i64..=9);
        let denom = rng.random_range(1i64..=9);
        if numer != 0 {
            return Rat::new(Int::from(numer), Int::from(denom));
        }
    };
    let scalars: Vec<Rat> = basis.iter().map(|_| draw()).collect();
    let a: Vec<Rat> = (0..space.r)
        .map(|d| {
            let mut v = Rat::one();
            for (s, b) in scalars.iter().zip(&basis) {
                let e = i64::try_from(&b[d]).expect("basis exponent fits i64");
                v *= pow_rat(s, e);
            }
            v
        })
        .collect();
    space
        .check_membership(&a)
        .expect("character construction satisfies the box equations");
    a
}
