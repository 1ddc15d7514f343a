//! Braid-move transforms: the piecewise-linear map on string polytopes, the
//! geometric lift on tori, the induced coefficient map, and the mechanical
//! verification drivers for the monomial-piece classification, pullback,
//! box-equation preservation, round trips, and chained birationality.

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{CoeffMonomial, RationalExpr, SymbolicLaurent};
use crate::family::{self, Family, ParamSpace};
use crate::polytope;
use crate::weyl::{find_move_sequence, BraidMove, MoveKind, ReducedWord, WeylError};
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum LiftError {
    #[error(transparent)]
    Weyl(#[from] WeylError),
    #[error("pullback did not clear its denominator: {0}")]
    NotLaurent(String),
    #[error("pullback monomials do not match the target family: {0}")]
    MonomialMismatch(String),
    #[error("monomial-piece classification violated: {0}")]
    ClassificationViolation(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("chain verification failed at move {move_index}: {detail}")]
    ChainVerificationFailed { move_index: usize, detail: String },
}

/// 1-based positions `(i, j, k)` of a 3-move.
fn three_move_positions(mv: BraidMove) -> (usize, usize, usize) {
    (mv.pos, mv.pos + 1, mv.pos + 2)
}

// ---------------------------------------------------------------------------
// piecewise-linear transport

/// Apply the braid-move piecewise-linear map to a point.
///
/// A 3-move sends `(x_i, x_j, x_k)` to
/// `(max(x_k, x_j - x_i), x_i + x_k, min(x_i, x_j - x_k))`; a 2-move swaps
/// the two coordinates. All other coordinates are fixed.
pub fn pl_apply(mv: BraidMove, x: &[Rat]) -> Vec<Rat> {
    let mut out = x.to_vec();
    match mv.kind {
        MoveKind::Two => out.swap(mv.pos - 1, mv.pos),
        MoveKind::Three => {
            let (i, j, k) = three_move_positions(mv);
            let (xi, xj, xk) = (&x[i - 1], &x[j - 1], &x[k - 1]);
            out[i - 1] = (xj - xi).max(xk.clone());
            out[j - 1] = xi + xk;
            out[k - 1] = (xj - xk).min(xi.clone());
        }
    }
    out
}

/// The two linear branches of the 3-move map; they agree exactly on the
/// hyperplane `x_i + x_k = x_j`.
pub fn pl_branches(mv: BraidMove, x: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let (i, j, k) = three_move_positions(mv);
    let (xi, xj, xk) = (&x[i - 1], &x[j - 1], &x[k - 1]);
    let mut b1 = x.to_vec();
    b1[i - 1] = xk.clone();
    b1[j - 1] = xi + xk;
    b1[k - 1] = xj - xk;
    let mut b2 = x.to_vec();
    b2[i - 1] = xj - xi;
    b2[j - 1] = xi + xk;
    b2[k - 1] = xi.clone();
    (b1, b2)
}

#[derive(Debug, Clone)]
pub struct PlPolytopeReport {
    pub lattice_points: usize,
    pub target_lattice_points: usize,
}

/// Check that the piecewise-linear map restricts to a bijection between the
/// lattice points of the two string polytopes and carries the interior
/// point `P` to the target interior point `P'`.
pub fn pl_verify_polytope(word: &ReducedWord, mv: BraidMove) -> Result<PlPolytopeReport, LiftError> {
    if mv.kind != MoveKind::Three || !word.move_applicable(mv) {
        return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos }.into());
    }
    let target = word.apply_move(mv)?;
    let fail = |msg: String| Err(LiftError::VerificationFailed(msg));

    let (_, source_poly) = polytope::string_polytope(word)
        .map_err(|e| LiftError::VerificationFailed(format!("source polytope: {e}")))?;
    let (_, target_poly) = polytope::string_polytope(&target)
        .map_err(|e| LiftError::VerificationFailed(format!("target polytope: {e}")))?;

    let p = polytope::interior_point_checked(&source_poly, &polytope::lambda_apex(word))
        .map_err(|e| LiftError::VerificationFailed(format!("interior point: {e}")))?;
    let p_target = polytope::interior_point_checked(&target_poly, &polytope::lambda_apex(&target))
        .map_err(|e| LiftError::VerificationFailed(format!("target interior point: {e}")))?;
    if pl_apply(mv, &p.coords) != p_target.coords {
        return fail(format!("interior point does not transport: {:?}", p.coords));
    }

    let source_points = source_poly.lattice_points();
    let target_points = target_poly.lattice_points();
    let target_set: std::collections::HashSet<Vec<i64>> =
        target_points.iter().cloned().collect();
    let mut images = std::collections::HashSet::new();
    for pt in &source_points {
        let x: Vec<Rat> = pt.iter().map(|&v| crate::rat_int(v)).collect();
        let y = pl_apply(mv, &x);
        let yi: Vec<i64> = y
            .iter()
            .map(|v| i64::try_from(v.to_integer()).expect("small lattice point"))
            .collect();
        if y.iter().any(|v| !v.is_integer()) || !target_set.contains(&yi) {
            return fail(format!("lattice point {pt:?} maps outside the target"));
        }
        if !images.insert(yi) {
            return fail(format!("lattice point {pt:?} collides under the map"));
        }
    }
    if images.len() != target_points.len() {
        return fail(format!(
            "lattice point counts differ: {} mapped vs {} in target",
            images.len(),
            target_points.len()
        ));
    }
    Ok(PlPolytopeReport {
        lattice_points: source_points.len(),
        target_lattice_points: target_points.len(),
    })
}

// ---------------------------------------------------------------------------
// monomial-piece classification

type Piece = [i64; 3];

fn piece_of(m: &[i64], i: usize, j: usize, k: usize) -> Piece {
    [m[i - 1], m[j - 1], m[k - 1]]
}

fn outside_of(m: &[i64], i: usize, j: usize, k: usize) -> Vec<i64> {
    let mut o = m.to_vec();
    o[i - 1] = 0;
    o[j - 1] = 0;
    o[k - 1] = 0;
    o
}

/// Exchange rule for lambda pieces of crossings outside the braid region.
fn lambda_piece_image(p: Piece) -> Option<Piece> {
    match p {
        [0, 0, 0] => Some([0, 0, 0]),
        [-1, 0, -1] => Some([0, -1, 0]),
        [0, -1, 0] => Some([-1, 0, -1]),
        [2, -1, 2] => Some([-1, 2, -1]),
        [-1, 2, -1] => Some([2, -1, 2]),
        _ => None,
    }
}

/// Exchange rule for string pieces that transform alone.
fn string_single_image(p: Piece) -> Option<Piece> {
    match p {
        [0, 0, 0] => Some([0, 0, 0]),
        [1, 0, 1] => Some([0, 1, 0]),
        [0, 1, 0] => Some([1, 0, 1]),
        [-1, 0, -1] => Some([0, -1, 0]),
        [0, -1, 0] => Some([-1, 0, -1]),
        [1, -1, 1] => Some([-1, 1, -1]),
        [-1, 1, -1] => Some([1, -1, 1]),
        _ => None,
    }
}

#[derive(Debug, Clone)]
pub struct ClassifyReport {
    pub lambda_checked: usize,
    pub string_classes: usize,
}

/// Verify the complete classification of lambda and string monomial pieces
/// under a 3-move, including the paired pieces that must occur together.
pub fn classify_pieces(word: &ReducedWord, mv: BraidMove) -> Result<ClassifyReport, LiftError> {
    if mv.kind != MoveKind::Three || !word.move_applicable(mv) {
        return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos }.into());
    }
    let (i, j, k) = three_move_positions(mv);
    let target = word.apply_move(mv)?;
    let source_fam = family::build_family(word);
    let target_fam = family::build_family(&target);
    let total = word.len();
    let violation = |msg: String| Err(LiftError::ClassificationViolation(msg));

    // lambda monomials: indexed by crossing, first `total` rows
    for l in 1..=total {
        let src = &source_fam.monomials[l - 1].1;
        let tgt = &target_fam.monomials[l - 1].1;
        let sp = piece_of(src, i, j, k);
        let tp = piece_of(tgt, i, j, k);
        if l == i || l == j || l == k {
            continue; // handled below
        }
        match lambda_piece_image(sp) {
            Some(expect) if expect == tp => {}
            Some(expect) => {
                return violation(format!(
                    "lambda {l}: piece {sp:?} should become {expect:?}, found {tp:?}"
                ))
            }
            None => return violation(format!("lambda {l}: unclassified piece {sp:?}")),
        }
        if outside_of(src, i, j, k) != outside_of(tgt, i, j, k) {
            return violation(format!("lambda {l}: outside part changed"));
        }
    }
    // the three moved lambda rows
    let (si, sj, sk) = (
        &source_fam.monomials[i - 1].1,
        &source_fam.monomials[j - 1].1,
        &source_fam.monomials[k - 1].1,
    );
    let (ti, tj, tk) = (
        &target_fam.monomials[i - 1].1,
        &target_fam.monomials[j - 1].1,
        &target_fam.monomials[k - 1].1,
    );
    for (label, m) in [("source", si), ("target", ti)] {
        if piece_of(m, i, j, k) != [1, -1, 2] {
            return violation(format!("{label} lambda_i piece is {:?}", piece_of(m, i, j, k)));
        }
    }
    for (label, m) in [("source", sj), ("target", tj)] {
        if piece_of(m, i, j, k) != [0, 1, -1] {
            return violation(format!("{label} lambda_j piece is {:?}", piece_of(m, i, j, k)));
        }
    }
    for (label, m) in [("source", sk), ("target", tk)] {
        if piece_of(m, i, j, k) != [0, 0, 1] {
            return violation(format!("{label} lambda_k piece is {:?}", piece_of(m, i, j, k)));
        }
    }
    let out = |m: &Vec<i64>| outside_of(m, i, j, k);
    if out(si) != out(sk) {
        return violation("lambda_i and lambda_k have different tails".into());
    }
    if out(ti) != out(tk) || out(ti) != out(sj) {
        return violation("images of lambda_j have the wrong tails".into());
    }
    if out(tj) != out(si) {
        return violation("image of the lambda_i/lambda_k pair has the wrong tail".into());
    }

    // string monomials, grouped by their part outside the braid region
    use std::collections::BTreeMap;
    let collect = |fam: &Family| -> BTreeMap<Vec<i64>, Vec<Piece>> {
        let mut classes: BTreeMap<Vec<i64>, Vec<Piece>> = BTreeMap::new();
        for (idx, q) in fam.hrep.iter().enumerate() {
            if q.is_string() {
                let m = &fam.monomials[idx].1;
                classes
                    .entry(outside_of(m, i, j, k))
                    .or_default()
                    .push(piece_of(m, i, j, k));
            }
        }
        for pieces in classes.values_mut() {
            pieces.sort_unstable();
        }
        classes
    };
    let source_classes = collect(&source_fam);
    let target_classes = collect(&target_fam);

    let mut expected: BTreeMap<Vec<i64>, Vec<Piece>> = BTreeMap::new();
    for (outside, pieces) in &source_classes {
        let mut image: Vec<Piece> = Vec::new();
        let has = |p: Piece| pieces.contains(&p);
        for &p in pieces {
            match p {
                // pair members fuse: [-1,0,0] with [0,-1,1] and [0,0,1] with [-1,1,0]
                [-1, 0, 0] | [0, -1, 1] => {
                    let partner = if p == [-1, 0, 0] { [0, -1, 1] } else { [-1, 0, 0] };
                    if !has(partner) {
                        return violation(format!(
                            "piece {p:?} lacks its required partner {partner:?} (tail {outside:?})"
                        ));
                    }
                    if p == [-1, 0, 0] {
                        image.push([0, 0, -1]);
                    }
                }
                [0, 0, 1] | [-1, 1, 0] => {
                    let partner = if p == [0, 0, 1] { [-1, 1, 0] } else { [0, 0, 1] };
                    if !has(partner) {
                        return violation(format!(
                            "piece {p:?} lacks its required partner {partner:?} (tail {outside:?})"
                        ));
                    }
                    if p == [0, 0, 1] {
                        image.push([1, 0, 0]);
                    }
                }
                // splitting pieces
                [0, 0, -1] => {
                    image.push([-1, 0, 0]);
                    image.push([0, -1, 1]);
                }
                [1, 0, 0] => {
                    image.push([0, 0, 1]);
                    image.push([-1, 1, 0]);
                }
                _ => match string_single_image(p) {
                    Some(q) => image.push(q),
                    None => {
                        return violation(format!(
                            "unclassified string piece {p:?} (tail {outside:?})"
                        ))
                    }
                },
            }
        }
        image.sort_unstable();
        if !image.is_empty() {
            expected.insert(outside.clone(), image);
        }
    }
    if expected != target_classes {
        return violation(format!(
            "string classes mismatch: expected {expected:?}, found {target_classes:?}"
        ));
    }
    Ok(ClassifyReport {
        lambda_checked: total,
        string_classes: source_classes.len(),
    })
}

// ---------------------------------------------------------------------------
// the geometric lift and its pullback

/// The coefficient map `g* : a |-> a'` of a braid move: one monomial in the
/// source symbols per target family monomial (exponents reduced modulo the
/// source box-equation lattice).
#[derive(Debug, Clone)]
pub struct CoeffMap {
    pub target_ids: Vec<String>,
    /// Exponent rows over the source symbols, aligned with `target_ids`.
    pub rows: Vec<Vec<Int>>,
}

impl CoeffMap {
    /// Evaluate the monomial map at an exact coefficient vector.
    pub fn apply(&self, a: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|row| {
                let mut v = Rat::one();
                for (x, e) in a.iter().zip(row) {
                    let e = i64::try_from(e).expect("coefficient exponent fits i64");
                    v *= family::pow_rat(x, e);
                }
                v
            })
            .collect()
    }

    /// Compose with a following map: `self` sends word-1 coefficients to
    /// word-2, `next` sends word-2 to word-3; the result sends 1 to 3.
    pub fn then(&self, next: &CoeffMap) -> CoeffMap {
        let rows = next
            .rows
            .iter()
            .map(|outer| {
                let mut row = vec![Int::zero(); self.rows.first().map_or(0, Vec::len)];
                for (e, inner) in outer.iter().zip(&self.rows) {
                    for (slot, v) in row.iter_mut().zip(inner) {
                        *slot += e * v;
                    }
                }
                row
            })
            .collect();
        CoeffMap { target_ids: next.target_ids.clone(), rows }
    }
}

/// The substitution data of the geometric lift at a 3-move: `C` is the
/// coefficient-symbol ratio `a_{lambda_k} / a_{lambda_i}` of the source.
#[derive(Debug, Clone)]
pub struct LiftMap {
    pub positions: (usize, usize, usize),
    /// Exponent vector of `C` over the source symbols.
    pub c_exponent: Vec<Int>,
}

impl LiftMap {
    pub fn new(family: &Family, mv: BraidMove) -> LiftMap {
        let (i, j, k) = three_move_positions(mv);
        let r = family.monomial_count();
        let mut c_exponent = vec![Int::zero(); r];
        c_exponent[k - 1] += 1; // lambda rows lead the monomial order
        c_exponent[i - 1] -= 1;
        let _ = j;
        LiftMap { positions: (i, j, k), c_exponent }
    }

    fn c_monomial(&self, power: i64) -> CoeffMonomial {
        CoeffMonomial {
            scalar: Rat::one(),
            exps: self.c_exponent.iter().map(|e| e * Int::from(power)).collect(),
        }
    }

    /// The denominator binomial `D = t'_i t'_k + C t'_j`.
    fn denominator(&self, nvars: usize, asize: usize) -> SymbolicLaurent {
        let (i, j, k) = self.positions;
        let mut ik = vec![0i64; nvars];
        ik[i - 1] = 1;
        ik[k - 1] = 1;
        let mut jj = vec![0i64; nvars];
        jj[j - 1] = 1;
        SymbolicLaurent::term(ik, CoeffMonomial::constant(Rat::one(), asize))
            .add(&SymbolicLaurent::term(jj, self.c_monomial(1)))
    }

    /// Pull back a single family monomial `a_d T^M` through the lift as a
    /// rational expression over the denominator binomial.
    fn pullback_monomial(
        &self,
        m: &[i64],
        coeff: CoeffMonomial,
        nvars: usize,
        asize: usize,
    ) -> RationalExpr {
        let (i, j, k) = self.positions;
        let (alpha, beta, gamma) = (m[i - 1], m[j - 1], m[k - 1]);
        let mut v = m.to_vec();
        v[i - 1] = -alpha + beta + gamma;
        v[j - 1] = gamma;
        v[k - 1] = beta;
        let coeff = coeff.mul(&self.c_monomial(gamma - beta));
        let dpow = alpha - gamma;
        let base = self.denominator(nvars, asize);
        let term = SymbolicLaurent::term(v, coeff);
        if dpow >= 0 {
            RationalExpr::new(term.mul(&base.pow(dpow as usize)), base, 0)
        } else {
            RationalExpr::new(term, base, (-dpow) as usize)
        }
    }

    /// Exact evaluation of the lift at a torus point of the target word:
    /// returns the corresponding source point, or `None` when the
    /// denominator `t'_i t'_k + C t'_j` vanishes.
    pub fn lift_point(&self, c: &Rat, t: &[Rat]) -> Option<Vec<Rat>> {
        let (i, j, k) = self.positions;
        let (ti, tj, tk) = (&t[i - 1], &t[j - 1], &t[k - 1]);
        let d = ti * tk + c * tj;
        if d.is_zero() {
            return None;
        }
        let mut out = t.to_vec();
        out[i - 1] = &d / ti;
        out[j - 1] = ti * tk / c;
        out[k - 1] = c * ti * tj / &d;
        Some(out)
    }
}

/// Pull the source family back through the geometric lift of a 3-move and
/// certify that the result is again a family of the expected shape.
///
/// All coefficient arithmetic is done modulo the source box-equation
/// lattice; the pullback must clear its denominator exactly, and the
/// resulting monomial set must coincide with the canonical family of the
/// target word. Returns the target family together with the coefficient
/// map `g*`.
pub fn lift_pullback(
    source: &Family,
    space: &ParamSpace,
    mv: BraidMove,
) -> Result<(Family, CoeffMap), LiftError> {
    if mv.kind != MoveKind::Three || !source.word.move_applicable(mv) {
        return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos }.into());
    }
    let target_word = source.word.apply_move(mv)?;
    let target = family::build_family(&target_word);
    let nvars = source.word.len();
    let asize = source.monomial_count();
    let lat = &space.lattice;
    let lift = LiftMap::new(source, mv);

    // sum the pullbacks of 1 and of every -a_d T^{M_d}
    let base = lift.denominator(nvars, asize);
    let mut total = RationalExpr::new(SymbolicLaurent::one(nvars, asize), base, 0);
    for (d, (_, m)) in source.monomials.iter().enumerate() {
        let mut exps = vec![Int::zero(); asize];
        exps[d] = Int::one();
        let coeff = CoeffMonomial { scalar: -Rat::one(), exps };
        let term = lift.pullback_monomial(m, coeff, nvars, asize);
        total = total.add(&term, Some(lat));
    }
    let total = total.normalize(Some(lat));
    if total.pow != 0 {
        return Err(LiftError::NotLaurent(format!(
            "denominator power {} remains after reduction",
            total.pow
        )));
    }

    // certify the shape 1 - sum a'_{d'} T^{M_{d'}}
    let mut rows: Vec<(Vec<i64>, Vec<Int>)> = Vec::new();
    for (texp, sum) in total.num.terms() {
        if texp.iter().all(|&e| e == 0) {
            if !sum.is_one() {
                return Err(LiftError::MonomialMismatch(format!(
                    "constant term is {sum:?}, expected 1"
                )));
            }
            continue;
        }
        let Some(mono) = sum.single() else {
            return Err(LiftError::MonomialMismatch(format!(
                "coefficient of {texp:?} is not a single monomial: {sum:?}"
            )));
        };
        if mono.scalar != -Rat::one() {
            return Err(LiftError::MonomialMismatch(format!(
                "coefficient of {texp:?} has scalar {}, expected -1",
                mono.scalar
            )));
        }
        let degree: Int = mono.exps.iter().sum();
        assert!(degree.is_one(), "coefficient monomials must have total degree 1");
        rows.push((texp.clone(), mono.exps));
    }
    if !total
        .num
        .coefficient_of(&vec![0i64; nvars])
        .map_or(false, |c| c.is_one())
    {
        return Err(LiftError::MonomialMismatch("missing constant term 1".into()));
    }

    let mut map_rows = Vec::with_capacity(target.monomials.len());
    for (id, m) in &target.monomials {
        match rows.iter().find(|(texp, _)| texp == m) {
            Some((_, exps)) => map_rows.push(exps.clone()),
            None => {
                return Err(LiftError::MonomialMismatch(format!(
                    "target monomial {id} ({m:?}) absent from the pullback"
                )))
            }
        }
    }
    if rows.len() != target.monomials.len() {
        return Err(LiftError::MonomialMismatch(format!(
            "pullback has {} monomials, target family has {}",
            rows.len(),
            target.monomials.len()
        )));
    }
    let target_ids: Vec<String> = target.monomials.iter().map(|(id, _)| id.clone()).collect();
    Ok((target, CoeffMap { target_ids, rows: map_rows }))
}

/// The pullback table encoded as data: image of a single monomial piece as
/// `(power of C, target piece)` summands. Pieces that only transform as a
/// grouped pair return `None` here.
fn table_single(piece: Piece) -> Option<Vec<(i64, Piece)>> {
    match piece {
        [0, 0, 0] => Some(vec![(0, [0, 0, 0])]),
        [-1, 0, -1] => Some(vec![(-1, [0, -1, 0])]),
        [2, -1, 2] => Some(vec![(3, [-1, 2, -1])]),
        [-1, 2, -1] => Some(vec![(-3, [2, -1, 2])]),
        [0, -1, 0] => Some(vec![(1, [-1, 0, -1])]),
        [1, 0, 1] => Some(vec![(1, [0, 1, 0])]),
        [0, 1, 0] => Some(vec![(-1, [1, 0, 1])]),
        [1, -1, 1] => Some(vec![(2, [-1, 1, -1])]),
        [-1, 1, -1] => Some(vec![(-2, [1, -1, 1])]),
        [0, 1, -1] => Some(vec![(-2, [1, -1, 2]), (-1, [0, 0, 1])]),
        [0, 0, -1] => Some(vec![(0, [-1, 0, 0]), (-1, [0, -1, 1])]),
        [1, 0, 0] => Some(vec![(0, [0, 0, 1]), (1, [-1, 1, 0])]),
        _ => None,
    }
}

/// Cross-check the pullback table against direct substitution, group by
/// group: every monomial (or grouped pair) must map exactly to the summands
/// the table predicts, modulo the source box-equation lattice.
pub fn verify_pullback_table(
    source: &Family,
    space: &ParamSpace,
    mv: BraidMove,
) -> Result<usize, LiftError> {
    if mv.kind != MoveKind::Three || !source.word.move_applicable(mv) {
        return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos }.into());
    }
    let (i, j, k) = three_move_positions(mv);
    let lift = LiftMap::new(source, mv);
    let nvars = source.word.len();
    let asize = source.monomial_count();
    let lat = &space.lattice;
    let symbol = |d: usize| CoeffMonomial::symbol(d, asize);

    // partition the monomial indices into table groups
    let piece = |d: usize| piece_of(&source.monomials[d].1, i, j, k);
    let outside = |d: usize| outside_of(&source.monomials[d].1, i, j, k);
    let is_string = |d: usize| source.hrep.inequalities[d].is_string();
    let find_partner = |d: usize, want: Piece| -> Option<usize> {
        (0..source.monomials.len()).find(|&e| {
            is_string(e) && piece(e) == want && outside(e) == outside(d)
        })
    };

    let mut used = vec![false; source.monomials.len()];
    let mut groups: Vec<(Vec<usize>, Vec<(i64, Piece)>, usize)> = Vec::new();
    for d in 0..source.monomials.len() {
        if used[d] {
            continue;
        }
        // the lambda_i / lambda_k rows group together
        if d == i - 1 || d == k - 1 {
            used[i - 1] = true;
            used[k - 1] = true;
            groups.push((vec![i - 1, k - 1], vec![(2, [0, 1, -1])], i - 1));
            continue;
        }
        let p = piece(d);
        if is_string(d) && (p == [0, 0, 1] || p == [-1, 1, 0]) {
            let (lead, partner_piece) = if p == [0, 0, 1] {
                (d, [-1, 1, 0])
            } else {
                (find_partner(d, [0, 0, 1]).ok_or_else(|| {
                    LiftError::ClassificationViolation(format!(
                        "string piece {p:?} lacks its t_k partner"
                    ))
                })?, [-1, 1, 0])
            };
            let partner = find_partner(lead, partner_piece).ok_or_else(|| {
                LiftError::ClassificationViolation(format!(
                    "string piece [0,0,1] lacks its {partner_piece:?} partner"
                ))
            })?;
            used[lead] = true;
            used[partner] = true;
            groups.push((vec![lead, partner], vec![(0, [1, 0, 0])], lead));
            continue;
        }
        if is_string(d) && (p == [-1, 0, 0] || p == [0, -1, 1]) {
            let lead = if p == [-1, 0, 0] {
                d
            } else {
                find_partner(d, [-1, 0, 0]).ok_or_else(|| {
                    LiftError::ClassificationViolation(format!(
                        "string piece {p:?} lacks its t_i^-1 partner"
                    ))
                })?
            };
            let partner = find_partner(lead, [0, -1, 1]).ok_or_else(|| {
                LiftError::ClassificationViolation(
                    "string piece [-1,0,0] lacks its [0,-1,1] partner".into(),
                )
            })?;
            used[lead] = true;
            used[partner] = true;
            groups.push((vec![lead, partner], vec![(0, [0, 0, -1])], lead));
            continue;
        }
        let image = table_single(p).ok_or_else(|| {
            LiftError::ClassificationViolation(format!(
                "monomial {} has untabulated piece {p:?}",
                source.monomials[d].0
            ))
        })?;
        used[d] = true;
        groups.push((vec![d], image, d));
    }

    for (members, image, lead) in &groups {
        let base = lift.denominator(nvars, asize);
        let mut actual = RationalExpr::new(SymbolicLaurent::zero(nvars, asize), base, 0);
        for &d in members {
            let term = lift.pullback_monomial(&source.monomials[d].1, symbol(d), nvars, asize);
            actual = actual.add(&term, Some(lat));
        }
        let actual = actual.normalize(Some(lat));
        if actual.pow != 0 {
            return Err(LiftError::NotLaurent(format!(
                "table group {:?} does not clear its denominator",
                members.iter().map(|&d| &source.monomials[d].0).collect::<Vec<_>>()
            )));
        }
        let tail = outside_of(&source.monomials[*lead].1, i, j, k);
        let mut expected = SymbolicLaurent::zero(nvars, asize);
        for (cpow, piece) in image {
            let mut texp = tail.clone();
            texp[i - 1] = piece[0];
            texp[j - 1] = piece[1];
            texp[k - 1] = piece[2];
            let coeff = symbol(*lead).mul(&lift.c_monomial(*cpow));
            expected = expected.add(&SymbolicLaurent::term(texp, coeff));
        }
        let expected = expected.reduce_coeffs(lat);
        if actual.num != expected {
            return Err(LiftError::MonomialMismatch(format!(
                "table disagrees with substitution on group {:?}",
                members.iter().map(|&d| &source.monomials[d].0).collect::<Vec<_>>()
            )));
        }
    }
    Ok(groups.len())
}

/// Transport a family through a 2-move: coordinates `t_pos`, `t_{pos+1}`
/// swap and the coefficients follow their monomials.
pub fn two_move_transport(
    source: &Family,
    mv: BraidMove,
) -> Result<(Family, CoeffMap), LiftError> {
    if mv.kind != MoveKind::Two || !source.word.move_applicable(mv) {
        return Err(WeylError::MoveNotApplicable { kind: mv.kind, pos: mv.pos }.into());
    }
    let target_word = source.word.apply_move(mv)?;
    let target = family::build_family(&target_word);
    let r = source.monomial_count();
    let mut rows = Vec::with_capacity(target.monomials.len());
    for (id, m) in &target.monomials {
        let mut swapped = m.clone();
        swapped.swap(mv.pos - 1, mv.pos);
        let d = source
            .monomials
            .iter()
            .position(|(_, sm)| sm == &swapped)
            .ok_or_else(|| {
                LiftError::MonomialMismatch(format!(
                    "target monomial {id} has no source partner under the swap"
                ))
            })?;
        let mut row = vec![Int::zero(); r];
        row[d] = Int::one();
        rows.push(row);
    }
    let target_ids: Vec<String> = target.monomials.iter().map(|(id, _)| id.clone()).collect();
    Ok((target, CoeffMap { target_ids, rows }))
}

/// Check that `g*` carries every target box equation into the source
/// box-equation lattice.
#[derive(Debug, Clone)]
pub struct BoxPreservationReport {
    pub ok: bool,
    /// Indices of target equations whose pullback escapes the lattice.
    pub failing: Vec<usize>,
}

pub fn verify_box_preservation(
    source: &ParamSpace,
    target: &ParamSpace,
    g: &CoeffMap,
) -> BoxPreservationReport {
    let mut failing = Vec::new();
    for (idx, eq) in target.equations.iter().enumerate() {
        let mut pulled = vec![Int::zero(); source.r];
        for (e, row) in eq.exponent.iter().zip(&g.rows) {
            for (slot, v) in pulled.iter_mut().zip(row) {
                *slot += e * v;
            }
        }
        if !source.lattice.contains(&pulled) {
            failing.push(idx);
        }
    }
    BoxPreservationReport { ok: failing.is_empty(), failing }
}

// ---------------------------------------------------------------------------
// round trips and chains

#[derive(Debug, Clone)]
pub struct RoundtripReport {
    /// Symbolic composition of the two lifts is the identity.
    pub symbolic_identity: bool,
    /// `g' . g` is the identity monomial map modulo the source lattice.
    pub coeff_identity: bool,
}

/// Verify that composing the lift with the reverse-move lift is the
/// identity, symbolically on the three moved coordinates and on the
/// coefficient maps modulo the source lattice.
pub fn verify_roundtrip(
    source: &Family,
    space: &ParamSpace,
    mv: BraidMove,
) -> Result<RoundtripReport, LiftError> {
    let symbolic_identity = roundtrip_symbolic();
    let (target, g) = lift_pullback(source, space, mv)?;
    let target_space = family::box_equations(&target);
    let (_, g_back) = lift_pullback(&target, &target_space, mv)?;
    let composed = g.then(&g_back);
    let mut coeff_identity = true;
    for (d, row) in composed.rows.iter().enumerate() {
        let mut diff = row.clone();
        diff[d] -= 1;
        if !space.lattice.contains(&diff) {
            coeff_identity = false;
        }
    }
    Ok(RoundtripReport { symbolic_identity, coeff_identity })
}

/// Symbolic check `h' . h = id` on the three moved coordinates with an
/// indeterminate coefficient `C`, by cross-multiplied equality of rational
/// expressions.
pub fn roundtrip_symbolic() -> bool {
    // local universe: torus variables (t_i, t_j, t_k), one symbol C
    let term = |texp: [i64; 3], cpow: i64| {
        SymbolicLaurent::term(
            texp.to_vec(),
            CoeffMonomial { scalar: Rat::one(), exps: vec![Int::from(cpow)] },
        )
    };
    let d = term([1, 0, 1], 0).add(&term([0, 1, 0], 1));
    // forward lift: t_i = D/t'_i, t_j = t'_i t'_k / C, t_k = C t'_i t'_j / D
    let f_i = RationalExpr::new(d.scale(&vec![-1, 0, 0], &CoeffMonomial::constant(Rat::one(), 1)), d.clone(), 0);
    let f_j = RationalExpr::new(term([1, 0, 1], -1), d.clone(), 0);
    let f_k = RationalExpr::new(term([1, 1, 0], 1), d.clone(), 1);

    let c = |p: i64| RationalExpr::new(term([0, 0, 0], p), d.clone(), 0);
    // reverse lift evaluated on the forward coordinates
    let e = f_i.mul(&f_k, None).add(&c(1).mul(&f_j, None), None);
    let Some(fi_inv) = f_i.recip(None) else { return false };
    let g_i = e.mul(&fi_inv, None);
    let g_j = f_i.mul(&f_k, None).mul(&c(-1), None);
    let Some(e_inv) = e.recip(None) else { return false };
    let g_k = c(1).mul(&f_i, None).mul(&f_j, None).mul(&e_inv, None);

    let one = CoeffMonomial::constant(Rat::one(), 1);
    g_i.equals_term(&vec![1, 0, 0], &one, None)
        && g_j.equals_term(&vec![0, 1, 0], &one, None)
        && g_k.equals_term(&vec![0, 0, 1], &one, None)
}

/// Numeric spot evaluation of the lift and its reverse.
pub fn lift_point_numeric(
    positions: (usize, usize, usize),
    c: &Rat,
    t: &[Rat],
) -> Option<Vec<Rat>> {
    let lift = LiftMap { positions, c_exponent: Vec::new() };
    lift.lift_point(c, t)
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    pub moves: Vec<BraidMove>,
    pub attempts: u32,
    /// The exact value of the source family member at the transported
    /// point; the verification requires it to be exactly zero.
    pub source_value: Rat,
}

/// Verify chained birationality between two words: sample coefficients on
/// the source parameter space, transport them along a shortest move
/// sequence, pick an exact rational point on the final hypersurface, pull
/// the point back through the composed lifts, and demand that every
/// intermediate family member — and the source one — vanishes exactly.
pub fn chain_verify(
    a_word: &ReducedWord,
    b_word: &ReducedWord,
    seed: u64,
) -> Result<ChainReport, LiftError> {
    let moves = find_move_sequence(a_word, b_word);
    let mut words = vec![a_word.clone()];
    for mv in &moves {
        let next = words.last().unwrap().apply_move(*mv)?;
        words.push(next);
    }
    debug_assert_eq!(words.last().unwrap(), b_word);
    let families: Vec<Family> = words.iter().map(family::build_family).collect();
    let spaces: Vec<ParamSpace> = families.iter().map(family::box_equations).collect();

    enum Step {
        Three { lift: LiftMap },
        Two { pos: usize },
    }
    let mut steps = Vec::with_capacity(moves.len());
    let mut coeffs = vec![family::sample_param(&spaces[0], seed)];
    for (q, mv) in moves.iter().enumerate() {
        let (map, step) = match mv.kind {
            MoveKind::Three => {
                let (_, map) = lift_pullback(&families[q], &spaces[q], *mv)?;
                let lift = LiftMap::new(&families[q], *mv);
                (map, Step::Three { lift })
            }
            MoveKind::Two => {
                let (_, map) = two_move_transport(&families[q], *mv)?;
                (map, Step::Two { pos: mv.pos })
            }
        };
        let next = map.apply(&coeffs[q]);
        spaces[q + 1].check_membership(&next).map_err(|e| {
            LiftError::ChainVerificationFailed { move_index: q, detail: e.to_string() }
        })?;
        coeffs.push(next);
        steps.push(step);
    }

    let s = moves.len();
    let nvars = a_word.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5DEECE66D);
    'attempt: for attempt in 0..64u32 {
        let mut draw = || loop {
            let numer = rng.random_range(-9i64..=9);
            let denom = rng.random_range(1i64..=9);
            if numer != 0 {
                return Rat::new(Int::from(numer), Int::from(denom));
            }
        };
        let t_end: Vec<Rat> = (0..nvars).map(|_| draw()).collect();
        // scale all coefficient vectors so the end family member vanishes
        // at t_end; the coefficient maps are degree-1 homogeneous, so one
        // global factor keeps the whole chain consistent
        let mut total = Rat::zero();
        for (d, (_, m)) in families[s].monomials.iter().enumerate() {
            total += &coeffs[s][d] * family::monomial_value(m, &t_end);
        }
        if total.is_zero() {
            continue;
        }
        let sigma = total.recip();
        let scaled: Vec<Vec<Rat>> = coeffs
            .iter()
            .map(|a| a.iter().map(|x| x * &sigma).collect())
            .collect();
        let end_value =
            family::evaluate_member(&families[s], &scaled[s], &t_end, Some(&spaces[s]))
                .map_err(|e| LiftError::ChainVerificationFailed {
                    move_index: s,
                    detail: e.to_string(),
                })?;
        assert!(end_value.is_zero(), "scaling must put the point on the hypersurface");

        // pull the point back through the chain
        let mut point = t_end.clone();
        for q in (0..s).rev() {
            point = match &steps[q] {
                Step::Two { pos } => {
                    let mut p = point.clone();
                    p.swap(pos - 1, *pos);
                    p
                }
                Step::Three { lift } => {
                    let (i, k) = (lift.positions.0, lift.positions.2);
                    let c = &scaled[q][k - 1] / &scaled[q][i - 1];
                    match lift.lift_point(&c, &point) {
                        Some(p) => p,
                        None => continue 'attempt, // degenerate denominator
                    }
                }
            };
            let value = family::evaluate_member(&families[q], &scaled[q], &point, Some(&spaces[q]))
                .map_err(|e| LiftError::ChainVerificationFailed {
                    move_index: q,
                    detail: e.to_string(),
                })?;
            if !value.is_zero() {
                return Err(LiftError::ChainVerificationFailed {
                    move_index: q,
                    detail: format!("family member evaluates to {value} instead of 0"),
                });
            }
        }
        return Ok(ChainReport { moves, attempts: attempt + 1, source_value: Rat::zero() });
    }
    Err(LiftError::ChainVerificationFailed {
        move_index: 0,
        detail: "no nondegenerate sample point found".into(),
    })
}
