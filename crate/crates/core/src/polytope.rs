//! Exact polyhedral geometry over arbitrary-precision rationals: vertex
//! enumeration by the double description method, the lambda apex and
//! interior point of a string polytope, polar duals with integrality
//! certification, f-vectors, and class/Picard ranks of normal fans.

use std::collections::{BTreeSet, HashSet};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::cones::{self, HRep};
use crate::weyl::ReducedWord;
use crate::{Int, Rat};

#[derive(Debug, Error)]
pub enum PolytopeError {
    #[error("halfspace system is unbounded")]
    Unbounded,
    #[error("halfspace system is empty")]
    Empty,
    #[error("point is not strictly interior: inequality {0} is tight or violated")]
    NotInterior(String),
    #[error("facet normalization failed: inequality {id} has b - M.P = {value}")]
    NormalizationFailure { id: String, value: Rat },
    #[error("dual polytope is not integral at inequality {id}")]
    NonIntegralDual { id: String },
    #[error("normal fan is degenerate (polytope is not full-dimensional)")]
    DegenerateFan,
}

/// A closed halfspace `normal . x <= rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Rat>,
    pub rhs: Rat,
}

impl HalfSpace {
    /// Slack `rhs - normal . x`; negative means violated.
    pub fn eval(&self, x: &[Rat]) -> Rat {
        let dot: Rat = self.normal.iter().zip(x).map(|(a, b)| a * b).sum();
        &self.rhs - dot
    }
}

/// A bounded polytope with mutually cross-checked H- and V-representations.
#[derive(Debug, Clone)]
pub struct ExactPolytope {
    pub halfspaces: Vec<HalfSpace>,
    pub labels: Vec<String>,
    pub vertices: Vec<Vec<Rat>>,
    /// Tight vertex indices per halfspace.
    pub incidence: Vec<Vec<usize>>,
    pub facet_flags: Vec<bool>,
    pub dim: usize,
    pub affine_dim: usize,
}

/// The strictly interior point `P = apex/2` of a string polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorPoint {
    pub coords: Vec<Rat>,
}

/// The polar dual together with the inequality each vertex came from.
#[derive(Debug, Clone)]
pub struct DualPolytope {
    pub polytope: ExactPolytope,
    /// Source inequality id per dual vertex, aligned with `polytope.vertices`.
    pub vertex_ids: Vec<String>,
    /// Dual points of non-facet inequalities (inside the dual, not vertices).
    pub non_facet_points: Vec<(String, Vec<Rat>)>,
}

// ---------------------------------------------------------------------------
// double description over the homogenization cone

struct Ray {
    vec: Vec<Rat>,
    zeros: BTreeSet<usize>,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scale to a primitive integer vector (keeps direction).
fn normalize_ray(v: &mut [Rat]) {
    let mut lcm = Int::one();
    for e in v.iter() {
        lcm = num_integer::lcm(lcm, e.denom().clone());
    }
    let mut ints: Vec<Int> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let mut g = Int::zero();
    for e in &ints {
        g = num_integer::gcd(g, e.clone());
    }
    if !g.is_zero() && !g.is_one() {
        for e in ints.iter_mut() {
            *e = &*e / &g;
        }
    }
    for (slot, e) in v.iter_mut().zip(ints) {
        *slot = Rat::from_integer(e);
    }
}

/// Extreme rays of `{ y : row . y <= 0 for all rows }` by incremental double
/// description, starting from the full space as pure lineality.
///
/// Returns `(rays, lineality)`.
fn cone_double_description(rows: &[Vec<Rat>], dim: usize) -> (Vec<Vec<Rat>>, Vec<Vec<Rat>>) {
    let mut lineality: Vec<Vec<Rat>> = (0..dim)
        .map(|i| {
            let mut e = vec![Rat::zero(); dim];
            e[i] = Rat::one();
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, row) in rows.iter().enumerate() {
        let hit = lineality.iter().position(|l| !dot(row, l).is_zero());
        if let Some(li) = hit {
            let l = lineality.remove(li);
            let al = dot(row, &l);
            // project the remaining generators onto the hyperplane of `row`
            for g in lineality.iter_mut() {
                let c = dot(row, g) / &al;
                for (gi, lv) in g.iter_mut().zip(&l) {
                    *gi -= &c * lv;
                }
                normalize_ray(g);
            }
            for r in rays.iter_mut() {
                let c = dot(row, &r.vec) / &al;
                for (ri, lv) in r.vec.iter_mut().zip(&l) {
                    *ri -= &c * lv;
                }
                normalize_ray(&mut r.vec);
                r.zeros.insert(idx);
            }
            // the feasible half of the removed lineality direction
            let mut r0: Vec<Rat> = if al.is_positive() {
                l.iter().map(|x| -x).collect()
            } else {
                l
            };
            normalize_ray(&mut r0);
            let zeros: BTreeSet<usize> = (0..idx).collect();
            rays.push(Ray { vec: r0, zeros });
            continue;
        }

        // lineality is entirely on the hyperplane; split the rays
        let vals: Vec<Rat> = rays.iter().map(|r| dot(row, &r.vec)).collect();
        if vals.iter().all(|v| !v.is_positive()) {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        let mut next: Vec<Ray> = Vec::new();
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                let mut zeros = r.zeros.clone();
                if vals[i].is_zero() {
                    zeros.insert(idx);
                }
                next.push(Ray { vec: r.vec.clone(), zeros });
            }
        }
        for (pi, p) in rays.iter().enumerate() {
            if !vals[pi].is_positive() {
                continue;
            }
            for (ni, n) in rays.iter().enumerate() {
                if !vals[ni].is_negative() {
                    continue;
                }
                // adjacency: no third ray's zero set contains the common one
                let common: BTreeSet<usize> = p.zeros.intersection(&n.zeros).copied().collect();
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(oi, o)| oi == pi || oi == ni || !common.is_subset(&o.zeros));
                if !adjacent {
                    continue;
                }
                let mut vec: Vec<Rat> = p
                    .vec
                    .iter()
                    .zip(&n.vec)
                    .map(|(pv, nv)| &vals[pi] * nv - &vals[ni] * pv)
                    .collect();
                normalize_ray(&mut vec);
                let mut zeros = common;
                zeros.insert(idx);
                next.push(Ray { vec, zeros });
            }
        }
        rays = next;
    }

    (rays.into_iter().map(|r| r.vec).collect(), lineality)
}

/// Exact rank of a rational matrix by Gaussian elimination.
pub fn rational_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let factor = &rows[i][col] * &inv;
                for c in col..ncols {
                    let sub = &factor * &rows[rank][c];
                    rows[i][c] -= sub;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn affine_rank(points: &[Vec<Rat>]) -> usize {
    let Some(first) = points.first() else { return 0 };
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    rational_rank(diffs)
}

impl ExactPolytope {
    /// Enumerate the vertices of a bounded halfspace intersection.
    pub fn from_halfspaces(
        halfspaces: Vec<HalfSpace>,
        labels: Vec<String>,
    ) -> Result<ExactPolytope, PolytopeError> {
        assert_eq!(halfspaces.len(), labels.len());
        let dim = halfspaces.first().map_or(0, |h| h.normal.len());
        // homogenize: rows over (x0, x); first row enforces x0 >= 0
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(halfspaces.len() + 1);
        let mut first = vec![Rat::zero(); dim + 1];
        first[0] = -Rat::one();
        rows.push(first);
        for h in &halfspaces {
            let mut row = Vec::with_capacity(dim + 1);
            row.push(-h.rhs.clone());
            row.extend(h.normal.iter().cloned());
            rows.push(row);
        }
        let (rays, lineality) = cone_double_description(&rows, dim + 1);
        if !lineality.is_empty() {
            return Err(PolytopeError::Unbounded);
        }
        let mut vertices = Vec::new();
        for r in rays {
            if r[0].is_zero() {
                if r.iter().any(|x| !x.is_zero()) {
                    return Err(PolytopeError::Unbounded);
                }
            } else {
                let x0 = r[0].clone();
                vertices.push(r[1..].iter().map(|x| x / &x0).collect::<Vec<Rat>>());
            }
        }
        if vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        vertices.sort();
        vertices.dedup();

        let incidence: Vec<Vec<usize>> = halfspaces
            .iter()
            .map(|h| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| h.eval(v).is_zero())
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let affine_dim = affine_rank(&vertices);
        let facet_flags: Vec<bool> = incidence
            .iter()
            .map(|tight| {
                !tight.is_empty() && {
                    let pts: Vec<Vec<Rat>> = tight.iter().map(|&i| vertices[i].clone()).collect();
                    affine_rank(&pts) + 1 == affine_dim
                }
            })
            .collect();
        // consistency: every vertex satisfies every halfspace
        for v in &vertices {
            for (h, label) in halfspaces.iter().zip(&labels) {
                assert!(
                    !h.eval(v).is_negative(),
                    "vertex {v:?} violates halfspace {label}"
                );
            }
        }
        Ok(ExactPolytope { halfspaces, labels, vertices, incidence, facet_flags, dim, affine_dim })
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| !h.eval(x).is_negative())
    }

    pub fn contains_strictly(&self, x: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| h.eval(x).is_positive())
    }

    pub fn num_facets(&self) -> usize {
        self.facet_flags.iter().filter(|&&f| f).count()
    }

    /// All lattice points, via the integer bounding box of the vertex set.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let dim = self.dim;
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let mut lo = vec![i64::MAX; dim];
        let mut hi = vec![i64::MIN; dim];
        for v in &self.vertices {
            for (c, x) in v.iter().enumerate() {
                let up: i64 = x.ceil().to_integer().try_into().unwrap();
                let down: i64 = x.floor().to_integer().try_into().unwrap();
                lo[c] = lo[c].min(up);
                hi[c] = hi[c].max(down);
            }
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Vec::new();
        }
        // integer fast path when every halfspace has machine-int entries
        let int_rows: Option<Vec<(Vec<i64>, i64)>> = self
            .halfspaces
            .iter()
            .map(|h| {
                let normal: Option<Vec<i64>> = h
                    .normal
                    .iter()
                    .map(|x| {
                        if x.is_integer() {
                            i64::try_from(x.to_integer()).ok()
                        } else {
                            None
                        }
                    })
                    .collect();
                let rhs = if h.rhs.is_integer() {
                    i64::try_from(h.rhs.to_integer()).ok()
                } else {
                    None
                };
                Some((normal?, rhs?))
            })
            .collect();

        let mut out = Vec::new();
        let mut point = lo.clone();
        loop {
            let inside = match &int_rows {
                Some(rows) => rows.iter().all(|(normal, rhs)| {
                    normal.iter().zip(&point).map(|(a, b)| a * b).sum::<i64>() <= *rhs
                }),
                None => {
                    let rp: Vec<Rat> = point.iter().map(|&x| crate::rat_int(x)).collect();
                    self.contains(&rp)
                }
            };
            if inside {
                out.push(point.clone());
            }
            // odometer increment
            let mut c = 0;
            loop {
                if c == dim {
                    return out;
                }
                point[c] += 1;
                if point[c] <= hi[c] {
                    break;
                }
                point[c] = lo[c];
                c += 1;
            }
        }
    }

    /// Face counts by dimension, `f_0..f_d` inclusive of the polytope itself.
    pub fn f_vector(&self) -> Vec<usize> {
        let facet_sets: Vec<BTreeSet<usize>> = self
            .incidence
            .iter()
            .zip(&self.facet_flags)
            .filter(|(_, &f)| f)
            .map(|(t, _)| t.iter().copied().collect())
            .collect();
        let all: BTreeSet<usize> = (0..self.vertices.len()).collect();
        let mut faces: HashSet<BTreeSet<usize>> = HashSet::new();
        faces.insert(all.clone());
        let mut frontier: Vec<BTreeSet<usize>> = vec![all];
        while let Some(face) = frontier.pop() {
            for fs in &facet_sets {
                let meet: BTreeSet<usize> = face.intersection(fs).copied().collect();
                if !meet.is_empty() && meet != face && faces.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        let mut counts = vec![0usize; self.affine_dim + 1];
        for face in faces {
            let pts: Vec<Vec<Rat>> = face.iter().map(|&i| self.vertices[i].clone()).collect();
            counts[affine_rank(&pts)] += 1;
        }
        counts
    }
}

// ---------------------------------------------------------------------------
// string-polytope specific constructions

/// The apex of the lambda cone: the unique point where every lambda
/// inequality is tight, solved by back-substitution from `x_N` downward.
pub fn lambda_apex(word: &ReducedWord) -> Vec<Rat> {
    let diagram = crate::diagram::StringDiagram::new(word);
    let total = word.len();
    let mut apex = vec![Rat::zero(); total];
    for i in (1..=total).rev() {
        let ci = diagram.crossing(i).corridor;
        let mut x = crate::rat_int(2);
        for j in i + 1..=total {
            let cj = diagram.crossing(j).corridor;
            match ci.abs_diff(cj) {
                0 => x -= crate::rat_int(2) * &apex[j - 1],
                1 => x += apex[j - 1].clone(),
                _ => {}
            }
        }
        apex[i - 1] = x;
    }
    apex
}

/// Build the string polytope of a word: H-representation plus exact
/// V-representation with facet flags.
pub fn string_polytope(word: &ReducedWord) -> Result<(HRep, ExactPolytope), PolytopeError> {
    let hrep = cones::delta_hrep(word);
    let halfspaces: Vec<HalfSpace> = hrep
        .iter()
        .map(|q| HalfSpace {
            normal: q.coeffs.iter().map(|&c| crate::rat_int(c)).collect(),
            rhs: crate::rat_int(q.rhs),
        })
        .collect();
    let labels: Vec<String> = hrep.iter().map(|q| q.id.clone()).collect();
    let poly = ExactPolytope::from_halfspaces(halfspaces, labels)?;
    Ok((hrep, poly))
}

/// `P = apex/2`, verified strictly interior with `b - M.P = 1` on every
/// facet (the normalization that puts the dual vertices on lattice points).
pub fn interior_point_checked(
    delta: &ExactPolytope,
    apex: &[Rat],
) -> Result<InteriorPoint, PolytopeError> {
    let half = crate::rat(1, 2);
    let coords: Vec<Rat> = apex.iter().map(|x| x * &half).collect();
    for (h, label) in delta.halfspaces.iter().zip(&delta.labels) {
        if !h.eval(&coords).is_positive() {
            return Err(PolytopeError::NotInterior(label.clone()));
        }
    }
    for ((h, label), &facet) in delta
        .halfspaces
        .iter()
        .zip(&delta.labels)
        .zip(&delta.facet_flags)
    {
        if facet {
            let value = h.eval(&coords);
            if !value.is_one() {
                return Err(PolytopeError::NormalizationFailure { id: label.clone(), value });
            }
        }
    }
    Ok(InteriorPoint { coords })
}

/// Convenience: the interior point of a word's string polytope.
pub fn interior_point(word: &ReducedWord) -> Result<InteriorPoint, PolytopeError> {
    let (_, delta) = string_polytope(word)?;
    interior_point_checked(&delta, &lambda_apex(word))
}

/// The polar dual `{ y : <y, x - P> <= 1 for all x in Delta }`.
///
/// Vertices are enumerated independently by double description from the
/// halfspaces contributed by the vertices of `delta`, then cross-checked
/// against the predicted candidates `M_d / (b_d - M_d.P)` of the
/// facet-defining inequalities. Every dual vertex must be an integer point
/// (and equal to `M_d` on the nose, since the facet normalization is 1).
pub fn dual_polytope(
    delta: &ExactPolytope,
    p: &InteriorPoint,
) -> Result<DualPolytope, PolytopeError> {
    let halfspaces: Vec<HalfSpace> = delta
        .vertices
        .iter()
        .map(|v| HalfSpace {
            normal: v.iter().zip(&p.coords).map(|(a, b)| a - b).collect(),
            rhs: Rat::one(),
        })
        .collect();
    let labels: Vec<String> = (0..delta.vertices.len()).map(|i| format!("V{i}")).collect();
    let dual = ExactPolytope::from_halfspaces(halfspaces, labels)?;

    for v in &dual.vertices {
        if v.iter().any(|x| !x.is_integer()) {
            return Err(PolytopeError::NonIntegralDual { id: format!("vertex {v:?}") });
        }
    }

    let mut vertex_ids = vec![String::new(); dual.vertices.len()];
    let mut non_facet_points = Vec::new();
    for ((h, label), &facet) in delta
        .halfspaces
        .iter()
        .zip(&delta.labels)
        .zip(&delta.facet_flags)
    {
        let denom = h.eval(&p.coords);
        let candidate: Vec<Rat> = h.normal.iter().map(|m| m / &denom).collect();
        if facet {
            if candidate.iter().any(|x| !x.is_integer()) || !denom.is_one() {
                return Err(PolytopeError::NonIntegralDual { id: label.clone() });
            }
            let idx = dual
                .vertices
                .iter()
                .position(|v| v == &candidate)
                .ok_or_else(|| PolytopeError::NonIntegralDual { id: label.clone() })?;
            vertex_ids[idx] = label.clone();
        } else {
            assert!(
                dual.contains(&candidate),
                "dual point of non-facet inequality {label} fell outside the dual"
            );
            non_facet_points.push((label.clone(), candidate));
        }
    }
    if vertex_ids.iter().any(String::is_empty) {
        // a dual vertex unmatched by any facet candidate would contradict
        // polar duality itself
        return Err(PolytopeError::NonIntegralDual { id: "unmatched dual vertex".into() });
    }
    Ok(DualPolytope { polytope: dual, vertex_ids, non_facet_points })
}

/// Result of the facet test for a box-equation quadruple: the linear form
/// `L(y) = y_top - y_bot + 1` must vanish on the four named vertices and be
/// nonnegative on all other vertices of the dual.
#[derive(Debug, Clone)]
pub struct QuadrupleTest {
    pub passed: bool,
    /// `(vertex id, L value)` for every dual vertex.
    pub values: Vec<(String, Rat)>,
}

pub fn facet_quadruple_test(
    dual: &DualPolytope,
    top: usize,
    bot: usize,
    quad_ids: [&str; 4],
) -> QuadrupleTest {
    let mut passed = true;
    let mut values = Vec::new();
    for (v, id) in dual.polytope.vertices.iter().zip(&dual.vertex_ids) {
        let l = &v[top - 1] - &v[bot - 1] + Rat::one();
        if quad_ids.contains(&id.as_str()) {
            passed &= l.is_zero();
        } else {
            passed &= !l.is_negative();
        }
        values.push((id.clone(), l));
    }
    QuadrupleTest { passed, values }
}

/// Ranks of the divisor class group and the rational Picard group of the
/// toric variety of the polytope's normal fan.
///
/// The class rank is `#facets - dim`. The Picard rank is the dimension of
/// the space of fanwise-linear support functions (one linear functional per
/// vertex cone, forced to agree on every shared ray) minus the global
/// linear functions.
pub fn class_and_picard_rank(poly: &ExactPolytope) -> Result<(usize, usize), PolytopeError> {
    if poly.affine_dim != poly.dim || poly.dim == 0 {
        return Err(PolytopeError::DegenerateFan);
    }
    let dim = poly.dim;
    let facets: Vec<usize> = (0..poly.halfspaces.len())
        .filter(|&i| poly.facet_flags[i])
        .collect();
    let mut rays: Vec<Vec<Rat>> = Vec::new();
    for &f in &facets {
        let mut r = poly.halfspaces[f].normal.clone();
        normalize_ray(&mut r);
        assert!(
            !rays.contains(&r),
            "two facets share a normal ray; the polytope cannot be bounded"
        );
        rays.push(r);
    }
    let class_rank = facets.len() - dim;

    // unknowns: one linear functional per vertex (dim each), one support
    // value per ray; constraint rows: m_v . r - c_r = 0 for incident pairs
    let nv = poly.vertices.len();
    let unknowns = nv * dim + rays.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (ri, &f) in facets.iter().enumerate() {
        for &vi in &poly.incidence[f] {
            let mut row = vec![Rat::zero(); unknowns];
            for c in 0..dim {
                row[vi * dim + c] = rays[ri][c].clone();
            }
            row[nv * dim + ri] = -Rat::one();
            rows.push(row);
        }
    }
    let solution_dim = unknowns - rational_rank(rows);
    Ok((class_rank, solution_dim - dim))
}

/// Brute-force vertex enumeration used as an independent oracle in tests:
/// solve every `dim`-subset of tight halfspaces and keep the feasible,
/// uniquely-determined solutions.
pub mod oracle {
    use super::{rational_rank, HalfSpace};
    use crate::Rat;
    use num_traits::{Signed, Zero};

    /// Solve `rows . x = rhs` when the square-ish system has full rank.
    fn solve_unique(rows: &[&HalfSpace], dim: usize) -> Option<Vec<Rat>> {
        let mut m: Vec<Vec<Rat>> = rows
            .iter()
            .map(|h| {
                let mut r = h.normal.clone();
                r.push(h.rhs.clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..dim {
            let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].recip();
            for i in 0..m.len() {
                if i != rank && !m[i][col].is_zero() {
                    let factor = &m[i][col] * &inv;
                    for c in col..=dim {
                        let sub = &factor * &m[rank][c];
                        m[i][c] -= sub;
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        if rank != dim {
            return None;
        }
        let mut x = vec![Rat::zero(); dim];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = &m[r][dim] / &m[r][col];
        }
        Some(x)
    }

    /// All vertices of the (bounded) intersection, by exhaustive enumeration
    /// of `dim`-subsets of halfspaces taken as tight.
    pub fn brute_force_vertices(halfspaces: &[HalfSpace]) -> Vec<Vec<Rat>> {
        let dim = halfspaces.first().map_or(0, |h| h.normal.len());
        let m = halfspaces.len();
        let mut out: Vec<Vec<Rat>> = Vec::new();
        if dim == 0 || m < dim {
            return out;
        }
        let mut subset: Vec<usize> = (0..dim).collect();
        loop {
            let rows: Vec<&HalfSpace> = subset.iter().map(|&i| &halfspaces[i]).collect();
            let normals: Vec<Vec<Rat>> = rows.iter().map(|h| h.normal.clone()).collect();
            if rational_rank(normals) == dim {
                if let Some(x) = solve_unique(&rows, dim) {
                    if halfspaces.iter().all(|h| !h.eval(&x).is_negative()) && !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
            // next combination
            let mut i = dim;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if subset[i] != i + m - dim {
                    subset[i] += 1;
                    for j in i + 1..dim {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(letters: &[u8]) -> ReducedWord {
        let n = *letters.iter().max().unwrap();
        ReducedWord::new(n, letters.to_vec()).unwrap()
    }

    fn rv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| crate::rat_int(x)).collect()
    }

    #[test]
    fn segment_polytope() {
        let (hrep, poly) = string_polytope(&word(&[1])).unwrap();
        assert_eq!(hrep.len(), 2);
        assert_eq!(poly.vertices, vec![rv(&[0]), rv(&[2])]);
        assert_eq!(poly.f_vector(), vec![2, 1]);
    }

    #[test]
    fn delta_121_vertices() {
        let (_, poly) = string_polytope(&word(&[1, 2, 1])).unwrap();
        let expect: Vec<Vec<Rat>> = [
            [0, 0, 0],
            [0, 2, 0],
            [0, 2, 2],
            [0, 4, 2],
            [2, 0, 0],
            [2, 4, 2],
            [4, 2, 0],
        ]
        .iter()
        .map(|v| rv(v))
        .collect();
        assert_eq!(poly.vertices, expect);
        assert!(poly.facet_flags.iter().all(|&f| f));
        assert_eq!(poly.f_vector(), vec![7, 11, 6, 1]);
    }

    #[test]
    fn delta_121_matches_brute_force_oracle() {
        let (_, poly) = string_polytope(&word(&[1, 2, 1])).unwrap();
        let oracle = oracle::brute_force_vertices(&poly.halfspaces);
        assert_eq!(poly.vertices, oracle);
    }

    #[test]
    fn apex_values() {
        assert_eq!(lambda_apex(&word(&[1])), rv(&[2]));
        assert_eq!(lambda_apex(&word(&[1, 2, 1])), rv(&[2, 4, 2]));
        assert_eq!(lambda_apex(&word(&[3, 1, 2, 1, 3, 2])), rv(&[2, 2, 6, 4, 4, 2]));
    }

    #[test]
    fn interior_points() {
        assert_eq!(interior_point(&word(&[1])).unwrap().coords, rv(&[1]));
        assert_eq!(interior_point(&word(&[1, 2, 1])).unwrap().coords, rv(&[1, 2, 1]));
    }

    #[test]
    fn dual_of_segment() {
        let (_, poly) = string_polytope(&word(&[1])).unwrap();
        let p = interior_point(&word(&[1])).unwrap();
        let dual = dual_polytope(&poly, &p).unwrap();
        assert_eq!(dual.polytope.vertices, vec![rv(&[-1]), rv(&[1])]);
        assert!(dual.non_facet_points.is_empty());
    }

    #[test]
    fn dual_of_121() {
        let (_, poly) = string_polytope(&word(&[1, 2, 1])).unwrap();
        let p = interior_point(&word(&[1, 2, 1])).unwrap();
        let dual = dual_polytope(&poly, &p).unwrap();
        let expect: Vec<Vec<Rat>> = [
            [-1, 0, 0],
            [0, -1, 1],
            [0, 0, -1],
            [0, 0, 1],
            [0, 1, -1],
            [1, -1, 2],
        ]
        .iter()
        .map(|v| rv(v))
        .collect();
        assert_eq!(dual.polytope.vertices, expect);
    }

    #[test]
    fn quadruple_test_121() {
        let w = word(&[1, 2, 1]);
        let (_, poly) = string_polytope(&w).unwrap();
        let p = interior_point(&w).unwrap();
        let dual = dual_polytope(&poly, &p).unwrap();
        let q = facet_quadruple_test(&dual, 1, 3, ["S1.1", "L1", "S1.2", "L3"]);
        assert!(q.passed);
        // non-members L2 and S2.1 sit at L = 2, members at 0
        for (id, val) in &q.values {
            let expect = if id == "L2" || id == "S2.1" { 2 } else { 0 };
            assert_eq!(val, &crate::rat_int(expect), "{id}");
        }
    }

    #[test]
    fn corrupted_quadruple_fails() {
        let w = word(&[1, 2, 1]);
        let (_, poly) = string_polytope(&w).unwrap();
        let p = interior_point(&w).unwrap();
        let dual = dual_polytope(&poly, &p).unwrap();
        // swapping one member for a non-member must fail the test
        let q = facet_quadruple_test(&dual, 1, 3, ["S1.1", "L1", "S1.2", "L2"]);
        assert!(!q.passed);
    }

    #[test]
    fn cube_class_and_picard_rank() {
        // [0,2]^3 as a plain halfspace system
        let mut halfspaces = Vec::new();
        let mut labels = Vec::new();
        for c in 0..3 {
            for (s, b) in [(1i64, 2i64), (-1, 0)] {
                let mut normal = rv(&[0, 0, 0]);
                normal[c] = crate::rat_int(s);
                halfspaces.push(HalfSpace { normal, rhs: crate::rat_int(b) });
                labels.push(format!("c{c}s{s}"));
            }
        }
        let cube = ExactPolytope::from_halfspaces(halfspaces, labels).unwrap();
        assert_eq!(cube.vertices.len(), 8);
        assert_eq!(cube.f_vector(), vec![8, 12, 6, 1]);
        let (class, pic) = class_and_picard_rank(&cube).unwrap();
        assert_eq!(class, 3);
        assert_eq!(pic, 3);
    }

    #[test]
    fn unbounded_and_empty_are_detected() {
        // x >= 0 alone in R^1 is unbounded
        let h = vec![HalfSpace { normal: rv(&[-1]), rhs: Rat::zero() }];
        assert!(matches!(
            ExactPolytope::from_halfspaces(h, vec!["h".into()]),
            Err(PolytopeError::Unbounded)
        ));
        // x <= -1 and -x <= 0 is empty
        let h = vec![
            HalfSpace { normal: rv(&[1]), rhs: crate::rat_int(-1) },
            HalfSpace { normal: rv(&[-1]), rhs: Rat::zero() },
        ];
        assert!(matches!(
            ExactPolytope::from_halfspaces(h, vec!["a".into(), "b".into()]),
            Err(PolytopeError::Empty)
        ));
    }

    #[test]
    fn misplaced_interior_point_is_rejected() {
        let w = word(&[1]);
        let (_, poly) = string_polytope(&w).unwrap();
        // boundary point: strict interiority fails
        let apex_itself: Vec<Rat> = vec![crate::rat_int(4)];
        assert!(matches!(
            interior_point_checked(&poly, &apex_itself),
            Err(PolytopeError::NotInterior(_))
        ));
        // interior but unnormalized: b - M.P != 1 on a facet
        let off_center: Vec<Rat> = vec![crate::rat_int(1)];
        assert!(matches!(
            interior_point_checked(&poly, &off_center),
            Err(PolytopeError::NormalizationFailure { .. })
        ));
    }

    #[test]
    fn non_integral_dual_is_reported() {
        let w = word(&[1]);
        let (_, poly) = string_polytope(&w).unwrap();
        // a valid interior point that breaks the unit normalization makes
        // the polar dual land off the lattice
        let p = InteriorPoint { coords: vec![crate::rat(1, 2)] };
        assert!(matches!(
            dual_polytope(&poly, &p),
            Err(PolytopeError::NonIntegralDual { .. })
        ));
    }

    #[test]
    fn lattice_points_of_121() {
        let (_, poly) = string_polytope(&word(&[1, 2, 1])).unwrap();
        let pts = poly.lattice_points();
        for v in &poly.vertices {
            let vi: Vec<i64> = v
                .iter()
                .map(|x| i64::try_from(x.to_integer()).unwrap())
                .collect();
            assert!(pts.contains(&vi));
        }
        assert!(pts.len() > poly.vertices.len());
    }
}
