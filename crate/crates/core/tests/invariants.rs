//! Cross-module integration invariants at desk scale.

use num_traits::{One, Signed, Zero};
use stringpoly::weyl::{enumerate_words, MoveKind, ReducedWord};
use stringpoly::{cones, family, lifting, polytope, Rat};

fn word(letters: &[u8]) -> ReducedWord {
    let n = *letters.iter().max().unwrap();
    ReducedWord::new(n, letters.to_vec()).unwrap()
}

/// Frozen H-representation of the s3 s1 s2 s1 s3 s2 polytope. The lambda
/// rows were derived from the corridor rule and L2 checked against the
/// worked inequality x2 <= 2 + x3 - 2 x4 + x6; the string rows come from
/// the exhaustive rigorous-path search, with S1.2 checked against the
/// worked path giving x3 >= x4.
#[test]
fn golden_hrep_of_the_paper_word() {
    let h = cones::delta_hrep(&word(&[3, 1, 2, 1, 3, 2]));
    let got: Vec<(String, Vec<i64>, i64)> = h
        .iter()
        .map(|q| (q.id.clone(), q.coeffs.clone(), q.rhs))
        .collect();
    let expect: Vec<(&str, Vec<i64>, i64)> = vec![
        ("L1", vec![1, 0, -1, 0, 2, -1], 2),
        ("L2", vec![0, 1, -1, 2, 0, -1], 2),
        ("L3", vec![0, 0, 1, -1, -1, 2], 2),
        ("L4", vec![0, 0, 0, 1, 0, -1], 2),
        ("L5", vec![0, 0, 0, 0, 1, -1], 2),
        ("L6", vec![0, 0, 0, 0, 0, 1], 2),
        ("S1.1", vec![0, -1, 0, 0, 0, 0], 0),
        ("S1.2", vec![0, 0, -1, 1, 0, 0], 0),
        ("S1.3", vec![0, 0, 0, 0, -1, 1], 0),
        ("S2.1", vec![0, 0, 0, 0, 0, -1], 0),
        ("S3.1", vec![0, 0, 0, -1, 0, 1], 0),
        ("S3.2", vec![-1, 0, 0, 0, 0, 0], 0),
        ("S3.3", vec![0, 0, -1, 0, 1, 0], 0),
    ];
    assert_eq!(got.len(), expect.len());
    for ((gid, gm, gr), (eid, em, er)) in got.iter().zip(&expect) {
        assert_eq!(gid, eid);
        assert_eq!(gm, em, "{eid}");
        assert_eq!(gr, er, "{eid}");
    }
    assert!(h.multiplicities.iter().all(|&m| m == 1));
}

#[test]
fn param_space_dimension_is_braid_invariant() {
    for n in 2..=3u8 {
        let dims: Vec<usize> = enumerate_words(n)
            .unwrap()
            .iter()
            .map(|w| family::box_equations(&family::build_family(w)).dim)
            .collect();
        assert!(
            dims.windows(2).all(|p| p[0] == p[1]),
            "n={n}: dims {dims:?} not constant across the orbit"
        );
    }
}

#[test]
fn saturation_index_is_one_for_all_small_words() {
    for n in 1..=3u8 {
        for w in enumerate_words(n).unwrap() {
            let space = family::box_equations(&family::build_family(&w));
            assert!(space.saturation_index().is_one(), "{w}");
        }
    }
}

/// Polar duality is involutive: the dual of the dual, taken with respect to
/// the origin, recovers the original polytope translated by -P.
#[test]
fn polar_duality_is_involutive() {
    for letters in [vec![1u8], vec![1, 2, 1], vec![3, 1, 2, 1, 3, 2]] {
        let w = word(&letters);
        let (_, delta) = polytope::string_polytope(&w).unwrap();
        let p = polytope::interior_point_checked(&delta, &polytope::lambda_apex(&w)).unwrap();
        let dual = polytope::dual_polytope(&delta, &p).unwrap();
        let origin = polytope::InteriorPoint { coords: vec![Rat::zero(); w.len()] };
        let double = polytope::dual_polytope(&dual.polytope, &origin).unwrap();
        let mut translated: Vec<Vec<Rat>> = delta
            .vertices
            .iter()
            .map(|v| v.iter().zip(&p.coords).map(|(a, b)| a - b).collect())
            .collect();
        translated.sort();
        assert_eq!(double.polytope.vertices, translated, "{w}");
    }
}

/// The choice of reduced word changes the combinatorics of the limit: the
/// f-vectors across the n = 3 orbit are not all equal.
#[test]
fn f_vectors_differ_across_the_orbit() {
    let mut seen = std::collections::BTreeSet::new();
    for w in enumerate_words(3).unwrap() {
        let (_, poly) = polytope::string_polytope(&w).unwrap();
        seen.insert(poly.f_vector());
    }
    assert!(seen.len() > 1, "all sixteen f-vectors coincide");
}

#[test]
fn word_and_dual_f_vectors_are_reversed() {
    // simple polar sanity: face counts of the dual read backwards
    let w = word(&[3, 1, 2, 1, 3, 2]);
    let (_, delta) = polytope::string_polytope(&w).unwrap();
    let p = polytope::interior_point_checked(&delta, &polytope::lambda_apex(&w)).unwrap();
    let dual = polytope::dual_polytope(&delta, &p).unwrap();
    let f = delta.f_vector();
    let g = dual.polytope.f_vector();
    let proper_f: Vec<usize> = f[..f.len() - 1].to_vec();
    let mut proper_g: Vec<usize> = g[..g.len() - 1].to_vec();
    proper_g.reverse();
    assert_eq!(proper_f, proper_g);
}

/// Every box-equation quadruple lies on a facet of the dual, for every word
/// at n <= 3 (the facet test of the smallness comparison).
#[test]
fn box_quadruples_lie_on_dual_facets() {
    for n in 2..=3u8 {
        for w in enumerate_words(n).unwrap() {
            let fam = family::build_family(&w);
            let space = family::box_equations(&fam);
            if space.equations.is_empty() {
                continue;
            }
            let (_, delta) = polytope::string_polytope(&w).unwrap();
            let p =
                polytope::interior_point_checked(&delta, &polytope::lambda_apex(&w)).unwrap();
            let dual = polytope::dual_polytope(&delta, &p).unwrap();
            for eq in &space.equations {
                let ids = [
                    fam.monomials[eq.p1].0.as_str(),
                    fam.monomials[eq.lam_top].0.as_str(),
                    fam.monomials[eq.p2].0.as_str(),
                    fam.monomials[eq.lam_bot].0.as_str(),
                ];
                let q =
                    polytope::facet_quadruple_test(&dual, eq.region.top, eq.region.bot, ids);
                assert!(q.passed, "{w}: quadruple {ids:?} fails, values {:?}", q.values);
            }
        }
    }
}

/// The lambda apex satisfies x_i + x_k = x_j on every applicable 3-move.
#[test]
fn apex_lies_on_every_move_hyperplane() {
    for n in 2..=3u8 {
        for w in enumerate_words(n).unwrap() {
            let apex = polytope::lambda_apex(&w);
            for mv in w.applicable_moves() {
                if mv.kind == MoveKind::Three {
                    let (i, j, k) = (mv.pos, mv.pos + 1, mv.pos + 2);
                    let sum = &apex[i - 1] + &apex[k - 1];
                    assert_eq!(sum, apex[j - 1], "{w} at {mv:?}");
                }
            }
        }
    }
}

/// Full per-move machinery on the n = 2 orbit plus spot words at n = 3:
/// classification, pullback, table agreement, box preservation, round trek,
/// and the lattice-point bijection.
#[test]
fn every_small_move_verifies_end_to_end() {
    let mut words: Vec<ReducedWord> = enumerate_words(2).unwrap().into_iter().collect();
    words.push(word(&[1, 2, 1, 3, 2, 1]));
    words.push(word(&[3, 1, 2, 1, 3, 2]));
    for w in words {
        let fam = family::build_family(&w);
        let space = family::box_equations(&fam);
        for mv in w.applicable_moves() {
            match mv.kind {
                MoveKind::Three => {
                    lifting::classify_pieces(&w, mv).unwrap();
                    let (target, g) = lifting::lift_pullback(&fam, &space, mv).unwrap();
                    lifting::verify_pullback_table(&fam, &space, mv).unwrap();
                    let target_space = family::box_equations(&target);
                    assert!(lifting::verify_box_preservation(&space, &target_space, &g).ok);
                    let rt = lifting::verify_roundtrip(&fam, &space, mv).unwrap();
                    assert!(rt.symbolic_identity && rt.coeff_identity);
                    lifting::pl_verify_polytope(&w, mv).unwrap();
                }
                MoveKind::Two => {
                    let (target, g) = lifting::two_move_transport(&fam, mv).unwrap();
                    let target_space = family::box_equations(&target);
                    assert_eq!(space.dim, target_space.dim);
                    assert!(lifting::verify_box_preservation(&space, &target_space, &g).ok);
                }
            }
        }
    }
}

/// The braid-move piecewise-linear map carries the string cone into the
/// target word's string cone (checked on the integer points of a box).
#[test]
fn pl_map_carries_string_cone_into_string_cone() {
    for n in 2..=3u8 {
        for w in enumerate_words(n).unwrap() {
            let string_rows = |word: &ReducedWord| -> Vec<Vec<i64>> {
                cones::delta_hrep(word)
                    .iter()
                    .filter(|q| q.is_string())
                    .map(|q| q.coeffs.clone())
                    .collect()
            };
            let source_rows = string_rows(&w);
            for mv in w.applicable_moves() {
                if mv.kind != MoveKind::Three {
                    continue;
                }
                let target = w.apply_move(mv).unwrap();
                let target_rows = string_rows(&target);
                // integer points of a small box inside the source cone
                let total = w.len();
                let mut point = vec![0i64; total];
                loop {
                    let inside = source_rows
                        .iter()
                        .all(|m| m.iter().zip(&point).map(|(a, b)| a * b).sum::<i64>() <= 0);
                    if inside {
                        let x: Vec<Rat> =
                            point.iter().map(|&v| stringpoly::rat_int(v)).collect();
                        let y = lifting::pl_apply(mv, &x);
                        for m in &target_rows {
                            let val: Rat = m
                                .iter()
                                .zip(&y)
                                .map(|(&a, b)| stringpoly::rat_int(a) * b)
                                .sum();
                            assert!(
                                !val.is_positive(),
                                "{w} -> {target}: cone point {point:?} leaves the cone"
                            );
                        }
                    }
                    let mut c = 0;
                    loop {
                        if c == total {
                            break;
                        }
                        point[c] += 1;
                        if point[c] <= 2 {
                            break;
                        }
                        point[c] = 0;
                        c += 1;
                    }
                    if point.iter().all(|&v| v == 0) {
                        break;
                    }
                }
            }
        }
    }
}

/// A sampled family member vanishes where the scaling construction puts it,
/// and nowhere obvious else.
#[test]
fn sampled_members_evaluate_consistently() {
    let w = word(&[1, 2, 1]);
    let fam = family::build_family(&w);
    let space = family::box_equations(&fam);
    let a = family::sample_param(&space, 5);
    let t: Vec<Rat> = vec![stringpoly::rat(1, 2), stringpoly::rat_int(2), stringpoly::rat(3, 4)];
    let v = family::evaluate_member(&fam, &a, &t, Some(&space)).unwrap();
    // generic point: the value is some exact rational, and rescaling the
    // coefficients by 1/(1 - v) moves the point onto the hypersurface
    let one_minus = Rat::one() - &v;
    assert!(!one_minus.is_zero());
    let sigma = one_minus.recip();
    let scaled: Vec<Rat> = a.iter().map(|x| x * &sigma).collect();
    let on = family::evaluate_member(&fam, &scaled, &t, Some(&space)).unwrap();
    assert!(on.is_zero());
}

/// Interior points are strictly interior and normalized on every facet for
/// every word at n <= 3 (exercise of the theorem machinery, not just the
/// acceptance gate).
#[test]
fn interior_points_normalize_for_all_small_words() {
    for n in 1..=3u8 {
        for w in enumerate_words(n).unwrap() {
            let (_, delta) = polytope::string_polytope(&w).unwrap();
            let apex = polytope::lambda_apex(&w);
            let p = polytope::interior_point_checked(&delta, &apex).unwrap();
            for h in &delta.halfspaces {
                assert!(h.eval(&p.coords).is_positive(), "{w}");
            }
        }
    }
}
