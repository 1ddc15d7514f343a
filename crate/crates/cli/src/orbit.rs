//! The full invariant suite over every reduced word and every applicable
//! move of a given rank.

use serde_json::{json, Value};
use stringpoly::weyl::{enumerate_words_with_cap, MoveKind, ReducedWord};
use stringpoly::{family, lifting, polytope};

use crate::report::CheckList;

/// Run every structural check on every word of the rank. Returns the JSON
/// report body and whether everything passed. The piecewise-linear
/// lattice-point bijection is only checked for `n <= 3`; beyond that the
/// grid enumeration is infeasible and the skip is recorded in the report.
pub fn run(n: u8, cap: u8) -> Result<(Value, bool), String> {
    let words = enumerate_words_with_cap(n, cap).map_err(|e| e.to_string())?;
    let mut checks = CheckList::new();
    let mut dims = Vec::new();
    let check_bijection = n <= 3;

    for w in &words {
        word_checks(w, &mut checks, &mut dims, check_bijection);
    }

    // parameter-space dimension is a braid invariant
    let invariant = dims.windows(2).all(|p| p[0] == p[1]);
    checks.push(
        "param_dimension_braid_invariant",
        if invariant {
            Ok(json!({"dim": dims.first().copied()}))
        } else {
            Err(format!("dims across orbit: {dims:?}"))
        },
    );

    // dimension identity on the standard word: dim P = pic + N, with the
    // Picard rank of the fan spanned by the dual vertices (the normal fan
    // of the primal polytope)
    let std_word = ReducedWord::standard(n);
    match dimension_identity(&std_word) {
        Ok((dim, pic, total)) if dim == pic + total => checks.push(
            "dimension_identity_standard_word",
            Ok(json!({"dim": dim, "picard": pic, "N": total})),
        ),
        Ok((dim, pic, total)) => checks.push(
            "dimension_identity_standard_word",
            Err(format!("dim P = {dim} but pic + N = {}", pic + total)),
        ),
        Err(e) => checks.push("dimension_identity_standard_word", Err(e)),
    }

    let passed = checks.all_passed();
    let body = json!({
        "n": n,
        "words": words.len(),
        "pl_bijection_checked": check_bijection,
        "results": checks.into_value(),
    });
    Ok((body, passed))
}

pub fn dimension_identity(word: &ReducedWord) -> Result<(usize, usize, usize), String> {
    let fam = family::build_family(word);
    let space = family::box_equations(&fam);
    let (_, delta) = polytope::string_polytope(word).map_err(|e| e.to_string())?;
    let (_, pic) = polytope::class_and_picard_rank(&delta).map_err(|e| e.to_string())?;
    Ok((space.dim, pic, word.len()))
}

fn word_checks(w: &ReducedWord, checks: &mut CheckList, dims: &mut Vec<usize>, bijection: bool) {
    let tag = w.to_string();
    let fam = family::build_family(w);
    let space = family::box_equations(&fam);
    dims.push(space.dim);

    let geometry = polytope::string_polytope(w)
        .map_err(|e| e.to_string())
        .and_then(|(hrep, delta)| {
            let apex = polytope::lambda_apex(w);
            let p = polytope::interior_point_checked(&delta, &apex).map_err(|e| e.to_string())?;
            let dual = polytope::dual_polytope(&delta, &p).map_err(|e| e.to_string())?;
            Ok((hrep, delta, p, dual))
        });
    let (_hrep, delta, _p, dual) = match geometry {
        Ok(g) => {
            checks.push(
                "dual_integral",
                Ok(json!({"word": tag, "dual_vertices": g.3.polytope.vertices.len()})),
            );
            g
        }
        Err(e) => {
            checks.push("dual_integral", Err(format!("{tag}: {e}")));
            return;
        }
    };

    let primal_integral = delta.vertices.iter().all(|v| v.iter().all(|x| x.is_integer()));
    checks.push(
        "delta_integral",
        if primal_integral {
            Ok(json!({"word": tag, "vertices": delta.vertices.len()}))
        } else {
            Err(format!("{tag}: a vertex has a nontrivial denominator"))
        },
    );

    if !dual.non_facet_points.is_empty() {
        checks.push(
            "all_inequalities_are_facets",
            Err(format!("{tag}: non-facet inequalities {:?}", dual.non_facet_points)),
        );
    }

    // every box-equation quadruple lies on a dual facet
    for eq in &space.equations {
        let ids = [
            fam.monomials[eq.p1].0.as_str(),
            fam.monomials[eq.lam_top].0.as_str(),
            fam.monomials[eq.p2].0.as_str(),
            fam.monomials[eq.lam_bot].0.as_str(),
        ];
        let q = polytope::facet_quadruple_test(&dual, eq.region.top, eq.region.bot, ids);
        checks.push(
            "box_quadruple_on_facet",
            if q.passed {
                Ok(json!({"word": tag, "quad": ids}))
            } else {
                Err(format!("{tag}: quadruple {ids:?}"))
            },
        );
    }

    let apex = polytope::lambda_apex(w);
    for mv in w.applicable_moves() {
        let mv_tag = format!("{tag} pos {} ({:?})", mv.pos, mv.kind);
        match mv.kind {
            MoveKind::Three => {
                let (i, j, k) = (mv.pos, mv.pos + 1, mv.pos + 2);
                let on = &apex[i - 1] + &apex[k - 1] == apex[j - 1];
                checks.push(
                    "apex_on_move_hyperplane",
                    if on { Ok(json!({"move": mv_tag})) } else { Err(mv_tag.clone()) },
                );
                checks.push(
                    "piece_classification",
                    lifting::classify_pieces(w, mv)
                        .map(|r| json!({"move": mv_tag, "string_classes": r.string_classes}))
                        .map_err(|e| format!("{mv_tag}: {e}")),
                );
                match lifting::lift_pullback(&fam, &space, mv) {
                    Ok((target, g)) => {
                        checks.push("pullback_laurent", Ok(json!({"move": mv_tag})));
                        let target_space = family::box_equations(&target);
                        let pres = lifting::verify_box_preservation(&space, &target_space, &g);
                        checks.push(
                            "box_equations_preserved",
                            if pres.ok {
                                Ok(json!({"move": mv_tag, "equations": target_space.equations.len()}))
                            } else {
                                Err(format!("{mv_tag}: equations {:?}", pres.failing))
                            },
                        );
                        checks.push(
                            "pullback_table_agrees",
                            lifting::verify_pullback_table(&fam, &space, mv)
                                .map(|groups| json!({"move": mv_tag, "groups": groups}))
                                .map_err(|e| format!("{mv_tag}: {e}")),
                        );
                        checks.push(
                            "roundtrip_identity",
                            lifting::verify_roundtrip(&fam, &space, mv)
                                .map_err(|e| format!("{mv_tag}: {e}"))
                                .and_then(|r| {
                                    if r.symbolic_identity && r.coeff_identity {
                                        Ok(json!({"move": mv_tag}))
                                    } else {
                                        Err(format!("{mv_tag}: roundtrip broke"))
                                    }
                                }),
                        );
                    }
                    Err(e) => checks.push("pullback_laurent", Err(format!("{mv_tag}: {e}"))),
                }
                if bijection {
                    checks.push(
                        "pl_lattice_bijection",
                        lifting::pl_verify_polytope(w, mv)
                            .map(|r| json!({"move": mv_tag, "lattice_points": r.lattice_points}))
                            .map_err(|e| format!("{mv_tag}: {e}")),
                    );
                }
            }
            MoveKind::Two => match lifting::two_move_transport(&fam, mv) {
                Ok((target, g)) => {
                    let target_space = family::box_equations(&target);
                    let pres = lifting::verify_box_preservation(&space, &target_space, &g);
                    let ok = pres.ok && target_space.dim == space.dim;
                    checks.push(
                        "two_move_transport",
                        if ok {
                            Ok(json!({"move": mv_tag}))
                        } else {
                            Err(format!("{mv_tag}: lattice mismatch"))
                        },
                    );
                }
                Err(e) => checks.push("two_move_transport", Err(format!("{mv_tag}: {e}"))),
            },
        }
    }
}
