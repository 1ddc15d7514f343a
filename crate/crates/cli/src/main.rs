//! Command-line surface for the string-polytope pipeline. Every command
//! prints a single JSON report to standard output (keys sorted, exact
//! rationals never rounded) and reserves standard error for diagnostics.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on input errors.

mod orbit;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};
use stringpoly::cones::InequalityKind;
use stringpoly::diagram::StringDiagram;
use stringpoly::weyl::{enumerate_words_with_cap, BraidMove, MoveKind, ReducedWord};
use stringpoly::{family, lifting, polytope};

use report::{ivec_json, points_json, rat_json, report, rvec_json, CheckList};

#[derive(Parser)]
#[command(
    name = "stringpoly",
    about = "String polytopes, dual polytopes, and mirror Laurent families of reduced words",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Include wall-clock timings in reports (off by default so reports are
    /// byte-identical across runs).
    #[arg(long, global = true)]
    timing: bool,
    /// Emit JSON (the only supported format; accepted for compatibility).
    #[arg(long, global = true, default_value_t = true, hide = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all reduced words of the longest element for a rank.
    Words {
        #[arg(long)]
        n: u8,
        /// Permit ranks above 3 (the word count grows super-exponentially).
        #[arg(long)]
        allow_large: bool,
    },
    /// The string diagram of a word: crossings, trajectories, boxes.
    Diagram {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<u8>,
    },
    /// String and lambda inequalities of the word's polytope.
    Cone {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<u8>,
    },
    /// Exact vertices of the string polytope, optionally with its polar
    /// dual, f-vector, and toric ranks.
    Polytope {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<u8>,
        /// Also compute the polar dual with respect to the interior point.
        #[arg(long)]
        dual: bool,
        /// Include face counts by dimension.
        #[arg(long = "f-vector")]
        f_vector: bool,
        /// Include class and Picard ranks of the normal fan.
        #[arg(long)]
        picard: bool,
    },
    /// The Laurent family, its box equations, and the parameter space.
    Family {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<u8>,
    },
    /// Verification drivers for braid moves and move chains.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// The toric Picard-rank indicator for smallness of the degeneration.
    Smallness {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<u8>,
    },
    /// Run the full invariant suite over every word of a rank.
    Orbit {
        #[arg(long)]
        n: u8,
        /// Permit ranks above 3.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// All single-move checks at a position of a word.
    Move {
        #[arg(long)]
        word: String,
        #[arg(long)]
        n: Option<u8>,
        /// 1-based position of the move (kind inferred from the letters).
        #[arg(long)]
        pos: usize,
    },
    /// Chained birationality between two words of the same rank.
    Chain {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum CmdError {
    Input(String),
    Verification,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut body = report(&command_echo(&cli.command));
    let outcome = run(&cli.command, &mut body);
    if cli.timing {
        body.insert("elapsed_ms".into(), json!(started.elapsed().as_millis() as u64));
    }
    match outcome {
        Ok(()) => {
            println!("{}", Value::Object(body));
            ExitCode::SUCCESS
        }
        Err(CmdError::Verification) => {
            println!("{}", Value::Object(body));
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("input error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn command_echo(cmd: &Command) -> String {
    match cmd {
        Command::Words { n, .. } => format!("words --n {n}"),
        Command::Diagram { word, .. } => format!("diagram --word \"{word}\""),
        Command::Cone { word, .. } => format!("cone --word \"{word}\""),
        Command::Polytope { word, dual, f_vector, picard, .. } => {
            let mut s = format!("polytope --word \"{word}\"");
            if *dual {
                s.push_str(" --dual");
            }
            if *f_vector {
                s.push_str(" --f-vector");
            }
            if *picard {
                s.push_str(" --picard");
            }
            s
        }
        Command::Family { word, .. } => format!("family --word \"{word}\""),
        Command::Verify { what } => match what {
            VerifyCommand::Move { word, pos, .. } => {
                format!("verify move --word \"{word}\" --pos {pos}")
            }
            VerifyCommand::Chain { from, to, seed, .. } => {
                format!("verify chain --from \"{from}\" --to \"{to}\" --seed {seed}")
            }
        },
        Command::Smallness { word, .. } => format!("smallness --word \"{word}\""),
        Command::Orbit { n, .. } => format!("orbit --n {n}"),
    }
}

fn parse_word(text: &str, n: Option<u8>) -> Result<ReducedWord, CmdError> {
    ReducedWord::parse(text, n).map_err(|e| CmdError::Input(e.to_string()))
}

fn rank_cap(n: u8, allow_large: bool) -> Result<u8, CmdError> {
    if n > 3 && !allow_large {
        return Err(CmdError::Input(format!(
            "rank {n} needs --allow-large; the rank-4 orbit already has 768 words"
        )));
    }
    Ok(n.max(stringpoly::weyl::DEFAULT_RANK_CAP))
}

fn run(cmd: &Command, body: &mut Map<String, Value>) -> Result<(), CmdError> {
    match cmd {
        Command::Words { n, allow_large } => {
            let cap = rank_cap(*n, *allow_large)?;
            let words =
                enumerate_words_with_cap(*n, cap).map_err(|e| CmdError::Input(e.to_string()))?;
            body.insert("n".into(), json!(n));
            body.insert("count".into(), json!(words.len()));
            body.insert(
                "words".into(),
                Value::Array(words.iter().map(|w| json!(w.to_string())).collect()),
            );
            Ok(())
        }
        Command::Diagram { word, n } => {
            let w = parse_word(word, *n)?;
            let d = StringDiagram::new(&w);
            body.insert("word".into(), json!(w.to_string()));
            body.insert("n".into(), json!(w.rank()));
            body.insert(
                "crossings".into(),
                Value::Array(
                    d.crossings()
                        .iter()
                        .map(|c| {
                            json!({
                                "level": c.level,
                                "corridor": c.corridor,
                                "strands": [c.left, c.right],
                            })
                        })
                        .collect(),
                ),
            );
            body.insert(
                "trajectories".into(),
                Value::Array(
                    (1..=w.rank() + 1)
                        .map(|s| {
                            let cols: Vec<u8> = (0..=w.len()).map(|g| d.column_of(s, g)).collect();
                            json!({"strand": s, "columns": cols})
                        })
                        .collect(),
                ),
            );
            body.insert(
                "boxes".into(),
                Value::Array(
                    d.boxes()
                        .iter()
                        .map(|b| json!({"top": b.top, "bot": b.bot, "corridor": b.corridor}))
                        .collect(),
                ),
            );
            Ok(())
        }
        Command::Cone { word, n } => {
            let w = parse_word(word, *n)?;
            let h = stringpoly::cones::delta_hrep(&w);
            body.insert("word".into(), json!(w.to_string()));
            body.insert(
                "inequalities".into(),
                Value::Array(
                    h.iter()
                        .zip(&h.multiplicities)
                        .map(|(q, mult)| {
                            let mut row = Map::new();
                            row.insert("id".into(), json!(q.id));
                            row.insert("M".into(), ivec_json(&q.coeffs));
                            row.insert("rhs".into(), json!(q.rhs));
                            row.insert("multiplicity".into(), json!(mult));
                            match &q.kind {
                                InequalityKind::Lambda { i } => {
                                    row.insert("kind".into(), json!("lambda"));
                                    row.insert("crossing".into(), json!(i));
                                }
                                InequalityKind::String { k, path } => {
                                    row.insert("kind".into(), json!("string"));
                                    row.insert("k".into(), json!(k));
                                    row.insert(
                                        "path".into(),
                                        json!({
                                            "visited": path.visited,
                                            "switches": path
                                                .switches
                                                .iter()
                                                .map(|s| json!({
                                                    "level": s.level,
                                                    "from": s.from,
                                                    "to": s.to,
                                                }))
                                                .collect::<Vec<_>>(),
                                        }),
                                    );
                                }
                            }
                            Value::Object(row)
                        })
                        .collect(),
                ),
            );
            Ok(())
        }
        Command::Polytope { word, n, dual, f_vector, picard } => {
            let w = parse_word(word, *n)?;
            let (_, delta) =
                polytope::string_polytope(&w).map_err(|e| CmdError::Input(e.to_string()))?;
            body.insert("word".into(), json!(w.to_string()));
            body.insert("vertices".into(), points_json(&delta.vertices));
            body.insert(
                "facet_ids".into(),
                Value::Array(
                    delta
                        .labels
                        .iter()
                        .zip(&delta.facet_flags)
                        .filter(|(_, &f)| f)
                        .map(|(l, _)| json!(l))
                        .collect(),
                ),
            );
            body.insert("apex".into(), rvec_json(&polytope::lambda_apex(&w)));
            if *f_vector {
                body.insert("f_vector".into(), json!(delta.f_vector()));
            }
            if *picard {
                let (class, pic) = polytope::class_and_picard_rank(&delta)
                    .map_err(|e| CmdError::Input(e.to_string()))?;
                body.insert("class_rank".into(), json!(class));
                body.insert("picard_rank".into(), json!(pic));
            }
            if *dual {
                let p = polytope::interior_point_checked(&delta, &polytope::lambda_apex(&w))
                    .map_err(|e| CmdError::Input(e.to_string()))?;
                let d = polytope::dual_polytope(&delta, &p)
                    .map_err(|e| CmdError::Input(e.to_string()))?;
                body.insert("interior_point".into(), rvec_json(&p.coords));
                body.insert(
                    "dual_vertices".into(),
                    Value::Array(
                        d.polytope
                            .vertices
                            .iter()
                            .zip(&d.vertex_ids)
                            .map(|(v, id)| json!({"id": id, "vertex": rvec_json(v)}))
                            .collect(),
                    ),
                );
                if !d.non_facet_points.is_empty() {
                    eprintln!(
                        "warning: {} non-facet inequalities have non-vertex dual points",
                        d.non_facet_points.len()
                    );
                    body.insert(
                        "non_facet_points".into(),
                        Value::Array(
                            d.non_facet_points
                                .iter()
                                .map(|(id, pt)| json!({"id": id, "point": rvec_json(pt)}))
                                .collect(),
                        ),
                    );
                }
                if *f_vector {
                    body.insert("dual_f_vector".into(), json!(d.polytope.f_vector()));
                }
                if *picard {
                    let (class, pic) = polytope::class_and_picard_rank(&d.polytope)
                        .map_err(|e| CmdError::Input(e.to_string()))?;
                    body.insert("dual_class_rank".into(), json!(class));
                    body.insert("dual_picard_rank".into(), json!(pic));
                }
            }
            Ok(())
        }
        Command::Family { word, n } => {
            let w = parse_word(word, *n)?;
            let fam = family::build_family(&w);
            let space = family::box_equations(&fam);
            body.insert("word".into(), json!(w.to_string()));
            body.insert(
                "monomials".into(),
                Value::Array(
                    fam.monomials
                        .iter()
                        .map(|(id, m)| json!({"id": id, "exponents": m}))
                        .collect(),
                ),
            );
            body.insert(
                "box_equations".into(),
                Value::Array(
                    space
                        .equations
                        .iter()
                        .map(|eq| {
                            let exps: Vec<String> =
                                eq.exponent.iter().map(|e| e.to_string()).collect();
                            json!({
                                "box": {"top": eq.region.top, "bot": eq.region.bot},
                                "p1": fam.monomials[eq.p1].0,
                                "lambda_top": fam.monomials[eq.lam_top].0,
                                "p2": fam.monomials[eq.p2].0,
                                "lambda_bot": fam.monomials[eq.lam_bot].0,
                                "exponent": exps,
                            })
                        })
                        .collect(),
                ),
            );
            body.insert("coefficients".into(), json!(space.r));
            body.insert("dimension".into(), json!(space.dim));
            body.insert("saturation_index".into(), json!(space.saturation_index().to_string()));
            Ok(())
        }
        Command::Verify { what } => match what {
            VerifyCommand::Move { word, n, pos } => {
                let w = parse_word(word, *n)?;
                let mv = infer_move(&w, *pos)?;
                let checks = verify_move(&w, mv);
                body.insert("word".into(), json!(w.to_string()));
                body.insert("pos".into(), json!(pos));
                body.insert(
                    "kind".into(),
                    json!(match mv.kind {
                        MoveKind::Two => "two",
                        MoveKind::Three => "three",
                    }),
                );
                let passed = checks.all_passed();
                body.insert("results".into(), checks.into_value());
                body.insert("passed".into(), json!(passed));
                if passed {
                    Ok(())
                } else {
                    Err(CmdError::Verification)
                }
            }
            VerifyCommand::Chain { from, to, n, seed } => {
                let a = parse_word(from, *n)?;
                let b = parse_word(to, *n)?;
                if a.rank() != b.rank() {
                    return Err(CmdError::Input("words have different ranks".into()));
                }
                body.insert("from".into(), json!(a.to_string()));
                body.insert("to".into(), json!(b.to_string()));
                body.insert("seed".into(), json!(seed));
                match lifting::chain_verify(&a, &b, *seed) {
                    Ok(r) => {
                        body.insert("moves".into(), json!(r.moves.len()));
                        body.insert("attempts".into(), json!(r.attempts));
                        body.insert("source_value".into(), rat_json(&r.source_value));
                        body.insert("passed".into(), json!(true));
                        Ok(())
                    }
                    Err(e) => {
                        body.insert("passed".into(), json!(false));
                        body.insert("witness".into(), json!(e.to_string()));
                        Err(CmdError::Verification)
                    }
                }
            }
        },
        Command::Smallness { word, n } => {
            let w = parse_word(word, *n)?;
            let (_, delta) =
                polytope::string_polytope(&w).map_err(|e| CmdError::Input(e.to_string()))?;
            let (class, pic) = polytope::class_and_picard_rank(&delta)
                .map_err(|e| CmdError::Input(e.to_string()))?;
            let flag_rank = w.rank() as usize;
            body.insert("word".into(), json!(w.to_string()));
            body.insert("class_rank".into(), json!(class));
            body.insert("picard_rank".into(), json!(pic));
            body.insert("picard_rank_flag_variety".into(), json!(flag_rank));
            body.insert("not_small".into(), json!(pic < flag_rank));
            body.insert(
                "note".into(),
                json!("toric-side necessary condition only: an equal Picard rank does not by itself certify smallness"),
            );
            Ok(())
        }
        Command::Orbit { n, allow_large } => {
            let cap = rank_cap(*n, *allow_large)?;
            let (result, passed) = orbit::run(*n, cap).map_err(CmdError::Input)?;
            for (k, v) in result.as_object().unwrap() {
                body.insert(k.clone(), v.clone());
            }
            body.insert("passed".into(), json!(passed));
            if passed {
                Ok(())
            } else {
                Err(CmdError::Verification)
            }
        }
    }
}

fn infer_move(w: &ReducedWord, pos: usize) -> Result<BraidMove, CmdError> {
    let three = BraidMove::three(pos);
    if w.move_applicable(three) {
        return Ok(three);
    }
    let two = BraidMove::two(pos);
    if w.move_applicable(two) {
        return Ok(two);
    }
    Err(CmdError::Input(format!("no braid move applies at position {pos} of {w}")))
}

fn verify_move(w: &ReducedWord, mv: BraidMove) -> CheckList {
    let mut checks = CheckList::new();
    let fam = family::build_family(w);
    let space = family::box_equations(&fam);
    match mv.kind {
        MoveKind::Three => {
            checks.push(
                "piece_classification",
                lifting::classify_pieces(w, mv)
                    .map(|r| json!({"string_classes": r.string_classes}))
                    .map_err(|e| e.to_string()),
            );
            match lifting::lift_pullback(&fam, &space, mv) {
                Ok((target, g)) => {
                    checks.push("pullback_laurent", Ok(json!({"monomials": g.rows.len()})));
                    let target_space = family::box_equations(&target);
                    let pres = lifting::verify_box_preservation(&space, &target_space, &g);
                    checks.push(
                        "box_equations_preserved",
                        if pres.ok {
                            Ok(json!({"equations": target_space.equations.len()}))
                        } else {
                            Err(format!("failing equations {:?}", pres.failing))
                        },
                    );
                    checks.push(
                        "pullback_table_agrees",
                        lifting::verify_pullback_table(&fam, &space, mv)
                            .map(|groups| json!({"groups": groups}))
                            .map_err(|e| e.to_string()),
                    );
                    checks.push(
                        "roundtrip_identity",
                        lifting::verify_roundtrip(&fam, &space, mv)
                            .map_err(|e| e.to_string())
                            .and_then(|r| {
                                if r.symbolic_identity && r.coeff_identity {
                                    Ok(json!({}))
                                } else {
                                    Err("composition is not the identity".into())
                                }
                            }),
                    );
                }
                Err(e) => checks.push("pullback_laurent", Err(e.to_string())),
            }
            checks.push(
                "pl_lattice_bijection",
                lifting::pl_verify_polytope(w, mv)
                    .map(|r| json!({"lattice_points": r.lattice_points}))
                    .map_err(|e| e.to_string()),
            );
        }
        MoveKind::Two => match lifting::two_move_transport(&fam, mv) {
            Ok((target, g)) => {
                let target_space = family::box_equations(&target);
                let pres = lifting::verify_box_preservation(&space, &target_space, &g);
                checks.push(
                    "two_move_transport",
                    if pres.ok && target_space.dim == space.dim {
                        Ok(json!({"dim": space.dim}))
                    } else {
                        Err("box-equation lattices are not isomorphic".into())
                    },
                );
            }
            Err(e) => checks.push("two_move_transport", Err(e.to_string())),
        },
    }
    checks
}
