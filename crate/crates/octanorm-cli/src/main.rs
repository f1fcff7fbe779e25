//! Command-line front end: parses norm/space specs, dispatches the library
//! operations, and emits machine-readable JSON reports (schema `report_v1`).
//!
//! Exit codes: 0 on success, 1 when a verification-style report fails, 2 on
//! parse/usage errors. Reports are written to stdout (and `--json` when
//! given); no partial JSON is emitted on error paths.

mod report;

use clap::{Parser, Subcommand};
use octanorm::config::Tol;
use octanorm::props2d::{self, Interval, PropertyVerdict};
use octanorm::roughness;
use octanorm::seqspace::{parse_space_vec, space_vec_to_json, SpaceVec};
use octanorm::slices2d;
use octanorm::{parse_norm, parse_space, Error, SpaceExpr};
use report::{Report, Value};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "octanorm", version, about = "Absolute-norm geometry toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for every randomized search in this invocation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Evaluation budget for search operations.
    #[arg(long, global = true, default_value_t = 2000)]
    budget: usize,

    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    json: Option<std::path::PathBuf>,

    /// Write bulk rows as CSV (slices min-diameter only).
    #[arg(long, global = true)]
    csv: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Norm evaluation, duality, and diagnostics.
    Norm {
        #[command(subcommand)]
        op: NormOp,
    },
    /// Positive octahedrality / positive SD2P checkers.
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
    /// Diametral-gap lambda window.
    Window {
        #[command(subcommand)]
        op: WindowOp,
    },
    /// Average-roughness quantities on sequence-space models.
    Rough {
        #[command(subcommand)]
        op: RoughOp,
    },
    /// Slice polygons and diameter duality.
    Slices {
        #[command(subcommand)]
        op: SlicesOp,
    },
}

#[derive(Subcommand)]
enum NormOp {
    /// Evaluate N(x, y).
    Eval {
        #[arg(long)]
        norm: String,
        /// Point as "x,y".
        #[arg(long)]
        point: String,
    },
    /// Evaluate the dual norm on a functional, with a numeric cross-check.
    Dual {
        #[arg(long)]
        norm: String,
        /// Functional as "c,d".
        #[arg(long)]
        func: String,
    },
    /// Property-check the norm axioms on random samples.
    Validate {
        #[arg(long)]
        norm: String,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Largest gamma with max(|x|,|y|) >= gamma N(x,y).
    Gamma {
        #[arg(long)]
        norm: String,
    },
    /// Strong-exposedness modulus of (1,0) at a given eps.
    Modulus {
        #[arg(long)]
        norm: String,
        #[arg(long)]
        eps: f64,
    },
}

#[derive(Subcommand)]
enum CheckOp {
    /// Positive octahedrality.
    PosOh {
        #[arg(long)]
        norm: String,
    },
    /// Positive strong diameter 2 property.
    PosSd2p {
        #[arg(long)]
        norm: String,
    },
    /// SD2P of N against octahedrality of the dual.
    Duality {
        #[arg(long)]
        norm: String,
    },
}

#[derive(Subcommand)]
enum WindowOp {
    /// Closed-form window and feasible set.
    Compute {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
    },
    /// Grid verification of the window's sign structure.
    Verify {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
    },
}

#[derive(Subcommand)]
enum RoughOp {
    /// Weighted roughness-quotient average for a fixed direction.
    Witness {
        #[arg(long)]
        space: String,
        /// JSON array of vectors shaped like the space.
        #[arg(long)]
        points: String,
        /// JSON vector shaped like the space.
        #[arg(long)]
        direction: String,
    },
    /// Seeded direction search; certifies a lower bound.
    Search {
        #[arg(long)]
        space: String,
        #[arg(long)]
        points: String,
        /// Optional JSON array of positive weights summing to 1.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Constructive direction for a paired witness set on an absolute sum.
    TheoremSum {
        #[arg(long)]
        space: String,
        #[arg(long)]
        points: String,
        #[arg(long, default_value_t = 1.0)]
        eps: f64,
    },
    /// Two-sided bracket for the two-point model l1 (+)_p l1.
    ExactDelta {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Upper-bound correction f(eps); optionally sample the inequality.
    Fbound {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        eps: f64,
        /// When positive, verify the two-point upper bound on this many
        /// random samples.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

#[derive(Subcommand)]
enum SlicesOp {
    /// Grid search for the smallest combination-of-slices diameter.
    MinDiameter {
        #[arg(long)]
        norm: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1e-3)]
        alpha: f64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
    },
    /// Compare the slice-diameter minimum with the dual roughness estimate.
    Deville {
        #[arg(long)]
        norm: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1e-3)]
        alpha: f64,
        #[arg(long, default_value_t = 48)]
        grid: usize,
    },
}

struct Outcome {
    inputs: Value,
    results: Value,
    failing: bool,
    csv: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    match execute(&cli) {
        Ok(out) => {
            if cli.csv.is_some() && out.csv.is_none() {
                eprintln!("error: --csv is only produced by 'slices min-diameter'");
                return ExitCode::from(2);
            }
            let report = Report {
                command: command_name(&cli.command),
                inputs: out.inputs,
                results: out.results,
                seed: cli.seed,
                timing_ms: started.elapsed().as_millis(),
            };
            let json = report.to_json();
            print!("{json}");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, &json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if let (Some(path), Some(rows)) = (&cli.csv, &out.csv) {
                if let Err(e) = std::fs::write(path, rows) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            eprintln!("{}", report.timing_line());
            ExitCode::from(if out.failing { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn command_name(cmd: &Command) -> String {
    match cmd {
        Command::Norm { op } => match op {
            NormOp::Eval { .. } => "norm eval",
            NormOp::Dual { .. } => "norm dual",
            NormOp::Validate { .. } => "norm validate",
            NormOp::Gamma { .. } => "norm gamma",
            NormOp::Modulus { .. } => "norm modulus",
        },
        Command::Check { op } => match op {
            CheckOp::PosOh { .. } => "check pos-oh",
            CheckOp::PosSd2p { .. } => "check pos-sd2p",
            CheckOp::Duality { .. } => "check duality",
        },
        Command::Window { op } => match op {
            WindowOp::Compute { .. } => "window compute",
            WindowOp::Verify { .. } => "window verify",
        },
        Command::Rough { op } => match op {
            RoughOp::Witness { .. } => "rough witness",
            RoughOp::Search { .. } => "rough search",
            RoughOp::TheoremSum { .. } => "rough theorem-sum",
            RoughOp::ExactDelta { .. } => "rough exact-delta",
            RoughOp::Fbound { .. } => "rough fbound",
        },
        Command::Slices { op } => match op {
            SlicesOp::MinDiameter { .. } => "slices min-diameter",
            SlicesOp::Deville { .. } => "slices deville",
        },
    }
    .to_string()
}

fn parse_pair(s: &str) -> Result<(f64, f64), Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::parse(0, format!("expected 'x,y', got '{s}'")));
    }
    let x: f64 = parts[0]
        .trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("invalid number '{}'", parts[0])))?;
    let y: f64 = parts[1]
        .trim()
        .parse()
        .map_err(|_| Error::parse(parts[0].len() + 1, format!("invalid number '{}'", parts[1])))?;
    Ok((x, y))
}

fn parse_json(s: &str) -> Result<serde_json::Value, Error> {
    serde_json::from_str(s).map_err(|e| Error::parse(e.column(), format!("invalid JSON: {e}")))
}

fn parse_points(space: &SpaceExpr, s: &str) -> Result<Vec<SpaceVec>, Error> {
    let json = parse_json(s)?;
    let items = json
        .as_array()
        .ok_or_else(|| Error::parse(0, "expected a JSON array of vectors"))?;
    items.iter().map(|v| parse_space_vec(space, v)).collect()
}

fn vec_value(v: &SpaceVec) -> Value {
    Value::from_json(&space_vec_to_json(v))
}

fn verdict_value(v: &PropertyVerdict) -> Value {
    Value::map(vec![
        (
            "property",
            Value::str(match v.property {
                props2d::Property::PosOctahedral => "pos-oh",
                props2d::Property::PosSd2p => "pos-sd2p",
            }),
        ),
        ("verdict", Value::Bool(v.verdict)),
        (
            "witness",
            v.witness.map(Value::pair).unwrap_or(Value::Null),
        ),
        ("residual", Value::Float(v.residual)),
        (
            "method",
            Value::str(match v.method {
                props2d::Method::Exact => "exact",
                props2d::Method::Numeric => "numeric",
            }),
        ),
    ])
}

fn interval_value(iv: &Interval) -> Value {
    Value::map(vec![
        ("lo", Value::Float(iv.lo)),
        ("hi", Value::Float(iv.hi)),
        ("closed_lo", Value::Bool(iv.closed_lo)),
        ("closed_hi", Value::Bool(iv.closed_hi)),
        ("display", Value::str(iv.to_string())),
    ])
}

fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let seed = cli.seed;
    let budget = cli.budget.max(1);
    match &cli.command {
        Command::Norm { op } => norm_op(op),
        Command::Check { op } => check_op(op),
        Command::Window { op } => window_op(op),
        Command::Rough { op } => rough_op(op, budget, seed),
        Command::Slices { op } => slices_op(op, seed, cli.csv.is_some()),
    }
}

fn norm_op(op: &NormOp) -> Result<Outcome, Error> {
    match op {
        NormOp::Eval { norm, point } => {
            let n = parse_norm(norm)?;
            let p = parse_pair(point)?;
            let value = n.eval(p)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("norm", Value::str(n.to_string())),
                    ("point", Value::pair(p)),
                ]),
                results: Value::map(vec![("value", Value::Float(value))]),
                failing: false,
                csv: None,
            })
        }
        NormOp::Dual { norm, func } => {
            let n = parse_norm(norm)?;
            let f = parse_pair(func)?;
            let value = n.dual_eval(f)?;
            let numeric = n.dual_eval_numeric(f)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("norm", Value::str(n.to_string())),
                    ("functional", Value::pair(f)),
                ]),
                results: Value::map(vec![
                    ("value", Value::Float(value)),
                    ("value_numeric", Value::Float(numeric)),
                ]),
                failing: false,
                csv: None,
            })
        }
        NormOp::Validate { norm, samples } => {
            let n = parse_norm(norm)?;
            let report = n.validate(*samples, 0);
            let checks = report
                .checks
                .iter()
                .map(|c| {
                    Value::map(vec![
                        ("name", Value::str(c.name)),
                        ("worst_violation", Value::Float(c.worst_violation)),
                        ("pass", Value::Bool(c.pass)),
                    ])
                })
                .collect();
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("norm", Value::str(n.to_string())),
                    ("samples", Value::from(*samples)),
                ]),
                results: Value::map(vec![
                    ("pass", Value::Bool(report.pass)),
                    ("checks", Value::List(checks)),
                ]),
                failing: !report.pass,
                csv: None,
            })
        }
        NormOp::Gamma { norm } => {
            let n = parse_norm(norm)?;
            Ok(Outcome {
                inputs: Value::map(vec![("norm", Value::str(n.to_string()))]),
                results: Value::map(vec![("gamma", Value::Float(n.gamma_inf()))]),
                failing: false,
                csv: None,
            })
        }
        NormOp::Modulus { norm, eps } => {
            let n = parse_norm(norm)?;
            let gamma = n.exposedness_modulus(*eps)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("norm", Value::str(n.to_string())),
                    ("eps", Value::Float(*eps)),
                ]),
                results: Value::map(vec![("gamma", Value::Float(gamma))]),
                failing: false,
                csv: None,
            })
        }
    }
}

fn check_op(op: &CheckOp) -> Result<Outcome, Error> {
    match op {
        CheckOp::PosOh { norm } => {
            let n = parse_norm(norm)?;
            let v = props2d::check_pos_oh_with(&n, &Tol::from_env());
            Ok(Outcome {
                inputs: Value::map(vec![("norm", Value::str(n.to_string()))]),
                results: verdict_value(&v),
                failing: false,
                csv: None,
            })
        }
        CheckOp::PosSd2p { norm } => {
            let n = parse_norm(norm)?;
            let v = props2d::check_pos_sd2p_with(&n, &Tol::from_env());
            Ok(Outcome {
                inputs: Value::map(vec![("norm", Value::str(n.to_string()))]),
                results: verdict_value(&v),
                failing: false,
                csv: None,
            })
        }
        CheckOp::Duality { norm } => {
            let n = parse_norm(norm)?;
            let r = props2d::check_duality_with(&n, &Tol::from_env());
            Ok(Outcome {
                inputs: Value::map(vec![("norm", Value::str(n.to_string()))]),
                results: Value::map(vec![
                    ("consistent", Value::Bool(r.consistent)),
                    ("sd2p", verdict_value(&r.sd2p)),
                    ("oh_of_dual", verdict_value(&r.oh_of_dual)),
                    (
                        "midpoint_residual",
                        r.midpoint_residual.map(Value::Float).unwrap_or(Value::Null),
                    ),
                ]),
                failing: !r.consistent,
                csv: None,
            })
        }
    }
}

fn window_op(op: &WindowOp) -> Result<Outcome, Error> {
    match op {
        WindowOp::Compute { a, b } => {
            let w = props2d::lambda_window(*a, *b)?;
            Ok(Outcome {
                inputs: Value::map(vec![("a", Value::Float(*a)), ("b", Value::Float(*b))]),
                results: Value::map(vec![
                    ("lo", Value::Float(w.lo)),
                    ("hi", Value::Float(w.hi)),
                    ("t1", Value::Float(w.t1)),
                    ("t2", Value::Float(w.t2)),
                    (
                        "feasible",
                        Value::List(w.feasible.iter().map(interval_value).collect()),
                    ),
                    (
                        "positive_gap_set",
                        Value::List(w.positive_gap_set().iter().map(interval_value).collect()),
                    ),
                ]),
                failing: false,
                csv: None,
            })
        }
        WindowOp::Verify { a, b, grid } => {
            let r = props2d::verify_window(*a, *b, *grid)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("a", Value::Float(*a)),
                    ("b", Value::Float(*b)),
                    ("grid", Value::from(*grid)),
                ]),
                results: Value::map(vec![
                    ("pass", Value::Bool(r.pass)),
                    ("max_term_mismatches", Value::from(r.max_term_mismatches)),
                    ("strict_ineq_mismatches", Value::from(r.strict_ineq_mismatches)),
                    ("gap_sign_mismatches", Value::from(r.gap_sign_mismatches)),
                    ("feasible_gap_failures", Value::from(r.feasible_gap_failures)),
                    (
                        "first_mismatch",
                        r.first_mismatch
                            .map(|(l, which)| {
                                Value::map(vec![
                                    ("lambda", Value::Float(l)),
                                    ("check", Value::str(which)),
                                ])
                            })
                            .unwrap_or(Value::Null),
                    ),
                ]),
                failing: !r.pass,
                csv: None,
            })
        }
    }
}

fn rough_op(op: &RoughOp, budget: usize, seed: u64) -> Result<Outcome, Error> {
    match op {
        RoughOp::Witness {
            space,
            points,
            direction,
        } => {
            let s = parse_space(space)?;
            let pts = parse_points(&s, points)?;
            let dir = parse_space_vec(&s, &parse_json(direction)?)?;
            let w = roughness::WitnessSet::new(s.clone(), pts)?;
            let value = w.value(&dir)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("space", Value::str(s.to_string())),
                    (
                        "points",
                        Value::List(w.points().iter().map(vec_value).collect()),
                    ),
                    ("direction", vec_value(&dir)),
                ]),
                results: Value::map(vec![("value", Value::Float(value))]),
                failing: false,
                csv: None,
            })
        }
        RoughOp::Search {
            space,
            points,
            weights,
        } => {
            let s = parse_space(space)?;
            let pts = parse_points(&s, points)?;
            let w = match weights {
                Some(text) => {
                    let json = parse_json(text)?;
                    let arr = json
                        .as_array()
                        .ok_or_else(|| Error::parse(0, "expected a JSON array of weights"))?;
                    let ws: Vec<f64> = arr.iter().filter_map(|v| v.as_f64()).collect();
                    if ws.len() != arr.len() {
                        return Err(Error::parse(0, "weights must be numbers"));
                    }
                    roughness::WitnessSet::with_weights(s.clone(), pts, ws)?
                }
                None => roughness::WitnessSet::new(s.clone(), pts)?,
            };
            let bracket = roughness::direction_search(&w, budget, seed)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("space", Value::str(s.to_string())),
                    (
                        "points",
                        Value::List(w.points().iter().map(vec_value).collect()),
                    ),
                    ("budget", Value::from(budget)),
                ]),
                results: Value::map(vec![
                    ("lower", Value::Float(bracket.lower)),
                    ("direction", vec_value(&bracket.lower_direction)),
                ]),
                failing: false,
                csv: None,
            })
        }
        RoughOp::TheoremSum { space, points, eps } => {
            let s = parse_space(space)?;
            let pts = parse_points(&s, points)?;
            let w = roughness::WitnessSet::new(s.clone(), pts)?;
            let out = roughness::constructive_sum_direction(&w, *eps, budget, seed)?;
            let satisfied = out.achieved >= out.predicted - 1e-6;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("space", Value::str(s.to_string())),
                    (
                        "points",
                        Value::List(w.points().iter().map(vec_value).collect()),
                    ),
                    ("eps", Value::Float(*eps)),
                    ("budget", Value::from(budget)),
                ]),
                results: Value::map(vec![
                    ("achieved", Value::Float(out.achieved)),
                    ("predicted", Value::Float(out.predicted)),
                    (
                        "branch",
                        Value::str(match out.branch {
                            roughness::SumBranch::BothFactors => "both-factors",
                            roughness::SumBranch::SecondFactorOnly => "second-factor-only",
                            roughness::SumBranch::FirstFactorOnly => "first-factor-only",
                        }),
                    ),
                    ("direction", vec_value(&out.direction)),
                    ("satisfied", Value::Bool(satisfied)),
                ]),
                failing: !satisfied,
                csv: None,
            })
        }
        RoughOp::ExactDelta { p, tol } => {
            let r = roughness::exact_delta_report(*p, *tol, budget, seed)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("p", Value::Float(*p)),
                    ("tol", Value::Float(*tol)),
                    ("budget", Value::from(budget)),
                ]),
                results: Value::map(vec![
                    ("lower", Value::Float(r.bracket.lower)),
                    ("upper", Value::Float(r.bracket.upper.unwrap())),
                    (
                        "upper_source",
                        Value::str(r.bracket.upper_source.clone().unwrap_or_default()),
                    ),
                    ("width", Value::Float(r.width)),
                    ("pass", Value::Bool(r.pass)),
                    ("direction", vec_value(&r.bracket.lower_direction)),
                ]),
                failing: !r.pass,
                csv: None,
            })
        }
        RoughOp::Fbound { p, eps, samples } => {
            let f = roughness::f_eps(*p, *eps)?;
            let bound = 2f64.powf(1.0 - 1.0 / p) + f;
            let mut results = vec![
                ("f_eps", Value::Float(f)),
                ("bound", Value::Float(bound)),
            ];
            let mut failing = false;
            if *samples > 0 {
                let r = roughness::check_upper_inequality(*p, *eps, *samples, seed)?;
                failing = !r.pass;
                results.push((
                    "check",
                    Value::map(vec![
                        ("samples", Value::from(r.samples)),
                        ("max_violation", Value::Float(r.max_violation)),
                        ("pass", Value::Bool(r.pass)),
                    ]),
                ));
            }
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("p", Value::Float(*p)),
                    ("eps", Value::Float(*eps)),
                    ("samples", Value::from(*samples)),
                ]),
                results: Value::map(results),
                failing,
                csv: None,
            })
        }
    }
}

fn slices_op(op: &SlicesOp, seed: u64, want_csv: bool) -> Result<Outcome, Error> {
    match op {
        SlicesOp::MinDiameter {
            norm,
            k,
            alpha,
            grid,
        } => {
            let n = parse_norm(norm)?;
            let r = slices2d::min_combo_diameter(&n, *k, *alpha, *grid, want_csv)?;
            let csv = want_csv.then(|| {
                let mut out = String::from("f1x,f1y,f2x,f2y,f3x,f3y,alpha,lambda,diameter\n");
                for row in &r.rows {
                    let mut cells: Vec<String> = Vec::with_capacity(9);
                    for slot in 0..3 {
                        match row.functionals.get(slot) {
                            Some(f) => {
                                cells.push(format!("{:.16e}", f.0));
                                cells.push(format!("{:.16e}", f.1));
                            }
                            None => {
                                cells.push(String::new());
                                cells.push(String::new());
                            }
                        }
                    }
                    cells.push(format!("{:.16e}", r.alpha));
                    cells.push(format!("{:.16e}", 1.0 / r.k as f64));
                    cells.push(format!("{:.16e}", row.diameter));
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            });
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("norm", Value::str(n.to_string())),
                    ("k", Value::from(*k)),
                    ("alpha", Value::Float(*alpha)),
                    ("grid", Value::from(*grid)),
                ]),
                results: Value::map(vec![
                    ("min_diameter", Value::Float(r.min_diameter)),
                    (
                        "best_functionals",
                        Value::List(r.best_functionals.iter().map(|&f| Value::pair(f)).collect()),
                    ),
                ]),
                failing: false,
                csv,
            })
        }
        SlicesOp::Deville {
            norm,
            k,
            alpha,
            grid,
        } => {
            let n = parse_norm(norm)?;
            let r = slices2d::deville_check(&n, *k, *alpha, *grid, seed)?;
            Ok(Outcome {
                inputs: Value::map(vec![
                    ("norm", Value::str(n.to_string())),
                    ("k", Value::from(*k)),
                    ("alpha", Value::Float(*alpha)),
                    ("grid", Value::from(*grid)),
                ]),
                results: Value::map(vec![
                    ("combo_min", Value::Float(r.combo_min)),
                    ("dual_roughness", Value::Float(r.dual_roughness)),
                    ("difference", Value::Float(r.difference)),
                    ("tol", Value::Float(r.tol)),
                    ("pass", Value::Bool(r.pass)),
                ]),
                failing: !r.pass,
                csv: None,
            })
        }
    }
}
