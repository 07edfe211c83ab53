//! `graphpoly`: evaluate graph polynomials, extract coefficients, run
//! block-interpolation reductions and check gadget identities.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or hypothesis
//! error.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use graphpoly::blockinterp::{ElementKind, ReductionReport};
use graphpoly::format::{parse_graph, parse_rational};
use graphpoly::gadgets::{
    mu_pendant_family, pm_parallel_family, tutte_stretch_family, verify_simulation, GadgetFamily,
};
use graphpoly::pipeline;
use graphpoly::polyval::{self, frontier, Enumerator};
use graphpoly::{Graph, Rational, UniPoly};

#[derive(Parser)]
#[command(name = "graphpoly", version, about = "Exact graph polynomial toolkit")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a polynomial at a point.
    Eval {
        #[arg(long, value_enum)]
        poly: EvalPoly,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        q: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        x: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        y: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        point: Option<Rational>,
    },
    /// Print all coefficients, lowest degree first, as a JSON array.
    Coeffs {
        #[arg(long, value_enum)]
        poly: CoeffPoly,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        q: Option<Rational>,
    },
    /// Recover coefficients through a block-interpolation reduction.
    Reduce {
        #[arg(long, value_enum)]
        pipeline: Pipeline,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_rational)]
        xi: Option<Rational>,
        /// Run the matching pipeline at xi = sqrt(c).
        #[arg(long, value_parser = parse_rational, conflicts_with = "xi")]
        xi_squared: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        q: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        w: Option<Rational>,
    },
    /// Check the weight-simulation identity of a gadget family.
    VerifyGadget {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        xi: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        q: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        w: Option<Rational>,
        /// Number of random weight assignments drawn from the first four
        /// family weights.
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalPoly {
    Mu,
    Indep,
    Z,
    Z0,
    Tutte,
    Perfmatch,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffPoly {
    Mu,
    Indep,
    Z,
    Z0,
    SignedPerm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pipeline {
    SignedPerm,
    Matching,
    TutteZ,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    PmParallel,
    MuPendant,
    TutteStretch,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<graphpoly::Error> for Failure {
    fn from(e: graphpoly::Error) -> Self {
        Failure {
            code: 2,
            msg: e.to_string(),
        }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        msg: msg.into(),
    }
}

fn require(value: Option<Rational>, flag: &str) -> Result<Rational, Failure> {
    value.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn load(path: &PathBuf) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

/// Coefficients up to the true degree; the zero polynomial prints as `["0"]`.
fn coeff_strings(p: &UniPoly) -> Vec<String> {
    let trimmed = p.trimmed();
    if trimmed.is_empty() {
        return vec!["0".into()];
    }
    trimmed.iter().map(ToString::to_string).collect()
}

/// Outcome of a command: text to print and whether a check failed.
struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            failed: false,
        }
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Eval {
            poly,
            graph,
            q,
            x,
            y,
            point,
        } => {
            let g = load(&graph)?;
            let value = match poly {
                EvalPoly::Mu => frontier::matching_eval(&g, &require(point, "point")?)?,
                EvalPoly::Indep => Enumerator::new().indep_eval(&g, &require(point, "point")?)?,
                EvalPoly::Z => frontier::z_eval(&g, &require(q, "q")?, &require(point, "point")?)?,
                EvalPoly::Z0 => frontier::z0_eval(&g, &require(q, "q")?, &require(point, "point")?)?,
                EvalPoly::Tutte => polyval::tutte_eval(&g, &require(x, "x")?, &require(y, "y")?)?,
                EvalPoly::Perfmatch => frontier::perfmatch(&g)?,
            };
            Ok(Output::ok(if cli.json {
                json!({ "value": value.to_string() }).to_string()
            } else {
                value.to_string()
            }))
        }
        Command::Coeffs { poly, graph, q } => {
            let g = load(&graph)?;
            let p = match poly {
                CoeffPoly::Mu => polyval::matching_poly(&g)?,
                CoeffPoly::Indep => polyval::indep_poly(&g)?,
                CoeffPoly::Z => polyval::z_poly(&g, &require(q, "q")?)?,
                CoeffPoly::Z0 => polyval::z0_poly(&g, &require(q, "q")?)?,
                CoeffPoly::SignedPerm => polyval::signed_perm_poly(&g)?,
            };
            Ok(Output::ok(Value::from(coeff_strings(&p)).to_string()))
        }
        Command::Reduce {
            pipeline,
            graph,
            d,
            xi,
            xi_squared,
            q,
            w,
        } => {
            let g = load(&graph)?;
            let (report, expected, extra) = match pipeline {
                Pipeline::SignedPerm => {
                    let r = pipeline::recover_signed_permanent(&g, d)?;
                    let expected = polyval::signed_perm_poly(&g)?;
                    let perm_ok = r.permanent == polyval::perfmatch_eval(&g)?;
                    let extra = vec![
                        ("perm", json!(r.permanent.to_string())),
                        ("perm_verified", json!(perm_ok)),
                    ];
                    (r.report, expected, extra)
                }
                Pipeline::Matching => {
                    let r = match (xi, xi_squared) {
                        (_, Some(c)) => pipeline::recover_matching_poly_sqrt(&g, &c, d)?,
                        (Some(xi), None) => pipeline::recover_matching_poly(&g, &xi, d)?,
                        (None, None) => return Err(usage("missing --xi or --xi-squared")),
                    };
                    (r, polyval::matching_poly(&g)?, Vec::new())
                }
                Pipeline::TutteZ => {
                    let (q, w) = (require(q, "q")?, require(w, "w")?);
                    let r = pipeline::recover_z_poly(&g, &q, &w, d)?;
                    let expected = if q.is_zero() {
                        polyval::z0_poly(&g, &q)?
                    } else {
                        polyval::z_poly(&g, &q)?
                    };
                    (r, expected, Vec::new())
                }
            };
            let verified = report.coefficients == expected
                && extra
                    .iter()
                    .all(|(k, v)| *k != "perm_verified" || v == &json!(true));
            let text = render_report(&report, verified, &extra, cli.json);
            Ok(Output {
                text,
                failed: !verified,
            })
        }
        Command::VerifyGadget {
            family,
            graph,
            xi,
            q,
            w,
            trials,
            seed,
        } => {
            let g = load(&graph)?;
            let family = match family {
                FamilyName::PmParallel => pm_parallel_family(),
                FamilyName::MuPendant => mu_pendant_family(require(xi, "xi")?)?,
                FamilyName::TutteStretch => tutte_stretch_family(require(q, "q")?, require(w, "w")?)?,
            };
            let results = match trials {
                None => vec![verify_simulation(&family, &g)?],
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (0..n)
                        .map(|_| Ok(verify_simulation(&family, &random_weights(&family, &g, &mut rng)?)?))
                        .collect::<Result<Vec<_>, Failure>>()?
                }
            };
            let failed = results.iter().any(|ok| !ok);
            let text = if cli.json {
                json!({
                    "family": family.name(),
                    "results": results.iter().map(|&ok| if ok { "PASS" } else { "FAIL" }).collect::<Vec<_>>(),
                    "passed": !failed,
                })
                .to_string()
            } else {
                let mut s = String::new();
                for (i, ok) in results.iter().enumerate() {
                    let _ = writeln!(s, "trial {i}: {}", if *ok { "PASS" } else { "FAIL" });
                }
                s.trim_end().to_string()
            };
            Ok(Output { text, failed })
        }
    }
}

fn random_weights(
    family: &GadgetFamily,
    g: &Graph,
    rng: &mut ChaCha8Rng,
) -> Result<Graph, Failure> {
    let mut out = g.unweighted();
    match family.kind() {
        ElementKind::Edges => {
            for e in 0..g.m() {
                out.set_edge_weight(e, family.weight_at(rng.gen_range(0..4)))?;
            }
        }
        ElementKind::Vertices => {
            for v in 0..g.n() {
                out.set_vertex_weight(v, family.weight_at(rng.gen_range(0..4)))?;
            }
        }
    }
    Ok(out)
}

fn render_report(
    r: &ReductionReport,
    verified: bool,
    extra: &[(&str, Value)],
    as_json: bool,
) -> String {
    if as_json {
        let mut obj = json!({
            "coefficients": coeff_strings(&r.coefficients),
            "queries": r.queries,
            "grid_size": r.grid_size,
            "t": r.t,
            "d": r.d,
            "rate": r.rate(),
            "max_query_size": r.max_query_size,
            "max_query_edges": r.max_query_edges,
            "weighted_queries": r.weighted_queries,
            "non_bipartite_queries": r.non_bipartite_queries,
            "verified": verified,
        });
        for (k, v) in extra {
            obj[*k] = v.clone();
        }
        return obj.to_string();
    }
    let mut s = String::new();
    let _ = writeln!(s, "coefficients: [{}]", coeff_strings(&r.coefficients).join(", "));
    let _ = writeln!(s, "queries: {} (grid {}, t = {}, d = {})", r.queries, r.grid_size, r.t, r.d);
    let _ = writeln!(s, "rate: {}", r.rate());
    let _ = writeln!(s, "max query size: {}", r.max_query_size);
    for (k, v) in extra {
        let shown = v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string());
        let _ = writeln!(s, "{}: {shown}", k.replace('_', " "));
    }
    let _ = write!(s, "verified: {verified}");
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
