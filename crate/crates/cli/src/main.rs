//! `lab` — run experiment suites or dispatch single queries.
//!
//! ```text
//! lab run --suite all --seed 7 [--resolution N] [--sphere-resolution N]
//!         [--tol name=value ...] [--out report.json --format json|csv]
//! lab compute cpm <genfun.json>
//! lab compute order <f.csv|expr:...> <g.csv|expr:...>
//! lab compute sky <t> <y1> [y2 ...]
//! lab compute classify <curve-or-isotopy.csv>
//! ```
//!
//! Exit status: 0 when every check passes, 1 on a failed check (the first
//! failing check is named on stderr), 2 on malformed input.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use lab_cli::config::{Suite, SuiteConfig};
use lab_cli::ingest;
use lab_cli::suites::run_suite;
use lab_core::base::BaseDomain;
use lab_core::causality::{curve_positivity, sky, MinkowskiEvent};
use lab_core::order::{pointwise_leq, pointwise_lt};

#[derive(Parser)]
#[command(
    name = "lab",
    version,
    about = "Minimax invariants, Legendrian orders and causal structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named experiment suite and write its report.
    Run(RunArgs),
    /// Answer a single query and print JSON to stdout.
    Compute(ComputeArgs),
}

fn parse_suite(raw: &str) -> Result<Suite, String> {
    raw.parse()
}

#[derive(Args)]
struct RunArgs {
    /// Suite name: cpm, order, hodograph, causality, circle, escape or all.
    #[arg(long, value_parser = parse_suite)]
    suite: Suite,
    /// Seed for every randomized audit in the suite.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Circle grid resolution.
    #[arg(long, default_value_t = 1024)]
    resolution: usize,
    /// Sphere lattice resolution.
    #[arg(long, default_value_t = 4096)]
    sphere_resolution: usize,
    /// Tolerance overrides, repeatable: --tol name=value.
    #[arg(long = "tol", value_parser = parse_tolerance)]
    tolerances: Vec<(String, f64)>,
    /// Report destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn parse_tolerance(raw: &str) -> Result<(String, f64), String> {
    let (name, value) = raw
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{raw}`"))?;
    let value: f64 = value
        .parse()
        .map_err(|_| format!("tolerance `{name}`: cannot parse `{value}`"))?;
    Ok((name.to_string(), value))
}

#[derive(Args)]
struct ComputeArgs {
    #[command(subcommand)]
    query: Query,
    /// Circle resolution for expression-built fields.
    #[arg(long, default_value_t = 1024, global = true)]
    resolution: usize,
    /// Sphere resolution for sky and curve queries.
    #[arg(long, default_value_t = 4096, global = true)]
    sphere_resolution: usize,
}

#[derive(Subcommand)]
enum Query {
    /// Minimax invariants of a generating function described in JSON.
    Cpm { genfun: PathBuf },
    /// Order verdicts between two scalar fields (CSV paths or expr:...).
    Order { f: String, g: String },
    /// Sky invariants of the event (t, y).
    #[command(allow_negative_numbers = true)]
    Sky {
        t: f64,
        #[arg(num_args = 1.., required = true)]
        y: Vec<f64>,
    },
    /// Classify a sampled curve (s,t,y...) or isotopy (time,sample_index,value).
    Classify { path: PathBuf },
    /// Lift a cooriented sphere ({"center": [...], "t": r}) to contact
    /// elements, printed as CSV rows x1..xn,nu1..nun.
    Lift { sphere: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => match run(args) {
            Ok(all_passed) => {
                if all_passed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                }
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Command::Compute(args) => match compute(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
    }
}

fn run(args: RunArgs) -> Result<bool> {
    let mut cfg = SuiteConfig::new(args.suite, args.seed);
    cfg.circle_resolution = args.resolution;
    cfg.sphere_resolution = args.sphere_resolution;
    cfg.tolerances = args.tolerances.into_iter().collect();
    let report = run_suite(&cfg);
    let payload = match args.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    match &args.out {
        Some(path) => {
            std::fs::write(path, &payload).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{payload}"),
    }
    eprintln!(
        "suite {}: {}/{} checks passed in {:.2} s",
        report.suite,
        report.checks.iter().filter(|c| c.passed).count(),
        report.checks.len(),
        report.wall_time.as_secs_f64()
    );
    if let Some(failure) = report.first_failure() {
        eprintln!(
            "first failing check: {} — {}",
            failure.name, failure.summary
        );
    }
    Ok(report.passed)
}

fn compute(args: ComputeArgs) -> Result<()> {
    match args.query {
        Query::Cpm { genfun } => {
            let gf = ingest::read_genfun_json(&genfun)?;
            let pair = gf.invariants()?;
            let out = serde_json::json!({
                "c_minus": pair.c_minus,
                "c_plus": pair.c_plus,
                "witnesses": {
                    "minus": pair.witness_minus,
                    "plus": pair.witness_plus,
                },
                "method": pair.method,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Query::Order { f, g } => {
            let f = ingest::read_scalar_field(&f, args.resolution)?;
            let g = ingest::read_scalar_field(&g, args.resolution)?;
            let leq = pointwise_leq(&f, &g)?;
            let lt = pointwise_lt(&f, &g)?;
            let out = serde_json::json!({
                "leq": leq.holds,
                "lt": lt.holds,
                "verdicts": [
                    {"relation": "leq", "holds": leq.holds, "first_violation_sample": leq.first_violation},
                    {"relation": "lt", "holds": lt.holds, "first_violation_sample": lt.first_violation},
                ],
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Query::Sky { t, y } => {
            let event = MinkowskiEvent::new(t, y).map_err(|e| anyhow!("bad event: {e}"))?;
            if event.space_dim() < 2 {
                return Err(anyhow!("sky queries need at least two spatial dimensions"));
            }
            let domain = BaseDomain::sphere(event.space_dim() - 1, args.sphere_resolution)
                .map_err(|e| anyhow!("building the null sphere: {e}"))?;
            let s = sky(&event, &domain)?;
            let out = serde_json::json!({
                "c_minus": s.c_minus(),
                "c_plus": s.c_plus(),
                "grid": {
                    "c_minus": s.invariants_pair.c_minus,
                    "c_plus": s.invariants_pair.c_plus,
                    "method": s.invariants_pair.method,
                },
                "event": {"t": s.event.t, "y": s.event.y},
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Query::Classify { path } => match ingest::read_classify_csv(&path)? {
            ingest::ClassifyInput::Curve(curve) => {
                let dim = curve.events[0].space_dim();
                if dim < 2 {
                    return Err(anyhow!("curves need at least two spatial dimensions"));
                }
                let domain = BaseDomain::sphere(dim - 1, args.sphere_resolution)
                    .map_err(|e| anyhow!("building the null sphere: {e}"))?;
                let report = curve_positivity(&curve, &domain)?;
                let out = serde_json::json!({
                    "kind": "curve",
                    "classification": report.class,
                    "velocities": report.per_velocity.iter().map(|a| {
                        serde_json::json!({
                            "dt": a.velocity.dt,
                            "dy": a.velocity.dy,
                            "refined_min": a.refined_min,
                            "closed_min": a.closed_min,
                            "class": a.class,
                        })
                    }).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            }
            ingest::ClassifyInput::Isotopy(isotopy) => {
                let out = serde_json::json!({
                    "kind": "isotopy",
                    "classification": isotopy.classify(),
                    "frames": isotopy.times().len(),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            }
        },
        Query::Lift { sphere } => {
            let (sphere, t) = ingest::read_sphere_json(&sphere)?;
            let dim = sphere.center.len();
            if dim < 2 {
                return Err(anyhow!("sphere lifts need at least two dimensions"));
            }
            let domain = BaseDomain::sphere(dim - 1, args.sphere_resolution)
                .map_err(|e| anyhow!("building the lift domain: {e}"))?;
            let elements = lab_core::hodograph::lift_sphere(&sphere, t, &domain)?;
            let mut header = Vec::new();
            for k in 1..=dim {
                header.push(format!("x{k}"));
            }
            for k in 1..=dim {
                header.push(format!("nu{k}"));
            }
            println!("{}", header.join(","));
            for el in elements {
                let cells: Vec<String> = el
                    .point
                    .iter()
                    .chain(&el.conormal)
                    .map(|v| v.to_string())
                    .collect();
                println!("{}", cells.join(","));
            }
        }
    }
    Ok(())
}
