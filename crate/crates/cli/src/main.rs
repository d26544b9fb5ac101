//! `otlab`: command-line laboratory for osculating-type ruled surfaces.
//!
//! Exit codes: 0 ok, 1 configuration or i/o error, 2 numeric/domain error,
//! 3 verification failure.

mod commands;
mod config;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{set_tolerance, CurveSource, JobConfig, Range};
use error::{CliError, Result};

#[derive(Parser, Debug)]
#[command(name = "otlab", version, about = "Osculating-type ruled surface laboratory")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Sectioned `key = value` job file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Catalog curve: helix-ex1, slant-ex2, salkowski-ex3, circle, line, helix(a,b).
    #[arg(long, global = true)]
    curve: Option<String>,
    /// Angle function: constant(c), linear(a), neg-integral-kappa or an expression in s.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<String>,
    /// Base-curve grid `a:b:n`.
    #[arg(long = "s-range", global = true, allow_hyphen_values = true)]
    s_range: Option<String>,
    /// Ruling grid `a:b:n`.
    #[arg(long = "u-range", global = true, allow_hyphen_values = true)]
    u_range: Option<String>,
    /// Output directory; reports go to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override `NAME=VALUE`, repeatable.
    #[arg(long = "tol", global = true)]
    tol: Vec<String>,
    /// Seed for randomised verification points.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Quad mesh (OBJ) plus per-vertex K, H, f, g and singular mask (CSV).
    Sample,
    /// CSV rows s,u,E,F,G,L,M,N,K,H,lambda1,lambda2 over the grid.
    CurvatureField,
    /// Singular points and base/striction intersections.
    Singular,
    /// Striction line as a polyline CSV.
    Striction,
    /// Surface, base-curve and helix classification.
    Classify,
    /// Normal curvature, geodesic curvature and geodesic torsion along a surface curve.
    Oncurve {
        /// ruling(s0), param-s(u0), linear(c1,c2,d1,d2) or `s=<expr>;u=<expr>` in t.
        #[arg(long)]
        on: Option<String>,
        /// Curve parameter grid `a:b:n`.
        #[arg(long = "t-range", allow_hyphen_values = true)]
        t_range: Option<String>,
        /// Claim that t is arc length on the surface curve (checked).
        #[arg(long = "unit-speed")]
        unit_speed: bool,
    },
    /// Compare closed forms against the finite-difference oracle.
    Verify {
        /// Run on the three built-in example surfaces instead of the configured one.
        #[arg(long)]
        examples: bool,
        /// Random regular points per surface.
        #[arg(long)]
        points: Option<usize>,
    },
}

fn load(common: &Common) -> Result<JobConfig> {
    let mut cfg = match &common.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
            JobConfig::from_text(&text)?
        }
        None => JobConfig::default(),
    };
    if let Some(c) = &common.curve {
        cfg.curve = CurveSource::Catalog(c.clone());
    }
    if let Some(t) = &common.theta {
        cfg.theta = t.clone();
    }
    if let Some(r) = &common.s_range {
        cfg.s_range = Some(Range::parse(r)?);
    }
    if let Some(r) = &common.u_range {
        cfg.u_range = Range::parse(r)?;
    }
    if let Some(o) = &common.out {
        cfg.out = Some(o.clone());
    }
    for t in &common.tol {
        set_tolerance(&mut cfg.tol, t)?;
    }
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = load(&cli.common)?;
    match cli.command {
        Command::Sample => commands::sample(&cfg),
        Command::CurvatureField => commands::curvature_field(&cfg),
        Command::Singular => commands::singular(&cfg),
        Command::Striction => commands::striction(&cfg),
        Command::Classify => commands::classify(&cfg),
        Command::Oncurve { on, t_range, unit_speed } => {
            if on.is_some() {
                cfg.oncurve = on;
            }
            if let Some(t) = t_range {
                cfg.t_range = Some(Range::parse(&t)?);
            }
            cfg.unit_speed |= unit_speed;
            commands::oncurve(&cfg)
        }
        Command::Verify { examples, points } => {
            if let Some(p) = points {
                cfg.verify_points = p;
            }
            commands::verify(&cfg, examples)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("otlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
