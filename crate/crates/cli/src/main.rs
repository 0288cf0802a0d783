//! `ordercone`: one experiment per invocation, reported as canonical JSON or CSV.
//!
//! Exit codes: 0 success, 1 property violation found, 2 usage error, 3 budget exhausted.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordercone::{Budgets, Error};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "ordercone", version, about = "Experiments on spaces of left orderings")]
pub struct Cli {
    /// JSON run configuration: {"command": ..., "options": {...}, "seed": .., "format": .., "output": .., "budget": ".."}.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Budget overrides `key=value,...`, applied after ORDERCONE_BUDGET.
    #[arg(long, global = true)]
    budget: Option<String>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Sign of an element under a cone.
    Sign {
        #[arg(long)]
        cone: String,
        #[arg(long, alias = "element")]
        word: String,
    },
    /// Order of two elements under a cone.
    Compare {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Cayley ball in enumeration order.
    Ball(GroupRadius),
    /// Consistent sign assignments on a ball.
    Census {
        #[command(flatten)]
        ball: GroupRadius,
        /// Elements required to be positive.
        #[arg(long)]
        pin: Vec<String>,
        /// Smallest radius of the CSV count table (defaults to --radius).
        #[arg(long)]
        from: Option<usize>,
    },
    /// Ultrametric distance between two cones.
    Distance {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        other: String,
        #[arg(long, default_value_t = 4)]
        resolution: usize,
    },
    /// Search conjugates of a cone for one close to it.
    OrbitScan {
        #[arg(long)]
        cone: String,
        #[arg(long, default_value_t = 4)]
        conjugator_radius: usize,
        #[arg(long, default_value_t = 1)]
        target: usize,
        /// Comparison radius; defaults to target + 3.
        #[arg(long)]
        resolution: Option<usize>,
    },
    /// Semigroup witnesses for DD-positive elements of a ball.
    DdWitness {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
    },
    /// Convexity scan of a subgroup.
    Convexity {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        convex: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// Dense/discrete classification of a lattice order.
    Classify {
        #[arg(long)]
        spec: String,
    },
    /// Dense perturbation of a lattice order keeping pinned vectors positive.
    Perturb {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        pin: Vec<String>,
        #[arg(long)]
        coordinate: Option<usize>,
        #[arg(long)]
        witness_radius: Option<usize>,
    },
    /// Convexity, Conradian and bi-order scans along a chain of subgroups.
    Soul {
        #[arg(long)]
        cone: String,
        #[arg(long)]
        chain: Vec<String>,
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
    },
    /// Property suites and scans.
    Props(PropsArgs),
}

#[derive(Args, Debug)]
pub struct GroupRadius {
    /// `z`, `z2`, `zk:3`, `klein`, `b3`, `braid:4`.
    #[arg(long)]
    group: String,
    #[arg(long)]
    radius: usize,
}

#[derive(Args, Debug)]
pub struct PropsArgs {
    /// braid-axioms, subword, ultrametric, cone-axioms, order-properties, discreteness, interval.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 12)]
    max_len: usize,
    #[arg(long, default_value_t = 100)]
    pairs: usize,
    #[arg(long, default_value_t = 4)]
    resolution: usize,
    #[arg(long)]
    cone: Option<String>,
    #[arg(long, default_value_t = 3)]
    radius: usize,
    /// Candidate least positive element (discreteness) or interval generator.
    #[arg(long)]
    element: Option<String>,
    #[arg(long, default_value_t = 4)]
    k_max: u32,
    #[arg(long, default_value_t = 4)]
    n_max: u32,
}

pub struct Settings {
    pub budgets: Budgets,
    pub seed: u64,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        e if e.is_budget() => 3,
        Error::Inconsistent(_) | Error::UncertifiedConvex(_) | Error::PerturbationFailed(_) => 1,
        _ => 2,
    }
}

fn fail(code: u8, kind: &str, message: &str) -> ExitCode {
    let err = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{err}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let resolved = match config::resolve(cli) {
        Ok(r) => r,
        Err(e) => return fail(exit_for(&e), "usage", &e.to_string()),
    };
    let settings = Settings { budgets: resolved.budgets, seed: resolved.seed };
    let outcome = match commands::run(&resolved.command, &settings) {
        Ok(o) => o,
        Err(e) => {
            let kind = if e.is_budget() { "budget" } else { "error" };
            return fail(exit_for(&e), kind, &e.to_string());
        }
    };
    let bytes = match report::emit(&outcome, resolved.format) {
        Ok(b) => b,
        Err(msg) => return fail(2, "usage", &msg),
    };
    if let Err(e) = report::write(&bytes, resolved.output.as_deref()) {
        return fail(2, "io", &e.to_string());
    }
    ExitCode::from(if outcome.violation { 1 } else { 0 })
}
