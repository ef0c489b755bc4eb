//! The `ramsey` command-line tool: finite-geometry builders, forbidden
//! families, freeness checks, the witness construction, the exact
//! forbidden-submatrix solver, closed-form predictors, audits, and an
//! embedded selftest. Every run emits a JSON artifact embedding its full
//! configuration; logs go to standard error only.

mod artifact;
mod commands;
mod spec;

use anyhow::Result;
use artifact::RunConfig;
use clap::{Parser, Subcommand};
use ramsey_core::budget::Budget;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ramsey", version, about = "Ramsey lower-bound witness toolkit")]
struct Cli {
    /// Worker threads for parallel sections (default: all cores)
    #[arg(long, global = true, env = "RAMSEY_THREADS")]
    threads: Option<usize>,
    /// Write the JSON artifact to this path instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or load) a certified incidence structure
    Geometry {
        /// plane | quadrangle | hexagon | hermitian
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        q: Option<u32>,
        /// Load from a JSON incidence file instead of building
        #[arg(long)]
        load: Option<PathBuf>,
        /// Accept right-part degrees in (a/2, a] instead of exact regularity
        #[arg(long)]
        relax_degrees: bool,
    },
    /// Enumerate the forbidden pattern family of a graph
    Lfamily {
        /// C5, K4, P3, g6:..., or @file.g6
        #[arg(long)]
        forbid: String,
        /// Wall-clock budget like 60s, 500ms, 2m
        #[arg(long)]
        budget: Option<String>,
        /// Node budget for the enumeration
        #[arg(long)]
        nodes: Option<u64>,
    },
    /// Decide pattern-freeness of a geometry against a forbidden family
    Checkfree {
        /// FAMILY:q=N or a .json path
        #[arg(long)]
        geometry: String,
        #[arg(long)]
        forbid: String,
        /// Also test the transposed orientation
        #[arg(long)]
        transpose: bool,
        #[arg(long)]
        relax_degrees: bool,
    },
    /// Run the full witness construction and certify the result
    Witness {
        #[arg(long)]
        geometry: String,
        #[arg(long)]
        forbid: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Vertex sampling probability; defaults to the formula value
        #[arg(long)]
        p: Option<f64>,
        /// Constant profile: paper | desk
        #[arg(long, default_value = "desk")]
        params: String,
        /// Attach a distribution audit with this many trials
        #[arg(long)]
        audit_trials: Option<u64>,
        #[arg(long)]
        audit_set_size: Option<usize>,
        #[arg(long)]
        relax_degrees: bool,
    },
    /// Exact maximum 1s in an m-by-n matrix avoiding a pattern family
    Zarankiewicz {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// c4 or lfamily:<graph>
        #[arg(long)]
        family: String,
        #[arg(long)]
        budget: Option<String>,
        #[arg(long)]
        nodes: Option<u64>,
        /// Also write the extremal matrix as a JSON incidence file
        #[arg(long)]
        emit_witness: Option<PathBuf>,
    },
    /// Evaluate closed-form exponents and bounds
    Predict {
        /// 1 (construction values) or 3 (odd-cycle exponents)
        #[arg(long)]
        theorem: Option<u32>,
        /// Conditional exponent of the girth conjecture
        #[arg(long)]
        conjecture: bool,
        /// Girth-based extremal envelope
        #[arg(long)]
        hoory: bool,
        /// Complete-graph extremal exponents
        #[arg(long)]
        ks: bool,
        #[arg(long)]
        l: Option<u32>,
        /// Rational, e.g. 3 or 3/5
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
    },
    /// Edge-distribution audit of a sparsified clique graph
    Audit {
        #[arg(long)]
        geometry: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        set_size: usize,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        /// Also run the exhaustive container audit at this R
        #[arg(long)]
        container_r: Option<usize>,
        #[arg(long)]
        relax_degrees: bool,
    },
    /// Run the embedded oracle suite
    Selftest,
}

fn effective_budget(budget: &Option<String>, nodes: Option<u64>) -> Result<Budget> {
    let mut b = match budget {
        Some(s) => spec::parse_budget(s)?,
        None => Budget::UNLIMITED,
    };
    if let Some(n) = nodes {
        b = b.with_nodes(n);
    }
    Ok(b)
}

fn run(cli: Cli) -> Result<()> {
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
    // Ignore the error when a pool already exists (tests, repeated init).
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();

    let mut run_config = RunConfig {
        argv: std::env::args().collect(),
        threads,
        seed: None,
        budget: None,
        profile: None,
    };

    let artifact = match cli.command {
        Command::Geometry {
            family,
            q,
            load,
            relax_degrees,
        } => commands::geometry(family, q, load, relax_degrees)?,
        Command::Lfamily {
            forbid,
            budget,
            nodes,
        } => {
            run_config.budget = budget.clone();
            commands::lfamily_cmd(&forbid, effective_budget(&budget, nodes)?)?
        }
        Command::Checkfree {
            geometry,
            forbid,
            transpose,
            relax_degrees,
        } => commands::checkfree(&geometry, &forbid, transpose, relax_degrees)?,
        Command::Witness {
            geometry,
            forbid,
            seed,
            p,
            params,
            audit_trials,
            audit_set_size,
            relax_degrees,
        } => {
            run_config.seed = Some(seed);
            run_config.profile = Some(params.clone());
            commands::witness(
                &geometry,
                &forbid,
                seed,
                p,
                &params,
                audit_trials,
                audit_set_size,
                relax_degrees,
            )?
        }
        Command::Zarankiewicz {
            m,
            n,
            family,
            budget,
            nodes,
            emit_witness,
        } => {
            run_config.budget = budget.clone();
            commands::zarankiewicz_cmd(
                m,
                n,
                &family,
                effective_budget(&budget, nodes)?,
                emit_witness,
            )?
        }
        Command::Predict {
            theorem,
            conjecture,
            hoory,
            ks,
            l,
            alpha,
            beta,
            m,
            n,
            a,
            b,
            s,
        } => commands::predict(
            theorem, conjecture, hoory, ks, l, alpha, beta, m, n, a, b, s,
        )?,
        Command::Audit {
            geometry,
            seed,
            set_size,
            trials,
            container_r,
            relax_degrees,
        } => {
            run_config.seed = Some(seed);
            commands::audit(
                &geometry,
                seed,
                set_size,
                trials,
                container_r,
                relax_degrees,
            )?
        }
        Command::Selftest => commands::selftest()?,
    };
    artifact::emit(artifact, run_config, cli.out.as_deref())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
