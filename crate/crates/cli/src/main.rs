//! `cofill`: cochain calculus, cofilling bounds, pagodas and depth from the
//! command line.
//!
//! Tables go to stdout as CSV, structured results as JSON. Exit codes:
//! 0 success, 2 verification failure, 3 budget exceeded, 4 bad input.

mod commands;
mod manifest;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use commands::{CliError, Output};

#[derive(Parser, Debug)]
#[command(name = "cofill", version, about = "Z2 cochains on the simplex: coboundaries, minimality, cofilling bounds")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Worker threads (0 = one per core). Results do not depend on this.
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Work budget: candidates for `profile`, moves per seed for `pagoda search`.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Absolute tolerance for `verify-all` float comparisons.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tolerance: f64,
    /// Write a run manifest (parameters, digests, wall time) to this path.
    #[arg(long, global = true)]
    pub manifest: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coboundary of a cochain given as JSON.
    Coboundary(InputArg),
    /// Minimality verdict: exact when the switching space is small enough.
    Minimal {
        #[command(flatten)]
        input: InputArg,
        /// Fail instead of falling back to necessary conditions.
        #[arg(long)]
        exact: bool,
    },
    /// Filling of a coboundary by the link of a minimum-degree vertex.
    Fill(InputArg),
    /// Exact cofilling profile at small n, as CSV.
    Profile {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Only the Pareto-optimal records.
        #[arg(long)]
        envelope: bool,
    },
    /// Lower and upper bounds on the cofilling profile.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Named example cochains.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Line-by-line inequality certificates for a given cochain.
    #[command(subcommand)]
    Certify(CertifyCommand),
    /// Pagoda verification, constructions and searches.
    #[command(subcommand)]
    Pagoda(PagodaCommand),
    /// Maximum triangle depth of a planar point configuration.
    Depth(InputArg),
    /// Reproduce the reference constants.
    VerifyAll,
}

#[derive(Args, Debug, Clone)]
pub struct InputArg {
    /// JSON input file, `-` for stdin.
    #[arg(long, short, default_value = "-")]
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum BoundsCommand {
    /// Sampled curves `alpha, bound...` as CSV.
    Curve {
        /// Comma-separated bounds: phi1, basic, thm5, thm6[:C], kms, prop7[:d].
        #[arg(long, default_value = "basic,thm5,kms,prop7:2")]
        phi: String,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// One bound at one point.
    Eval {
        #[arg(long)]
        phi: String,
        /// Rational or decimal, e.g. `2/9`.
        #[arg(long)]
        alpha: String,
    },
    /// Nested bound through d levels; prints the value, `--json` for the trace.
    Nested {
        #[arg(long)]
        d: usize,
        /// One bound per level, comma-separated.
        #[arg(long)]
        phi: String,
        #[arg(long)]
        json: bool,
    },
    /// Upper bound from the multipartite family, with the solved part ratio.
    Prop7 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ConstructCommand {
    /// Complete d-partite system on the first d parts and its coboundary.
    Multipartite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Comma-separated part sizes, d + 1 of them summing to n.
        #[arg(long)]
        parts: String,
    },
    /// `S = {1..s}` and its edge cut.
    EdgeCut {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Complete bipartite graph meeting the degree condition without being minimal.
    Bipartite {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        a: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CertifyCommand {
    /// Degree decomposition of a graph's coboundary.
    Pie(InputArg),
    /// Sum-of-squared-degrees bound for a graph.
    Lobo2(InputArg),
    /// High-degree-vertex inequality for a minimal system.
    Highdeg {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value = "1/10")]
        beta: String,
    },
    /// Low-degree inequality for a triple system.
    Low3 {
        #[command(flatten)]
        input: InputArg,
        #[arg(long)]
        tau: Option<f64>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PagodaCommand {
    /// Residuals and minimality of a pagoda given as JSON.
    Verify {
        #[command(flatten)]
        input: InputArg,
        /// Residual slack, rational.
        #[arg(long, default_value = "0")]
        eps: String,
    },
    /// Pagoda on four equal quarters of [n].
    Quadripartite {
        #[arg(long)]
        n: usize,
        /// Also print the pagoda itself.
        #[arg(long)]
        full: bool,
    },
    /// The numeric chain at `--eps0`, or the solved constant without it.
    Prop9 {
        #[arg(long)]
        eps0: Option<f64>,
    },
    /// Local search for pagodas with a small top (heuristic).
    Search {
        #[arg(long)]
        n: usize,
        /// Independent walks, run in parallel.
        #[arg(long, default_value_t = 4)]
        seeds: usize,
    },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let start = Instant::now();
    if cli.global.threads > 0 {
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    let result = commands::run(&cli.command, &cli.global);
    match result {
        Ok(Output { text, status, inputs }) => {
            print!("{text}");
            if let Some(path) = &cli.global.manifest {
                let name = command_name(&cli.command);
                if let Err(e) =
                    manifest::write(path, name, &argv, &cli.global, &inputs, text.as_bytes(), start.elapsed())
                {
                    return report(&e);
                }
            }
            ExitCode::from(status)
        }
        Err(e) => report(&e),
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Coboundary(_) => "coboundary",
        Command::Minimal { .. } => "minimal",
        Command::Fill(_) => "fill",
        Command::Profile { .. } => "profile",
        Command::Bounds(_) => "bounds",
        Command::Construct(_) => "construct",
        Command::Certify(_) => "certify",
        Command::Pagoda(_) => "pagoda",
        Command::Depth(_) => "depth",
        Command::VerifyAll => "verify-all",
    }
}

fn report(e: &CliError) -> ExitCode {
    eprintln!("{}", serde_json::json!({ "error": e.kind, "message": e.message, "exit_code": e.code }));
    ExitCode::from(e.code)
}
