//! `matroid-alloc`: solve core cover instances, run reductions and rounding, verify oracles,
//! benchmark against brute force and generate instances.
//!
//! Exit status is 0 on success, 2 when the answer is a certificate or a rejection (no cover, an
//! infeasible LP, a rejected guess), and 1 on usage, input or contract errors.

mod bench;
mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matroid_alloc::caps::{self, Caps};

#[derive(Parser, Debug)]
#[command(
    name = "matroid-alloc",
    version,
    about = "Allocation under matroid and polymatroid constraints"
)]
struct Cli {
    /// Largest ground set for exhaustive submodular minimization.
    #[arg(long, global = true, value_name = "N")]
    cap_ground: Option<usize>,
    /// Largest brute-force search space.
    #[arg(long, global = true, value_name = "N")]
    cap_enum: Option<u128>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args, Debug, Clone)]
pub struct Io {
    /// Input instance (JSON).
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Local search for a core cover at level b; exit 2 with certificates when none is found.
    SolveCover {
        #[command(flatten)]
        io: Io,
        /// Cover level; defaults to the instance's `b`.
        #[arg(long)]
        b: Option<i64>,
        /// Search parameter, in (0, 1/8].
        #[arg(long, default_value = "1/10")]
        eps: String,
    },
    /// Build the instance of a reduction (or, for `core`, solve through the core cover problem).
    Reduce {
        #[command(flatten)]
        io: Io,
        #[arg(long, value_enum)]
        kind: commands::ReduceKind,
        /// Rounding accuracy for `config` and `santa-gadget`; search parameter in (0, 1/8] for `core`.
        #[arg(long, default_value = "1/10")]
        eps: String,
        /// Approximation factor for `core`; defaults to 4 + 40ε.
        #[arg(long)]
        alpha: Option<String>,
        /// Fixed guess for `core`; the best accepted guess on the value grid otherwise.
        #[arg(long)]
        guess: Option<String>,
    },
    /// Solve the assignment LP and round it; exit 2 when the LP is infeasible.
    Round {
        #[command(flatten)]
        io: Io,
        /// LP target; the LP optimum when absent.
        #[arg(long)]
        target: Option<String>,
    },
    /// Check oracle axioms, and an allocation when given.
    Verify {
        #[command(flatten)]
        io: Io,
        /// Allocation to validate (JSON `{"x": ...}`).
        #[arg(long, value_name = "FILE")]
        alloc: Option<PathBuf>,
        /// Random samples per axiom on large ground sets.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the algorithms with brute force on every `*.json` in a directory.
    Bench {
        /// Corpus directory.
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        #[arg(long, default_value = "1/10")]
        eps: String,
        /// Largest cover level tried on core cover rows.
        #[arg(long, default_value_t = 6)]
        b_max: i64,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        flavor: String,
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "1")]
        u: String,
        #[arg(long, default_value = "3")]
        w: String,
        #[arg(long, default_value_t = 3)]
        max_weight: i64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn configure_caps(cli: &Cli) -> anyhow::Result<()> {
    let mut c = Caps::from_env()?;
    if let Some(g) = cli.cap_ground {
        c.ground = g;
    }
    if let Some(e) = cli.cap_enum {
        c.enum_classical = e;
        c.enum_matroid = e;
    }
    caps::set_global(c);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<commands::Status> {
    configure_caps(&cli)?;
    let format = cli.format;
    match cli.command {
        Command::SolveCover { io, b, eps } => commands::solve_cover(&io, b, &eps, format),
        Command::Reduce {
            io,
            kind,
            eps,
            alpha,
            guess,
        } => commands::reduce(&io, kind, &eps, alpha.as_deref(), guess.as_deref(), format),
        Command::Round { io, target } => commands::round(&io, target.as_deref(), format),
        Command::Verify {
            io,
            alloc,
            samples,
            seed,
        } => commands::verify(&io, alloc.as_deref(), samples, seed, format),
        Command::Bench {
            corpus,
            out,
            eps,
            b_max,
        } => bench::run(&corpus, out.as_deref(), &eps, b_max, format),
        Command::Gen {
            flavor,
            m,
            n,
            seed,
            u,
            w,
            max_weight,
            out,
        } => commands::gen(&flavor, m, n, seed, &u, &w, max_weight, out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            // clap uses 2 for usage errors, which here means a negative answer
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(commands::Status::Done) => ExitCode::SUCCESS,
        Ok(commands::Status::Negative) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
