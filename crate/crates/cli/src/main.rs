//! `bpminlab`: file-based front end and verification campaigns.
//!
//! Exit codes: 0 success, 1 unreadable or malformed input, 2 usage error,
//! 3 a campaign found a disagreement or violation, 4 a search ran out of
//! budget.

mod commands;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bpminlab::search::SearchBudget;

use report::Report;

#[derive(Parser)]
#[command(name = "bpminlab", version, about = "Branching-program minimization oracles and the BPIS reduction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct BudgetArgs {
    /// Wall-clock limit per search, in milliseconds.
    #[arg(long, default_value_t = 600_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget_ms: u64,
    /// Worker threads for the searches.
    #[arg(long, env = "BPMINLAB_THREADS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
}

impl BudgetArgs {
    fn budget(&self) -> SearchBudget {
        SearchBudget::default().with_wall_clock_ms(self.budget_ms).with_threads(self.threads as usize)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    LemmasN2,
    TheoremN4,
    TheoremN6Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Writes the truth table of γ_G and a `.meta` sidecar.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluates γ_G on one input given as bit strings.
    GammaEval {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Decides a BPIS instance; optionally writes the chained oaBP.
    SolveBpis {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Searches for a once-appearance program agreeing with a table.
    OabpSearch {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Minimum program size of a total table or program, or with `--s`
    /// whether size at most `s` suffices.
    Minimize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Decides whether a program of size at most `s` extends a partial table.
    MbpspStar {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Smallest reduced OBDD over all variable orders.
    ObddMin {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Minimum decision-tree depth of a partial table.
    QueryComplexity {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Writes the two-pass read-twice program for γ_G.
    #[command(name = "encode-2bp")]
    Encode2bp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Writes the program for the negation of a (3,4)-CNF.
    #[command(name = "sat2bp")]
    Sat2bp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs a verification campaign.
    Verify {
        #[arg(long, value_enum)]
        level: Level,
        #[arg(long)]
        seed: Option<u64>,
        /// Random graphs on top of the empty and complete graph.
        #[arg(long)]
        graphs: Option<u64>,
        /// Edge probability of the random graphs.
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        /// Also write the report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// How a successful run ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Disagreement,
    Inconclusive,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Disagreement => 3,
            Status::Inconclusive => 4,
        }
    }
}

pub enum Failure {
    Input(anyhow::Error),
    Usage(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

pub type Run = Result<(Report, Status), Failure>;

fn dispatch(cmd: Command) -> Run {
    match cmd {
        Command::Reduce { graph, out } => commands::reduce(&graph, &out),
        Command::GammaEval { graph, x, y, z } => commands::gamma_eval(&graph, &x, &y, &z),
        Command::SolveBpis { graph, out } => commands::solve_bpis(&graph, out.as_deref()),
        Command::OabpSearch { input, out, budget } => commands::oabp_search(&input, out.as_deref(), &budget.budget()),
        Command::Minimize { input, s, budget } => commands::minimize(&input, s, &budget.budget()),
        Command::MbpspStar { input, s, out, budget } => commands::mbpsp_star(&input, s, out.as_deref(), &budget.budget()),
        Command::ObddMin { input } => commands::obdd_min(&input),
        Command::QueryComplexity { input } => commands::query_complexity(&input),
        Command::Encode2bp { graph, out } => commands::encode_2bp(&graph, &out),
        Command::Sat2bp { input, out } => commands::sat2bp(&input, &out),
        Command::Verify { level, seed, graphs, p, out, budget } => {
            let campaign = verify::Campaign { level, seed, graphs, p, budget: budget.budget() };
            let (report, status) = verify::run(&campaign)?;
            if let Some(path) = out {
                commands::write(&path, &report.render())?;
            }
            Ok((report, status))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((report, status)) => {
            print!("{}", report.render());
            ExitCode::from(status.code())
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}\n\nRun `bpminlab --help` for usage.");
            ExitCode::from(2)
        }
    }
}
