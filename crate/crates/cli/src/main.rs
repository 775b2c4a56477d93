//! `revring`: command-line front end for the workbench.

mod commands;
mod source;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use revring::rewrite::Strategy;

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or input text: exit status 2.
    Usage(String),
    /// A computation could not finish: exit status 1.
    Runtime(String),
}

/// Outcome of a command that ran to completion.
pub type Outcome = Result<bool, Failure>;

#[derive(Parser)]
#[command(name = "revring", version, about = "Rewriting systems, skew Laurent invariants and exact Poisson brackets")]
struct Cli {
    /// Accept parameter values the presets exclude (q = 1, q = -1).
    #[arg(long, global = true)]
    allow_degenerate: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate ambiguities and report confluence.
    Check { source: String },
    /// Normal form of an expression.
    Nf {
        source: String,
        #[arg(long)]
        expr: String,
        /// largest, leftward or random:SEED
        #[arg(long, default_value = "largest", value_parser = source::strategy)]
        strategy: Strategy,
    },
    /// Irreducible words up to a degree.
    Basis {
        source: String,
        #[arg(long)]
        degree: u64,
        /// Generator degrees such as `x1:2,x2:1`; every generator defaults to 1.
        #[arg(long)]
        degrees: Option<String>,
    },
    /// Whether an element commutes with every generator.
    Central {
        source: String,
        #[arg(long)]
        expr: String,
    },
    /// Normal form of `a*b - b*a`.
    Commutator { source: String, a: String, b: String },
    /// Associated graded presentation for a degree function.
    Gr {
        source: String,
        #[arg(long)]
        degrees: String,
        /// Elements to test for centrality in the graded system.
        #[arg(long)]
        probe: Vec<String>,
    },
    /// Filtration dimensions and a growth estimate.
    Growth {
        source: String,
        #[arg(long)]
        degrees: Option<String>,
        #[arg(long, default_value_t = 400)]
        max: usize,
    },
    /// Exact bracket `{g, h}_f` in x1, x2, x3, or a plane bracket in x, y.
    Pbracket {
        #[arg(long, conflicts_with = "structure", required_unless_present = "structure")]
        potential: Option<String>,
        /// Value of `{x, y}`.
        #[arg(long)]
        structure: Option<String>,
        /// Variables of the plane allowed negative powers, e.g. `x` or `x,y`.
        #[arg(long, default_value = "")]
        laurent: String,
        /// Test `a,b,c` as a Poisson point of the potential instead.
        #[arg(long, requires = "potential")]
        point: Option<String>,
        #[arg(required_unless_present = "point")]
        g: Option<String>,
        #[arg(required_unless_present = "point")]
        h: Option<String>,
    },
    /// Semiclassical bracket of two elements at a parameter value.
    Qbracket {
        source: String,
        u: String,
        v: String,
        #[arg(long)]
        at: String,
    },
    /// Reversibility of a skew context, optionally with random identity checks.
    Rev {
        source: String,
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Check a homomorphism from a presentation into a skew ring.
    Hom {
        skew: String,
        system: String,
        /// Images of the generators, separated by `;`.
        #[arg(long)]
        images: String,
        #[arg(long)]
        probe: Vec<String>,
    },
    /// Print a built-in preset in file syntax.
    Preset {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Run every reproduction criterion.
    PaperSuite {
        #[arg(long, default_value = "largest", value_parser = source::strategy)]
        strategy: Strategy,
        /// Comma-separated criterion numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = commands::run(cli.command, cli.allow_degenerate);
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Runtime(m)) => {
            println!("FAIL {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
