use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod atlas;
mod cycles;
mod lifting;
mod loops;
mod output;
mod terms;

use output::{Failure, Out};

#[derive(Parser)]
#[command(name = "nonassoc", version, about = "Moufang loops, Fulton cycles and toric surfaces over loops")]
struct Cli {
    /// Seed for every sampler.
    #[arg(long, global = true, env = "NONASSOC_SEED", default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Worker threads for sweeps; output order does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check loop axioms, Moufang identities and diassociativity.
    Loopcheck(loops::Args),
    /// Normalize, compare or evaluate terms.
    #[command(subcommand)]
    Term(terms::Cmd),
    /// Fulton cycles, blow-ups and the triangular check.
    #[command(subcommand)]
    Cycles(cycles::Cmd),
    /// Search for liftings and build mock liftings.
    #[command(subcommand)]
    Lifting(lifting::Cmd),
    /// Build atlases, verify cocycles, count points.
    #[command(subcommand)]
    Atlas(atlas::Cmd),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = Out {
        json: cli.format == Format::Json,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Loopcheck(args) => loops::run(&out, args),
        Command::Term(cmd) => terms::run(&out, cmd),
        Command::Cycles(cmd) => cycles::run(&out, cmd),
        Command::Lifting(cmd) => lifting::run(&out, cmd),
        Command::Atlas(cmd) => atlas::run(&out, cmd),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
