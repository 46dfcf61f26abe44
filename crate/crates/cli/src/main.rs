//! Command-line front end.
//!
//! Exit codes: 0 success, 1 bad input, 2 genericity failure, 3 a theorem-backed
//! check failed or a reproduction did not match its reference.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use genericgb::{Error, InstanceSpec, DEFAULT_PRIME};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "genericgb", version, about = "Groebner bases of generic ideals and their multiplication matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Groebner basis and initial ideal of generic forms.
    Gb(InstanceArgs),
    /// Add a generic form of degree --extra and compare with the prediction.
    Extend(InstanceArgs),
    /// Run a check suite over several seeds.
    Verify {
        suite: Suite,
        #[command(flatten)]
        args: InstanceArgs,
    },
    /// Recompute a worked example and compare it with the reference data.
    Reproduce {
        example: Example,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Stanley,
    Lefschetz,
    Blocks,
    Corollary,
    Conjectures,
    Arl,
    Hilbert,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Example {
    PaperMain,
    PaperCounter,
}

#[derive(Args, Debug, Clone)]
struct InstanceArgs {
    /// Number of x variables.
    #[arg(short = 'n')]
    n: usize,
    /// Degrees of the forms, comma separated.
    #[arg(short = 'd', value_delimiter = ',', required = true)]
    degrees: Vec<u32>,
    /// Degree of the additional form g (needs --with-z).
    #[arg(long)]
    extra: Option<u32>,
    /// Work in K[x1..xn, z].
    #[arg(long)]
    with_z: bool,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of seeds for `verify` (seed, seed+1, ...).
    #[arg(long, default_value_t = 1)]
    trials: u32,
    /// Last row degree processed when adding g.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Write the matrices M_i as TSV blocks.
    #[arg(long)]
    dump_matrix: Option<PathBuf>,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

impl InstanceArgs {
    fn spec(&self, seed: u64) -> Result<InstanceSpec, Error> {
        if self.extra.is_some() && !self.with_z {
            return Err(Error::InvalidInput("--extra needs --with-z".into()));
        }
        let spec = InstanceSpec {
            n: self.n,
            degrees: self.degrees.clone(),
            extra: self.extra,
            with_z: self.with_z,
            prime: self.prime,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }
}

pub(crate) fn exit_code(e: &Error) -> u8 {
    match e {
        Error::GenericityFailure { .. } | Error::RankDeficiency { .. } => 2,
        Error::InvariantViolation(_) | Error::NotReduced(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Gb(args) => commands::gb(args),
        Command::Extend(args) => commands::extend(args),
        Command::Verify { suite, args } => commands::verify(*suite, args),
        Command::Reproduce { example, seed, json } => commands::reproduce(*example, *seed, *json),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
