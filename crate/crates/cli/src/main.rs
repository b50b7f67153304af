//! `reflab`: reports on complex reflection groups.

mod commands;
mod json;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use reflab::exactnum::{parse_rational, Rational};
use reflab::GroupSpec;

#[derive(Parser, Debug)]
#[command(name = "reflab", version, about = "Exact computations for complex reflection groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Family group, e.g. "G(3,1,2)".
    #[arg(long, global = true, conflicts_with = "gens")]
    spec: Option<String>,

    /// Generator file (JSON, see docs/g4.json).
    #[arg(long, global = true)]
    gens: Option<PathBuf>,

    /// Power series truncation order.
    #[arg(long, global = true)]
    trunc: Option<usize>,

    /// Perturbation of the base parameter, as "p/q".
    #[arg(long, global = true, value_parser = parse_epsilon)]
    epsilon: Option<Rational>,

    /// Koszul shift D (default g + 1).
    #[arg(long, global = true)]
    shift: Option<usize>,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Order, reflections, hyperplanes, degrees, exponents, amenability.
    Group,
    /// Degree duality, coexponent identity and Catalan number.
    Numerology,
    /// Koszul graded dimension and determinant series.
    Koszul,
    /// Dunkl-operator dimension of the lowest-weight module at sigma(base).
    Lowest,
    /// Bigraded Hilbert series of the diagonal coinvariant ring.
    Oracle,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

fn parse_epsilon(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("expected a rational p/q, got {s:?}"))
}

/// Inputs shared by all commands.
pub struct RunConfig {
    pub spec: GroupSpec,
    pub trunc: Option<usize>,
    pub epsilon: Option<Rational>,
    pub shift: Option<usize>,
    pub format: Format,
}

/// Rendered report and whether every asserted check passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn load_spec(cli: &Cli) -> Result<GroupSpec, String> {
    match (&cli.spec, &cli.gens) {
        (Some(s), None) => GroupSpec::parse(s).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            GroupSpec::from_generator_json(&text).map_err(|e| e.to_string())
        }
        _ => Err("exactly one of --spec or --gens is required".into()),
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    let config = RunConfig {
        spec: load_spec(cli)?,
        trunc: cli.trunc,
        epsilon: cli.epsilon.clone(),
        shift: cli.shift,
        format: cli.format,
    };
    if config.format == Format::Csv && cli.command != Command::Oracle {
        return Err("--format csv is only available for the oracle command".into());
    }
    let run = || match cli.command {
        Command::Group => commands::cmd_group(&config),
        Command::Numerology => commands::cmd_numerology(&config),
        Command::Koszul => commands::cmd_koszul(&config),
        Command::Lowest => commands::cmd_lowest(&config),
        Command::Oracle => commands::cmd_oracle(&config),
    };
    match cli.threads {
        Some(0) => Err("--threads must be positive".into()),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| e.to_string())?
            .install(run),
        None => run(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{}", outcome.text);
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: an asserted check failed");
        ExitCode::from(1)
    }
}
