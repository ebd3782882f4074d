use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sextic_cli::{load_instance, parse_point, run_verify_all, Check, CliError, RunConfig};
use sextic_core::exactalg::DEFAULT_PRIME;
use sextic_core::groebner::DEFAULT_BUDGET;

/// Verifies the node census, rank strata and pairing parity of seeded or
/// explicit quadric bundles over prime fields.
#[derive(Parser)]
#[command(name = "sextic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check.
    Verify(RunArgs),
    /// Node census of the discriminant surface.
    Census(RunArgs),
    /// Rank stratification of the Gram matrix.
    Strata(RunArgs),
    /// Node census of the double solid.
    DoubleSolid(RunArgs),
    /// Fiber rank checks over sampled points.
    Fibers(RunArgs),
    /// Pairing certificates over sampled fibers.
    Pairings(RunArgs),
    /// Smoothness spot-check of the cubic fivefold.
    Smoothness(RunArgs),
    /// Print the instance file of the selected instance.
    ShowInstance(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u64,
    /// Instance file; overrides --seed and --prime for the instance.
    #[arg(long)]
    instance: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 5)]
    retries: usize,
    /// Cap on Gröbner reduction steps per computation.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Independent lines per fiber in each pairing certificate.
    #[arg(long, default_value_t = 20)]
    lines: usize,
    /// Singular point `a,b,c,d` of the discriminant to rank-check; repeatable.
    #[arg(long = "sigma-point", value_parser = parse_point)]
    sigma_points: Vec<[u64; 4]>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timings (the report is then no longer reproducible).
    #[arg(long)]
    timings: bool,
}

impl RunArgs {
    fn config(&self, checks: &[Check]) -> RunConfig {
        RunConfig {
            prime: self.prime,
            seed: self.seed,
            instance_file: self.instance.clone(),
            checks: checks.to_vec(),
            n_samples: self.samples,
            retries: self.retries,
            budget: self.budget,
            lines_per_fiber: self.lines,
            sigma_points: self.sigma_points.clone(),
            timings: self.timings,
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let (args, checks): (&RunArgs, &[Check]) = match &cli.command {
        Command::Verify(a) => (a, &Check::ALL),
        Command::Census(a) => (a, &[Check::Census]),
        Command::Strata(a) => (a, &[Check::Strata]),
        Command::DoubleSolid(a) => (a, &[Check::DoubleSolid]),
        Command::Fibers(a) => (a, &[Check::Fibers]),
        Command::Pairings(a) => (a, &[Check::Pairings]),
        Command::Smoothness(a) => (a, &[Check::Smoothness]),
        Command::ShowInstance(a) => {
            let cfg = a.config(&[Check::Census]);
            cfg.validate()?;
            let data = load_instance(&cfg, 0)?;
            let text = format!("{}fingerprint {}\n", data.to_text(), data.fingerprint());
            emit(&text, a.out.as_ref())?;
            return Ok(0);
        }
    };
    let report = run_verify_all(&args.config(checks))?;
    emit(&report.to_json(), args.out.as_ref())?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("sextic: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
