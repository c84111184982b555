use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use vickset::commands;
use vickset::{CliError, CliResult};
use vickset_core::auction::single::PriceRule;
use vickset_core::laws::LawConfig;

/// Finite relations, quotients and auction checks.
#[derive(Debug, Parser)]
#[command(name = "vickset", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rule {
    Second,
    First,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a single-good mechanism for one bidder and analyze it.
    RunSingle {
        /// Bidders: `1,2,3` or an encoded set.
        #[arg(long)]
        bidders: String,
        /// Bid grid: `0,1/2,1` or an encoded set.
        #[arg(long)]
        grid: String,
        /// The bidder whose allocation and price are tabulated.
        #[arg(long)]
        bidder: String,
        #[arg(long, value_enum, default_value = "second")]
        rule: Rule,
    },
    /// Clear a combinatorial instance with VCG payments.
    RunCombinatorial {
        /// Instance file, or `-` for standard input.
        instance: PathBuf,
        /// Write the outcome here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List partitions or injections, one encoded value per line.
    Enumerate {
        #[command(subcommand)]
        kind: EnumerateKind,
    },
    /// Run registered laws and print one JSON record per law.
    CheckLaws {
        /// Run only this law.
        #[arg(long)]
        law: Option<String>,
        /// quick or full.
        #[arg(long, default_value = "quick")]
        profile: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the sample count of randomized parts.
        #[arg(long)]
        samples: Option<usize>,
        /// Override the exhaustive universe, as NxM.
        #[arg(long)]
        universe: Option<String>,
        /// Also write the records to this file.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Include elapsed times in the records.
        #[arg(long)]
        timings: bool,
    },
    /// Evaluate a relation expression.
    Eval {
        /// File holding the expression, or `-` for standard input.
        #[arg(required_unless_present = "expr")]
        path: Option<PathBuf>,
        /// The expression itself.
        #[arg(long, short = 'e', conflicts_with = "path")]
        expr: Option<String>,
        /// Print in mathematical notation instead of the JSON encoding.
        #[arg(long)]
        pretty: bool,
    },
}

#[derive(Debug, Subcommand)]
enum EnumerateKind {
    /// Partitions of a list of distinct elements.
    Partitions {
        elements: String,
        /// Use the filtering reference instead of the recursion.
        #[arg(long)]
        oracle: bool,
    },
    /// Injections from a list X into a set Y.
    Injections {
        x: String,
        y: String,
        #[arg(long)]
        oracle: bool,
    },
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.command {
        Command::RunSingle {
            bidders,
            grid,
            bidder,
            rule,
        } => {
            let rule = match rule {
                Rule::Second => PriceRule::SecondPrice,
                Rule::First => PriceRule::FirstPrice,
            };
            commands::run_single(&bidders, &grid, &bidder, rule)
        }
        Command::RunCombinatorial { instance, out } => {
            let text = commands::read_input(&instance)?;
            let outcome = commands::run_combinatorial(&text)?;
            match out {
                Some(path) => {
                    commands::write_output(&path, &outcome)?;
                    Ok(String::new())
                }
                None => Ok(outcome),
            }
        }
        Command::Enumerate { kind } => match kind {
            EnumerateKind::Partitions { elements, oracle } => {
                commands::enumerate_partitions(&elements, oracle)
            }
            EnumerateKind::Injections { x, y, oracle } => {
                commands::enumerate_injections(&x, &y, oracle)
            }
        },
        Command::CheckLaws {
            law,
            profile,
            seed,
            samples,
            universe,
            report,
            timings,
        } => {
            let config = LawConfig {
                profile: commands::profile(&profile)?,
                seed,
                samples,
                universe: universe.as_deref().map(commands::parse_universe).transpose()?,
            };
            let run = commands::check_laws(law.as_deref(), &config, timings)?;
            if let Some(path) = report {
                commands::write_output(&path, &run.output)?;
            }
            if run.nonconforming > 0 {
                print!("{}", run.output);
                return Err(CliError::Nonconforming(run.nonconforming));
            }
            Ok(run.output)
        }
        Command::Eval { path, expr, pretty } => {
            let source = match (expr, path) {
                (Some(e), _) => e,
                (None, Some(p)) => commands::read_input(&p)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            commands::eval(&source, pretty)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("vickset: {e}");
            e.exit_code()
        }
    }
}
