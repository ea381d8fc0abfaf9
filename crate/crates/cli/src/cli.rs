//! Argument parsing and dispatch.
//!
//! Exit status: 0 on success, 1 when a check fails or a runtime/IO error
//! occurs, 2 on invalid arguments.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dpqs_core::exhaustive::{run_exhaustive, run_exhaustive_partition};
use dpqs_core::rde::LimitSampler;

use crate::error::CliError;
use crate::montecarlo::{run_montecarlo, ExperimentConfig, Variant};
use crate::report::{self, Report};
use crate::scatter::{self, write_csv};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "dpqs", version, about = "Dual-pivot quicksort cost analysis")]
pub struct Args {
    /// Output format of the report.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Base seed of all random streams.
    #[arg(long, env = "DPQS_SEED", default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads. Results do not depend on this value.
    #[arg(long, default_value_t = 1, global = true)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sort whitespace- or comma-separated numbers from a file or stdin.
    Sort {
        /// Input file; stdin when omitted.
        input: Option<PathBuf>,
        #[arg(long, default_value = "count")]
        variant: Variant,
    },
    /// Exact mean costs and the analysis constants.
    Exact {
        #[arg(long)]
        n: u64,
    },
    /// Average full-sort costs over all permutations and compare with the formulas.
    Exhaustive {
        #[arg(long)]
        n: usize,
    },
    /// Average first-stage quantities over all permutations.
    Partition {
        #[arg(long)]
        n: usize,
    },
    /// Monte Carlo moments of the normalized costs.
    Mc {
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "count,classic")]
        variants: Vec<Variant>,
    },
    /// CSV of per-sample normalized costs.
    Scatter {
        #[arg(long, default_value_t = scatter::DEFAULT_N)]
        n: usize,
        #[arg(long, default_value_t = scatter::DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, value_delimiter = ',', default_value = "count,classic")]
        variants: Vec<Variant>,
    },
    /// Verify the urn-model identities.
    Urn {
        #[arg(long, default_value_t = 60)]
        max_step: usize,
        #[arg(long, default_value_t = 100)]
        max_n: usize,
    },
    /// Sample the limit law and compare its moments with the constants.
    Rde {
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = LimitSampler::DEFAULT_DEPTH)]
        depth: u32,
        #[arg(long, default_value_t = LimitSampler::DEFAULT_PRUNE_EPS)]
        prune_eps: f64,
    },
    /// Second moments of the toll by quadrature.
    Tollmoments {
        #[arg(long, default_value_t = 2000)]
        resolution: usize,
    },
}

/// Parses `args`, runs the command and returns the exit status.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&args) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("dpqs: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command. `Ok(false)` means a check failed.
pub fn execute(args: &Args) -> Result<bool, CliError> {
    if args.workers == 0 {
        return Err(CliError::Usage("workers must be positive".into()));
    }
    let config = |n, samples, variants: &[Variant]| ExperimentConfig {
        n,
        samples,
        seed: args.seed,
        workers: args.workers,
        variants: variants.to_vec(),
    };
    let report = match &args.command {
        Command::Sort { input, variant } => return sort(args, input.as_ref(), *variant),
        Command::Exact { n } => report::exact_report(*n),
        Command::Exhaustive { n } => report::exhaustive_report(&run_exhaustive(*n)?),
        Command::Partition { n } => report::partition_report(&run_exhaustive_partition(*n)?),
        Command::Mc {
            n,
            samples,
            variants,
        } => report::montecarlo_report(&run_montecarlo(&config(*n, *samples, variants))?),
        Command::Scatter {
            n,
            samples,
            variants,
        } => {
            let records = scatter::scatter_records(&config(*n, *samples, variants))?;
            let mut buf = Vec::new();
            write_csv(&mut buf, &records)?;
            emit(args, &buf)?;
            return Ok(true);
        }
        Command::Urn { max_step, max_n } => {
            if *max_n < 2 {
                return Err(CliError::Usage("max-n must be at least 2".into()));
            }
            report::urn_report(*max_step, *max_n)
        }
        Command::Rde {
            samples,
            depth,
            prune_eps,
        } => {
            if *depth == 0 || !(0.0..1.0).contains(prune_eps) {
                return Err(CliError::Usage(
                    "depth must be positive and prune-eps in [0, 1)".into(),
                ));
            }
            let sampler = LimitSampler {
                seed: args.seed,
                depth: *depth,
                prune_eps: *prune_eps,
            };
            report::rde_report(&sampler, *samples, args.workers)?
        }
        Command::Tollmoments { resolution } => report::tollmoments_report(*resolution)?,
    };
    emit(args, render(&report, args.format).as_bytes())?;
    Ok(report.passed())
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
        Format::Text => report
            .to_csv()
            .lines()
            .skip(1)
            .map(|l| l.replacen(',', " = ", 1) + "\n")
            .collect(),
    }
}

fn emit(args: &Args, bytes: &[u8]) -> Result<(), CliError> {
    match &args.output {
        Some(path) => fs::write(path, bytes).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        }),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            Ok(out.flush()?)
        }
    }
}

/// Parses decimal numbers separated by whitespace or commas.
pub fn parse_keys(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<f64>() {
            Ok(v) if !v.is_nan() => Ok(v),
            _ => Err(CliError::Usage(format!("not a number: `{t}`"))),
        })
        .collect()
}

fn sort(args: &Args, input: Option<&PathBuf>, variant: Variant) -> Result<bool, CliError> {
    let text = match input {
        Some(path) => fs::read_to_string(path).map_err(|source| CliError::Read {
            what: path.display().to_string(),
            source,
        })?,
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|source| CliError::Read {
                    what: "stdin".into(),
                    source,
                })?;
            s
        }
    };
    let mut keys = parse_keys(&text)?;
    let profile = match variant {
        Variant::Count => dpqs_core::sort_count(&mut keys),
        Variant::Classic => dpqs_core::sort_classic(&mut keys),
    };
    let distinct = keys.windows(2).all(|w| w[0] != w[1]);
    let report = report::sort_report(variant.name(), &keys, &profile, distinct);
    let body = match args.format {
        Format::Text => {
            let line: Vec<String> = keys.iter().map(f64::to_string).collect();
            let mut s = format!(
                "{}\ncomparisons = {}\nplain_swaps = {}\nrotate3_ops = {}\nhalf_swaps = {}\n",
                line.join(" "),
                profile.comparisons,
                profile.plain_swaps,
                profile.rotate3_ops,
                profile.half_swaps()
            );
            if !distinct {
                s.push_str("note = input has repeated keys; cost formulas assume distinct keys\n");
            }
            s
        }
        f => render(&report, f),
    };
    emit(args, body.as_bytes())?;
    Ok(true)
}
