//! Command line front end: config loading, the scenario presets, and the
//! file writers for runs and batches.

pub mod config_file;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use wsnlife_core::{presets, run_batch, run_simulation, Execution, NetworkConfig};

pub use config_file::{load_config, parse_config, LoadError};
pub use output::{emit_report, emit_snapshots, emit_timeseries, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wsnlife", version, about = "Wireless sensor network lifetime simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one simulation and write its time series, snapshots and report.
    Run(RunArgs),
    /// Run seed-replicated simulations and write summary statistics.
    Batch {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        replicas: u64,
    },
    /// List the built-in scenario presets.
    Presets,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Flat JSON config file.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = preset_names())]
    preset: Option<String>,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// Overrides the seed from the config or preset.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn preset_names() -> clap::builder::PossibleValuesParser {
    let names: Vec<&'static str> = presets().into_iter().map(|p| p.name).collect();
    clap::builder::PossibleValuesParser::new(names)
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Config(#[from] LoadError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl RunArgs {
    fn resolve(&self) -> Result<NetworkConfig, LoadError> {
        let mut config = match (&self.source.config, &self.source.preset) {
            (Some(path), _) => load_config(path)?,
            (None, Some(name)) => wsnlife_core::preset(name).expect("validated by clap").config,
            (None, None) => unreachable!("clap requires a source"),
        };
        if let Some(seed) = self.seed {
            config.seed = seed;
        }
        Ok(config)
    }
}

fn run_command(args: &RunArgs) -> Result<String, Failure> {
    let config = args.resolve()?;
    let result = run_simulation(&config).map_err(LoadError::from)?;
    let out = &args.out;
    fs::create_dir_all(out)?;
    emit_timeseries(&result, args.format, &out.join(format!("timeseries.{}", args.format.extension())))?;
    emit_snapshots(&result, &out.join("snapshots.csv"))?;
    emit_report(&result, &out.join("report.json"))?;
    output::emit_json(&result.config, &out.join("config.json"))?;
    Ok(format!(
        "death at cycle {} ({:?}); wrote {}",
        result.death_cycle,
        result.report.death_condition,
        out.display()
    ))
}

fn batch_command(args: &RunArgs, replicas: usize) -> Result<String, Failure> {
    let config = args.resolve()?;
    let summary = run_batch(&config, replicas, config.seed, Execution::Parallel).map_err(LoadError::from)?;
    let out = &args.out;
    fs::create_dir_all(out)?;
    output::emit_json(&summary, &out.join("summary.json"))?;
    output::emit_replicas(&summary, args.format, &out.join(format!("replicas.{}", args.format.extension())))?;
    output::emit_json(&config, &out.join("config.json"))?;
    Ok(format!(
        "{} replicas: median death cycle {}, mean {:.3}; wrote {}",
        summary.replicas,
        summary.death_cycle.median,
        summary.death_cycle.mean,
        out.display()
    ))
}

fn presets_table() -> String {
    let mut s = String::from("name       sensors  field_m        sink_probability\n");
    for p in presets() {
        let c = &p.config;
        s.push_str(&format!(
            "{:<10} {:>7}  {:>5} x {:<5}  {}\n",
            p.name, c.n_sensors, c.width, c.height, c.sink_probability
        ));
    }
    s
}

/// Entry point shared by the binary and the tests. Returns the exit code.
pub fn main_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Run(args) => run_command(args),
        Command::Batch { run, replicas } => batch_command(run, *replicas as usize),
        Command::Presets => Ok(presets_table()),
    };
    match outcome {
        Ok(msg) => {
            let _ = writeln!(stdout, "{}", msg.trim_end());
            EXIT_OK
        }
        Err(Failure::Config(e)) => {
            let _ = writeln!(stderr, "config error: {e}");
            EXIT_CONFIG
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_USAGE
        }
    }
}
