use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fiveq::config::{format_noise, parse_config, parse_mode, Experiment, Format, RunConfig};
use fiveq::error::{Error, Result};
use fiveq::runner::{default_grid, fit_targets_in, run_and_write, transpile_text};
use fiveq_core::noise::NoiseModel;
use fiveq_core::observables::MerminMode;

/// Residual above which a noise fit is reported as poor.
const FIT_WARNING: f64 = 0.10;

#[derive(Parser)]
#[command(
    name = "fiveq",
    version,
    about = "Five-qubit circuit simulator and experiment runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment: dense-coding, qft, bell, mermin or prime-state.
    Run(RunArgs),
    /// Route a circuit file onto a backend and print the result.
    Transpile {
        file: PathBuf,
        #[arg(long, default_value = "ibmqx4")]
        backend: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid-fit a noise model to observed outcome distributions.
    FitNoise {
        /// Directory of `<name>.circuit` / `<name>.observed` pairs.
        #[arg(long)]
        targets: PathBuf,
        #[arg(long, default_value = "ibmqx4")]
        backend: String,
        #[arg(long, default_value_t = 4096)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the best model as a noise block.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// dense-coding, qft, bell, mermin or prime-state; may come from --config.
    #[arg(value_parser = clap::value_parser!(ExperimentArg))]
    experiment: Option<ExperimentArg>,
    /// Key-value config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// all-to-all, ibmqx2, ibmqx4 or a coupling-map file.
    #[arg(long)]
    backend: Option<String>,
    /// Shots per run (default 8192).
    #[arg(long)]
    shots: Option<u64>,
    /// Independent runs averaged into mean and std (default 5).
    #[arg(long)]
    runs: Option<usize>,
    /// Master seed (default 0).
    #[arg(long)]
    seed: Option<u64>,
    /// Drop any noise from the config file.
    #[arg(long, conflicts_with = "noise")]
    ideal: bool,
    /// File containing a `noise { ... }` block.
    #[arg(long)]
    noise: Option<PathBuf>,
    /// Mermin register size.
    #[arg(short = 'n')]
    n: Option<usize>,
    /// Mermin measurement mode: symmetric or per-term.
    #[arg(long, value_parser = parse_mode_arg)]
    mode: Option<MerminMode>,
    /// Comma-separated QFT inputs.
    #[arg(long, value_delimiter = ',')]
    inputs: Option<Vec<String>>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// json (default), csv or table.
    #[arg(long, value_parser = parse_format_arg)]
    format: Option<Format>,
}

#[derive(Clone)]
struct ExperimentArg(Experiment);

impl std::str::FromStr for ExperimentArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse().map(ExperimentArg).map_err(|e: Error| e.to_string())
    }
}

fn parse_mode_arg(s: &str) -> std::result::Result<MerminMode, String> {
    parse_mode(s).map_err(|e| e.to_string())
}

fn parse_format_arg(s: &str) -> std::result::Result<Format, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Runtime(e)
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.clone(),
        source: e,
    })
}

fn run_command(args: RunArgs) -> std::result::Result<(), Failure> {
    let file = match &args.config {
        Some(p) => Some(parse_config(&read(p)?).map_err(|e| Error::InFile {
            path: p.clone(),
            source: Box::new(e),
        })?),
        None => None,
    };
    let experiment = args
        .experiment
        .map(|e| e.0)
        .or(file.as_ref().and_then(|f| f.experiment))
        .ok_or_else(|| Failure::Usage(String::from("no experiment given")))?;
    let mut config = RunConfig::new(experiment);
    if let Some(f) = &file {
        f.apply(&mut config);
        config.experiment = experiment;
    }
    if let Some(v) = args.backend {
        config.backend = v;
    }
    if let Some(v) = args.shots {
        config.shots = v;
    }
    if let Some(v) = args.runs {
        config.runs = v;
    }
    if let Some(v) = args.seed {
        config.seed = v;
    }
    if args.ideal {
        config.noise = NoiseModel::ideal();
    }
    if let Some(p) = &args.noise {
        let block = parse_config(&read(p)?).map_err(|e| Error::InFile {
            path: p.clone(),
            source: Box::new(e),
        })?;
        config.noise = block
            .noise
            .ok_or_else(|| Error::Config(format!("{}: no noise block", p.display())))?;
    }
    if let Some(v) = args.n {
        config.n = v;
    }
    if let Some(v) = args.mode {
        config.mode = v;
    }
    if let Some(v) = args.inputs {
        config.inputs = v;
    }
    if let Some(v) = args.out {
        config.output = Some(v);
    }
    if let Some(v) = args.format {
        config.format = v;
    }
    let text = run_and_write(&config)?;
    if config.output.is_none() {
        print!("{text}");
    }
    Ok(())
}

fn write_or_print(out: Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(&path, text).map_err(|e| Error::Io { path, source: e }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Transpile { file, backend, out } => read(&file)
            .and_then(|text| transpile_text(&text, &backend))
            .and_then(|t| write_or_print(out, &t))
            .map_err(Failure::from),
        Command::FitNoise {
            targets,
            backend,
            shots,
            seed,
            out,
        } => (|| {
            let fit = fit_targets_in(&targets, &backend, &default_grid(), shots, seed)?;
            let m = fit.model;
            println!("best fit: p1 = {}, p2 = {}, p_read = {}", m.p1, m.p2, m.p_read);
            println!("rms residual: {:.4}", fit.residual);
            if fit.residual > FIT_WARNING {
                eprintln!("warning: residual {:.4} exceeds {FIT_WARNING}", fit.residual);
            }
            if let Some(path) = out {
                write_or_print(Some(path), &format_noise(&m))?;
            }
            Ok(())
        })()
        .map_err(Failure::Runtime),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
