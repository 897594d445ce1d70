//! Run configuration files.
//!
//! A flat `key = value` file with at most one noise block:
//!
//! ```text
//! experiment = mermin
//! backend = ibmqx2
//! shots = 8192
//! runs = 5
//! seed = 7
//! n = 4
//! mode = symmetric
//! noise { p1 = 0.001, p2 = 0.03, p_read = 0.04 }
//! ```
//!
//! `noise = ideal` is accepted in place of a block. Inside a block, entries
//! are separated by commas or newlines.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use fiveq_core::noise::NoiseModel;
use fiveq_core::observables::MerminMode;

use crate::circuit_text::content;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    DenseCoding,
    Qft,
    Bell,
    Mermin,
    PrimeState,
}

impl Experiment {
    pub const ALL: [Experiment; 5] = [
        Experiment::DenseCoding,
        Experiment::Qft,
        Experiment::Bell,
        Experiment::Mermin,
        Experiment::PrimeState,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::DenseCoding => "dense-coding",
            Experiment::Qft => "qft",
            Experiment::Bell => "bell",
            Experiment::Mermin => "mermin",
            Experiment::PrimeState => "prime-state",
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Experiment> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .or((s == "prime").then_some(Experiment::PrimeState))
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Table,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "table" | "text" => Ok(Format::Table),
            _ => Err(Error::Config(format!("unknown format {s:?} (json, csv or table)"))),
        }
    }
}

pub fn parse_mode(s: &str) -> Result<MerminMode> {
    match s {
        "symmetric" => Ok(MerminMode::Symmetric),
        "per-term" => Ok(MerminMode::PerTerm),
        _ => Err(Error::Config(format!(
            "unknown Mermin mode {s:?} (symmetric or per-term)"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub experiment: Experiment,
    /// `all-to-all`, a bundled map name or a map file.
    pub backend: String,
    pub shots: u64,
    pub runs: usize,
    pub seed: u64,
    pub noise: NoiseModel,
    /// Register size for Mermin (3, 4 or 5).
    pub n: usize,
    pub mode: MerminMode,
    /// Input strings for the QFT check.
    pub inputs: Vec<String>,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(experiment: Experiment) -> RunConfig {
        RunConfig {
            experiment,
            backend: String::from("all-to-all"),
            shots: 8192,
            runs: 5,
            seed: 0,
            noise: NoiseModel::ideal(),
            n: 3,
            mode: MerminMode::Symmetric,
            inputs: vec![String::from("000"), String::from("011")],
            output: None,
            format: Format::Json,
        }
    }
}

/// Overrides read from a config file; unset keys keep their defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    pub experiment: Option<Experiment>,
    pub backend: Option<String>,
    pub shots: Option<u64>,
    pub runs: Option<usize>,
    pub seed: Option<u64>,
    pub noise: Option<NoiseModel>,
    pub n: Option<usize>,
    pub mode: Option<MerminMode>,
    pub inputs: Option<Vec<String>>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
}

impl ConfigFile {
    pub fn apply(&self, c: &mut RunConfig) {
        if let Some(v) = self.experiment {
            c.experiment = v;
        }
        if let Some(v) = &self.backend {
            c.backend = v.clone();
        }
        if let Some(v) = self.shots {
            c.shots = v;
        }
        if let Some(v) = self.runs {
            c.runs = v;
        }
        if let Some(v) = self.seed {
            c.seed = v;
        }
        if let Some(v) = self.noise {
            c.noise = v;
        }
        if let Some(v) = self.n {
            c.n = v;
        }
        if let Some(v) = self.mode {
            c.mode = v;
        }
        if let Some(v) = &self.inputs {
            c.inputs = v.clone();
        }
        if let Some(v) = &self.output {
            c.output = Some(v.clone());
        }
        if let Some(v) = self.format {
            c.format = v;
        }
    }
}

fn number<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::parse(line, format!("{key}: expected a number, found {value:?}")))
}

fn noise_entries(body: &str, line: usize) -> Result<NoiseModel> {
    let mut model = NoiseModel::ideal();
    for entry in body.split([',', '\n']).map(str::trim).filter(|e| !e.is_empty()) {
        let (k, v) = entry
            .split_once('=')
            .ok_or_else(|| Error::parse(line, format!("expected `key = value` in noise block, found {entry:?}")))?;
        let v: f64 = number(k.trim(), v.trim(), line)?;
        match k.trim() {
            "p1" => model.p1 = v,
            "p2" => model.p2 = v,
            "p_read" => model.p_read = v,
            other => return Err(Error::parse(line, format!("unknown noise parameter {other:?}"))),
        }
    }
    model.check().map_err(|e| Error::parse(line, e.to_string()))?;
    Ok(model)
}

/// Parse a config file. A file holding only a noise block is valid.
pub fn parse_config(text: &str) -> Result<ConfigFile> {
    let mut cfg = ConfigFile::default();
    let lines: Vec<&str> = text.lines().map(content).collect();
    let mut i = 0;
    while i < lines.len() {
        let line = i + 1;
        let body = lines[i];
        i += 1;
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body
            .strip_prefix("noise")
            .map(str::trim_start)
            .and_then(|r| r.strip_prefix('{'))
        {
            if cfg.noise.is_some() {
                return Err(Error::parse(line, "duplicate noise setting"));
            }
            let mut block = String::from(rest);
            while !block.contains('}') {
                let Some(next) = lines.get(i) else {
                    return Err(Error::parse(line, "unterminated noise block"));
                };
                block.push('\n');
                block.push_str(next);
                i += 1;
            }
            let (inner, tail) = block.split_once('}').expect("checked above");
            if !tail.trim().is_empty() {
                return Err(Error::parse(i, "unexpected text after noise block"));
            }
            cfg.noise = Some(noise_entries(inner, line)?);
            continue;
        }
        let (key, value) = body
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| Error::parse(line, format!("expected `key = value`, found {body:?}")))?;
        let in_line = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(line, other.to_string()),
        };
        match key {
            "experiment" => cfg.experiment = Some(value.parse().map_err(in_line)?),
            "backend" => cfg.backend = Some(value.to_string()),
            "shots" => cfg.shots = Some(number(key, value, line)?),
            "runs" => cfg.runs = Some(number(key, value, line)?),
            "seed" => cfg.seed = Some(number(key, value, line)?),
            "n" => cfg.n = Some(number(key, value, line)?),
            "mode" => cfg.mode = Some(parse_mode(value).map_err(in_line)?),
            "inputs" => cfg.inputs = Some(value.split(',').map(|s| s.trim().to_string()).collect()),
            "out" | "output" => cfg.output = Some(PathBuf::from(value)),
            "format" => cfg.format = Some(value.parse().map_err(in_line)?),
            "noise" if value == "ideal" => {
                if cfg.noise.is_some() {
                    return Err(Error::parse(line, "duplicate noise setting"));
                }
                cfg.noise = Some(NoiseModel::ideal());
            }
            _ => return Err(Error::parse(line, format!("unknown key {key:?}"))),
        }
    }
    Ok(cfg)
}

/// The noise block written by `fit-noise` and read by `--noise`.
pub fn format_noise(model: &NoiseModel) -> String {
    format!(
        "noise {{ p1 = {}, p2 = {}, p_read = {} }}\n",
        model.p1, model.p2, model.p_read
    )
}
