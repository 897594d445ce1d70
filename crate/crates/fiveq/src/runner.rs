//! Experiment dispatch, transpilation and noise fitting behind the CLI.

use std::fs;
use std::path::Path;

use fiveq_core::experiments::{
    bell_experiment, dense_coding_experiment, mermin_test, prime_experiment, qft_experiment, ExperimentReport,
    RunSettings,
};
use fiveq_core::noise::{fit_noise, FitTarget, NoiseFit, NoiseGrid};
use fiveq_core::state::parse_bitstring;
use fiveq_core::transpile::{route, simplify};
use fiveq_core::Device;

use crate::circuit_text::{self, content};
use crate::config::{Experiment, RunConfig};
use crate::coupling::resolve_backend;
use crate::error::{read_file, Error, Result};
use crate::report::render;

pub fn device_for(backend: &str, noise: fiveq_core::noise::NoiseModel) -> Result<Device> {
    let (name, map) = resolve_backend(backend)?;
    Ok(Device::new(name, map, noise))
}

/// Execute the configured experiment.
pub fn run(config: &RunConfig) -> Result<ExperimentReport> {
    config.noise.check()?;
    let settings = RunSettings::new(config.shots, config.runs, config.seed)?;
    let device = device_for(&config.backend, config.noise)?;
    let report = match config.experiment {
        Experiment::DenseCoding => dense_coding_experiment(&device, &settings)?,
        Experiment::Qft => {
            let inputs: Vec<&str> = config.inputs.iter().map(String::as_str).collect();
            qft_experiment(&inputs, &device, &settings)?
        }
        Experiment::Bell => bell_experiment(&device, &settings)?,
        Experiment::Mermin => mermin_test(config.n, config.mode, &device, &settings)?,
        Experiment::PrimeState => prime_experiment(&device, &settings)?,
    };
    Ok(report)
}

/// Run, render in the configured format and write to the output path when
/// one is set. Returns the rendered text.
pub fn run_and_write(config: &RunConfig) -> Result<String> {
    let text = render(&run(config)?, config.format)?;
    if let Some(path) = &config.output {
        fs::write(path, &text).map_err(|e| Error::io(path, e))?;
    }
    Ok(text)
}

/// Route and simplify circuit text for a backend; the result is circuit text
/// with a comment giving the final layout.
pub fn transpile_text(text: &str, backend: &str) -> Result<String> {
    let circuit = circuit_text::parse(text)?;
    let (name, map) = resolve_backend(backend)?;
    let Some(map) = map else {
        return Ok(circuit_text::serialize(&simplify(&circuit)));
    };
    let routed = route(&circuit, &map)?;
    let layout: Vec<String> = routed.final_layout.iter().map(|p| p.to_string()).collect();
    Ok(format!(
        "# routed for {name}; final layout (logical -> physical): {}\n{}",
        layout.join(" "),
        circuit_text::serialize(&simplify(&routed.circuit))
    ))
}

/// Observed outcome probabilities, one `<bitstring> <probability>` per line.
/// Outcomes not listed are 0.
pub fn parse_observed(text: &str, num_bits: usize) -> Result<Vec<f64>> {
    let mut probs = vec![0.0; 1 << num_bits];
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = content(raw);
        if body.is_empty() {
            continue;
        }
        let [bits, p] = body.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(Error::parse(line, "expected `<bitstring> <probability>`"));
        };
        let k = parse_bitstring(bits, num_bits).map_err(|e| Error::parse(line, e.to_string()))?;
        let p: f64 = p
            .parse()
            .ok()
            .filter(|p| (0.0..=1.0).contains(p))
            .ok_or_else(|| Error::parse(line, format!("bad probability {p:?}")))?;
        probs[k] = p;
    }
    Ok(probs)
}

/// Every `<name>.circuit` in `dir` (sorted by name) with its
/// `<name>.observed`, compiled for `device`.
pub fn load_targets(dir: &Path, device: &Device) -> Result<Vec<FitTarget>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut circuits: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "circuit"))
        .collect();
    circuits.sort();
    let mut targets = Vec::with_capacity(circuits.len());
    for path in circuits {
        let circuit = circuit_text::parse(&read_file(&path)?).map_err(|e| e.in_file(&path))?;
        let observed_path = path.with_extension("observed");
        let observed = parse_observed(&read_file(&observed_path)?, circuit.measurements().len())
            .map_err(|e| e.in_file(&observed_path))?;
        targets.push(FitTarget {
            circuit: device.compile(&circuit)?,
            observed,
        });
    }
    Ok(targets)
}

pub fn default_grid() -> NoiseGrid {
    NoiseGrid {
        p1: vec![0.0, 0.005, 0.01, 0.02, 0.04],
        p2: vec![0.0, 0.02, 0.04, 0.06, 0.08, 0.1],
        p_read: vec![0.0, 0.02, 0.04, 0.06, 0.08],
    }
}

pub fn fit_targets_in(dir: &Path, backend: &str, grid: &NoiseGrid, shots: u64, seed: u64) -> Result<NoiseFit> {
    let device = device_for(backend, fiveq_core::noise::NoiseModel::ideal())?;
    let targets = load_targets(dir, &device)?;
    Ok(fit_noise(&targets, grid, shots, seed)?)
}
