//! Quantum Fourier transform and its verification by unwinding phases.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{all_bitstrings, frequency_table, ExperimentReport, RunSettings};
use crate::circuit::{Basis, Circuit, Gate};
use crate::rng;
use crate::state::{format_bitstring, parse_bitstring, CountsHistogram};
use crate::transpile::{decompose_crz, swap_decomposition};
use crate::{Device, Error, Result};

pub const MAX_QFT_QUBITS: usize = 5;

/// Product-form QFT on `n ≤ 5` qubits.
///
/// Qubit `n-1` is processed first: a Hadamard, then a controlled phase
/// `2π/2^{i-j+1}` from every lower qubit `j`. Terminal swaps put qubit `k` in
/// the state `|0⟩ + e^{2πi 0.j_{n-1-k}…j_0}|1⟩`, so the highest qubit carries
/// `0.j_0`.
pub fn qft_circuit(n: usize) -> Result<Circuit> {
    if n == 0 || n > MAX_QFT_QUBITS {
        return Err(Error::UnsupportedWidth(n));
    }
    let mut c = Circuit::new(n);
    for i in (0..n).rev() {
        c.push(Gate::h(i))?;
        for j in (0..i).rev() {
            let angle = 2.0 * PI / (1u64 << (i - j + 1)) as f64;
            c.extend(decompose_crz(j, i, angle)?)?;
        }
    }
    for k in 0..n / 2 {
        c.extend(swap_decomposition(k, n - 1 - k)?)?;
    }
    Ok(c)
}

/// For input `j`, qubit `k` carries phase `2π·m/2^w` with `w = n-k` and
/// `m = j mod 2^w`. Returns `(m, w, bit)` where `bit` is the nearest multiple
/// of π (in units of π, mod 2), ties rounding up.
fn qubit_phase(j: usize, n: usize, k: usize) -> (usize, usize, usize) {
    let w = n - k;
    let m = j & ((1usize << w) - 1);
    // floor(2·m/2^w + 1/2) = floor((4m + 2^w) / 2^{w+1})
    let bit = ((4 * m + (1usize << w)) >> (w + 1)) & 1;
    (m, w, bit)
}

/// QFT of `input`, then an Rz per qubit turning its phase into 0 or π, then
/// X-basis measurements. Ideally a single outcome.
pub fn qft_verification_circuit(input: &str) -> Result<Circuit> {
    let n = input.len();
    let j = parse_bitstring(input, n)?;
    let mut c = Circuit::new(n);
    for q in 0..n {
        if j >> q & 1 == 1 {
            c.push(Gate::x(q))?;
        }
    }
    c.extend(qft_circuit(n)?.gates().iter().copied())?;
    for k in 0..n {
        let (m, w, bit) = qubit_phase(j, n, k);
        let phase = 2.0 * PI * m as f64 / (1u64 << w) as f64;
        let angle = bit as f64 * PI - phase;
        if angle != 0.0 {
            c.push(Gate::rz(angle, k))?;
        }
        c.measure(k, k, Basis::X)?;
    }
    Ok(c)
}

/// The outcome [`qft_verification_circuit`] produces with probability 1.
pub fn qft_expected_outcome(input: &str) -> Result<String> {
    let n = input.len();
    let j = parse_bitstring(input, n)?;
    let out = (0..n).map(|k| qubit_phase(j, n, k).2 << k).sum();
    Ok(format_bitstring(out, n))
}

pub fn qft_verification(input: &str, shots: u64, seed: u64, device: &Device) -> Result<CountsHistogram> {
    device.run(&qft_verification_circuit(input)?, shots, seed)
}

/// Outcome distributions for each input, with the success probability of
/// the expected string.
pub fn qft_experiment(inputs: &[&str], device: &Device, settings: &RunSettings) -> Result<ExperimentReport> {
    settings.check()?;
    let width = match inputs.first() {
        Some(s) => s.len(),
        None => return Err(Error::InvalidArgument(String::from("no QFT inputs given"))),
    };
    if inputs.iter().any(|s| s.len() != width) {
        return Err(Error::InvalidArgument(String::from("QFT inputs must share one width")));
    }
    let outcomes = all_bitstrings(width);
    let mut per_run = Vec::with_capacity(settings.runs);
    for r in 0..settings.runs {
        let base = settings.run_seed(r);
        let mut rows = Vec::new();
        for (i, input) in inputs.iter().enumerate() {
            let counts = qft_verification(input, settings.shots, rng::derive(base, i as u64), device)?;
            rows.push(outcomes.iter().map(|o| counts.frequency(o)).collect::<Vec<f64>>());
        }
        per_run.push(rows);
    }
    let table = frequency_table(
        "outcome probabilities",
        "input",
        "outcome",
        inputs.iter().map(|s| String::from(*s)).collect(),
        outcomes,
        &per_run,
    );
    let mut report = ExperimentReport::new("qft", device, settings);
    for input in inputs {
        let expected = qft_expected_outcome(input)?;
        let cell = table.cell(input, &expected).expect("outcome column exists");
        report.push_quantity(alloc::format!("p_success[{input}->{expected}]"), cell, Some(1.0));
    }
    report.tables.push(table);
    Ok(report)
}
