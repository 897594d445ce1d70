//! Dense coding over a shared Bell pair.
//!
//! Register: q3 and q2 hold the message bits `x1` and `x0`, q1 is Alice's half
//! of the pair and q0 is Bob's. Alice applies `X^{x0}` then `Z^{x1}` to her
//! qubit as operations controlled by the message register, and Bob's decoding
//! leaves the message on (q1, q0).

use alloc::string::String;
use alloc::vec::Vec;

use super::{all_bitstrings, frequency_table, ExperimentReport, RunSettings};
use crate::circuit::{Basis, Circuit, Gate};
use crate::rng;
use crate::state::CountsHistogram;
use crate::transpile::cz_decomposition;
use crate::{Device, Error, Result};

pub const MESSAGES: [&str; 4] = ["00", "01", "10", "11"];

fn message_bits(message: &str) -> Result<(bool, bool)> {
    match message {
        "00" => Ok((false, false)),
        "01" => Ok((false, true)),
        "10" => Ok((true, false)),
        "11" => Ok((true, true)),
        _ => Err(Error::InvalidBitstring {
            bits: String::from(message),
            num_qubits: 2,
        }),
    }
}

/// The four-qubit protocol circuit; classical bits `c1 c0` read back the
/// message `x1 x0`.
pub fn dense_coding_circuit(message: &str) -> Result<Circuit> {
    let (x1, x0) = message_bits(message)?;
    let mut c = Circuit::new(4);
    if x1 {
        c.push(Gate::x(3))?;
    }
    if x0 {
        c.push(Gate::x(2))?;
    }
    c.push(Gate::h(1))?;
    c.push(Gate::cx(1, 0))?;
    c.push(Gate::cx(2, 1))?;
    c.extend(cz_decomposition(3, 1)?)?;
    c.push(Gate::cx(1, 0))?;
    c.push(Gate::h(1))?;
    c.measure(1, 1, Basis::Z)?;
    c.measure(0, 0, Basis::Z)?;
    Ok(c)
}

pub fn dense_coding(message: &str, shots: u64, seed: u64, device: &Device) -> Result<CountsHistogram> {
    device.run(&dense_coding_circuit(message)?, shots, seed)
}

/// Outcome probabilities for every message, as a message × outcome table,
/// plus the decoding success rate per message.
pub fn dense_coding_experiment(device: &Device, settings: &RunSettings) -> Result<ExperimentReport> {
    settings.check()?;
    let outcomes = all_bitstrings(2);
    let mut per_run = Vec::with_capacity(settings.runs);
    for r in 0..settings.runs {
        let base = settings.run_seed(r);
        let mut rows = Vec::with_capacity(MESSAGES.len());
        for (m, message) in MESSAGES.iter().enumerate() {
            let counts = dense_coding(message, settings.shots, rng::derive(base, m as u64), device)?;
            rows.push(outcomes.iter().map(|o| counts.frequency(o)).collect::<Vec<f64>>());
        }
        per_run.push(rows);
    }
    let table = frequency_table(
        "outcome probabilities",
        "message",
        "outcome",
        MESSAGES.iter().map(|m| String::from(*m)).collect(),
        outcomes,
        &per_run,
    );
    let mut report = ExperimentReport::new("dense-coding", device, settings);
    for (i, message) in MESSAGES.iter().enumerate() {
        report.push_quantity(alloc::format!("p_correct[{message}]"), table.cells[i][i], Some(1.0));
    }
    report.tables.push(table);
    Ok(report)
}
