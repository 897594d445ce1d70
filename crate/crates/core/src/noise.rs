//! Phenomenological noise: Pauli trajectories plus symmetric readout flips.
//!
//! After every gate each touched qubit independently suffers a uniformly
//! random X, Y or Z with probability `p1` (one-qubit gates) or `p2` (cNOT,
//! both operands). Idle qubits accrue nothing. Every measured bit is then
//! flipped with probability `p_read`.

use alloc::vec::Vec;

use num_traits::Float;
use rand::Rng;

use crate::circuit::{Circuit, Gate, SingleOp};
use crate::state::{CountsHistogram, Sampler, StateVector};
use crate::{rng, Error, Result};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Homogeneous depolarizing and readout error rates.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct NoiseModel {
    pub p1: f64,
    pub p2: f64,
    pub p_read: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64, p_read: f64) -> Result<NoiseModel> {
        let m = NoiseModel { p1, p2, p_read };
        m.check()?;
        Ok(m)
    }

    pub fn ideal() -> NoiseModel {
        NoiseModel::default()
    }

    pub fn is_ideal(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.p_read == 0.0
    }

    pub fn check(&self) -> Result<()> {
        for (name, value) in [("p1", self.p1), ("p2", self.p2), ("p_read", self.p_read)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { name, value });
            }
        }
        Ok(())
    }

    fn gate_error_rate(&self, gate: &Gate) -> f64 {
        match gate {
            Gate::Single { .. } => self.p1,
            Gate::Cx { .. } => self.p2,
        }
    }
}

/// Upper bound on cached amplitudes for trajectory restarts.
const CHECKPOINT_BUDGET: usize = 1 << 22;

struct Trajectories {
    num_qubits: usize,
    gates: Vec<Gate>,
    measured: Vec<usize>,
    /// `checkpoints[k]` is the ideal state after `k` gates, when cached.
    checkpoints: Vec<StateVector>,
    ideal: Sampler,
}

impl Trajectories {
    fn new(circuit: &Circuit) -> Result<Trajectories> {
        let (gates, measured) = circuit.lowered();
        let mut state = StateVector::zero(circuit.num_qubits())?;
        let cache = (gates.len() + 1) << circuit.num_qubits() <= CHECKPOINT_BUDGET;
        let mut checkpoints = Vec::new();
        if cache {
            checkpoints.reserve(gates.len() + 1);
            checkpoints.push(state.clone());
        }
        for g in &gates {
            state.apply(g)?;
            if cache {
                checkpoints.push(state.clone());
            }
        }
        let ideal = Sampler::new(&state.marginal_probabilities(&measured)?);
        Ok(Trajectories {
            num_qubits: circuit.num_qubits(),
            gates,
            measured,
            checkpoints,
            ideal,
        })
    }

    /// State after the first `k` ideal gates.
    fn prefix(&self, k: usize) -> StateVector {
        if let Some(s) = self.checkpoints.get(k) {
            return s.clone();
        }
        let mut s = StateVector::zero(self.num_qubits).expect("width was checked on construction");
        for g in &self.gates[..k] {
            apply_ok(&mut s, g);
        }
        s
    }

    fn shot<R: Rng>(&self, model: &NoiseModel, width: usize, rng: &mut R) -> usize {
        // (gate index, qubit, pauli 0..3)
        let mut errors: Vec<(usize, usize, u8)> = Vec::new();
        for (k, g) in self.gates.iter().enumerate() {
            let p = model.gate_error_rate(g);
            if p == 0.0 {
                continue;
            }
            for q in g.qubits().iter() {
                if rng.gen::<f64>() < p {
                    errors.push((k, q, rng.gen_range(0..3)));
                }
            }
        }
        let mut outcome = match errors.first() {
            None => self.ideal.draw(rng),
            Some(&(first, _, _)) => {
                let mut state = self.prefix(first + 1);
                let mut next_error = 0;
                for k in first..self.gates.len() {
                    if k > first {
                        apply_ok(&mut state, &self.gates[k]);
                    }
                    while next_error < errors.len() && errors[next_error].0 == k {
                        let (_, q, pauli) = errors[next_error];
                        let op = match pauli {
                            0 => SingleOp::X,
                            1 => SingleOp::Y,
                            _ => SingleOp::Z,
                        };
                        apply_ok(&mut state, &Gate::Single { op, qubit: q });
                        next_error += 1;
                    }
                }
                let probs = state
                    .marginal_probabilities(&self.measured)
                    .expect("measured qubits were validated by the circuit");
                Sampler::new(&probs).draw(rng)
            }
        };
        if model.p_read > 0.0 {
            for bit in 0..width {
                if rng.gen::<f64>() < model.p_read {
                    outcome ^= 1 << bit;
                }
            }
        }
        outcome
    }
}

fn apply_ok(state: &mut StateVector, gate: &Gate) {
    state.apply(gate).expect("gates were validated by the circuit");
}

/// Sample a circuit's measurements under `model`.
///
/// With the all-zero model this consumes the random stream exactly like
/// [`crate::state::execute`] and returns the identical histogram.
pub fn noisy_sample(circuit: &Circuit, model: &NoiseModel, shots: u64, seed: u64) -> Result<CountsHistogram> {
    model.check()?;
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let traj = Trajectories::new(circuit)?;
    let width = traj.measured.len();
    let mut rng = rng::stream(seed);
    let mut hist = CountsHistogram::empty(width);
    for _ in 0..shots {
        hist.record(traj.shot(model, width, &mut rng));
    }
    Ok(hist)
}

/// A circuit paired with the outcome distribution it should reproduce.
#[derive(Debug, Clone)]
pub struct FitTarget {
    pub circuit: Circuit,
    /// Probabilities indexed like the circuit's sampled outcomes (length
    /// `2^measurements`).
    pub observed: Vec<f64>,
}

/// Candidate rates for [`fit_noise`]; models are visited in `p1`, `p2`,
/// `p_read` lexicographic order and the first best one wins.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct NoiseGrid {
    pub p1: Vec<f64>,
    pub p2: Vec<f64>,
    pub p_read: Vec<f64>,
}

impl NoiseGrid {
    pub fn len(&self) -> usize {
        self.p1.len() * self.p2.len() * self.p_read.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn models(&self) -> impl Iterator<Item = NoiseModel> + '_ {
        self.p1.iter().flat_map(move |&p1| {
            self.p2
                .iter()
                .flat_map(move |&p2| self.p_read.iter().map(move |&p_read| NoiseModel { p1, p2, p_read }))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct NoiseFit {
    pub model: NoiseModel,
    /// Root-mean-square deviation over every outcome cell of every target.
    pub residual: f64,
}

/// RMS deviation between `model`'s sampled distributions and the targets.
///
/// Target `i` is always sampled with seed `derive(seed, i)`, so different
/// models are compared on common random numbers.
pub fn fit_residual(targets: &[FitTarget], model: &NoiseModel, shots: u64, seed: u64) -> Result<f64> {
    let mut sum = 0.0;
    let mut cells = 0usize;
    for (i, t) in targets.iter().enumerate() {
        let hist = noisy_sample(&t.circuit, model, shots, rng::derive(seed, i as u64))?;
        let simulated = hist.distribution();
        if simulated.len() != t.observed.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "target {i} has {} observed cells but the circuit produces {}",
                t.observed.len(),
                simulated.len()
            )));
        }
        for (s, o) in simulated.iter().zip(&t.observed) {
            sum += (s - o) * (s - o);
        }
        cells += simulated.len();
    }
    Ok(Float::sqrt(sum / cells as f64))
}

/// Grid search for the noise model that best reproduces the targets.
pub fn fit_noise(targets: &[FitTarget], grid: &NoiseGrid, shots: u64, seed: u64) -> Result<NoiseFit> {
    if targets.is_empty() {
        return Err(Error::EmptyTargets);
    }
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut best: Option<NoiseFit> = None;
    for model in grid.models() {
        model.check()?;
        let residual = fit_residual(targets, &model, shots, seed)?;
        if best.is_none_or(|b| residual < b.residual) {
            best = Some(NoiseFit { model, residual });
        }
    }
    Ok(best.expect("grid is not empty"))
}
