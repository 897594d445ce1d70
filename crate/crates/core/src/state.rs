//! Dense state vectors, gate kernels and Born-rule sampling.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use rand::Rng;

use crate::circuit::{Circuit, Gate, SingleOp};
use crate::unitary::Matrix;
use crate::{rng, Error, Result};

/// Widest register a [`StateVector`] may hold.
pub const MAX_QUBITS: usize = 24;
/// Widest register [`full_unitary`] accepts.
pub const MAX_UNITARY_QUBITS: usize = 10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// `2^n` complex amplitudes; index bit `q` is qubit `q`.
///
/// Amplitudes are never renormalised, so numerical drift stays observable.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(num_qubits: usize) -> Result<StateVector> {
        check_width(num_qubits)?;
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[0] = ONE;
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Computational-basis state from a bitstring written `j_{n-1}…j_1 j_0`.
    pub fn basis(num_qubits: usize, bits: &str) -> Result<StateVector> {
        let index = parse_bitstring(bits, num_qubits)?;
        let mut s = StateVector::zero(num_qubits)?;
        s.amplitudes.swap(0, index);
        Ok(s)
    }

    pub fn basis_index(num_qubits: usize, index: usize) -> Result<StateVector> {
        let mut s = StateVector::zero(num_qubits)?;
        if index >= s.amplitudes.len() {
            return Err(Error::InvalidArgument(alloc::format!(
                "basis index {index} out of range for {num_qubits} qubits"
            )));
        }
        s.amplitudes.swap(0, index);
        Ok(s)
    }

    /// Takes `amplitudes` as given; the length must be a power of two and the
    /// squared norm within 1e-10 of one.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<StateVector> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArgument(alloc::format!(
                "{len} amplitudes is not a power of two"
            )));
        }
        let num_qubits = len.trailing_zeros() as usize;
        check_width(num_qubits)?;
        let s = StateVector { num_qubits, amplitudes };
        let norm = s.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(alloc::format!("squared norm {norm} is not 1")));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amplitudes[index].norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|`, insensitive to global phase.
    pub fn overlap(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.check(self.num_qubits)?;
        match *gate {
            Gate::Single { op, qubit } => self.apply_single(op, qubit),
            Gate::Cx { control, target } => self.apply_cx(control, target),
        }
        Ok(())
    }

    pub fn apply_all<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply(g))
    }

    fn apply_single(&mut self, op: SingleOp, qubit: usize) {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        match op {
            SingleOp::H => self.apply_matrix(qubit, [[h, h], [h, -h]]),
            SingleOp::X => self.for_pairs(qubit, core::mem::swap),
            SingleOp::Y => self.for_pairs(qubit, |a, b| {
                let (x, y) = (*a, *b);
                *a = -I * y;
                *b = I * x;
            }),
            SingleOp::Z => self.apply_phase(qubit, -ONE),
            SingleOp::S => self.apply_phase(qubit, I),
            SingleOp::Sdg => self.apply_phase(qubit, -I),
            SingleOp::T => self.apply_phase(qubit, Complex64::from_polar(1.0, FRAC_PI_4)),
            SingleOp::Tdg => self.apply_phase(qubit, Complex64::from_polar(1.0, -FRAC_PI_4)),
            SingleOp::Rz(angle) => self.apply_phase(qubit, Complex64::from_polar(1.0, angle)),
        }
    }

    /// Visit amplitude pairs `(|…0_q…⟩, |…1_q…⟩)`.
    fn for_pairs(&mut self, qubit: usize, mut f: impl FnMut(&mut Complex64, &mut Complex64)) {
        let stride = 1usize << qubit;
        for block in self.amplitudes.chunks_exact_mut(stride << 1) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                f(a, b);
            }
        }
    }

    fn apply_matrix(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        self.for_pairs(qubit, |a, b| {
            let (x, y) = (*a, *b);
            *a = m[0][0] * x + m[0][1] * y;
            *b = m[1][0] * x + m[1][1] * y;
        });
    }

    fn apply_phase(&mut self, qubit: usize, phase: Complex64) {
        self.for_pairs(qubit, |_, b| *b *= phase);
    }

    fn apply_cx(&mut self, control: usize, target: usize) {
        let c = 1usize << control;
        let t = 1usize << target;
        for i in 0..self.amplitudes.len() {
            if i & c != 0 && i & t == 0 {
                self.amplitudes.swap(i, i | t);
            }
        }
    }

    /// Marginal Born distribution over `measured`, indexed so that bit `k` of
    /// the outcome is `measured[k]`.
    pub fn marginal_probabilities(&self, measured: &[usize]) -> Result<Vec<f64>> {
        check_measured(measured, self.num_qubits)?;
        let mut probs = vec![0.0; 1 << measured.len()];
        for (i, a) in self.amplitudes.iter().enumerate() {
            let p = a.norm_sqr();
            if p == 0.0 {
                continue;
            }
            probs[gather_bits(i, measured)] += p;
        }
        Ok(probs)
    }
}

fn check_width(num_qubits: usize) -> Result<()> {
    if num_qubits == 0 || num_qubits > MAX_QUBITS {
        return Err(Error::UnsupportedWidth(num_qubits));
    }
    Ok(())
}

fn check_measured(measured: &[usize], num_qubits: usize) -> Result<()> {
    for (k, &q) in measured.iter().enumerate() {
        if q >= num_qubits {
            return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
        }
        if measured[..k].contains(&q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

/// Bit `k` of the result is bit `qubits[k]` of `index`.
pub fn gather_bits(index: usize, qubits: &[usize]) -> usize {
    qubits
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &q)| acc | (((index >> q) & 1) << k))
}

/// Parse `j_{n-1}…j_0` into a basis index.
pub fn parse_bitstring(bits: &str, num_qubits: usize) -> Result<usize> {
    let invalid = || Error::InvalidBitstring {
        bits: String::from(bits),
        num_qubits,
    };
    if bits.len() != num_qubits || num_qubits > usize::BITS as usize {
        return Err(invalid());
    }
    bits.bytes().try_fold(0usize, |acc, b| match b {
        b'0' => Ok(acc << 1),
        b'1' => Ok((acc << 1) | 1),
        _ => Err(invalid()),
    })
}

/// Render `index` as a `width`-character bitstring, most significant bit first.
pub fn format_bitstring(index: usize, width: usize) -> String {
    (0..width)
        .rev()
        .map(|k| if (index >> k) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Computational-basis state from a bitstring.
pub fn init_basis_state(num_qubits: usize, bits: &str) -> Result<StateVector> {
    StateVector::basis(num_qubits, bits)
}

/// Apply one gate, returning the new state.
pub fn apply_gate(mut state: StateVector, gate: &Gate) -> Result<StateVector> {
    state.apply(gate)?;
    Ok(state)
}

/// Apply every gate of a measurement-free circuit in program order.
pub fn run_circuit(circuit: &Circuit, mut initial: StateVector) -> Result<StateVector> {
    if circuit.num_qubits() != initial.num_qubits() {
        return Err(Error::WidthMismatch {
            circuit: circuit.num_qubits(),
            state: initial.num_qubits(),
        });
    }
    if !circuit.measurements().is_empty() {
        return Err(Error::UnexpectedMeasurement);
    }
    initial.apply_all(circuit.gates())?;
    Ok(initial)
}

/// Unitary of a measurement-free circuit; column `j` is the circuit applied to `|j⟩`.
pub fn full_unitary(circuit: &Circuit) -> Result<Matrix> {
    let n = circuit.num_qubits();
    if n > MAX_UNITARY_QUBITS {
        return Err(Error::UnitaryTooLarge(n));
    }
    let dim = 1usize << n;
    let mut u = Matrix::zeros(dim);
    for j in 0..dim {
        let out = run_circuit(circuit, StateVector::basis_index(n, j)?)?;
        for (i, a) in out.amplitudes().iter().enumerate() {
            u[(i, j)] = *a;
        }
    }
    Ok(u)
}

/// Shot counts keyed by outcome bitstring.
///
/// Outcome bit `k` (the `k`-th character from the right) corresponds to the
/// `k`-th measured qubit or classical bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountsHistogram {
    num_bits: usize,
    shots: u64,
    counts: BTreeMap<usize, u64>,
}

impl CountsHistogram {
    pub fn empty(num_bits: usize) -> CountsHistogram {
        CountsHistogram {
            num_bits,
            shots: 0,
            counts: BTreeMap::new(),
        }
    }

    /// Build from `(bitstring, count)` pairs; keys must have `num_bits` characters.
    pub fn from_counts<'a>(
        num_bits: usize,
        entries: impl IntoIterator<Item = (&'a str, u64)>,
    ) -> Result<CountsHistogram> {
        let mut h = CountsHistogram::empty(num_bits);
        for (key, n) in entries {
            h.record_n(parse_bitstring(key, num_bits)?, n);
        }
        Ok(h)
    }

    pub fn record(&mut self, outcome: usize) {
        self.record_n(outcome, 1);
    }

    fn record_n(&mut self, outcome: usize, n: u64) {
        if n == 0 {
            return;
        }
        *self.counts.entry(outcome).or_insert(0) += n;
        self.shots += n;
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn is_empty(&self) -> bool {
        self.shots == 0
    }

    pub fn count(&self, bits: &str) -> u64 {
        parse_bitstring(bits, self.num_bits)
            .ok()
            .and_then(|i| self.counts.get(&i).copied())
            .unwrap_or(0)
    }

    pub fn count_index(&self, outcome: usize) -> u64 {
        self.counts.get(&outcome).copied().unwrap_or(0)
    }

    pub fn frequency(&self, bits: &str) -> f64 {
        if self.shots == 0 {
            return 0.0;
        }
        self.count(bits) as f64 / self.shots as f64
    }

    /// Nonzero outcomes in ascending order, as `(outcome index, count)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().map(|(k, v)| (*k, *v))
    }

    /// Nonzero outcomes as `(bitstring, count)`.
    pub fn iter_bitstrings(&self) -> impl Iterator<Item = (String, u64)> + '_ {
        self.iter().map(|(k, v)| (format_bitstring(k, self.num_bits), v))
    }

    /// Dense empirical distribution of length `2^num_bits`.
    pub fn distribution(&self) -> Vec<f64> {
        let mut p = vec![0.0; 1 << self.num_bits];
        if self.shots > 0 {
            for (k, v) in self.iter() {
                p[k] = v as f64 / self.shots as f64;
            }
        }
        p
    }

    /// Add another histogram over the same bits.
    pub fn merge(&mut self, other: &CountsHistogram) -> Result<()> {
        if other.num_bits != self.num_bits {
            return Err(Error::InvalidArgument(alloc::format!(
                "cannot merge {}-bit and {}-bit histograms",
                self.num_bits,
                other.num_bits
            )));
        }
        for (k, v) in other.iter() {
            self.record_n(k, v);
        }
        Ok(())
    }

    /// Histogram over a subset of bits; `bits[k]` becomes bit `k` of the result.
    pub fn marginal(&self, bits: &[usize]) -> Result<CountsHistogram> {
        check_measured(bits, self.num_bits)?;
        let mut out = CountsHistogram::empty(bits.len());
        for (k, v) in self.iter() {
            out.record_n(gather_bits(k, bits), v);
        }
        Ok(out)
    }
}

/// Cumulative distribution used for inverse-transform sampling.
#[derive(Debug, Clone)]
pub(crate) struct Sampler {
    cdf: Vec<f64>,
}

impl Sampler {
    pub(crate) fn new(probs: &[f64]) -> Sampler {
        let mut acc = 0.0;
        let cdf = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Sampler { cdf }
    }

    /// Consumes exactly one `f64` from `rng`.
    pub(crate) fn draw<R: Rng>(&self, rng: &mut R) -> usize {
        let total = *self.cdf.last().unwrap_or(&1.0);
        let u: f64 = rng.gen::<f64>() * total;
        let i = self.cdf.partition_point(|&c| c <= u);
        i.min(self.cdf.len() - 1)
    }
}

/// Draw `shots` outcomes over `measured` from the Born distribution.
///
/// Outcome bit `k` is the value of qubit `measured[k]`, so listing qubits in
/// ascending order reproduces the `j_{n-1}…j_0` convention.
pub fn sample(state: &StateVector, shots: u64, seed: u64, measured: &[usize]) -> Result<CountsHistogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let probs = state.marginal_probabilities(measured)?;
    let sampler = Sampler::new(&probs);
    let mut rng = rng::stream(seed);
    let mut hist = CountsHistogram::empty(measured.len());
    for _ in 0..shots {
        hist.record(sampler.draw(&mut rng));
    }
    Ok(hist)
}

/// Run a circuit from `|0…0⟩`, lower its measurement bases and sample.
pub fn execute(circuit: &Circuit, shots: u64, seed: u64) -> Result<CountsHistogram> {
    let (gates, measured) = circuit.lowered();
    let mut state = StateVector::zero(circuit.num_qubits())?;
    state.apply_all(&gates)?;
    sample(&state, shots, seed, &measured)
}

/// Exact outcome distribution of a circuit's measurements (no sampling).
pub fn exact_distribution(circuit: &Circuit) -> Result<Vec<f64>> {
    let (gates, measured) = circuit.lowered();
    let mut state = StateVector::zero(circuit.num_qubits())?;
    state.apply_all(&gates)?;
    state.marginal_probabilities(&measured)
}

/// Total-variation distance between two distributions of equal length.
pub fn total_variation(p: &[f64], q: &[f64]) -> f64 {
    assert_eq!(p.len(), q.len());
    0.5 * p.iter().zip(q).map(|(a, b)| (a - b).abs()).sum::<f64>()
}
