//! Pauli-string expectations from shot counts and the Mermin polynomials.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;
use core::fmt;
use core::str::FromStr;

use crate::circuit::{Basis, Circuit, Gate, SingleOp};
use crate::device::Device;
use crate::rng;
use crate::state::{CountsHistogram, StateVector};
use crate::stats::{error_propagation, parity_standard_error, Estimate};
use crate::{Error, Result};

/// Parity expectation over the histogram bits in `support`: even parity
/// counts +1, odd −1, weighted by frequency.
pub fn expectation(counts: &CountsHistogram, support: &[usize]) -> Result<f64> {
    if counts.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    for &b in support {
        if b >= counts.num_bits() {
            return Err(Error::QubitOutOfRange {
                qubit: b,
                num_qubits: counts.num_bits(),
            });
        }
    }
    let mask: usize = support.iter().map(|b| 1usize << b).sum();
    let signed: i64 = counts
        .iter()
        .map(|(k, n)| {
            if (k & mask).count_ones().is_multiple_of(2) {
                n as i64
            } else {
                -(n as i64)
            }
        })
        .sum();
    Ok(signed as f64 / counts.shots() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    fn basis(self) -> Option<Basis> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(Basis::X),
            Pauli::Y => Some(Basis::Y),
            Pauli::Z => Some(Basis::Z),
        }
    }

    fn op(self) -> Option<SingleOp> {
        match self {
            Pauli::I => None,
            Pauli::X => Some(SingleOp::X),
            Pauli::Y => Some(SingleOp::Y),
            Pauli::Z => Some(SingleOp::Z),
        }
    }
}

/// Tensor product of Paulis with a real coefficient.
///
/// `factors[q]` acts on qubit `q`; the string form lists the highest qubit
/// first, so `"YXX"` is `σy² σx¹ σx⁰`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliString {
    factors: Vec<Pauli>,
    coefficient: f64,
}

impl PauliString {
    pub fn new(factors: Vec<Pauli>, coefficient: f64) -> Result<PauliString> {
        if coefficient == 0.0 || !coefficient.is_finite() {
            return Err(Error::InvalidArgument(alloc::format!(
                "Pauli coefficient must be finite and nonzero, got {coefficient}"
            )));
        }
        if factors.is_empty() {
            return Err(Error::InvalidArgument(String::from("empty Pauli string")));
        }
        Ok(PauliString { factors, coefficient })
    }

    /// Parse a string like `"YXX"` (highest qubit first) with coefficient `c`.
    pub fn parse(text: &str, coefficient: f64) -> Result<PauliString> {
        let factors = text
            .chars()
            .rev()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::InvalidArgument(alloc::format!("unknown Pauli {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        PauliString::new(factors, coefficient)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor(&self, qubit: usize) -> Pauli {
        self.factors[qubit]
    }

    pub fn coefficient(&self) -> f64 {
        self.coefficient
    }

    pub fn with_coefficient(&self, coefficient: f64) -> PauliString {
        PauliString {
            factors: self.factors.clone(),
            coefficient,
        }
    }

    /// Qubits carrying a non-identity factor, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&q| self.factors[q] != Pauli::I)
            .collect()
    }

    pub fn count(&self, p: Pauli) -> usize {
        self.factors.iter().filter(|&&f| f == p).count()
    }

    /// Operator letters without the coefficient, highest qubit first.
    pub fn label(&self) -> String {
        self.factors.iter().rev().map(|p| p.letter()).collect()
    }

    /// Measurement directives that realise this string: one per non-identity
    /// factor, classical bit `k` for the `k`-th qubit of the support.
    pub fn measurement_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.factors.len());
        for (k, q) in self.support().into_iter().enumerate() {
            let basis = self.factors[q].basis().expect("support excludes identity");
            c.measure(q, k, basis)?;
        }
        Ok(c)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.coefficient < 0.0 { '-' } else { '+' };
        if self.coefficient.abs() == 1.0 {
            write!(f, "{sign}{}", self.label())
        } else {
            write!(f, "{sign}{}*{}", self.coefficient.abs(), self.label())
        }
    }
}

impl FromStr for PauliString {
    type Err = Error;

    /// `"+YXX"`, `"-YYY"` or a bare `"XZ"` (coefficient 1).
    fn from_str(s: &str) -> Result<PauliString> {
        let (coefficient, body) = match s.as_bytes().first() {
            Some(b'-') => (-1.0, &s[1..]),
            Some(b'+') => (1.0, &s[1..]),
            _ => (1.0, s),
        };
        PauliString::parse(body, coefficient)
    }
}

/// `coefficient · ⟨ψ|P|ψ⟩` computed from amplitudes.
pub fn exact_expectation(state: &StateVector, pauli: &PauliString) -> Result<f64> {
    if pauli.len() != state.num_qubits() {
        return Err(Error::PauliLength {
            expected: state.num_qubits(),
            found: pauli.len(),
        });
    }
    let mut applied = state.clone();
    for (q, p) in pauli.factors.iter().enumerate() {
        if let Some(op) = p.op() {
            applied.apply(&Gate::Single { op, qubit: q })?;
        }
    }
    Ok(pauli.coefficient * state.inner(&applied).re)
}

/// Estimate `coefficient · ⟨P⟩` by rotating each factor into Z and sampling.
///
/// Returns the value with its shot-noise standard error.
pub fn measure_pauli(prep: &Circuit, pauli: &PauliString, shots: u64, seed: u64, device: &Device) -> Result<Estimate> {
    if !prep.measurements().is_empty() {
        return Err(Error::UnexpectedMeasurement);
    }
    if pauli.len() != prep.num_qubits() {
        return Err(Error::PauliLength {
            expected: prep.num_qubits(),
            found: pauli.len(),
        });
    }
    let support = pauli.support();
    if support.is_empty() {
        return Ok(Estimate::exact(pauli.coefficient));
    }
    let circuit = prep.compose(&pauli.measurement_circuit()?)?;
    let counts = device.run(&circuit, shots, seed)?;
    let bits: Vec<usize> = (0..support.len()).collect();
    let value = expectation(&counts, &bits)?;
    Ok(Estimate::new(value, parity_standard_error(value, shots)).scaled(pauli.coefficient))
}

/// A Mermin polynomial with its local-realism bound and quantum maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct MerminPolynomial {
    pub n: usize,
    pub terms: Vec<PauliString>,
    pub lr_bound: f64,
    pub qm_value: f64,
}

/// How [`evaluate_mermin`] spends its circuits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MerminMode {
    /// One circuit per term.
    PerTerm,
    /// One circuit per σy-count class, assuming qubit-exchange symmetry.
    Symmetric,
}

/// All X/Y strings over `n` qubits with `k` Ys, Ys moving from the highest
/// qubit down (`YXX, XYX, XXY`).
fn strings_with_ys(n: usize, k: usize) -> Vec<String> {
    let mut out = Vec::new();
    // Positions are listed left to right as printed.
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<String>) {
        if cur.len() == k {
            out.push((0..n).map(|i| if cur.contains(&i) { 'Y' } else { 'X' }).collect());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// The Mermin polynomial used for the `n`-qubit GHZ-type tests.
///
/// Each σy-count class carries one sign:
/// - n = 3: `+` for one Y, `−` for three;
/// - n = 4: `+` for zero, one and four Ys, `−` for two and three;
/// - n = 5: `+` for one and five Ys, `−` for three.
///
/// These are maximal for `(|0…0⟩ + e^{iφ}|1…1⟩)/√2` with φ = π/2, π/4, π/2.
pub fn mermin_polynomial(n: usize) -> Result<MerminPolynomial> {
    let (classes, lr_bound, qm_value): (&[(usize, f64)], f64, f64) = match n {
        3 => (&[(1, 1.0), (3, -1.0)], 2.0, 4.0),
        4 => (&[(0, 1.0), (1, 1.0), (2, -1.0), (3, -1.0), (4, 1.0)], 4.0, 8.0 * SQRT_2),
        5 => (&[(1, 1.0), (3, -1.0), (5, 1.0)], 4.0, 16.0),
        _ => return Err(Error::UnsupportedMerminOrder(n)),
    };
    let mut terms = Vec::new();
    for &(k, sign) in classes {
        for s in strings_with_ys(n, k) {
            terms.push(PauliString::parse(&s, sign)?);
        }
    }
    Ok(MerminPolynomial {
        n,
        terms,
        lr_bound,
        qm_value,
    })
}

impl MerminPolynomial {
    /// Terms grouped by σy count, in order of first appearance.
    pub fn classes(&self) -> Vec<Vec<&PauliString>> {
        let mut classes: Vec<(usize, Vec<&PauliString>)> = Vec::new();
        for t in &self.terms {
            let k = t.count(Pauli::Y);
            match classes.iter_mut().find(|(c, _)| *c == k) {
                Some((_, v)) => v.push(t),
                None => classes.push((k, alloc::vec![t])),
            }
        }
        classes.into_iter().map(|(_, v)| v).collect()
    }

    /// Sum of `|coefficient|`; no state can exceed it.
    pub fn coefficient_norm(&self) -> f64 {
        self.terms.iter().map(|t| t.coefficient().abs()).sum()
    }

    /// `⟨M⟩` on a state, from amplitudes.
    pub fn exact_value(&self, state: &StateVector) -> Result<f64> {
        self.terms.iter().map(|t| exact_expectation(state, t)).sum()
    }
}

/// Sampled `⟨M⟩` with the standard error of independent terms added in
/// quadrature.
///
/// Term `i` is measured with seed `derive(seed, i)`; in symmetric mode each
/// class is represented by its first term, and the estimate is multiplied by
/// the class size.
pub fn evaluate_mermin(
    poly: &MerminPolynomial,
    prep: &Circuit,
    mode: MerminMode,
    shots: u64,
    seed: u64,
    device: &Device,
) -> Result<Estimate> {
    if prep.num_qubits() != poly.n {
        return Err(Error::WidthMismatch {
            circuit: prep.num_qubits(),
            state: poly.n,
        });
    }
    let index_of = |t: &PauliString| poly.terms.iter().position(|u| core::ptr::eq(u, t)).unwrap_or(0);
    let mut parts = Vec::new();
    match mode {
        MerminMode::PerTerm => {
            for (i, t) in poly.terms.iter().enumerate() {
                parts.push(measure_pauli(prep, t, shots, rng::derive(seed, i as u64), device)?);
            }
        }
        MerminMode::Symmetric => {
            for class in poly.classes() {
                let rep = class[0];
                let est = measure_pauli(prep, rep, shots, rng::derive(seed, index_of(rep) as u64), device)?;
                parts.push(est.scaled(class.len() as f64));
            }
        }
    }
    Ok(error_propagation(&parts))
}
