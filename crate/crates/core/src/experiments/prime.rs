//! The prime state `|p₃⟩ = ½(|2⟩ + |3⟩ + |5⟩ + |7⟩)` and the prime-counting
//! quantities its observables encode.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use super::{all_bitstrings, frequency_table, ExperimentReport, RunSettings};
use crate::circuit::{Basis, Circuit, Gate};
use crate::observables::{exact_expectation, measure_pauli, PauliString};
use crate::rng;
use crate::state::StateVector;
use crate::stats::{aggregate, error_propagation, Estimate};
use crate::transpile::{toffoli_decomposition, zero_controlled_cx};
use crate::{Device, Error, Result};

/// Largest register [`direct_prime_state`] builds.
pub const MAX_DIRECT_PRIME_QUBITS: usize = 12;

/// Three-bit outcomes that are prime.
pub const PRIME_OUTCOMES: [&str; 4] = ["010", "011", "101", "111"];

/// Prime statistics up to `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeCounts {
    pub n: u64,
    /// Primes `≤ n`.
    pub pi: u64,
    /// Primes `≡ 1 (mod 4)`.
    pub pi41: u64,
    /// Primes `≡ 3 (mod 4)`.
    pub pi43: u64,
    /// Twin pairs `(p, p+2)` with `p + 2 ≤ n`.
    pub pi2: u64,
    /// Twin pairs with `p ≡ 1 (mod 4)`.
    pub pi2_1: u64,
    /// Twin pairs with `p ≡ 3 (mod 4)`.
    pub pi2_3: u64,
    /// `pi43 - pi41`.
    pub chebyshev_bias: i64,
    /// `pi2_3 - pi2_1`.
    pub twin_bias: i64,
}

fn sieve(n: usize) -> Vec<bool> {
    let mut is_prime = vec![true; n + 1];
    is_prime[0] = false;
    if n >= 1 {
        is_prime[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is_prime[i] {
            let mut k = i * i;
            while k <= n {
                is_prime[k] = false;
                k += i;
            }
        }
        i += 1;
    }
    is_prime
}

pub fn prime_counts(n: u64) -> Result<PrimeCounts> {
    if n < 2 {
        return Err(Error::InvalidArgument(alloc::format!(
            "prime counts need N >= 2, got {n}"
        )));
    }
    let limit = usize::try_from(n).map_err(|_| Error::InvalidArgument(String::from("N too large")))?;
    let is_prime = sieve(limit);
    let mut c = PrimeCounts {
        n,
        pi: 0,
        pi41: 0,
        pi43: 0,
        pi2: 0,
        pi2_1: 0,
        pi2_3: 0,
        chebyshev_bias: 0,
        twin_bias: 0,
    };
    for p in 2..=limit {
        if !is_prime[p] {
            continue;
        }
        c.pi += 1;
        match p % 4 {
            1 => c.pi41 += 1,
            3 => c.pi43 += 1,
            _ => {}
        }
        if p + 2 <= limit && is_prime[p + 2] {
            c.pi2 += 1;
            match p % 4 {
                1 => c.pi2_1 += 1,
                _ => c.pi2_3 += 1,
            }
        }
    }
    c.chebyshev_bias = c.pi43 as i64 - c.pi41 as i64;
    c.twin_bias = c.pi2_3 as i64 - c.pi2_1 as i64;
    Ok(c)
}

/// Uniform superposition of the primes below `2^n`, from amplitudes.
pub fn direct_prime_state(n: usize) -> Result<StateVector> {
    if !(2..=MAX_DIRECT_PRIME_QUBITS).contains(&n) {
        return Err(Error::UnsupportedWidth(n));
    }
    let is_prime = sieve((1 << n) - 1);
    let count = is_prime.iter().filter(|&&p| p).count();
    let a = 1.0 / Float::sqrt(count as f64);
    let amps = is_prime
        .iter()
        .map(|&p| Complex64::new(if p { a } else { 0.0 }, 0.0))
        .collect();
    StateVector::from_amplitudes(amps)
}

/// Four-qubit circuit leaving `|p₃⟩` on q2..q0 with the ancilla q3 in `|0⟩`.
///
/// `X q0` and Hadamards on q1, q2 give the odd numbers 1, 3, 5, 7; a Toffoli
/// with both controls negated sends 1 to 0, and a zero-controlled cNOT
/// q0 → q1 sends 0 to 2. Measurements read q2..q0 into c2..c0.
pub fn prime_state_circuit() -> Circuit {
    let mut c = Circuit::new(4);
    let build = |c: &mut Circuit| -> Result<()> {
        c.extend([Gate::x(0), Gate::h(1), Gate::h(2), Gate::x(1), Gate::x(2)])?;
        c.extend(toffoli_decomposition(2, 1, 0)?)?;
        c.extend([Gate::x(1), Gate::x(2)])?;
        c.extend(zero_controlled_cx(0, 1)?)?;
        for q in 0..3 {
            c.measure(q, q, Basis::Z)?;
        }
        Ok(())
    };
    build(&mut c).expect("fixed circuit");
    c
}

/// `⟨σz¹⟩`, `⟨σx¹⟩` and `⟨σx¹σx² + σy¹σy²⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimeObservables {
    pub sigma_z1: Estimate,
    pub sigma_x1: Estimate,
    pub xx_yy: Estimate,
}

/// Closed forms: `(π₄₁ − π₄₃ − 1)/π`, `2π₂⁽¹⁾/π` and `4π₂⁽³⁾/π`.
pub fn prime_theory(c: &PrimeCounts) -> PrimeObservables {
    let pi = c.pi as f64;
    PrimeObservables {
        sigma_z1: Estimate::exact((c.pi41 as f64 - c.pi43 as f64 - 1.0) / pi),
        sigma_x1: Estimate::exact(2.0 * c.pi2_1 as f64 / pi),
        xx_yy: Estimate::exact(4.0 * c.pi2_3 as f64 / pi),
    }
}

fn on_qubits(width: usize, letters: &[(usize, char)]) -> Result<PauliString> {
    let s: String = (0..width)
        .rev()
        .map(|q| letters.iter().find(|(k, _)| *k == q).map_or('I', |(_, l)| *l))
        .collect();
    PauliString::parse(&s, 1.0)
}

fn observable_strings(width: usize) -> Result<[PauliString; 4]> {
    if width < 3 {
        return Err(Error::UnsupportedWidth(width));
    }
    Ok([
        on_qubits(width, &[(1, 'Z')])?,
        on_qubits(width, &[(1, 'X')])?,
        on_qubits(width, &[(1, 'X'), (2, 'X')])?,
        on_qubits(width, &[(1, 'Y'), (2, 'Y')])?,
    ])
}

/// The three observables computed from amplitudes.
pub fn exact_prime_observables(state: &StateVector) -> Result<PrimeObservables> {
    let [z, x, xx, yy] = observable_strings(state.num_qubits())?;
    Ok(PrimeObservables {
        sigma_z1: Estimate::exact(exact_expectation(state, &z)?),
        sigma_x1: Estimate::exact(exact_expectation(state, &x)?),
        xx_yy: Estimate::exact(exact_expectation(state, &xx)? + exact_expectation(state, &yy)?),
    })
}

/// The three observables sampled on `prep` (measurements are dropped).
/// `XX + YY` takes two circuits; their shot errors add in quadrature.
pub fn prime_observables(prep: &Circuit, shots: u64, seed: u64, device: &Device) -> Result<PrimeObservables> {
    let prep = prep.without_measurements();
    let [z, x, xx, yy] = observable_strings(prep.num_qubits())?;
    let m = |p: &PauliString, k: u64| measure_pauli(&prep, p, shots, rng::derive(seed, k), device);
    Ok(PrimeObservables {
        sigma_z1: m(&z, 0)?,
        sigma_x1: m(&x, 1)?,
        xx_yy: error_propagation(&[m(&xx, 2)?, m(&yy, 3)?]),
    })
}

/// Outcome distribution of [`prime_state_circuit`], the summed probability
/// of prime outcomes, and the three observables, each as mean ± std over runs.
pub fn prime_experiment(device: &Device, settings: &RunSettings) -> Result<ExperimentReport> {
    settings.check()?;
    let circuit = prime_state_circuit();
    let outcomes = all_bitstrings(3);
    let mut per_run = Vec::with_capacity(settings.runs);
    let mut series: [Vec<f64>; 4] = Default::default();
    for r in 0..settings.runs {
        let base = settings.run_seed(r);
        let obs = prime_observables(&circuit, settings.shots, base, device)?;
        let counts = device.run(&circuit, settings.shots, rng::derive(base, 4))?;
        let freqs: Vec<f64> = outcomes.iter().map(|o| counts.frequency(o)).collect();
        series[0].push(PRIME_OUTCOMES.iter().map(|o| counts.frequency(o)).sum());
        series[1].push(obs.sigma_z1.value);
        series[2].push(obs.sigma_x1.value);
        series[3].push(obs.xx_yy.value);
        per_run.push(vec![freqs]);
    }
    let theory = prime_theory(&prime_counts(7)?);
    let mut report = ExperimentReport::new("prime-state", device, settings);
    report.push_quantity("prime outcomes", aggregate(&series[0]), Some(1.0));
    report.push_quantity("<sz1>", aggregate(&series[1]), Some(theory.sigma_z1.value));
    report.push_quantity("<sx1>", aggregate(&series[2]), Some(theory.sigma_x1.value));
    report.push_quantity("<sx1sx2+sy1sy2>", aggregate(&series[3]), Some(theory.xx_yy.value));
    report.tables.push(frequency_table(
        "outcome probabilities",
        "state",
        "outcome",
        vec![String::from("p3")],
        outcomes,
        &per_run,
    ));
    Ok(report)
}
