//! Bell's inequality on the singlet, with directions in the XY plane.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use super::{ExperimentReport, RunSettings};
use crate::circuit::{Basis, Circuit, Gate};
use crate::observables::{exact_expectation, expectation, PauliString};
use crate::rng;
use crate::state::{run_circuit, StateVector};
use crate::stats::{aggregate, parity_standard_error, Estimate};
use crate::{Device, Result};

/// Directions a, b, c as angles from the X axis.
pub const BELL_ANGLES: [f64; 3] = [0.0, PI / 3.0, 2.0 * PI / 3.0];

/// Setting pairs for P(a,b), P(a,c) and P(b,c).
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// `(|01⟩ - |10⟩)/√2` prepared from `|11⟩`.
pub fn bell_prep() -> Circuit {
    Circuit::from_gates(2, [Gate::x(0), Gate::x(1), Gate::h(1), Gate::cx(1, 0)]).expect("fixed circuit")
}

/// Prep plus rotations so that X-basis measurement of qubit 1 (0) measures
/// the first (second) direction of the pair.
fn rotated(first: f64, second: f64) -> Circuit {
    let mut c = bell_prep();
    c.push(Gate::rz(-first, 1)).expect("in range");
    c.push(Gate::rz(-second, 0)).expect("in range");
    c
}

/// The three measurement circuits, in the order P(a,b), P(a,c), P(b,c).
pub fn bell_circuits() -> [Circuit; 3] {
    PAIRS.map(|(i, j)| {
        let mut c = rotated(BELL_ANGLES[i], BELL_ANGLES[j]);
        c.measure(1, 1, Basis::X).expect("fresh bit");
        c.measure(0, 0, Basis::X).expect("fresh bit");
        c
    })
}

/// P(a,b), P(a,c), P(b,c) from amplitudes.
pub fn bell_correlations_exact() -> Result<[f64; 3]> {
    let xx = PauliString::parse("XX", 1.0)?;
    let mut out = [0.0; 3];
    for (k, (i, j)) in PAIRS.iter().enumerate() {
        let state = run_circuit(&rotated(BELL_ANGLES[*i], BELL_ANGLES[*j]), StateVector::zero(2)?)?;
        out[k] = exact_expectation(&state, &xx)?;
    }
    Ok(out)
}

/// `|P(a,b) - P(a,c)| - P(b,c)` with independent errors added in quadrature.
pub fn bell_statistic(p_ab: Estimate, p_ac: Estimate, p_bc: Estimate) -> Estimate {
    let value = (p_ab.value - p_ac.value).abs() - p_bc.value;
    let std = Float::sqrt(p_ab.std * p_ab.std + p_ac.std * p_ac.std + p_bc.std * p_bc.std);
    Estimate::new(value, std)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellResult {
    pub p_ab: Estimate,
    pub p_ac: Estimate,
    pub p_bc: Estimate,
    pub statistic: Estimate,
}

/// One run of the three circuits; errors are shot-noise standard errors.
pub fn bell_test(shots: u64, seed: u64, device: &Device) -> Result<BellResult> {
    let mut p = [Estimate::exact(0.0); 3];
    for (k, circuit) in bell_circuits().iter().enumerate() {
        let counts = device.run(circuit, shots, rng::derive(seed, k as u64))?;
        let v = expectation(&counts, &[0, 1])?;
        p[k] = Estimate::new(v, parity_standard_error(v, shots));
    }
    Ok(BellResult {
        p_ab: p[0],
        p_ac: p[1],
        p_bc: p[2],
        statistic: bell_statistic(p[0], p[1], p[2]),
    })
}

/// Each correlation as mean ± std over runs; the statistic propagates those
/// spreads. A violation is flagged when it exceeds 1 by more than 3σ.
pub fn bell_experiment(device: &Device, settings: &RunSettings) -> Result<ExperimentReport> {
    settings.check()?;
    let mut runs: [Vec<f64>; 3] = Default::default();
    for r in 0..settings.runs {
        let res = bell_test(settings.shots, settings.run_seed(r), device)?;
        runs[0].push(res.p_ab.value);
        runs[1].push(res.p_ac.value);
        runs[2].push(res.p_bc.value);
    }
    let exact = bell_correlations_exact()?;
    let p = [aggregate(&runs[0]), aggregate(&runs[1]), aggregate(&runs[2])];
    let stat = bell_statistic(p[0], p[1], p[2]);
    let mut report = ExperimentReport::new("bell", device, settings);
    for (k, name) in ["P(a,b)", "P(a,c)", "P(b,c)"].iter().enumerate() {
        report.push_quantity(*name, p[k], Some(exact[k]));
    }
    report.push_quantity(
        "|P(a,b)-P(a,c)|-P(b,c)",
        stat,
        Some((exact[0] - exact[1]).abs() - exact[2]),
    );
    report.push_flag("violation", stat.value - 3.0 * stat.std > 1.0);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::NoiseModel;

    #[test]
    fn singlet_correlations() {
        let p = bell_correlations_exact().unwrap();
        for (got, want) in p.iter().zip([-0.5, 0.5, -0.5]) {
            assert!((got - want).abs() < 1e-12);
        }
        let s = bell_statistic(Estimate::exact(p[0]), Estimate::exact(p[1]), Estimate::exact(p[2]));
        assert!((s.value - 1.5).abs() < 1e-12);
    }

    #[test]
    fn random_readout_kills_violation() {
        let device = Device::ideal().with_noise(NoiseModel::new(0.0, 0.0, 0.5).unwrap());
        let res = bell_test(20000, 3, &device).unwrap();
        assert!(res.statistic.value.abs() < 0.1, "{res:?}");
    }
}
