//! Mermin inequalities on GHZ-type states.

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{ExperimentReport, RunSettings};
use crate::circuit::{Circuit, Gate};
use crate::observables::{evaluate_mermin, mermin_polynomial, MerminMode};
use crate::state::{run_circuit, StateVector};
use crate::stats::{aggregate, Estimate};
use crate::{Device, Error, Result};

/// Relative phase of the `|1…1⟩` component: π/2 for n = 3, 5 and π/4 for n = 4.
fn ghz_phase(n: usize) -> Result<f64> {
    match n {
        3 | 5 => Ok(core::f64::consts::FRAC_PI_2),
        4 => Ok(core::f64::consts::FRAC_PI_4),
        _ => Err(Error::UnsupportedMerminOrder(n)),
    }
}

/// H on the top qubit, a cNOT ladder down to qubit 0, then S (or T for n = 4)
/// on qubit 0.
pub fn ghz_preparation(n: usize) -> Result<Circuit> {
    ghz_phase(n)?;
    let mut c = Circuit::new(n);
    c.push(Gate::h(n - 1))?;
    for q in (1..n).rev() {
        c.push(Gate::cx(q, q - 1))?;
    }
    c.push(if n == 4 { Gate::t(0) } else { Gate::s(0) })?;
    Ok(c)
}

/// `(|0…0⟩ + e^{iφ}|1…1⟩)/√2` built directly.
pub fn ghz_target_state(n: usize) -> Result<StateVector> {
    let phase = ghz_phase(n)?;
    let mut amps = alloc::vec![Complex64::new(0.0, 0.0); 1 << n];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[(1 << n) - 1] = Complex64::from_polar(FRAC_1_SQRT_2, phase);
    StateVector::from_amplitudes(amps)
}

/// `⟨M_n⟩` per run, reported as mean ± std over runs alongside the exact
/// value and the local-realism bound.
pub fn mermin_test(n: usize, mode: MerminMode, device: &Device, settings: &RunSettings) -> Result<ExperimentReport> {
    settings.check()?;
    let poly = mermin_polynomial(n)?;
    let prep = ghz_preparation(n)?;
    let exact = poly.exact_value(&run_circuit(&prep, StateVector::zero(n)?)?)?;
    let mut values = Vec::with_capacity(settings.runs);
    let mut shot_errors = Vec::with_capacity(settings.runs);
    for r in 0..settings.runs {
        let e = evaluate_mermin(&poly, &prep, mode, settings.shots, settings.run_seed(r), device)?;
        values.push(e.value);
        shot_errors.push(e.std);
    }
    let est = aggregate(&values);
    let mut report = ExperimentReport::new(alloc::format!("mermin-{n}"), device, settings);
    report.push_quantity(alloc::format!("<M{n}>"), est, Some(poly.qm_value));
    report.push_quantity(
        "mean shot error",
        Estimate::exact(shot_errors.iter().sum::<f64>() / shot_errors.len() as f64),
        None,
    );
    report.push_quantity("exact", Estimate::exact(exact), Some(poly.qm_value));
    report.push_quantity("LR bound", Estimate::exact(poly.lr_bound), None);
    report.push_flag("violation", est.value - 3.0 * est.std > poly.lr_bound);
    Ok(report)
}
