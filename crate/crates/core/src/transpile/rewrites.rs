//! Gate identities used to lower circuits onto the native gate set.

use alloc::vec;
use alloc::vec::Vec;

use crate::circuit::Gate;
use crate::{Error, Result};

fn distinct(qubits: &[usize]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(if qubits.len() == 2 {
                Error::ControlEqualsTarget(*q)
            } else {
                Error::RepeatedQubit
            });
        }
    }
    Ok(())
}

/// `cx control→target` built from the opposite cNOT and four Hadamards.
pub fn reverse_cx(control: usize, target: usize) -> Result<Vec<Gate>> {
    distinct(&[control, target])?;
    Ok(vec![
        Gate::h(control),
        Gate::h(target),
        Gate::cx(target, control),
        Gate::h(control),
        Gate::h(target),
    ])
}

/// cNOT that fires when `control` is `|0⟩`.
pub fn zero_controlled_cx(control: usize, target: usize) -> Result<Vec<Gate>> {
    distinct(&[control, target])?;
    Ok(vec![Gate::x(control), Gate::cx(control, target), Gate::x(control)])
}

/// SWAP as three alternating cNOTs.
pub fn swap_decomposition(a: usize, b: usize) -> Result<Vec<Gate>> {
    distinct(&[a, b])?;
    Ok(vec![Gate::cx(a, b), Gate::cx(b, a), Gate::cx(a, b)])
}

/// Controlled-Z from one cNOT between Hadamards on `b`.
pub fn cz_decomposition(a: usize, b: usize) -> Result<Vec<Gate>> {
    distinct(&[a, b])?;
    Ok(vec![Gate::h(b), Gate::cx(a, b), Gate::h(b)])
}

/// Toffoli over {H, T, T†, CX} with six cNOTs. Exact, no global phase.
pub fn toffoli_decomposition(c1: usize, c2: usize, target: usize) -> Result<Vec<Gate>> {
    distinct(&[c1, c2, target])?;
    let (a, b, t) = (c1, c2, target);
    Ok(vec![
        Gate::h(t),
        Gate::cx(b, t),
        Gate::tdg(t),
        Gate::cx(a, t),
        Gate::t(t),
        Gate::cx(b, t),
        Gate::tdg(t),
        Gate::cx(a, t),
        Gate::t(b),
        Gate::t(t),
        Gate::h(t),
        Gate::cx(a, b),
        Gate::t(a),
        Gate::tdg(b),
        Gate::cx(a, b),
    ])
}

/// Controlled phase `diag(1, 1, 1, e^{iλ})` over {Rz, CX}.
///
/// The target sandwich `Rz(λ/2)·CX·Rz(-λ/2)·CX` alone leaves the control
/// branch with `diag(e^{-iλ/2}, e^{iλ/2})`; the `Rz(λ/2)` on the control
/// supplies the missing `e^{iλ/2}`.
pub fn decompose_crz(control: usize, target: usize, angle: f64) -> Result<Vec<Gate>> {
    distinct(&[control, target])?;
    if !angle.is_finite() {
        return Err(Error::NonFiniteAngle);
    }
    let half = angle / 2.0;
    Ok(vec![
        Gate::rz(half, control),
        Gate::rz(half, target),
        Gate::cx(control, target),
        Gate::rz(-half, target),
        Gate::cx(control, target),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use crate::state::{full_unitary, run_circuit, StateVector};
    use crate::unitary::Matrix;
    use core::f64::consts::PI;
    use num_complex::Complex64;

    fn unitary(n: usize, gates: Vec<Gate>) -> Matrix {
        full_unitary(&Circuit::from_gates(n, gates).unwrap()).unwrap()
    }

    fn run(n: usize, gates: Vec<Gate>, bits: &str) -> StateVector {
        let c = Circuit::from_gates(n, gates).unwrap();
        run_circuit(&c, StateVector::basis(n, bits).unwrap()).unwrap()
    }

    fn is_basis(s: &StateVector, bits: &str) -> bool {
        let idx = crate::state::parse_bitstring(bits, s.num_qubits()).unwrap();
        (s.amplitude(idx) - Complex64::new(1.0, 0.0)).norm() < 1e-10
    }

    #[test]
    fn reversed_cx_acts_like_cx() {
        // qubit 1 is the left character
        assert!(is_basis(&run(2, reverse_cx(0, 1).unwrap(), "01"), "11"));
        assert!(is_basis(&run(2, reverse_cx(1, 0).unwrap(), "10"), "11"));
        let direct = unitary(2, vec![Gate::cx(0, 1)]);
        assert!(unitary(2, reverse_cx(0, 1).unwrap()).max_abs_diff(&direct) < 1e-10);
        assert_eq!(reverse_cx(2, 2), Err(Error::ControlEqualsTarget(2)));
    }

    #[test]
    fn zero_control() {
        // control 1, target 0
        assert!(is_basis(&run(2, zero_controlled_cx(1, 0).unwrap(), "00"), "01"));
        assert!(is_basis(&run(2, zero_controlled_cx(1, 0).unwrap(), "10"), "10"));
        let reference = unitary(2, vec![Gate::x(1), Gate::cx(1, 0), Gate::x(1)]);
        assert_eq!(unitary(2, zero_controlled_cx(1, 0).unwrap()), reference);
    }

    #[test]
    fn swap_identity() {
        assert!(is_basis(&run(2, swap_decomposition(0, 1).unwrap(), "01"), "10"));
        let swap = Matrix::permutation(4, |j| ((j & 1) << 1) | (j >> 1));
        assert!(unitary(2, swap_decomposition(0, 1).unwrap()).max_abs_diff(&swap) < 1e-12);
        assert!(unitary(2, swap_decomposition(1, 0).unwrap()).max_abs_diff(&swap) < 1e-12);

        // (α|0⟩+β|1⟩) on qubit 1, |0⟩ on qubit 0 → moved to qubit 0
        let mut prep = StateVector::zero(2).unwrap();
        prep.apply(&Gate::rz(0.3, 1)).unwrap();
        prep.apply(&Gate::h(1)).unwrap();
        prep.apply(&Gate::t(1)).unwrap();
        let (alpha, beta) = (prep.amplitude(0b00), prep.amplitude(0b10));
        let c = Circuit::from_gates(2, swap_decomposition(1, 0).unwrap()).unwrap();
        let out = run_circuit(&c, prep).unwrap();
        assert!((out.amplitude(0b00) - alpha).norm() < 1e-12);
        assert!((out.amplitude(0b01) - beta).norm() < 1e-12);
    }

    #[test]
    fn cz_identity() {
        let s = run(2, cz_decomposition(0, 1).unwrap(), "11");
        assert!((s.amplitude(3) + Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(is_basis(&run(2, cz_decomposition(0, 1).unwrap(), "10"), "10"));
        let ab = unitary(2, cz_decomposition(0, 1).unwrap());
        let ba = unitary(2, cz_decomposition(1, 0).unwrap());
        assert!(ab.max_abs_diff(&ba) < 1e-12);
    }

    #[test]
    fn toffoli_identity() {
        // controls 2 and 1, target 0
        let g = || toffoli_decomposition(2, 1, 0).unwrap();
        assert!(is_basis(&run(3, g(), "110"), "111"));
        assert!(is_basis(&run(3, g(), "100"), "100"));
        let toffoli = Matrix::permutation(8, |j| if j & 0b110 == 0b110 { j ^ 1 } else { j });
        let u = unitary(3, g());
        assert!(u.equals_up_to_phase(&toffoli, 1e-10));
        assert!(u.max_abs_diff(&toffoli) < 1e-10);
        assert_eq!(toffoli_decomposition(0, 0, 1), Err(Error::RepeatedQubit));
    }

    #[test]
    fn controlled_rz() {
        for lambda in [PI / 2.0, PI / 4.0, 3.0 * PI / 2.0, 0.37] {
            let mut target = Matrix::identity(4);
            target[(3, 3)] = Complex64::from_polar(1.0, lambda);
            for (c, t) in [(0, 1), (1, 0)] {
                let u = unitary(2, decompose_crz(c, t, lambda).unwrap());
                assert!(u.max_abs_diff(&target) < 1e-12, "lambda {lambda}");
            }
        }
        let zero = unitary(2, decompose_crz(0, 1, 0.0).unwrap());
        assert!(zero.equals_up_to_phase(&Matrix::identity(4), 1e-12));
        let pi = unitary(2, decompose_crz(0, 1, PI).unwrap());
        assert!(pi.max_abs_diff(&unitary(2, cz_decomposition(0, 1).unwrap())) < 1e-12);

        let s = run(2, decompose_crz(1, 0, PI / 2.0).unwrap(), "11");
        assert!((s.amplitude(3) - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(decompose_crz(1, 1, 0.5), Err(Error::ControlEqualsTarget(1)));
    }
}
