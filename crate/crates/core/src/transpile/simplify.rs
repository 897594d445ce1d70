use alloc::vec::Vec;

use crate::circuit::{canonical_angle, Circuit, Gate, SingleOp};

/// Angles closer than this to zero (mod 2π) are dropped after merging.
const ZERO_ANGLE: f64 = 1e-12;

/// Peephole pass: cancel adjacent inverse pairs and merge adjacent Rz.
///
/// "Adjacent" means no gate in between touches the same qubits. Cancelled
/// pairs are H·H, X·X, Y·Y, Z·Z, S·S†, T·T† and identical cNOTs; consecutive
/// Rz angles add. The result is a fixed point of this function.
pub fn simplify(circuit: &Circuit) -> Circuit {
    let mut out: Vec<Gate> = Vec::with_capacity(circuit.len());
    for &g in circuit.gates() {
        match g {
            Gate::Single { op, qubit } => {
                let prev = out.iter().rposition(|p| p.touches(qubit));
                match prev.map(|i| (i, out[i])) {
                    Some((i, Gate::Single { op: prev_op, .. })) if prev_op.cancels(op) => {
                        out.remove(i);
                    }
                    Some((
                        i,
                        Gate::Single {
                            op: SingleOp::Rz(a), ..
                        },
                    )) => {
                        if let SingleOp::Rz(b) = op {
                            let sum = a + b;
                            if canonical_angle(sum).abs() < ZERO_ANGLE {
                                out.remove(i);
                            } else {
                                out[i] = Gate::rz(sum, qubit);
                            }
                        } else {
                            out.push(g);
                        }
                    }
                    _ => {
                        if let SingleOp::Rz(a) = op {
                            if canonical_angle(a).abs() < ZERO_ANGLE {
                                continue;
                            }
                        }
                        out.push(g);
                    }
                }
            }
            Gate::Cx { control, target } => {
                let pc = out.iter().rposition(|p| p.touches(control));
                let pt = out.iter().rposition(|p| p.touches(target));
                match (pc, pt) {
                    (Some(i), Some(j)) if i == j && out[i] == g => {
                        out.remove(i);
                    }
                    _ => out.push(g),
                }
            }
        }
    }
    let mut result = Circuit::from_gates(circuit.num_qubits(), out).expect("simplification keeps gates valid");
    for m in circuit.measurements() {
        result
            .measure(m.qubit, m.cbit, m.basis)
            .expect("measurements were valid in the input");
    }
    result
}
