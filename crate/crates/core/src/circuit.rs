//! Circuit IR: native gates, measurement directives and basis lowering.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::{Error, Result};

/// Single-qubit operations of the native gate set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingleOp {
    H,
    X,
    Y,
    Z,
    S,
    Sdg,
    T,
    Tdg,
    /// `diag(1, e^{i angle})`, angle in radians.
    Rz(f64),
}

impl SingleOp {
    pub fn name(self) -> &'static str {
        match self {
            SingleOp::H => "h",
            SingleOp::X => "x",
            SingleOp::Y => "y",
            SingleOp::Z => "z",
            SingleOp::S => "s",
            SingleOp::Sdg => "sdg",
            SingleOp::T => "t",
            SingleOp::Tdg => "tdg",
            SingleOp::Rz(_) => "rz",
        }
    }

    pub fn is_self_inverse(self) -> bool {
        matches!(self, SingleOp::H | SingleOp::X | SingleOp::Y | SingleOp::Z)
    }

    /// Whether `self` followed by `next` is the identity (exactly, as matrices).
    pub fn cancels(self, next: SingleOp) -> bool {
        match (self, next) {
            (a, b) if a.is_self_inverse() => a == b,
            (SingleOp::S, SingleOp::Sdg)
            | (SingleOp::Sdg, SingleOp::S)
            | (SingleOp::T, SingleOp::Tdg)
            | (SingleOp::Tdg, SingleOp::T) => true,
            _ => false,
        }
    }
}

/// A gate placed on specific qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    Single { op: SingleOp, qubit: usize },
    Cx { control: usize, target: usize },
}

impl Gate {
    pub fn h(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::H,
            qubit: q,
        }
    }
    pub fn x(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::X,
            qubit: q,
        }
    }
    pub fn y(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::Y,
            qubit: q,
        }
    }
    pub fn z(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::Z,
            qubit: q,
        }
    }
    pub fn s(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::S,
            qubit: q,
        }
    }
    pub fn sdg(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::Sdg,
            qubit: q,
        }
    }
    pub fn t(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::T,
            qubit: q,
        }
    }
    pub fn tdg(q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::Tdg,
            qubit: q,
        }
    }
    pub fn rz(angle: f64, q: usize) -> Gate {
        Gate::Single {
            op: SingleOp::Rz(angle),
            qubit: q,
        }
    }
    pub fn cx(control: usize, target: usize) -> Gate {
        Gate::Cx { control, target }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::Single { op, .. } => op.name(),
            Gate::Cx { .. } => "cx",
        }
    }

    /// Qubits touched, control first for cNOT.
    pub fn qubits(&self) -> Qubits {
        match *self {
            Gate::Single { qubit, .. } => Qubits::One(qubit),
            Gate::Cx { control, target } => Qubits::Two(control, target),
        }
    }

    pub fn touches(&self, q: usize) -> bool {
        self.qubits().iter().any(|x| x == q)
    }

    /// Same gate with every qubit index sent through `map`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::Single { op, qubit } => Gate::Single { op, qubit: map(qubit) },
            Gate::Cx { control, target } => Gate::Cx {
                control: map(control),
                target: map(target),
            },
        }
    }

    /// Structural validity on an `n`-qubit register.
    pub fn check(&self, num_qubits: usize) -> Result<()> {
        for q in self.qubits().iter() {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: q, num_qubits });
            }
        }
        match *self {
            Gate::Cx { control, target } if control == target => Err(Error::ControlEqualsTarget(control)),
            Gate::Single {
                op: SingleOp::Rz(a), ..
            } if !a.is_finite() => Err(Error::NonFiniteAngle),
            _ => Ok(()),
        }
    }

    /// Equality with Rz angles compared after canonicalisation, within `tol`.
    pub fn approx_eq(&self, other: &Gate, tol: f64) -> bool {
        match (self, other) {
            (
                Gate::Single {
                    op: SingleOp::Rz(a),
                    qubit: p,
                },
                Gate::Single {
                    op: SingleOp::Rz(b),
                    qubit: q,
                },
            ) => p == q && angle_distance(*a, *b) <= tol,
            _ => self == other,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Single {
                op: SingleOp::Rz(a),
                qubit,
            } => write!(f, "rz({a}) {qubit}"),
            Gate::Single { op, qubit } => write!(f, "{} {qubit}", op.name()),
            Gate::Cx { control, target } => write!(f, "cx {control} {target}"),
        }
    }
}

/// The one or two qubits a gate acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Qubits {
    One(usize),
    Two(usize, usize),
}

impl Qubits {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let (a, b) = match self {
            Qubits::One(a) => (a, None),
            Qubits::Two(a, b) => (a, Some(b)),
        };
        core::iter::once(a).chain(b)
    }
}

/// Map an angle to (-pi, pi].
pub fn canonical_angle(angle: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut a = angle % two_pi;
    if a <= -PI {
        a += two_pi;
    } else if a > PI {
        a -= two_pi;
    }
    a
}

fn angle_distance(a: f64, b: f64) -> f64 {
    canonical_angle(a - b).abs()
}

/// Measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Basis {
    Z,
    X,
    Y,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::Z => 'z',
            Basis::X => 'x',
            Basis::Y => 'y',
        }
    }
}

/// Gates that rotate `basis` onto the computational basis.
///
/// X needs `H`; Y needs `S†` then `H` (operator `H·S†`).
pub fn basis_prefix(basis: Basis, qubit: usize) -> Vec<Gate> {
    match basis {
        Basis::Z => Vec::new(),
        Basis::X => alloc::vec![Gate::h(qubit)],
        Basis::Y => alloc::vec![Gate::sdg(qubit), Gate::h(qubit)],
    }
}

/// Measure `qubit` in `basis` and store the result in classical bit `cbit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Measurement {
    pub qubit: usize,
    pub cbit: usize,
    pub basis: Basis,
}

/// An ordered gate list over `num_qubits` qubits followed by terminal measurements.
///
/// Invariants (checked on every insertion): indices are in range, classical
/// bits and measured qubits are distinct, and no gate touches a qubit after it
/// was measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
    measurements: Vec<Measurement>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
            measurements: Vec::new(),
        }
    }

    pub fn from_gates(num_qubits: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Circuit> {
        let mut c = Circuit::new(num_qubits);
        c.extend(gates)?;
        Ok(c)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn measurements(&self) -> &[Measurement] {
        &self.measurements
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.check(self.num_qubits)?;
        for q in gate.qubits().iter() {
            if self.measurements.iter().any(|m| m.qubit == q) {
                return Err(Error::GateAfterMeasurement(q));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    pub fn measure(&mut self, qubit: usize, cbit: usize, basis: Basis) -> Result<()> {
        if qubit >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit,
                num_qubits: self.num_qubits,
            });
        }
        if self.measurements.iter().any(|m| m.qubit == qubit) {
            return Err(Error::DuplicateMeasurement(qubit));
        }
        if self.measurements.iter().any(|m| m.cbit == cbit) {
            return Err(Error::DuplicateClassicalBit(cbit));
        }
        self.measurements.push(Measurement { qubit, cbit, basis });
        Ok(())
    }

    /// Measure every qubit in the Z basis into the classical bit of the same index.
    pub fn measure_all(&mut self) -> Result<()> {
        (0..self.num_qubits).try_for_each(|q| self.measure(q, q, Basis::Z))
    }

    /// Copy with the measurement directives dropped.
    pub fn without_measurements(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.clone(),
            measurements: Vec::new(),
        }
    }

    /// Lower measurement bases to gate prefixes.
    ///
    /// Returns the gate list (original gates, then each measurement's basis
    /// prefix) and the measured qubits ordered by ascending classical bit, which
    /// is the order [`crate::state::sample`] expects.
    pub fn lowered(&self) -> (Vec<Gate>, Vec<usize>) {
        let mut gates = self.gates.clone();
        let mut ms = self.measurements.clone();
        ms.sort_by_key(|m| m.cbit);
        for m in &ms {
            gates.extend(basis_prefix(m.basis, m.qubit));
        }
        (gates, ms.iter().map(|m| m.qubit).collect())
    }

    /// Same circuit embedded in a register of `num_qubits` (at least as wide).
    pub fn widened(&self, num_qubits: usize) -> Result<Circuit> {
        if num_qubits < self.num_qubits {
            return Err(Error::WidthMismatch {
                circuit: self.num_qubits,
                state: num_qubits,
            });
        }
        Ok(Circuit {
            num_qubits,
            ..self.clone()
        })
    }

    /// Gates of `self` followed by gates and measurements of `next`.
    pub fn compose(&self, next: &Circuit) -> Result<Circuit> {
        if self.num_qubits != next.num_qubits {
            return Err(Error::WidthMismatch {
                circuit: next.num_qubits,
                state: self.num_qubits,
            });
        }
        if let Some(m) = self.measurements.first() {
            return Err(Error::GateAfterMeasurement(m.qubit));
        }
        let mut out = self.clone();
        out.extend(next.gates.iter().copied())?;
        for m in &next.measurements {
            out.measure(m.qubit, m.cbit, m.basis)?;
        }
        Ok(out)
    }

    /// Structural comparison with Rz angles matched within `tol`.
    pub fn approx_eq(&self, other: &Circuit, tol: f64) -> bool {
        self.num_qubits == other.num_qubits
            && self.measurements == other.measurements
            && self.gates.len() == other.gates.len()
            && self.gates.iter().zip(&other.gates).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Number of cNOTs.
    pub fn cx_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, Gate::Cx { .. })).count()
    }
}

impl Circuit {
    /// Seeded random circuit over the native gate set (no measurements).
    ///
    /// About one gate in three is a cNOT when `num_qubits >= 2`.
    pub fn random(num_qubits: usize, num_gates: usize, seed: u64) -> Circuit {
        use rand::Rng;
        let mut rng = crate::rng::stream(seed);
        let mut c = Circuit::new(num_qubits);
        for _ in 0..num_gates {
            let q = rng.gen_range(0..num_qubits);
            let gate = if num_qubits >= 2 && rng.gen_range(0..3) == 0 {
                let mut t = rng.gen_range(0..num_qubits - 1);
                if t >= q {
                    t += 1;
                }
                Gate::cx(q, t)
            } else {
                let op = match rng.gen_range(0..9) {
                    0 => SingleOp::H,
                    1 => SingleOp::X,
                    2 => SingleOp::Y,
                    3 => SingleOp::Z,
                    4 => SingleOp::S,
                    5 => SingleOp::Sdg,
                    6 => SingleOp::T,
                    7 => SingleOp::Tdg,
                    _ => SingleOp::Rz(rng.gen_range(-PI..PI)),
                };
                Gate::Single { op, qubit: q }
            };
            c.gates.push(gate);
        }
        c
    }
}

/// Compose `a` and `b` (free-function form of [`Circuit::compose`]).
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit> {
    a.compose(b)
}
