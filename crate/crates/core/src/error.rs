use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("control and target are both qubit {0}")]
    ControlEqualsTarget(usize),
    #[error("qubits of a multi-qubit gate must be distinct")]
    RepeatedQubit,
    #[error("register width {0} is outside the supported range 1..={max}", max = crate::state::MAX_QUBITS)]
    UnsupportedWidth(usize),
    #[error("full unitary requested for {0} qubits, the limit is {max}", max = crate::state::MAX_UNITARY_QUBITS)]
    UnitaryTooLarge(usize),
    #[error("bitstring {bits:?} does not describe a {num_qubits}-qubit basis state")]
    InvalidBitstring { bits: String, num_qubits: usize },
    #[error("circuit acts on {circuit} qubits but the state has {state}")]
    WidthMismatch { circuit: usize, state: usize },
    #[error("circuit contains measurements; sample the state instead")]
    UnexpectedMeasurement,
    #[error("gate on qubit {0} follows its measurement")]
    GateAfterMeasurement(usize),
    #[error("qubit {0} is measured twice")]
    DuplicateMeasurement(usize),
    #[error("classical bit c{0} is written twice")]
    DuplicateClassicalBit(usize),
    #[error("qubit {0} listed twice")]
    DuplicateQubit(usize),
    #[error("shot count must be positive")]
    ZeroShots,
    #[error("angle must be finite")]
    NonFiniteAngle,
    #[error("histogram is empty")]
    EmptyHistogram,
    #[error("probability {name} = {value} is outside [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("no route between qubits {from} and {to} on the coupling map")]
    Unroutable { from: usize, to: usize },
    #[error("circuit needs {needed} qubits but the coupling map has {available}")]
    MapTooSmall { needed: usize, available: usize },
    #[error("coupling map edge {0} -> {1} is invalid")]
    InvalidEdge(usize, usize),
    #[error("noise grid is empty")]
    EmptyGrid,
    #[error("no fit targets given")]
    EmptyTargets,
    #[error("Mermin polynomial of order {0} is not supported (3, 4 or 5)")]
    UnsupportedMerminOrder(usize),
    #[error("Pauli string has length {found}, expected {expected}")]
    PauliLength { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
