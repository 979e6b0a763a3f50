use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SjmError {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),

    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("expected a {expected}-qubit state, got {actual} qubits")]
    WrongQubitCount { expected: usize, actual: usize },

    #[error("theta out of range [0, π/2]: {0}")]
    ThetaOutOfRange(f64),

    #[error("phi out of range [-π, π]: {0}")]
    PhiOutOfRange(f64),

    #[error("single-qubit basis is not orthonormal (residual {0:e})")]
    NotOrthonormal(f64),

    #[error("rotation axis is not a unit vector (norm {0})")]
    NonUnitAxis(f64),

    #[error("qubit count must be even and within 2..={max}, got {n}")]
    InvalidQubitCount { n: usize, max: usize },

    #[error("gate {kind} expects {expected} qubit(s), got {actual}")]
    GateArity {
        kind: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("circuit and basis were built from different parameters")]
    ParameterMismatch,

    #[error("basis index out of range: {0}")]
    IndexOutOfRange(usize),
}

pub type Result<T> = std::result::Result<T, SjmError>;
