use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("qubit indices must be distinct, got {0:?}")]
    DuplicateQubits(Vec<usize>),
    #[error("gate acts on {expected} qubits but {got} targets were given")]
    TargetCount { expected: usize, got: usize },
    #[error("{name} = {value} is outside [{lo}, {hi}]")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("partial trace needs at least one kept qubit")]
    EmptyKeepSet,
    #[error("state is not normalized (trace {0})")]
    Unnormalized(f64),
    #[error("register of {needed} qubits exceeds the budget of {budget}")]
    QubitBudget { needed: usize, budget: usize },
    #[error("state is not Bell-diagonal (off-diagonal weight {0:e})")]
    NotBellDiagonal(f64),
    #[error("channel is not a Pauli mixture of parity projections (residual {0:e})")]
    NotPauliDecomposable(f64),
    #[error("numerical invariant violated: {0}")]
    Numerical(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_probability(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_finite() && value >= lo && value <= hi {
        Ok(())
    } else {
        Err(Error::ParameterOutOfRange { name, value, lo, hi })
    }
}
