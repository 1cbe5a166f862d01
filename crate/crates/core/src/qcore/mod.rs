//! Exact density-matrix engine for small registers.

pub mod bell;
pub mod channels;
pub mod density;
pub mod gates;
pub mod operator;
pub mod pauli;
pub mod superop;

pub use bell::{bell_decomposition, bell_fidelity, bell_mixture, make_bell, root_fidelity, BellLabel};
pub use channels::Basis;
pub use density::DensityMatrix;
pub use gates::{GateKind, GateOp};
pub use operator::{Matrix, Operator, C64};
pub use pauli::{Pauli, PauliString};
pub use superop::{extract_superoperator, FnProcess, KrausTerm, Process, Superoperator, DEFAULT_QUBIT_BUDGET};
