//! Remote parity measurements and their error tables.

pub mod circuits;
pub mod decompose;
pub mod remote;
pub mod table;

pub use circuits::{
    ancilla_parity, build_ghz, build_parity_superop_ancilla, build_parity_superop_ghz, build_parity_table, ghz_parity,
    StabilizerMethod, ANCILLA_STEERING, GHZ_STEERING,
};
pub use decompose::{decompose_superop, decompose_with_residual, parity_projector, Decomposition, DECOMPOSITION_TOL};
pub use remote::{remote_cphase, remote_cphase_branch, remote_cphase_branch_superops, remote_cphase_superop, RemoteGateResource};
pub use table::{ErrorEvent, ParityBasis, ParityErrorTable, TableEntry, TableSampler, TABLE_SUM_TOL};
