//! Simulation of purified remote entanglement between ion-trap modules:
//! exact small-register channels, purification protocols, repeater chains,
//! remote stabilizer measurements and toric-code threshold estimation.

mod error;
pub mod purify;
pub mod qcore;
pub mod repeater;
pub mod seeding;
pub mod stabtool;
pub mod toric;

pub use error::{Error, Result};
pub use purify::{BellDiagonalTuple, Level, NoiseModel};
pub use qcore::{BellLabel, DensityMatrix, Pauli, PauliString};
