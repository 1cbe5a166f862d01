//! Entanglement purification: leading-order tuple algebra, exact rounds on
//! density matrices, and the cost of the multi-level protocol.

pub mod markov;
pub mod noise;
pub mod protocol;
pub mod tuple;

pub use markov::{expected_raw_pairs, level_success_probs, markov_cost, markov_cost_with_probs, CostEstimate, ProtocolChain};
pub use noise::NoiseModel;
pub use protocol::{load_into_memory, purify_branch, purify_once_exact, raw_pair, rotate_pair, run_level, run_level_from, run_level_with, werner, Level, LevelOutput, LevelRotations, PurifyOutcome};
pub use tuple::{rotate_tuple, tuple_map_f, BellDiagonalTuple, Rotation};
