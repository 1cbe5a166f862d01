pub mod blossom;
pub mod decode;
pub mod history;
pub mod lattice;
pub mod matching;
pub mod threshold;

pub use decode::{decode, defect_distance, is_logical_failure, logical_error_trial, logical_flips, logical_trial_flips, match_defects};
pub use history::{default_rounds, simulate_history, simulate_history_traced, HistoryTrace, PauliFrame, RoundTables, SyndromeHistory};
pub use lattice::{CheckKind, ToricLattice};
pub use matching::MatchingGraph;
pub use threshold::{
    crossing_of, default_grid, estimate_crossing, threshold_scan, threshold_scan_with_progress, CurvePoint, Crossing, ThresholdConfig,
    ThresholdScan, BOOTSTRAP_SAMPLES,
};
