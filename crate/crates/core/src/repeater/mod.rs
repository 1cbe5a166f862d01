//! Repeater chains: fusion of adjacent pairs, error steering, re-purification
//! and the resulting rate budgets.

pub mod budget;
pub mod fusion;
pub mod pipeline;
pub mod steering;

pub use budget::{dephasing_window, memory_budget, rate_budget, DephasingModel, LinkBudget, RateBudget, FIBRE_LOSS_DB_PER_KM, SPEED_OF_LIGHT};
pub use fusion::{fuse, fuse_chain, fuse_copies};
pub use pipeline::{pipeline, ChainStageReport, PipelineConfig, PipelineReport, Stage};
pub use steering::{steer_errors, steering_word};
