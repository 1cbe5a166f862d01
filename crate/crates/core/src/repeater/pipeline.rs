//! Long-range entanglement by alternating fusion and re-purification.

use std::fmt;

use super::fusion::fuse_copies;
use crate::error::{Error, Result};
use crate::purify::{expected_raw_pairs, rotate_pair, run_level, run_level_with, BellDiagonalTuple, Level, LevelOutput, LevelRotations, NoiseModel, Rotation};
use crate::qcore::DensityMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Stage {
    /// Short-range purification between neighbouring modules.
    I,
    /// First fusion.
    II,
    /// Re-purification of the fused pairs.
    III,
    /// Second fusion.
    IV,
    /// Final re-purification.
    V,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::I => "i",
            Stage::II => "ii",
            Stage::III => "iii",
            Stage::IV => "iv",
            Stage::V => "v",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainStageReport {
    pub stage: Stage,
    pub fidelity: f64,
    /// Error-state weights, largest first.
    pub error_channels: [f64; 3],
    /// Input pairs consumed per output pair, for purification stages.
    pub cost: Option<f64>,
}

impl ChainStageReport {
    fn new(stage: Stage, state: &DensityMatrix, cost: Option<f64>) -> Result<Self> {
        let t = BellDiagonalTuple::from_state(state)?;
        let mut ch = t.as_array();
        ch.sort_by(|a, b| b.total_cmp(a));
        Ok(ChainStageReport { stage, fidelity: t.fidelity(), error_channels: ch, cost })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub initial_level: Level,
    /// Pairs fused in stage (ii).
    pub m: usize,
    /// Pairs fused in stage (iv).
    pub p: usize,
    pub repurify_level: Level,
    /// 1 runs stage (i) only, 2 runs (i)-(iii), 3 runs (i)-(v).
    pub tiers: usize,
    /// Whether the Bell measurements of the fusion stages lie with `pm`.
    pub fusion_lies: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { initial_level: Level::L3, m: 12, p: 12, repurify_level: Level::L2, tiers: 3, fusion_lies: false }
    }
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.tiers) {
            return Err(Error::InvalidConfig(format!("tiers must be 1, 2 or 3, got {}", self.tiers)));
        }
        if self.m < 2 || self.p < 2 {
            return Err(Error::InvalidConfig(format!("fusion counts must be at least 2 (m = {}, p = {})", self.m, self.p)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub stages: Vec<ChainStageReport>,
    /// Raw pairs per final pair: product of the purification costs.
    pub total_cost: f64,
}

fn level_cost(out: &LevelOutput) -> f64 {
    expected_raw_pairs(out.level, out.success_probs.map(|p| p.unwrap_or(1.0)))
}

/// Re-purifies fused pairs after steering their errors. Every rotation of the
/// input and every rotation between the level-1 and level-2 rounds is tried;
/// the combination with the highest output fidelity is kept.
fn steer_and_purify(pair: &DensityMatrix, level: Level, noise: &NoiseModel) -> Result<LevelOutput> {
    let mut best: Option<LevelOutput> = None;
    for input in Rotation::group_words() {
        let steered = rotate_pair(pair, input, noise.p1)?;
        let inner: &[&'static [Rotation]] = if level == Level::L1 { &[&[]] } else { &Rotation::group_words() };
        for &after_l1 in inner {
            let rotations = LevelRotations { after_l1, ..LevelRotations::default() };
            let out = run_level_with(level, &steered, noise, rotations)?;
            if best.as_ref().is_none_or(|b| out.infidelity < b.infidelity) {
                best = Some(out);
            }
        }
    }
    Ok(best.expect("group is non-empty"))
}

/// Runs the stages: (i) purify, (ii) fuse `m`, (iii) steer and purify,
/// (iv) fuse `p`, (v) steer and purify.
pub fn pipeline(config: &PipelineConfig, noise: &NoiseModel) -> Result<PipelineReport> {
    config.validate()?;
    noise.validate()?;
    let mut stages = Vec::new();
    let first = run_level(config.initial_level, noise)?;
    let mut total = level_cost(&first);
    stages.push(ChainStageReport::new(Stage::I, &first.state, Some(total))?);
    let mut state = first.state;
    let fusion_noise = if config.fusion_lies { *noise } else { noise.without_lies() };
    let tiers = [(Stage::II, Stage::III, config.m), (Stage::IV, Stage::V, config.p)];
    for &(fuse_stage, purify_stage, count) in tiers.iter().take(config.tiers - 1) {
        let fused = fuse_copies(&state, count, &fusion_noise)?;
        stages.push(ChainStageReport::new(fuse_stage, &fused, None)?);
        let out = steer_and_purify(&fused, config.repurify_level, noise)?;
        let cost = level_cost(&out);
        total *= cost;
        stages.push(ChainStageReport::new(purify_stage, &out.state, Some(cost))?);
        state = out.state;
    }
    Ok(PipelineReport { stages, total_cost: total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn noiseless_pipeline_is_perfect() {
        let r = pipeline(&PipelineConfig::default(), &NoiseModel::noiseless()).unwrap();
        assert_eq!(r.stages.len(), 5);
        for s in &r.stages {
            assert!((s.fidelity - 1.0).abs() < 1e-12);
        }
        assert!((r.total_cost - 6.0 * 4.0 * 4.0).abs() < 1e-9);
    }

    #[test]
    fn single_tier() {
        let cfg = PipelineConfig { tiers: 1, ..Default::default() };
        let r = pipeline(&cfg, &NoiseModel::link_only(0.1).unwrap()).unwrap();
        assert_eq!(r.stages.len(), 1);
        assert!(pipeline(&PipelineConfig { tiers: 4, ..Default::default() }, &NoiseModel::noiseless()).is_err());
    }
}
