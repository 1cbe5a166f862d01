//! Time cost of the purification levels.
//!
//! A failed round throws away both of its inputs, which are then rebuilt
//! from scratch by their own sub-protocols. Raw pairs are produced one at a
//! time, each taking `T0`; local operations take no time.

use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;

use super::noise::NoiseModel;
use super::protocol::{run_level, Level};
use crate::error::{Error, Result};
use crate::seeding::trial_rng;

/// Walks the purification chain to one success.
#[derive(Clone, Debug)]
pub struct ProtocolChain {
    level: Level,
    /// Even-parity (success) probabilities `(s_A, s_B, s_C)`.
    success_probs: [f64; 3],
    raw_pairs_consumed: u64,
    elapsed_t0: u64,
}

impl ProtocolChain {
    pub fn new(level: Level, success_probs: [f64; 3]) -> Result<Self> {
        for (k, &s) in success_probs.iter().enumerate().take(level.index() as usize) {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::ParameterOutOfRange { name: ["s_A", "s_B", "s_C"][k], value: s, lo: 0.0, hi: 1.0 });
            }
        }
        Ok(ProtocolChain { level, success_probs, raw_pairs_consumed: 0, elapsed_t0: 0 })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Odd-parity probabilities `(p_A, p_B, p_C)`.
    pub fn failure_probs(&self) -> [f64; 3] {
        self.success_probs.map(|s| 1.0 - s)
    }

    pub fn raw_pairs_consumed(&self) -> u64 {
        self.raw_pairs_consumed
    }

    pub fn elapsed_t0(&self) -> u64 {
        self.elapsed_t0
    }

    fn raw(&mut self) {
        self.raw_pairs_consumed += 1;
        self.elapsed_t0 += 1;
    }

    fn build<R: Rng + ?Sized>(&mut self, level: Level, rng: &mut R) {
        loop {
            match level {
                Level::L1 => {
                    self.raw();
                    self.raw();
                }
                Level::L2 => {
                    self.build(Level::L1, rng);
                    self.build(Level::L1, rng);
                }
                Level::L3 => {
                    self.build(Level::L2, rng);
                    self.build(Level::L1, rng);
                }
            }
            let s = self.success_probs[level.index() as usize - 1];
            if s >= 1.0 || rng.random::<f64>() < s {
                return;
            }
        }
    }

    /// Runs until one purified pair of the chain's level exists and returns
    /// the raw pairs used by this run.
    pub fn run_to_success<R: Rng + ?Sized>(&mut self, rng: &mut R) -> u64 {
        let before = self.raw_pairs_consumed;
        self.build(self.level, rng);
        self.raw_pairs_consumed - before
    }
}

/// Expected raw pairs per success of the chain, from the absorbing-chain
/// recursion `E1 = 2/s_A`, `E2 = 2 E1/s_B`, `E3 = (E2 + E1)/s_C`.
pub fn expected_raw_pairs(level: Level, success_probs: [f64; 3]) -> f64 {
    let [sa, sb, sc] = success_probs;
    let e1 = 2.0 / sa;
    match level {
        Level::L1 => e1,
        Level::L2 => 2.0 * e1 / sb,
        Level::L3 => (2.0 * e1 / sb + e1) / sc,
    }
}

/// Monte Carlo estimate of the time cost.
#[derive(Clone, Debug)]
pub struct CostEstimate {
    pub level: Level,
    pub trials: u64,
    pub mean_raw_pairs: f64,
    /// Equal to `mean_raw_pairs`: one `T0` per raw pair.
    pub mean_time_t0: f64,
    /// Standard error of the mean.
    pub stderr: f64,
    pub closed_form: f64,
    pub success_probs: [f64; 3],
    /// Raw pairs per success -> number of trials.
    pub distribution: BTreeMap<u64, u64>,
}

/// Samples `trials` independent runs of the chain. Trial `k` uses the stream
/// `(seed, k)`, so the result does not depend on the thread count.
pub fn markov_cost_with_probs(level: Level, success_probs: [f64; 3], trials: u64, seed: u64) -> Result<CostEstimate> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    let chain = ProtocolChain::new(level, success_probs)?;
    let distribution = (0..trials)
        .into_par_iter()
        .fold(BTreeMap::new, |mut hist: BTreeMap<u64, u64>, k| {
            let mut rng = trial_rng(seed, &[k]);
            let mut c = chain.clone();
            *hist.entry(c.run_to_success(&mut rng)).or_default() += 1;
            hist
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });
    let (mut sum, mut sum_sq) = (0u128, 0u128);
    for (&k, &v) in &distribution {
        sum += k as u128 * v as u128;
        sum_sq += (k as u128) * (k as u128) * v as u128;
    }
    let n = trials as f64;
    let mean = sum as f64 / n;
    let var = if trials > 1 { ((sum_sq as f64) - n * mean * mean).max(0.0) / (n - 1.0) } else { 0.0 };
    Ok(CostEstimate {
        level,
        trials,
        mean_raw_pairs: mean,
        mean_time_t0: mean,
        stderr: (var / n).sqrt(),
        closed_form: expected_raw_pairs(level, success_probs),
        success_probs,
        distribution,
    })
}

/// Success probabilities from the exact level circuit, then the Monte Carlo cost.
pub fn markov_cost(level: Level, noise: &NoiseModel, trials: u64, seed: u64) -> Result<CostEstimate> {
    let probs = level_success_probs(level, noise)?;
    markov_cost_with_probs(level, probs, trials, seed)
}

/// `(s_A, s_B, s_C)` of the exact circuit; unused entries are 1.
pub fn level_success_probs(level: Level, noise: &NoiseModel) -> Result<[f64; 3]> {
    let out = run_level(level, noise)?;
    Ok(out.success_probs.map(|p| p.unwrap_or(1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_level_one_uses_two_pairs() {
        let est = markov_cost(Level::L1, &NoiseModel::noiseless(), 100, 1).unwrap();
        assert_eq!(est.mean_raw_pairs, 2.0);
        assert_eq!(est.distribution.len(), 1);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn level_three_floor_is_six() {
        assert_eq!(expected_raw_pairs(Level::L3, [1.0; 3]), 6.0);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let probs = [0.8, 0.9, 0.95];
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let a = one.install(|| markov_cost_with_probs(Level::L3, probs, 2000, 9).unwrap());
        let b = three.install(|| markov_cost_with_probs(Level::L3, probs, 2000, 9).unwrap());
        assert_eq!(a.distribution, b.distribution);
        assert_eq!(a.mean_raw_pairs, b.mean_raw_pairs);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(markov_cost_with_probs(Level::L1, [0.5, 1.0, 1.0], 0, 0).is_err());
    }
}
