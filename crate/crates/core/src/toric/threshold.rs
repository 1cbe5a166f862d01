//! Logical error curves over a grid of link infidelities and their
//! crossing point.

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::purify::{Level, NoiseModel};
use crate::seeding::trial_rng;
use crate::stabtool::{build_parity_table, ParityBasis, StabilizerMethod};
use crate::qcore::DEFAULT_QUBIT_BUDGET;

use super::decode::logical_error_trial;
use super::history::RoundTables;
use super::lattice::ToricLattice;

/// Parametric bootstrap resamples for the crossing interval.
pub const BOOTSTRAP_SAMPLES: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdConfig {
    pub method: StabilizerMethod,
    pub level: Level,
    /// Gate and measurement noise; the link infidelity is taken from the grid.
    pub noise: NoiseModel,
    pub epsilons: Vec<f64>,
    pub sizes: Vec<usize>,
    pub trials: usize,
    /// Noisy rounds per unit of lattice size.
    pub rounds_per_size: usize,
    pub seed: u64,
}

impl ThresholdConfig {
    /// Small lattices, 4000 trials per point.
    pub fn desk(method: StabilizerMethod, level: Level, seed: u64) -> Self {
        ThresholdConfig {
            method,
            level,
            noise: NoiseModel::reference(0.1).expect("valid noise"),
            epsilons: default_grid(method, level),
            sizes: vec![4, 6, 8],
            trials: 4000,
            rounds_per_size: 4,
            seed,
        }
    }

    /// L = 8, 12, 16 with 16000 trials per point. Hours of CPU time.
    pub fn full(method: StabilizerMethod, level: Level, seed: u64) -> Self {
        ThresholdConfig { sizes: vec![8, 12, 16], trials: 16000, ..Self::desk(method, level, seed) }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sizes.len() < 2 {
            return Err(Error::InvalidConfig("at least two lattice sizes are needed".into()));
        }
        if self.sizes.windows(2).any(|w| w[0] >= w[1]) || self.sizes[0] < 2 {
            return Err(Error::InvalidConfig("lattice sizes must be increasing and at least 2".into()));
        }
        if self.epsilons.is_empty() || self.epsilons.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("the epsilon grid must be nonempty and increasing".into()));
        }
        if self.trials == 0 || self.rounds_per_size == 0 {
            return Err(Error::InvalidConfig("trials and rounds must be positive".into()));
        }
        for &e in &self.epsilons {
            self.noise.with_epsilon(e)?;
        }
        Ok(())
    }
}

/// A grid of eight points bracketing where the crossing is expected.
pub fn default_grid(method: StabilizerMethod, level: Level) -> Vec<f64> {
    let centre = match (method, level) {
        (StabilizerMethod::Ancilla, Level::L1) => 0.05,
        (StabilizerMethod::Ancilla, Level::L2) => 0.105,
        (StabilizerMethod::Ancilla, Level::L3) => 0.165,
        (StabilizerMethod::Ghz, Level::L1) => 0.085,
        (StabilizerMethod::Ghz, Level::L2) => 0.205,
        (StabilizerMethod::Ghz, Level::L3) => 0.255,
    };
    let step = if level == Level::L1 { 0.005 } else { 0.01 };
    (0..8).map(|k| ((centre + (k as f64 - 3.5) * step) * 1e4).round() / 1e4).collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub epsilon: f64,
    pub size: usize,
    pub trials: usize,
    pub failures: usize,
}

impl CurvePoint {
    pub fn rate(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    /// Binomial standard error.
    pub fn stderr(&self) -> f64 {
        let r = self.rate();
        (r * (1.0 - r) / self.trials as f64).sqrt()
    }
}

/// Crossing of the curves of two consecutive sizes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Crossing {
    pub smaller: usize,
    pub larger: usize,
    pub epsilon: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdScan {
    pub points: Vec<CurvePoint>,
    pub crossings: Vec<Crossing>,
    /// Mean of the pairwise crossings, if every pair crosses.
    pub estimate: Option<f64>,
    /// 2.5 and 97.5 percentiles of the bootstrap estimates.
    pub interval: Option<(f64, f64)>,
}

/// Where `ln rate(larger) - ln rate(smaller)` first turns from negative to
/// nonnegative, by linear interpolation. Rates are floored at half a
/// failure.
pub fn crossing_of(epsilons: &[f64], smaller: &[(usize, usize)], larger: &[(usize, usize)]) -> Option<f64> {
    let log_rate = |(f, n): (usize, usize)| ((f as f64).max(0.5) / n as f64).ln();
    let d: Vec<f64> = smaller.iter().zip(larger).map(|(&a, &b)| log_rate(b) - log_rate(a)).collect();
    (0..d.len().saturating_sub(1)).find(|&i| d[i] < 0.0 && d[i + 1] >= 0.0).map(|i| {
        let t = -d[i] / (d[i + 1] - d[i]);
        epsilons[i] + t * (epsilons[i + 1] - epsilons[i])
    })
}

/// Pairwise crossings and their mean from failure counts indexed
/// `[size][epsilon]` as `(failures, trials)`.
pub fn estimate_crossing(epsilons: &[f64], sizes: &[usize], counts: &[Vec<(usize, usize)>]) -> (Vec<Crossing>, Option<f64>) {
    let crossings: Vec<Crossing> = (0..sizes.len().saturating_sub(1))
        .map(|k| Crossing { smaller: sizes[k], larger: sizes[k + 1], epsilon: crossing_of(epsilons, &counts[k], &counts[k + 1]) })
        .collect();
    let found: Vec<f64> = crossings.iter().filter_map(|c| c.epsilon).collect();
    let estimate = (!found.is_empty() && found.len() == crossings.len()).then(|| found.iter().sum::<f64>() / found.len() as f64);
    (crossings, estimate)
}

fn bootstrap(cfg: &ThresholdConfig, counts: &[Vec<(usize, usize)>]) -> Option<(f64, f64)> {
    let mut samples: Vec<f64> = (0..BOOTSTRAP_SAMPLES)
        .filter_map(|b| {
            let mut rng = trial_rng(cfg.seed, &[u64::MAX, b as u64]);
            let resampled: Vec<Vec<(usize, usize)>> = counts
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&(f, n)| {
                            let p = f as f64 / n as f64;
                            let draw = Binomial::new(n as u64, p).map_or(f as u64, |d| d.sample(&mut rng));
                            (draw as usize, n)
                        })
                        .collect()
                })
                .collect();
            estimate_crossing(&cfg.epsilons, &cfg.sizes, &resampled).1
        })
        .collect();
    if samples.len() < BOOTSTRAP_SAMPLES / 2 {
        return None;
    }
    samples.sort_by(f64::total_cmp);
    let q = |p: f64| samples[((samples.len() - 1) as f64 * p).round() as usize];
    Some((q(0.025), q(0.975)))
}

/// Runs every `(epsilon, size)` point. Trial `i` of grid point `(e, L)`
/// draws from its own stream, so results do not depend on the number of
/// worker threads. `progress` is called once per finished point.
pub fn threshold_scan_with_progress(cfg: &ThresholdConfig, progress: &(dyn Fn(&CurvePoint) + Sync)) -> Result<ThresholdScan> {
    cfg.validate()?;
    let mut points = Vec::with_capacity(cfg.epsilons.len() * cfg.sizes.len());
    let mut counts = vec![Vec::with_capacity(cfg.epsilons.len()); cfg.sizes.len()];
    for (ei, &epsilon) in cfg.epsilons.iter().enumerate() {
        let noise = cfg.noise.with_epsilon(epsilon)?;
        let tables = RoundTables::new(
            build_parity_table(cfg.method, cfg.level, &noise, ParityBasis::Z, DEFAULT_QUBIT_BUDGET)?,
            build_parity_table(cfg.method, cfg.level, &noise, ParityBasis::X, DEFAULT_QUBIT_BUDGET)?,
        )?;
        for (si, &size) in cfg.sizes.iter().enumerate() {
            let lattice = ToricLattice::new(size)?;
            let t = cfg.rounds_per_size * size;
            let failures = (0..cfg.trials)
                .into_par_iter()
                .map(|i| {
                    let mut rng = trial_rng(cfg.seed, &[ei as u64, size as u64, i as u64]);
                    logical_error_trial(&lattice, &tables, t, &mut rng).map(usize::from)
                })
                .try_reduce(|| 0, |a, b| Ok(a + b))?;
            let point = CurvePoint { epsilon, size, trials: cfg.trials, failures };
            progress(&point);
            points.push(point);
            counts[si].push((failures, cfg.trials));
        }
    }
    let (crossings, estimate) = estimate_crossing(&cfg.epsilons, &cfg.sizes, &counts);
    let interval = estimate.and_then(|_| bootstrap(cfg, &counts));
    Ok(ThresholdScan { points, crossings, estimate, interval })
}

pub fn threshold_scan(cfg: &ThresholdConfig) -> Result<ThresholdScan> {
    threshold_scan_with_progress(cfg, &|_| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn crossing_interpolates_log_rates() {
        let eps = [0.1, 0.2];
        // small: rates 0.1 and 0.2; large: 0.05 and 0.4
        let small = [(100, 1000), (200, 1000)];
        let large = [(50, 1000), (400, 1000)];
        let x = crossing_of(&eps, &small, &large).unwrap();
        let d0 = (0.05f64).ln() - (0.1f64).ln();
        let d1 = (0.4f64).ln() - (0.2f64).ln();
        assert!((x - (0.1 + 0.1 * -d0 / (d1 - d0))).abs() < 1e-12);
        assert!(crossing_of(&eps, &large, &small).is_none());
    }

    #[test]
    fn grids_are_increasing() {
        for m in [StabilizerMethod::Ancilla, StabilizerMethod::Ghz] {
            for l in Level::ALL {
                let g = default_grid(m, l);
                assert!(g.windows(2).all(|w| w[0] < w[1]) && g[0] > 0.0);
            }
        }
    }
}
