//! Exact purification rounds on two-qubit density matrices.
//!
//! A pair stores its A-side qubit as qubit 0 and its B-side qubit as qubit 1.

use rand::Rng;

use super::noise::NoiseModel;
use super::tuple::{BellDiagonalTuple, Rotation};
use crate::error::{check_probability, Error, Result};
use crate::qcore::{bell_fidelity, bell_mixture, BellLabel, Basis, DensityMatrix, GateKind, GateOp};

/// The Werner state `(1 - eps) Phi+ + eps/3 (Phi- + Psi+ + Psi-)`.
pub fn werner(epsilon: f64) -> Result<DensityMatrix> {
    check_probability("epsilon", epsilon, 0.0, 0.5)?;
    if epsilon >= 0.5 {
        return Err(Error::ParameterOutOfRange { name: "epsilon", value: epsilon, lo: 0.0, hi: 0.5 });
    }
    let e = epsilon / 3.0;
    bell_mixture([1.0 - epsilon, e, e, e])
}

fn require_pair(state: &DensityMatrix) -> Result<()> {
    if state.num_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit pair, got {} qubits", state.num_qubits())));
    }
    Ok(())
}

fn local(state: &DensityMatrix, kind: GateKind, q: usize, p1: f64) -> Result<DensityMatrix> {
    state.apply_gate(&GateOp::single(kind, q)?)?.apply_single_qubit_noise(q, p1)
}

/// Applies a rotation word to a pair, rightmost letter first. Every
/// single-qubit gate is followed by depolarizing noise `p1`.
pub fn rotate_pair(state: &DensityMatrix, word: &[Rotation], p1: f64) -> Result<DensityMatrix> {
    require_pair(state)?;
    let mut s = state.clone();
    for g in word.iter().rev() {
        s = match g {
            Rotation::G1 => local(&local(&s, GateKind::H, 0, p1)?, GateKind::H, 1, p1)?,
            Rotation::G2 => local(&local(&s, GateKind::SDagger, 0, p1)?, GateKind::S, 1, p1)?,
        };
    }
    Ok(s)
}

/// Unnormalized even-parity branch of one purification round. `kept` is the
/// control pair and survives; `sacrificed` is measured.
pub fn purify_branch(kept: &DensityMatrix, sacrificed: &DensityMatrix, noise: &NoiseModel) -> Result<DensityMatrix> {
    require_pair(kept)?;
    require_pair(sacrificed)?;
    // qubits: 0 = kept A, 1 = kept B, 2 = sacrificed A, 3 = sacrificed B
    let joint = kept.tensor(sacrificed);
    let joint = joint.apply_gate(&GateOp::cnot(0, 2)?)?.apply_two_qubit_noise(0, 2, noise.p2)?;
    let joint = joint.apply_gate(&GateOp::cnot(1, 3)?)?.apply_two_qubit_noise(1, 3, noise.p2)?;
    let mut even: Option<DensityMatrix> = None;
    for bit in 0..2u8 {
        let b = joint.measure_branch(3, Basis::Z, noise.pm, bit)?.measure_branch(2, Basis::Z, noise.pm, bit)?;
        even = Some(match even {
            None => b,
            Some(e) => &e + &b,
        });
    }
    Ok(even.expect("two branches"))
}

/// Result of one sampled purification round.
#[derive(Clone, Debug)]
pub struct PurifyOutcome {
    pub success: bool,
    /// Surviving pair, renormalized (the even-parity branch).
    pub state: DensityMatrix,
    pub p_even: f64,
}

pub fn purify_once_exact<R: Rng + ?Sized>(
    pair_a: &DensityMatrix,
    pair_b: &DensityMatrix,
    noise: &NoiseModel,
    rng: &mut R,
) -> Result<PurifyOutcome> {
    pair_a.require_normalized()?;
    pair_b.require_normalized()?;
    let branch = purify_branch(pair_a, pair_b, noise)?;
    let p_even = branch.norm();
    if !(0.0..=1.0 + 1e-9).contains(&p_even) {
        return Err(Error::Numerical(format!("even-parity probability {p_even}")));
    }
    let success = rng.random::<f64>() < p_even;
    Ok(PurifyOutcome { success, state: branch.normalized()?, p_even: p_even.min(1.0) })
}

/// Purification level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    L1 = 1,
    L2 = 2,
    L3 = 3,
}

impl Level {
    pub const ALL: [Level; 3] = [Level::L1, Level::L2, Level::L3];

    pub fn from_index(level: u8) -> Result<Self> {
        match level {
            1 => Ok(Level::L1),
            2 => Ok(Level::L2),
            3 => Ok(Level::L3),
            other => Err(Error::InvalidConfig(format!("purification level must be 1, 2 or 3, got {other}"))),
        }
    }

    pub fn index(self) -> u8 {
        self as u8
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// Post-selected output of a purification level and the success
/// probabilities of the rounds that built it.
#[derive(Clone, Debug)]
pub struct LevelOutput {
    pub level: Level,
    pub state: DensityMatrix,
    pub infidelity: f64,
    /// `(s_A, s_B, s_C)`: even-parity probabilities of the level-1, level-2
    /// and level-3 rounds. Entries past `level` are `None`.
    pub success_probs: [Option<f64>; 3],
}

impl LevelOutput {
    pub fn tuple(&self) -> Result<BellDiagonalTuple> {
        BellDiagonalTuple::from_state(&self.state)
    }
}

/// Round that purifies `kept` with `sacrificed`; returns the renormalized
/// survivor and the success probability.
fn round(kept: &DensityMatrix, sacrificed: &DensityMatrix, noise: &NoiseModel) -> Result<(DensityMatrix, f64)> {
    let b = purify_branch(kept, sacrificed, noise)?;
    let p = b.norm();
    if !(p > 0.0 && p <= 1.0 + 1e-9) {
        return Err(Error::Numerical(format!("purification success probability {p}")));
    }
    Ok((b.normalized()?, p.min(1.0)))
}

/// Local rotations applied between the rounds of a level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelRotations {
    /// On each level-1 pair before it enters a level-2 or level-3 round.
    pub after_l1: &'static [Rotation],
    /// On the level-2 pair before the level-3 round.
    pub after_l2: &'static [Rotation],
}

impl Default for LevelRotations {
    fn default() -> Self {
        LevelRotations { after_l1: &[Rotation::G1], after_l2: &[Rotation::G1, Rotation::G2] }
    }
}

/// Runs the level's circuit on its success branches, starting from pairs
/// `raw`:
///
/// * level 1 purifies two raw pairs;
/// * level 2 purifies two level-1 pairs, both rotated by `g1`;
/// * level 3 purifies a level-2 pair rotated by `g1 g2` with a level-1 pair
///   rotated by `g1`.
pub fn run_level_from(level: Level, raw: &DensityMatrix, noise: &NoiseModel) -> Result<LevelOutput> {
    run_level_with(level, raw, noise, LevelRotations::default())
}

/// [`run_level_from`] with custom inter-round rotations.
pub fn run_level_with(level: Level, raw: &DensityMatrix, noise: &NoiseModel, rotations: LevelRotations) -> Result<LevelOutput> {
    require_pair(raw)?;
    raw.require_normalized()?;
    let (l1, s_a) = round(raw, raw, noise)?;
    let mut probs = [Some(s_a), None, None];
    let state = if level == Level::L1 {
        l1
    } else {
        let l1_rot = rotate_pair(&l1, rotations.after_l1, noise.p1)?;
        let (l2, s_b) = round(&l1_rot, &l1_rot, noise)?;
        probs[1] = Some(s_b);
        if level == Level::L2 {
            l2
        } else {
            let l2_rot = rotate_pair(&l2, rotations.after_l2, noise.p1)?;
            let (l3, s_c) = round(&l2_rot, &l1_rot, noise)?;
            probs[2] = Some(s_c);
            l3
        }
    };
    state.check_invariants()?;
    let infidelity = 1.0 - bell_fidelity(&state, BellLabel::PhiPlus)?;
    Ok(LevelOutput { level, state, infidelity, success_probs: probs })
}

/// Swaps both halves of a freshly generated pair into memory qubits with
/// three CNOTs per side, each followed by two-qubit noise.
pub fn load_into_memory(pair: &DensityMatrix, p2: f64) -> Result<DensityMatrix> {
    require_pair(pair)?;
    // 0, 1 = photonic ions; 2, 3 = memory ions in |0>
    let mut r = pair.tensor(&DensityMatrix::zero(2));
    for (s, m) in [(0, 2), (1, 3)] {
        for (c, t) in [(s, m), (m, s), (s, m)] {
            r = r.apply_gate(&GateOp::cnot(c, t)?)?.apply_two_qubit_noise(c, t, p2)?;
        }
    }
    r.partial_trace(&[2, 3])
}

/// A raw pair as delivered to the purification circuit.
pub fn raw_pair(noise: &NoiseModel) -> Result<DensityMatrix> {
    let w = werner(noise.epsilon)?;
    if noise.memory_swap {
        load_into_memory(&w, noise.p2)
    } else {
        Ok(w)
    }
}

/// [`run_level_from`] on raw pairs of the model's `epsilon`.
pub fn run_level(level: Level, noise: &NoiseModel) -> Result<LevelOutput> {
    noise.validate()?;
    run_level_from(level, &raw_pair(noise)?, noise)
}
