//! Remote cPhase by consuming a shared pair.
//!
//! Each side applies a local cPhase between its application qubit and its
//! half of the pair. Side A then measures its half in X, side B in Y, and
//! both apply `S^dagger` when the outcomes agree and `S` otherwise.

use crate::error::{Error, Result};
use crate::purify::{rotate_pair, BellDiagonalTuple, NoiseModel, Rotation};
use crate::qcore::channels::{self, after_removal};
use crate::qcore::{bell_decomposition, Basis, DensityMatrix, FnProcess, GateKind, GateOp, Operator, Superoperator};
use crate::repeater::steering_word;

/// A pair to be consumed by one remote gate, with the local rotation word
/// applied to it first.
#[derive(Clone, Debug)]
pub struct RemoteGateResource {
    pair_state: DensityMatrix,
    steering: &'static [Rotation],
}

impl RemoteGateResource {
    pub fn new(pair_state: DensityMatrix, steering: &'static [Rotation]) -> Result<Self> {
        if pair_state.num_qubits() != 2 {
            return Err(Error::DimensionMismatch(format!("resource pair on {} qubits", pair_state.num_qubits())));
        }
        pair_state.require_normalized()?;
        Ok(RemoteGateResource { pair_state, steering })
    }

    pub fn perfect() -> Self {
        RemoteGateResource { pair_state: crate::qcore::make_bell(crate::qcore::BellLabel::PhiPlus), steering: &[] }
    }

    /// Chooses the rotation that moves the `k`-th largest error weight of
    /// the pair onto channel `target_order[k]` (0 = `Phi-`, 1 = `Psi+`,
    /// 2 = `Psi-`). Coherences between Bell states are ignored for the choice.
    pub fn steered(pair_state: DensityMatrix, target_order: [usize; 3]) -> Result<Self> {
        let (w, _) = bell_decomposition(&pair_state)?;
        let tuple = BellDiagonalTuple::from_array([w[1], w[2], w[3]]);
        let word = steering_word(&tuple, target_order)?;
        Self::new(pair_state, word)
    }

    pub fn pair_state(&self) -> &DensityMatrix {
        &self.pair_state
    }

    pub fn steering(&self) -> &'static [Rotation] {
        self.steering
    }

    /// The pair after the steering rotations, each gate followed by `p1` noise.
    pub fn consumed_state(&self, p1: f64) -> Result<DensityMatrix> {
        rotate_pair(&self.pair_state, self.steering, p1)
    }
}

fn local(op: &Operator, kind: GateKind, q: usize, p1: f64) -> Result<Operator> {
    channels::depolarize_1q(&channels::apply_gate(op, &GateOp::single(kind, q)?)?, q, p1)
}

/// Branch of the protocol on an operator that already holds the pair at
/// `pair`, for reported outcomes `outcomes = (A in X, B in Y)`. The pair
/// qubits are removed from the result.
pub(crate) fn remote_cphase_op(
    op: &Operator,
    app: [usize; 2],
    pair: [usize; 2],
    noise: &NoiseModel,
    outcomes: [u8; 2],
) -> Result<Operator> {
    let all = [app[0], app[1], pair[0], pair[1]];
    for (k, &q) in all.iter().enumerate() {
        if q >= op.num_qubits() {
            return Err(Error::QubitOutOfRange { qubit: q, num_qubits: op.num_qubits() });
        }
        if all[..k].contains(&q) {
            return Err(Error::DuplicateQubits(all.to_vec()));
        }
    }
    let mut x = op.clone();
    for side in 0..2 {
        x = channels::apply_gate(&x, &GateOp::cphase(app[side], pair[side])?)?;
        x = channels::depolarize_2q(&x, app[side], pair[side], noise.p2)?;
    }
    // measure the higher index first so the lower one keeps its place
    let order = if pair[0] > pair[1] { [0, 1] } else { [1, 0] };
    for side in order {
        let basis = if side == 0 { Basis::X } else { Basis::Y };
        x = channels::measure_branch(&x, pair[side], basis, noise.pm, outcomes[side])?;
    }
    let lo = pair[0].min(pair[1]);
    let hi = pair[0].max(pair[1]);
    let kind = if outcomes[0] == outcomes[1] { GateKind::SDagger } else { GateKind::S };
    for a in app {
        let q = after_removal(after_removal(a, hi), lo);
        x = local(&x, kind.clone(), q, noise.p1)?;
    }
    Ok(x)
}

/// One outcome branch of [`remote_cphase`], unnormalized; its trace is the
/// probability of reporting `outcomes`.
pub fn remote_cphase_branch(
    joint: &DensityMatrix,
    app_a: usize,
    app_b: usize,
    resource: &RemoteGateResource,
    noise: &NoiseModel,
    outcomes: [u8; 2],
) -> Result<DensityMatrix> {
    let n = joint.num_qubits();
    let op = joint.operator().kron(resource.consumed_state(noise.p1)?.operator());
    DensityMatrix::from_operator(remote_cphase_op(&op, [app_a, app_b], [n, n + 1], noise, outcomes)?)
}

/// Remote cPhase between qubits `app_a` and `app_b` of `joint`, consuming
/// `resource`, averaged over the measurement outcomes.
pub fn remote_cphase(
    joint: &DensityMatrix,
    app_a: usize,
    app_b: usize,
    resource: &RemoteGateResource,
    noise: &NoiseModel,
) -> Result<DensityMatrix> {
    let n = joint.num_qubits();
    let op = joint.operator().kron(resource.consumed_state(noise.p1)?.operator());
    DensityMatrix::from_operator(sum_outcomes(&op, [app_a, app_b], [n, n + 1], noise)?)
}

fn sum_outcomes(op: &Operator, app: [usize; 2], pair: [usize; 2], noise: &NoiseModel) -> Result<Operator> {
    let mut acc: Option<Operator> = None;
    for outcomes in [[0, 0], [0, 1], [1, 0], [1, 1]] {
        let b = remote_cphase_op(op, app, pair, noise, outcomes)?;
        acc = Some(match acc {
            None => b,
            Some(mut a) => {
                a.add_scaled(&b, crate::qcore::C64::new(1.0, 0.0));
                a
            }
        });
    }
    Ok(acc.expect("four branches"))
}

/// The remote gate as a two-qubit channel on `(app_a, app_b)`.
pub fn remote_cphase_superop(resource: &RemoteGateResource, noise: &NoiseModel) -> Result<Superoperator> {
    let pair = resource.consumed_state(noise.p1)?;
    let process = FnProcess::new(2, 2, 1, |x: &Operator| Ok(vec![sum_outcomes(&x.kron(pair.operator()), [0, 1], [2, 3], noise)?]));
    let mut s = crate::qcore::extract_superoperator(&process, crate::qcore::DEFAULT_QUBIT_BUDGET)?;
    Ok(s.pop().expect("one branch"))
}

/// One map per reported outcome `[0, 0], [0, 1], [1, 0], [1, 1]`, each
/// weighted by the probability of its outcome.
pub fn remote_cphase_branch_superops(resource: &RemoteGateResource, noise: &NoiseModel) -> Result<Vec<Superoperator>> {
    let pair = resource.consumed_state(noise.p1)?;
    let process = FnProcess::new(2, 2, 4, |x: &Operator| {
        let op = x.kron(pair.operator());
        [[0, 0], [0, 1], [1, 0], [1, 1]].into_iter().map(|o| remote_cphase_op(&op, [0, 1], [2, 3], noise, o)).collect()
    });
    crate::qcore::extract_superoperator(&process, crate::qcore::DEFAULT_QUBIT_BUDGET)
}
