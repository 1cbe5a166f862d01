//! Entanglement swapping at a middle node.

use crate::error::{Error, Result};
use crate::purify::NoiseModel;
use crate::qcore::{Basis, DensityMatrix, GateKind, GateOp};

fn require_pair(state: &DensityMatrix, what: &str) -> Result<()> {
    if state.num_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!("{what} must be a two-qubit pair, got {} qubits", state.num_qubits())));
    }
    Ok(())
}

/// Fuses pairs A-B and B-C into A-C with a Bell measurement at B.
///
/// The CNOT at B carries two-qubit noise `p2`, the Hadamard `p1`, both Z
/// measurements lie with `pm`. The Pauli correction on C is a noiseless
/// frame update. The result is the A-C pair averaged over the four
/// reported outcomes.
pub fn fuse(pair_ab: &DensityMatrix, pair_bc: &DensityMatrix, noise: &NoiseModel) -> Result<DensityMatrix> {
    require_pair(pair_ab, "first pair")?;
    require_pair(pair_bc, "second pair")?;
    // 0 = A, 1 = B1, 2 = B2, 3 = C
    let joint = pair_ab.tensor(pair_bc);
    let joint = joint.apply_gate(&GateOp::cnot(1, 2)?)?.apply_two_qubit_noise(1, 2, noise.p2)?;
    let joint = joint.apply_gate(&GateOp::single(GateKind::H, 1)?)?.apply_single_qubit_noise(1, noise.p1)?;
    let mut acc: Option<DensityMatrix> = None;
    for m2 in 0..2u8 {
        let after_b2 = joint.measure_branch(2, Basis::Z, noise.pm, m2)?;
        for m1 in 0..2u8 {
            // remaining: 0 = A, 1 = C
            let mut branch = after_b2.measure_branch(1, Basis::Z, noise.pm, m1)?;
            if m2 == 1 {
                branch = branch.apply_gate(&GateOp::single(GateKind::X, 1)?)?;
            }
            if m1 == 1 {
                branch = branch.apply_gate(&GateOp::single(GateKind::Z, 1)?)?;
            }
            acc = Some(match acc {
                None => branch,
                Some(a) => &a + &branch,
            });
        }
    }
    Ok(acc.expect("four branches"))
}

/// Left fold of [`fuse`] along a chain of adjacent pairs.
pub fn fuse_chain(pairs: &[DensityMatrix], noise: &NoiseModel) -> Result<DensityMatrix> {
    let (first, rest) = pairs.split_first().ok_or_else(|| Error::InvalidConfig("cannot fuse an empty chain".into()))?;
    if rest.is_empty() {
        return Err(Error::InvalidConfig("fusion needs at least two pairs".into()));
    }
    rest.iter().try_fold(first.clone(), |acc, p| fuse(&acc, p, noise))
}

/// Fuses `count` copies of the same pair.
pub fn fuse_copies(pair: &DensityMatrix, count: usize, noise: &NoiseModel) -> Result<DensityMatrix> {
    if count < 2 {
        return Err(Error::InvalidConfig(format!("fusion needs at least two pairs, got {count}")));
    }
    let mut acc = pair.clone();
    for _ in 1..count {
        acc = fuse(&acc, pair, noise)?;
    }
    Ok(acc)
}
