//! Noise channels and measurements acting linearly on [`Operator`]s.

use super::gates::{gate_matrix, GateKind, GateOp};
use super::operator::{Operator, C64};
use crate::error::{check_probability, Result};

/// Measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    X,
    Y,
    Z,
}

pub fn apply_gate(op: &Operator, gate: &GateOp) -> Result<Operator> {
    op.conjugate(gate.targets(), &gate.matrix())
}

pub(crate) fn apply_kind(op: &Operator, kind: GateKind, targets: &[usize]) -> Result<Operator> {
    op.conjugate(targets, &gate_matrix(&kind))
}

/// `(1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z)` on qubit `q`.
pub fn depolarize_1q(op: &Operator, q: usize, p: f64) -> Result<Operator> {
    check_probability("p1", p, 0.0, 1.0)?;
    op.check_qubit(q)?;
    if p == 0.0 {
        return Ok(op.clone());
    }
    let b = 1usize << q;
    let w = p / 3.0;
    Ok(op.pauli_mixture(&[(0, 0, 1.0 - p), (b, 0, w), (b, b, w), (0, b, w)]))
}

/// `(1-p) rho + p/15 sum_{AB != II} (A x B) rho (A x B)` on qubits `a`, `b`.
pub fn depolarize_2q(op: &Operator, a: usize, b: usize, p: f64) -> Result<Operator> {
    check_probability("p2", p, 0.0, 1.0)?;
    op.check_targets(&[a, b])?;
    if p == 0.0 {
        return Ok(op.clone());
    }
    let (ba, bb) = (1usize << a, 1usize << b);
    let single = |x: bool, z: bool, bit: usize| (if x { bit } else { 0 }, if z { bit } else { 0 });
    let mut terms = Vec::with_capacity(16);
    for pa in 0..4 {
        for pb in 0..4 {
            let (xa, za) = single(pa & 1 == 1, pa & 2 == 2, ba);
            let (xb, zb) = single(pb & 1 == 1, pb & 2 == 2, bb);
            let w = if pa == 0 && pb == 0 { 1.0 - p } else { p / 15.0 };
            terms.push((xa | xb, za | zb, w));
        }
    }
    Ok(op.pauli_mixture(&terms))
}

/// Rotates qubit `q` so that the `basis` eigenstate with outcome 0 maps to `|0>`.
fn rotate_to_z(op: &Operator, q: usize, basis: Basis) -> Result<Operator> {
    match basis {
        Basis::Z => Ok(op.clone()),
        Basis::X => apply_kind(op, GateKind::H, &[q]),
        // (|0> + i|1>)/sqrt2 -> |+> -> |0>
        Basis::Y => apply_kind(&apply_kind(op, GateKind::SDagger, &[q])?, GateKind::H, &[q]),
    }
}

/// Unnormalized post-measurement operator for a reported outcome, with the
/// measured qubit removed.
///
/// The reported outcome `q` carries the intended projection with weight
/// `1 - pm` and the opposite projection with weight `pm`. Outcome 0 is the +1
/// eigenstate of the basis.
pub fn measure_branch(op: &Operator, q: usize, basis: Basis, pm: f64, reported: u8) -> Result<Operator> {
    check_probability("pm", pm, 0.0, 1.0)?;
    op.check_qubit(q)?;
    let rotated = rotate_to_z(op, q, basis)?;
    let mut out = rotated.project_out(q, reported)?;
    if pm > 0.0 {
        out = out.scaled(C64::new(1.0 - pm, 0.0));
        out.add_scaled(&rotated.project_out(q, reported ^ 1)?, C64::new(pm, 0.0));
    }
    Ok(out)
}

/// Register index of qubit `q` after qubit `removed` has been taken out.
#[inline]
pub(crate) fn after_removal(q: usize, removed: usize) -> usize {
    debug_assert_ne!(q, removed);
    if q > removed {
        q - 1
    } else {
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_depolarization_gives_maximally_mixed() {
        let rho = Operator::projector(&[C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        let out = depolarize_1q(&rho, 0, 0.75).unwrap();
        assert!(out.max_abs_diff(&Operator::identity(1).scaled(C64::new(0.5, 0.0))) < 1e-12);
    }

    #[test]
    fn two_qubit_full_depolarization() {
        let psi = [C64::new(0.5, 0.0), C64::new(0.5, 0.1), C64::new(0.3, 0.0), C64::new(0.0, 0.2)];
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        let psi: Vec<C64> = psi.iter().map(|c| c / norm).collect();
        let rho = Operator::projector(&psi).unwrap();
        let out = depolarize_2q(&rho, 0, 1, 15.0 / 16.0).unwrap();
        assert!(out.max_abs_diff(&Operator::identity(2).scaled(C64::new(0.25, 0.0))) < 1e-12);
    }

    #[test]
    fn invalid_probabilities_rejected() {
        let rho = Operator::identity(1);
        assert!(depolarize_1q(&rho, 0, 1.5).is_err());
        assert!(depolarize_2q(&Operator::identity(2), 0, 0, 0.1).is_err());
        assert!(measure_branch(&rho, 0, Basis::Z, -0.1, 0).is_err());
    }

    #[test]
    fn y_measurement_outcome_zero_is_plus_i() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus_i = Operator::projector(&[C64::new(s, 0.0), C64::new(0.0, s)]).unwrap();
        let b0 = measure_branch(&plus_i, 0, Basis::Y, 0.0, 0).unwrap();
        assert!((b0.trace().re - 1.0).abs() < 1e-12);
        let plus = Operator::projector(&[C64::new(s, 0.0), C64::new(s, 0.0)]).unwrap();
        assert!((measure_branch(&plus, 0, Basis::X, 0.0, 1).unwrap().trace().re).abs() < 1e-12);
    }
}
