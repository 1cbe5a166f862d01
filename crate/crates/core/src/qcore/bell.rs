//! Bell states and fidelities.
//!
//! Every non-target Bell state is `Phi+` with a single Pauli on qubit 1:
//! `Phi- = (I x Z) Phi+`, `Psi+ = (I x X) Phi+`, `Psi- = (I x Y) Phi+`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use super::density::DensityMatrix;
use super::operator::C64;
use super::pauli::Pauli;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BellLabel {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus];
    /// The three error states, in tuple order `(r1, r2, r3)`.
    pub const ERRORS: [BellLabel; 3] = [BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus];

    /// Pauli on qubit 1 that maps `Phi+` to this state.
    pub fn pauli(self) -> Pauli {
        match self {
            BellLabel::PhiPlus => Pauli::I,
            BellLabel::PhiMinus => Pauli::Z,
            BellLabel::PsiPlus => Pauli::X,
            BellLabel::PsiMinus => Pauli::Y,
        }
    }

    pub fn from_pauli(p: Pauli) -> Self {
        match p {
            Pauli::I => BellLabel::PhiPlus,
            Pauli::Z => BellLabel::PhiMinus,
            Pauli::X => BellLabel::PsiPlus,
            Pauli::Y => BellLabel::PsiMinus,
        }
    }

    /// Label of the state reached by composing two Pauli frames.
    pub fn compose(self, other: BellLabel) -> BellLabel {
        let (x1, z1) = self.pauli().bits();
        let (x2, z2) = other.pauli().bits();
        BellLabel::from_pauli(Pauli::from_bits(x1 ^ x2, z1 ^ z2))
    }

    /// Amplitudes in the little-endian basis 00, 01, 10, 11 (qubit 0 fastest).
    pub fn amplitudes(self) -> [C64; 4] {
        let s = C64::new(FRAC_1_SQRT_2, 0.0);
        let o = C64::new(0.0, 0.0);
        match self {
            BellLabel::PhiPlus => [s, o, o, s],
            BellLabel::PhiMinus => [s, o, o, -s],
            BellLabel::PsiPlus => [o, s, s, o],
            // qubit 0 = 1, qubit 1 = 0 is index 1
            BellLabel::PsiMinus => [o, -s, s, o],
        }
    }
}

impl fmt::Display for BellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BellLabel::PhiPlus => "Phi+",
            BellLabel::PhiMinus => "Phi-",
            BellLabel::PsiPlus => "Psi+",
            BellLabel::PsiMinus => "Psi-",
        })
    }
}

/// Rank-1 projector onto a Bell state.
pub fn make_bell(which: BellLabel) -> DensityMatrix {
    DensityMatrix::pure(&which.amplitudes()).expect("Bell amplitudes are normalized")
}

fn require_pair(state: &DensityMatrix) -> Result<()> {
    if state.num_qubits() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a two-qubit state, got {} qubits", state.num_qubits())));
    }
    Ok(())
}

/// Fidelity to a Bell state as the weight `<target| rho |target>`.
///
/// The Werner state with error `eps` has fidelity `1 - eps`, and the Bell
/// weights of a pair sum to one.
pub fn bell_fidelity(state: &DensityMatrix, target: BellLabel) -> Result<f64> {
    require_pair(state)?;
    state.require_normalized()?;
    state.overlap(&target.amplitudes())
}

/// Uhlmann (root) fidelity `Tr sqrt(sqrt(rho) T sqrt(rho))`, which for a pure
/// target is the square root of [`bell_fidelity`].
pub fn root_fidelity(state: &DensityMatrix, target: BellLabel) -> Result<f64> {
    Ok(bell_fidelity(state, target)?.max(0.0).sqrt())
}

/// Weights of `(Phi+, Phi-, Psi+, Psi-)` and the largest residual entry
/// outside the Bell-diagonal part.
pub fn bell_decomposition(state: &DensityMatrix) -> Result<([f64; 4], f64)> {
    require_pair(state)?;
    let mut w = [0.0; 4];
    for (k, label) in BellLabel::ALL.iter().enumerate() {
        w[k] = state.overlap(&label.amplitudes())?;
    }
    let mut dev = 0.0f64;
    for r in 0..4 {
        for c in 0..4 {
            let mut v = C64::new(0.0, 0.0);
            for (k, label) in BellLabel::ALL.iter().enumerate() {
                let a = label.amplitudes();
                v += a[r] * a[c].conj() * w[k];
            }
            dev = dev.max((state.get(r, c) - v).norm());
        }
    }
    Ok((w, dev))
}

/// Bell-diagonal state with the given `(Phi+, Phi-, Psi+, Psi-)` weights.
pub fn bell_mixture(weights: [f64; 4]) -> Result<DensityMatrix> {
    let mut op = super::operator::Operator::zeros(2);
    for (label, w) in BellLabel::ALL.iter().zip(weights) {
        if w < 0.0 {
            return Err(Error::ParameterOutOfRange { name: "Bell weight", value: w, lo: 0.0, hi: 1.0 });
        }
        op.add_scaled(make_bell(*label).operator(), C64::new(w, 0.0));
    }
    DensityMatrix::from_operator(op)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::gates::{GateKind, GateOp};

    #[test]
    fn phi_plus_entries() {
        let phi = make_bell(BellLabel::PhiPlus);
        for r in 0..4 {
            for c in 0..4 {
                let want = if (r == 0 || r == 3) && (c == 0 || c == 3) { 0.5 } else { 0.0 };
                assert!((phi.get(r, c) - C64::new(want, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn error_states_are_paulis_on_second_qubit() {
        let phi = make_bell(BellLabel::PhiPlus);
        for (label, kind) in [(BellLabel::PhiMinus, GateKind::Z), (BellLabel::PsiPlus, GateKind::X), (BellLabel::PsiMinus, GateKind::Y)] {
            let got = phi.apply_gate(&GateOp::single(kind, 1).unwrap()).unwrap();
            assert!(got.operator().max_abs_diff(make_bell(label).operator()) < 1e-15, "{label}");
        }
    }

    #[test]
    fn fidelities() {
        let phi = make_bell(BellLabel::PhiPlus);
        assert!((bell_fidelity(&phi, BellLabel::PhiPlus).unwrap() - 1.0).abs() < 1e-15);
        assert!(bell_fidelity(&phi, BellLabel::PhiMinus).unwrap().abs() < 1e-15);
        assert!(bell_fidelity(&make_bell(BellLabel::PsiMinus), BellLabel::PhiPlus).unwrap().abs() < 1e-15);
        let half = bell_mixture([0.5, 0.5, 0.0, 0.0]).unwrap();
        assert!((root_fidelity(&half, BellLabel::PhiPlus).unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(bell_fidelity(&DensityMatrix::zero(1), BellLabel::PhiPlus).is_err());
    }

    #[test]
    fn label_composition_is_xor() {
        assert_eq!(BellLabel::PhiMinus.compose(BellLabel::PsiPlus), BellLabel::PsiMinus);
        assert_eq!(BellLabel::PsiMinus.compose(BellLabel::PsiMinus), BellLabel::PhiPlus);
    }
}
