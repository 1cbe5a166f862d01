use std::f64::consts::FRAC_1_SQRT_2;

use super::operator::{Matrix, C64};
use super::pauli::Pauli;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    H,
    S,
    SDagger,
    X,
    Y,
    Z,
    /// Control is the first target.
    Cnot,
    Cphase,
    /// Arbitrary single-qubit unitary.
    Unitary(Matrix),
}

/// A gate with its target qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    kind: GateKind,
    targets: Vec<usize>,
}

impl GateOp {
    pub fn new(kind: GateKind, targets: Vec<usize>) -> Result<Self> {
        let expected = match kind {
            GateKind::Cnot | GateKind::Cphase => 2,
            _ => 1,
        };
        if targets.len() != expected {
            return Err(Error::TargetCount { expected, got: targets.len() });
        }
        if expected == 2 && targets[0] == targets[1] {
            return Err(Error::DuplicateQubits(targets));
        }
        if let GateKind::Unitary(u) = &kind {
            if u.nrows() != 2 || u.ncols() != 2 {
                return Err(Error::DimensionMismatch("single-qubit unitary must be 2x2".into()));
            }
            let dev = (u.adjoint() * u - Matrix::identity(2, 2)).iter().map(|v| v.norm()).fold(0.0, f64::max);
            if dev > 1e-12 {
                return Err(Error::Numerical(format!("matrix is not unitary (deviation {dev:e})")));
            }
        }
        Ok(GateOp { kind, targets })
    }

    pub fn single(kind: GateKind, q: usize) -> Result<Self> {
        Self::new(kind, vec![q])
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        Self::new(GateKind::Cnot, vec![control, target])
    }

    pub fn cphase(a: usize, b: usize) -> Result<Self> {
        Self::new(GateKind::Cphase, vec![a, b])
    }

    pub fn kind(&self) -> &GateKind {
        &self.kind
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// Matrix with local bit `j` on `targets[j]`.
    pub fn matrix(&self) -> Matrix {
        gate_matrix(&self.kind)
    }
}

pub fn gate_matrix(kind: &GateKind) -> Matrix {
    let o = C64::new(0.0, 0.0);
    let l = C64::new(1.0, 0.0);
    let i = C64::new(0.0, 1.0);
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    match kind {
        GateKind::H => Matrix::from_row_slice(2, 2, &[h, h, h, -h]),
        GateKind::S => Matrix::from_row_slice(2, 2, &[l, o, o, i]),
        GateKind::SDagger => Matrix::from_row_slice(2, 2, &[l, o, o, -i]),
        GateKind::X => Pauli::X.matrix(),
        GateKind::Y => Pauli::Y.matrix(),
        GateKind::Z => Pauli::Z.matrix(),
        // local index = control | target << 1
        GateKind::Cnot => Matrix::from_row_slice(
            4,
            4,
            &[l, o, o, o, o, o, o, l, o, o, l, o, o, l, o, o],
        ),
        GateKind::Cphase => Matrix::from_diagonal(&nalgebra::DVector::from_vec(vec![l, l, l, -l])),
        GateKind::Unitary(u) => u.clone(),
    }
}
