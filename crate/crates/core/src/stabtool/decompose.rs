//! Reading a noisy parity measurement as a mixture of ideal projections
//! followed by Pauli errors and outcome flips.
//!
//! For reported outcome `m` the branch map is expanded as
//! `S_m = sum_{E, pi} c^m_{E, pi} E P_pi . P_pi E`, where `P_pi` projects
//! onto parity `pi`. The Choi vectors of these maps are orthogonal, so each
//! coefficient is a single overlap.

use crate::error::{Error, Result};
use crate::qcore::{Matrix, PauliString, Superoperator, C64};

use super::table::{ParityBasis, ParityErrorTable, TableEntry, TABLE_SUM_TOL};

/// Largest Frobenius norm tolerated outside the span of the parity maps.
pub const DECOMPOSITION_TOL: f64 = 1e-6;

const N: usize = 4;
const DIM: usize = 1 << N;

/// The table and the weight left outside the span of the parity maps.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub table: ParityErrorTable,
    pub residual: f64,
}

/// `P_pi = (1 + (-1)^pi S) / 2`.
pub fn parity_projector(basis: ParityBasis, parity: u8) -> Matrix {
    let s = basis.stabilizer().matrix();
    let sign = if parity == 0 { 0.5 } else { -0.5 };
    Matrix::identity(DIM, DIM).scale(0.5) + s.scale(sign)
}

/// Nonzero entries of the Choi vector `(E P_pi x I)|Phi>`.
fn choi_vector(e: &Matrix, projector: &Matrix) -> Vec<(usize, C64)> {
    let m = e * projector;
    let mut v = Vec::new();
    for i in 0..DIM {
        for a in 0..DIM {
            let x = m[(a, i)];
            if x.norm() > 1e-14 {
                v.push((a | (i << N), x * 0.25));
            }
        }
    }
    v
}

fn overlap(choi: &[C64], dim: usize, v: &[(usize, C64)]) -> f64 {
    let mut acc = C64::new(0.0, 0.0);
    for &(r, vr) in v {
        let row = &choi[r * dim..(r + 1) * dim];
        let mut s = C64::new(0.0, 0.0);
        for &(c, vc) in v {
            s += row[c] * vc;
        }
        acc += vr.conj() * s;
    }
    acc.re
}

/// Decomposes the two branches (indexed by reported outcome) of a
/// four-qubit parity measurement. The table weights are averaged over the
/// two reported outcomes.
pub fn decompose_with_residual(branches: &[Superoperator], basis: ParityBasis) -> Result<Decomposition> {
    if branches.len() != 2 {
        return Err(Error::DimensionMismatch(format!("expected two reported outcomes, got {}", branches.len())));
    }
    if let Some(b) = branches.iter().find(|b| b.num_qubits() != N) {
        return Err(Error::DimensionMismatch(format!("parity map on {} qubits", b.num_qubits())));
    }
    let projectors = [parity_projector(basis, 0), parity_projector(basis, 1)];
    let chois: Vec<&[C64]> = branches.iter().map(|b| b.choi().operator().entries()).collect();
    let cdim = DIM * DIM;
    let mut norm_sq: f64 = chois.iter().map(|c| c.iter().map(|x| x.norm_sqr()).sum::<f64>()).sum();
    let mut entries = Vec::new();
    for e in PauliString::all(N) {
        if basis.canonical(&e) != e {
            continue;
        }
        let em = e.matrix();
        let mut p = [0.0; 2];
        for (parity, proj) in projectors.iter().enumerate() {
            let v = choi_vector(&em, proj);
            for (m, choi) in chois.iter().enumerate() {
                let c = 4.0 * overlap(choi, cdim, &v);
                norm_sq -= c * c / 4.0;
                p[usize::from(parity != m)] += 0.5 * c;
            }
        }
        for (lie, probability) in [(false, p[0]), (true, p[1])] {
            if probability.abs() > 1e-15 {
                entries.push(TableEntry { pauli: e.clone(), lie, probability });
            }
        }
    }
    let residual = norm_sq.max(0.0).sqrt();
    // remove rounding drift so an exact channel gives an exact table
    let total: f64 = entries.iter().map(|e| e.probability.max(0.0)).sum();
    if (total - 1.0).abs() <= TABLE_SUM_TOL {
        for e in &mut entries {
            e.probability /= total;
        }
    }
    Ok(Decomposition { table: ParityErrorTable::new(basis, entries)?, residual })
}

/// [`decompose_with_residual`], failing when the residual exceeds
/// [`DECOMPOSITION_TOL`].
pub fn decompose_superop(branches: &[Superoperator], basis: ParityBasis) -> Result<ParityErrorTable> {
    let d = decompose_with_residual(branches, basis)?;
    if d.residual > DECOMPOSITION_TOL {
        return Err(Error::NotPauliDecomposable(d.residual));
    }
    Ok(d.table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{extract_superoperator, FnProcess, Operator, DEFAULT_QUBIT_BUDGET};

    fn parity_maps(basis: ParityBasis, before: &Matrix, after: &Matrix, flip: f64) -> Vec<Superoperator> {
        let p = [parity_projector(basis, 0), parity_projector(basis, 1)];
        let all = [0, 1, 2, 3];
        let process = FnProcess::new(4, 0, 2, move |x: &Operator| {
            let x = x.conjugate(&all, before)?;
            let mut out = Vec::new();
            for m in 0..2 {
                let mut y = x.conjugate(&all, &(after * &p[m])).unwrap().scaled(C64::new(1.0 - flip, 0.0));
                y.add_scaled(&x.conjugate(&all, &(after * &p[1 - m]))?, C64::new(flip, 0.0));
                out.push(y);
            }
            Ok(out)
        });
        extract_superoperator(&process, DEFAULT_QUBIT_BUDGET).unwrap()
    }

    fn id() -> Matrix {
        Matrix::identity(DIM, DIM)
    }

    #[test]
    fn ideal_projection() {
        for basis in [ParityBasis::X, ParityBasis::Z] {
            let d = decompose_with_residual(&parity_maps(basis, &id(), &id(), 0.0), basis).unwrap();
            assert!(d.residual < 1e-10);
            assert_eq!(d.table, ParityErrorTable::ideal(basis));
        }
    }

    #[test]
    fn pauli_after_projection() {
        let x1: PauliString = "IXII".parse().unwrap();
        let d = decompose_with_residual(&parity_maps(ParityBasis::Z, &id(), &x1.matrix(), 0.0), ParityBasis::Z).unwrap();
        assert!(d.residual < 1e-10);
        assert!((d.table.probability(&x1, false) - 1.0).abs() < 1e-12);
        // an error before the projection that flips the parity reads as a lie
        let d = decompose_with_residual(&parity_maps(ParityBasis::Z, &x1.matrix(), &id(), 0.0), ParityBasis::Z).unwrap();
        assert!((d.table.probability(&x1, true) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn outcome_flip_recovered() {
        let q = 0.0371;
        for basis in [ParityBasis::X, ParityBasis::Z] {
            let t = decompose_superop(&parity_maps(basis, &id(), &id(), q), basis).unwrap();
            assert!((t.probability(&PauliString::identity(4), true) - q).abs() < 1e-10);
            assert!((t.success_probability() - (1.0 - q)).abs() < 1e-10);
        }
    }

    #[test]
    fn coherent_error_rejected() {
        let (c, s) = (0.3f64.cos(), 0.3f64.sin());
        let rx = Matrix::from_row_slice(2, 2, &[C64::new(c, 0.0), C64::new(0.0, -s), C64::new(0.0, -s), C64::new(c, 0.0)]);
        let u = Matrix::identity(8, 8).kronecker(&rx);
        let branches = parity_maps(ParityBasis::Z, &id(), &u, 0.0);
        assert!(matches!(decompose_superop(&branches, ParityBasis::Z), Err(Error::NotPauliDecomposable(_))));
    }
}
