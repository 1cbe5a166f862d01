//! Process extraction through the Choi state.
//!
//! The Choi state of a map `S` on `n` qubits is
//! `C = 2^-n sum_ij S(|i><j|) x |i><j|`, with the output on the low `n`
//! qubits and the reference copy on the high `n` qubits. For a branch of a
//! measurement the trace of `C` is the branch probability on the maximally
//! mixed input.

use rayon::prelude::*;

use super::density::DensityMatrix;
use super::operator::{Matrix, Operator, C64, ZERO};
use crate::error::{Error, Result};

/// Default cap on the simulated register (data plus ancillas).
pub const DEFAULT_QUBIT_BUDGET: usize = 12;

/// A circuit on `num_qubits` data qubits with a classical record.
///
/// `apply` must be linear in its argument: it is called on non-Hermitian
/// basis operators `|i><j|`. It returns one (unnormalized) output per
/// reported record, all on the data qubits.
pub trait Process: Sync {
    fn num_qubits(&self) -> usize;
    /// Extra qubits the circuit allocates while running.
    fn num_ancillas(&self) -> usize {
        0
    }
    fn num_branches(&self) -> usize;
    fn apply(&self, input: &Operator) -> Result<Vec<Operator>>;
}

/// Wraps a closure as a [`Process`].
pub struct FnProcess<F> {
    num_qubits: usize,
    num_ancillas: usize,
    num_branches: usize,
    f: F,
}

impl<F> FnProcess<F>
where
    F: Fn(&Operator) -> Result<Vec<Operator>> + Sync,
{
    pub fn new(num_qubits: usize, num_ancillas: usize, num_branches: usize, f: F) -> Self {
        FnProcess { num_qubits, num_ancillas, num_branches, f }
    }
}

impl<F> Process for FnProcess<F>
where
    F: Fn(&Operator) -> Result<Vec<Operator>> + Sync,
{
    fn num_qubits(&self) -> usize {
        self.num_qubits
    }
    fn num_ancillas(&self) -> usize {
        self.num_ancillas
    }
    fn num_branches(&self) -> usize {
        self.num_branches
    }
    fn apply(&self, input: &Operator) -> Result<Vec<Operator>> {
        (self.f)(input)
    }
}

/// One term `K rho K^dagger` of a Kraus decomposition. `probability` is
/// `Tr(K^dagger K) / 2^n`, the weight of the term on the maximally mixed input.
#[derive(Clone, Debug)]
pub struct KrausTerm {
    pub operator: Operator,
    pub probability: f64,
}

#[derive(Clone, Debug)]
pub struct Superoperator {
    num_qubits: usize,
    choi: DensityMatrix,
    transfer: Vec<C64>,
}

impl Superoperator {
    pub fn from_choi(choi: DensityMatrix) -> Result<Self> {
        let total = choi.num_qubits();
        if total % 2 != 0 || total == 0 {
            return Err(Error::DimensionMismatch(format!("Choi state on {total} qubits")));
        }
        let n = total / 2;
        let transfer = transfer_from_choi(choi.operator(), n);
        Ok(Superoperator { num_qubits: n, choi, transfer })
    }

    pub fn identity(num_qubits: usize) -> Self {
        Self::from_unitary(&Matrix::identity(1 << num_qubits, 1 << num_qubits)).expect("identity is unitary")
    }

    /// The map `rho -> U rho U^dagger`.
    pub fn from_unitary(u: &Matrix) -> Result<Self> {
        let n = super::operator::qubits_for_len(u.nrows())?;
        let psi = choi_vector(u, n);
        Self::from_choi(DensityMatrix::pure(&psi)?)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn choi(&self) -> &DensityMatrix {
        &self.choi
    }

    /// Branch probability on the maximally mixed input.
    pub fn branch_probability(&self) -> f64 {
        self.choi.norm()
    }

    /// `S(x)` for an operator on exactly `num_qubits` qubits.
    pub fn apply(&self, x: &Operator) -> Result<Operator> {
        if x.num_qubits() != self.num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{}-qubit map applied to a {}-qubit operator",
                self.num_qubits,
                x.num_qubits()
            )));
        }
        let targets: Vec<usize> = (0..self.num_qubits).collect();
        x.apply_transfer(&targets, &self.transfer)
    }

    /// Applies the map to `targets` of a larger register (local qubit `j` on
    /// `targets[j]`).
    pub fn apply_to(&self, x: &Operator, targets: &[usize]) -> Result<Operator> {
        if targets.len() != self.num_qubits {
            return Err(Error::TargetCount { expected: self.num_qubits, got: targets.len() });
        }
        x.apply_transfer(targets, &self.transfer)
    }

    pub fn apply_to_state(&self, rho: &DensityMatrix, targets: &[usize]) -> Result<DensityMatrix> {
        Ok(DensityMatrix::from_operator_unchecked(self.apply_to(rho.operator(), targets)?))
    }

    /// `Tr_out C - p I / 2^n`, largest entry. Zero for a trace-preserving
    /// map or a single post-selected branch of a measurement whose probability
    /// does not depend on the input.
    pub fn trace_preservation_deviation(&self) -> f64 {
        let n = self.num_qubits;
        let reference: Vec<usize> = (n..2 * n).collect();
        let reduced = self.choi.operator().partial_trace(&reference).expect("reference qubits exist");
        let d = (1usize << n) as f64;
        let target = Operator::identity(n).scaled(C64::new(self.branch_probability() / d, 0.0));
        reduced.max_abs_diff(&target)
    }

    /// Kraus decomposition from the eigenvectors of the Choi state; terms
    /// with probability below `tol` are dropped. Sorted by decreasing weight.
    pub fn kraus_terms(&self, tol: f64) -> Vec<KrausTerm> {
        let n = self.num_qubits;
        let dim = 1usize << n;
        let m = self.choi.operator().to_matrix();
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let eig = h.symmetric_eigen();
        let mut terms = Vec::new();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda < tol {
                continue;
            }
            let v = eig.eigenvectors.column(k);
            let scale = (lambda * dim as f64).sqrt();
            let op = Operator::from_fn(n, |a, i| v[a | (i << n)] * scale);
            terms.push(KrausTerm { operator: op, probability: lambda });
        }
        terms.sort_by(|a, b| b.probability.total_cmp(&a.probability));
        terms
    }

    /// `<Phi_U| C |Phi_U> / p`, the process fidelity of the normalized branch
    /// to the unitary `u`.
    pub fn process_fidelity(&self, u: &Matrix) -> Result<f64> {
        if u.nrows() != 1 << self.num_qubits {
            return Err(Error::DimensionMismatch("unitary size does not match the map".into()));
        }
        let psi = choi_vector(u, self.num_qubits);
        let p = self.branch_probability();
        if p <= 0.0 {
            return Err(Error::Unnormalized(p));
        }
        Ok(self.choi.overlap(&psi)? / p)
    }
}

/// `(U x I)|Phi>` with `|Phi> = 2^{-n/2} sum_i |i>|i>`, reference on the high qubits.
fn choi_vector(u: &Matrix, n: usize) -> Vec<C64> {
    let dim = 1usize << n;
    let s = 1.0 / (dim as f64).sqrt();
    let mut psi = vec![ZERO; dim * dim];
    for i in 0..dim {
        for a in 0..dim {
            psi[a | (i << n)] = u[(a, i)] * s;
        }
    }
    psi
}

fn transfer_from_choi(choi: &Operator, n: usize) -> Vec<C64> {
    let m = 1usize << n;
    let d = m as f64;
    let mut t = vec![ZERO; m * m * m * m];
    for a in 0..m {
        for b in 0..m {
            for i in 0..m {
                for j in 0..m {
                    t[(a * m + b) * m * m + i * m + j] = choi.get(a | (i << n), b | (j << n)) * d;
                }
            }
        }
    }
    t
}

/// Extracts one Choi state per branch of `process` by running it on every
/// basis operator `|i><j|`.
pub fn extract_superoperator(process: &dyn Process, qubit_budget: usize) -> Result<Vec<Superoperator>> {
    let n = process.num_qubits();
    let needed = (n + process.num_ancillas()).max(2 * n);
    if needed > qubit_budget {
        return Err(Error::QubitBudget { needed, budget: qubit_budget });
    }
    let dim = 1usize << n;
    let branches = process.num_branches();
    let outputs: Vec<(usize, usize, Vec<Operator>)> = (0..dim * dim)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / dim, k % dim);
            let out = process.apply(&Operator::basis_element(n, i, j))?;
            if out.len() != branches {
                return Err(Error::DimensionMismatch(format!("process returned {} branches, expected {branches}", out.len())));
            }
            Ok((i, j, out))
        })
        .collect::<Result<_>>()?;

    let mut chois = vec![Operator::zeros(2 * n); branches];
    let norm = 1.0 / dim as f64;
    for (i, j, outs) in outputs {
        for (choi, out) in chois.iter_mut().zip(outs) {
            if out.num_qubits() != n {
                return Err(Error::DimensionMismatch(format!("branch output on {} qubits", out.num_qubits())));
            }
            for a in 0..dim {
                for b in 0..dim {
                    let v = out.get(a, b);
                    if v != ZERO {
                        choi.set(a | (i << n), b | (j << n), v * norm);
                    }
                }
            }
        }
    }
    chois
        .into_iter()
        .map(|c| Superoperator::from_choi(DensityMatrix::from_operator(c)?))
        .collect()
}
