use rand::Rng;

use super::channels::{self, Basis};
use super::gates::GateOp;
use super::operator::{Operator, C64, ONE};
use crate::error::{Error, Result};

/// Entry-wise Hermiticity tolerance.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Trace tolerance.
pub const TRACE_TOL: f64 = 1e-12;
/// Slack allowed on the smallest eigenvalue.
pub const PSD_TOL: f64 = 1e-10;

/// Registers above this size skip the eigenvalue check in debug builds.
const DEBUG_PSD_MAX_QUBITS: usize = 6;

/// A (possibly sub-normalized) mixed state. The trace is the branch
/// probability of a post-selected state and equals 1 for a normalized one.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(Operator);

impl DensityMatrix {
    /// Wraps an operator after checking Hermiticity, trace in `[0, 1]` and
    /// positivity.
    pub fn from_operator(op: Operator) -> Result<Self> {
        let dm = DensityMatrix(op);
        dm.check_invariants()?;
        Ok(dm)
    }

    pub(crate) fn from_operator_unchecked(op: Operator) -> Self {
        let dm = DensityMatrix(op);
        dm.debug_check();
        dm
    }

    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|c| c.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Unnormalized(norm));
        }
        Ok(DensityMatrix(Operator::projector(psi)?))
    }

    /// `|0...0><0...0|`
    pub fn zero(num_qubits: usize) -> Self {
        DensityMatrix(Operator::basis_element(num_qubits, 0, 0))
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let d = (1usize << num_qubits) as f64;
        DensityMatrix(Operator::identity(num_qubits).scaled(C64::new(1.0 / d, 0.0)))
    }

    pub fn num_qubits(&self) -> usize {
        self.0.num_qubits()
    }

    pub fn operator(&self) -> &Operator {
        &self.0
    }

    pub fn into_operator(self) -> Operator {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0.get(row, col)
    }

    /// Trace, i.e. the branch probability.
    pub fn norm(&self) -> f64 {
        self.0.trace().re
    }

    pub fn normalized(&self) -> Result<Self> {
        let t = self.norm();
        if t <= 0.0 || !t.is_finite() {
            return Err(Error::Unnormalized(t));
        }
        Ok(DensityMatrix(self.0.scaled(C64::new(1.0 / t, 0.0))))
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        let t = self.norm();
        if (t - 1.0).abs() > 1e-9 {
            Err(Error::Unnormalized(t))
        } else {
            Ok(())
        }
    }

    /// `self` on the low qubits, `other` on the high ones.
    pub fn tensor(&self, other: &DensityMatrix) -> Self {
        DensityMatrix(self.0.kron(&other.0))
    }

    pub fn apply_gate(&self, gate: &GateOp) -> Result<Self> {
        Ok(Self::from_operator_unchecked(channels::apply_gate(&self.0, gate)?))
    }

    pub fn apply_single_qubit_noise(&self, q: usize, p1: f64) -> Result<Self> {
        Ok(Self::from_operator_unchecked(channels::depolarize_1q(&self.0, q, p1)?))
    }

    pub fn apply_two_qubit_noise(&self, a: usize, b: usize, p2: f64) -> Result<Self> {
        Ok(Self::from_operator_unchecked(channels::depolarize_2q(&self.0, a, b, p2)?))
    }

    /// Unnormalized branch for a reported outcome; the measured qubit is removed.
    pub fn measure_branch(&self, q: usize, basis: Basis, pm: f64, reported: u8) -> Result<Self> {
        check_pm(pm)?;
        Ok(Self::from_operator_unchecked(channels::measure_branch(&self.0, q, basis, pm, reported)?))
    }

    /// Samples a reported outcome and returns it with the renormalized
    /// post-measurement state (measured qubit removed).
    pub fn measure<R: Rng + ?Sized>(&self, q: usize, basis: Basis, pm: f64, rng: &mut R) -> Result<(u8, Self)> {
        let b0 = self.measure_branch(q, basis, pm, 0)?;
        let b1 = self.measure_branch(q, basis, pm, 1)?;
        let (t0, t1) = (b0.norm(), b1.norm());
        if t0 < -PSD_TOL || t1 < -PSD_TOL {
            return Err(Error::Numerical(format!("negative branch weight ({t0:e}, {t1:e})")));
        }
        let (t0, t1) = (t0.max(0.0), t1.max(0.0));
        let total = t0 + t1;
        if total <= 0.0 {
            return Err(Error::Unnormalized(total));
        }
        let outcome = if rng.random::<f64>() * total < t0 { 0 } else { 1 };
        let branch = if outcome == 0 { b0 } else { b1 };
        Ok((outcome, branch.normalized()?))
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        Ok(Self::from_operator_unchecked(self.0.partial_trace(keep)?))
    }

    /// `<psi| rho |psi>`
    pub fn overlap(&self, psi: &[C64]) -> Result<f64> {
        if psi.len() != self.0.dim() {
            return Err(Error::DimensionMismatch(format!("vector of length {} for dimension {}", psi.len(), self.0.dim())));
        }
        let dim = self.0.dim();
        let mut acc = C64::new(0.0, 0.0);
        for r in 0..dim {
            if psi[r] == C64::new(0.0, 0.0) {
                continue;
            }
            for c in 0..dim {
                acc += psi[r].conj() * self.0.get(r, c) * psi[c];
            }
        }
        Ok(acc.re)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.0.hermitian_eigenvalues().first().copied().unwrap_or(0.0)
    }

    pub fn check_invariants(&self) -> Result<()> {
        self.check_cheap()?;
        let m = self.min_eigenvalue();
        if m < -PSD_TOL {
            return Err(Error::Numerical(format!("negative eigenvalue {m:e}")));
        }
        Ok(())
    }

    fn check_cheap(&self) -> Result<()> {
        let h = self.0.hermitian_deviation();
        if h > HERMITIAN_TOL {
            return Err(Error::Numerical(format!("Hermiticity deviation {h:e}")));
        }
        let t = self.0.trace();
        if t.im.abs() > TRACE_TOL || t.re < -TRACE_TOL || t.re > 1.0 + 1e-9 {
            return Err(Error::Numerical(format!("trace {t} outside [0, 1]")));
        }
        Ok(())
    }

    #[inline]
    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let res = if self.num_qubits() <= DEBUG_PSD_MAX_QUBITS { self.check_invariants() } else { self.check_cheap() };
            debug_assert!(res.is_ok(), "density matrix invariant: {res:?}");
        }
    }
}

impl std::ops::Add for &DensityMatrix {
    type Output = DensityMatrix;
    fn add(self, rhs: &DensityMatrix) -> DensityMatrix {
        let mut op = self.0.clone();
        op.add_scaled(&rhs.0, ONE);
        DensityMatrix::from_operator_unchecked(op)
    }
}

fn check_pm(pm: f64) -> Result<()> {
    crate::error::check_probability("pm", pm, 0.0, 0.5)
}
