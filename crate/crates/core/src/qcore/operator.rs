//! Dense operators on small qubit registers.
//!
//! Qubit `q` is bit `q` of the computational-basis index (little-endian), so
//! for a two-qubit operator the basis order is `|q1 q0>` = 00, 01, 10, 11 with
//! qubit 0 varying fastest. Entries are stored row-major.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Small dense complex matrix used for gates and Kraus operators.
pub type Matrix = DMatrix<C64>;

pub(crate) const ZERO: C64 = C64::new(0.0, 0.0);
pub(crate) const ONE: C64 = C64::new(1.0, 0.0);

/// A linear operator on `num_qubits` qubits. No physical invariants are
/// enforced; see [`DensityMatrix`](super::DensityMatrix) for that.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    num_qubits: usize,
    data: Vec<C64>,
}

impl Operator {
    pub fn zeros(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Operator { num_qubits, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(num_qubits: usize) -> Self {
        let mut op = Self::zeros(num_qubits);
        let dim = op.dim();
        for i in 0..dim {
            op.data[i * dim + i] = ONE;
        }
        op
    }

    /// `|row><col|`
    pub fn basis_element(num_qubits: usize, row: usize, col: usize) -> Self {
        let mut op = Self::zeros(num_qubits);
        let dim = op.dim();
        op.data[row * dim + col] = ONE;
        op
    }

    pub fn from_entries(num_qubits: usize, data: Vec<C64>) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {num_qubits}-qubit operator",
                data.len()
            )));
        }
        Ok(Operator { num_qubits, data })
    }

    pub fn from_fn(num_qubits: usize, f: impl Fn(usize, usize) -> C64) -> Self {
        let dim = 1usize << num_qubits;
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Operator { num_qubits, data }
    }

    /// `|psi><psi|` for an (unnormalized) state vector.
    pub fn projector(psi: &[C64]) -> Result<Self> {
        let num_qubits = qubits_for_len(psi.len())?;
        Ok(Self::from_fn(num_qubits, |r, c| psi[r] * psi[c].conj()))
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch("non-square matrix".into()));
        }
        let num_qubits = qubits_for_len(m.nrows())?;
        Ok(Self::from_fn(num_qubits, |r, c| m[(r, c)]))
    }

    pub fn to_matrix(&self) -> Matrix {
        let dim = self.dim();
        Matrix::from_fn(dim, dim, |r, c| self.data[r * dim + c])
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        1usize << self.num_qubits
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.data[row * self.dim() + col]
    }

    #[inline]
    pub(crate) fn set(&mut self, row: usize, col: usize, v: C64) {
        let dim = self.dim();
        self.data[row * dim + col] = v;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn trace(&self) -> C64 {
        let dim = self.dim();
        (0..dim).map(|i| self.data[i * dim + i]).sum()
    }

    pub fn scaled(&self, s: C64) -> Self {
        Operator {
            num_qubits: self.num_qubits,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, other: &Operator, s: C64) {
        assert_eq!(self.num_qubits, other.num_qubits, "operator size mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    pub fn dagger(&self) -> Self {
        let dim = self.dim();
        Self::from_fn(self.num_qubits, |r, c| self.data[c * dim + r].conj())
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Operator) -> Self {
        assert_eq!(self.num_qubits, other.num_qubits, "operator size mismatch");
        let dim = self.dim();
        let mut out = vec![ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.data[r * dim + k];
                if a == ZERO {
                    continue;
                }
                let row = &other.data[k * dim..(k + 1) * dim];
                let dst = &mut out[r * dim..(r + 1) * dim];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        Operator { num_qubits: self.num_qubits, data: out }
    }

    /// Tensor product; `self` occupies the low qubits of the result.
    pub fn kron(&self, other: &Operator) -> Self {
        let (da, db) = (self.dim(), other.dim());
        let n = self.num_qubits + other.num_qubits;
        let dim = da * db;
        let mut data = vec![ZERO; dim * dim];
        for rb in 0..db {
            for cb in 0..db {
                let b = other.data[rb * db + cb];
                if b == ZERO {
                    continue;
                }
                for ra in 0..da {
                    for ca in 0..da {
                        let r = ra | (rb * da);
                        let c = ca | (cb * da);
                        data[r * dim + c] = self.data[ra * da + ca] * b;
                    }
                }
            }
        }
        Operator { num_qubits: n, data }
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.num_qubits, other.num_qubits, "operator size mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermitian_deviation(&self) -> f64 {
        let dim = self.dim();
        let mut dev = 0.0f64;
        for r in 0..dim {
            for c in r..dim {
                let d = (self.data[r * dim + c] - self.data[c * dim + r].conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn hermitian_eigenvalues(&self) -> Vec<f64> {
        let m = self.to_matrix();
        let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
        let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q < self.num_qubits {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange { qubit: q, num_qubits: self.num_qubits })
        }
    }

    pub(crate) fn check_targets(&self, targets: &[usize]) -> Result<()> {
        for (i, &q) in targets.iter().enumerate() {
            self.check_qubit(q)?;
            if targets[..i].contains(&q) {
                return Err(Error::DuplicateQubits(targets.to_vec()));
            }
        }
        Ok(())
    }

    /// `K X K^dagger` with `K` acting on `targets`; local bit `j` of `K`'s
    /// index is register qubit `targets[j]`.
    pub fn conjugate(&self, targets: &[usize], k: &Matrix) -> Result<Operator> {
        self.check_targets(targets)?;
        let m = 1usize << targets.len();
        if k.nrows() != m || k.ncols() != m {
            return Err(Error::TargetCount { expected: qubits_for_len(k.nrows())?, got: targets.len() });
        }
        let dim = self.dim();
        let offsets = local_offsets(targets);
        let bases = rest_bases(dim, targets);
        let kd: Vec<C64> = (0..m * m).map(|i| k[(i / m, i % m)]).collect();

        // left multiply
        let mut tmp = vec![ZERO; dim * dim];
        let mut buf = vec![ZERO; m];
        for col in 0..dim {
            for &base in &bases {
                for l in 0..m {
                    buf[l] = self.data[(base + offsets[l]) * dim + col];
                }
                for a in 0..m {
                    let mut acc = ZERO;
                    for l in 0..m {
                        acc += kd[a * m + l] * buf[l];
                    }
                    tmp[(base + offsets[a]) * dim + col] = acc;
                }
            }
        }
        // right multiply by K^dagger
        let mut out = vec![ZERO; dim * dim];
        for row in 0..dim {
            let src = &tmp[row * dim..(row + 1) * dim];
            let dst = &mut out[row * dim..(row + 1) * dim];
            for &base in &bases {
                for l in 0..m {
                    buf[l] = src[base + offsets[l]];
                }
                for b in 0..m {
                    let mut acc = ZERO;
                    for l in 0..m {
                        acc += buf[l] * kd[b * m + l].conj();
                    }
                    dst[base + offsets[b]] = acc;
                }
            }
        }
        Ok(Operator { num_qubits: self.num_qubits, data: out })
    }

    /// `P X P` for the Pauli operator with the given X and Z bit masks
    /// (a qubit with both bits set carries Y).
    pub fn conjugate_pauli(&self, x_mask: usize, z_mask: usize) -> Operator {
        let dim = self.dim();
        let mut out = vec![ZERO; dim * dim];
        for r in 0..dim {
            let sr = parity(r & z_mask);
            let orow = (r ^ x_mask) * dim;
            for c in 0..dim {
                let v = self.data[r * dim + c];
                let s = sr ^ parity(c & z_mask);
                out[orow + (c ^ x_mask)] = if s { -v } else { v };
            }
        }
        Operator { num_qubits: self.num_qubits, data: out }
    }

    /// `sum_k w_k P_k X P_k` over `(x_mask, z_mask, weight)` terms.
    pub fn pauli_mixture(&self, terms: &[(usize, usize, f64)]) -> Operator {
        let mut out = Operator::zeros(self.num_qubits);
        for &(x, z, w) in terms {
            if w == 0.0 {
                continue;
            }
            if x == 0 && z == 0 {
                out.add_scaled(self, C64::new(w, 0.0));
            } else {
                out.add_scaled(&self.conjugate_pauli(x, z), C64::new(w, 0.0));
            }
        }
        out
    }

    /// `<bit|_q X |bit>_q`: projects qubit `q` onto a Z eigenstate and removes it.
    pub fn project_out(&self, q: usize, bit: u8) -> Result<Operator> {
        self.check_qubit(q)?;
        let n = self.num_qubits - 1;
        let dim = 1usize << n;
        let sdim = self.dim();
        let ins = |i: usize| insert_bit(i, q, bit as usize);
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            let rr = ins(r) * sdim;
            for c in 0..dim {
                data.push(self.data[rr + ins(c)]);
            }
        }
        Ok(Operator { num_qubits: n, data })
    }

    pub fn trace_out(&self, q: usize) -> Result<Operator> {
        let mut a = self.project_out(q, 0)?;
        a.add_scaled(&self.project_out(q, 1)?, ONE);
        Ok(a)
    }

    /// Reduced operator on `keep` (kept qubits renumbered in ascending order).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Operator> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        self.check_targets(keep)?;
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        let traced: Vec<usize> = (0..self.num_qubits).filter(|q| !keep.contains(q)).collect();
        let keep_off = local_offsets(&keep);
        let trace_off = local_offsets(&traced);
        let n = keep.len();
        let dim = 1usize << n;
        let sdim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                let mut acc = ZERO;
                for &t in &trace_off {
                    acc += self.data[(keep_off[r] + t) * sdim + keep_off[c] + t];
                }
                data[r * dim + c] = acc;
            }
        }
        Ok(Operator { num_qubits: n, data })
    }

    /// Applies a `k`-qubit linear map given by its transfer tensor to `targets`.
    /// `transfer[(a * m + b) * m * m + i * m + j]` is `<a| S(|i><j|) |b>`.
    pub(crate) fn apply_transfer(&self, targets: &[usize], transfer: &[C64]) -> Result<Operator> {
        self.check_targets(targets)?;
        let m = 1usize << targets.len();
        debug_assert_eq!(transfer.len(), m * m * m * m);
        let dim = self.dim();
        let offsets = local_offsets(targets);
        let bases = rest_bases(dim, targets);
        let mut out = vec![ZERO; dim * dim];
        let mut block = vec![ZERO; m * m];
        for &rb in &bases {
            for &cb in &bases {
                for i in 0..m {
                    for j in 0..m {
                        block[i * m + j] = self.data[(rb + offsets[i]) * dim + cb + offsets[j]];
                    }
                }
                if block.iter().all(|v| *v == ZERO) {
                    continue;
                }
                for a in 0..m {
                    for b in 0..m {
                        let row = &transfer[(a * m + b) * m * m..(a * m + b + 1) * m * m];
                        let mut acc = ZERO;
                        for (t, x) in row.iter().zip(&block) {
                            acc += t * x;
                        }
                        out[(rb + offsets[a]) * dim + cb + offsets[b]] = acc;
                    }
                }
            }
        }
        Ok(Operator { num_qubits: self.num_qubits, data: out })
    }
}

impl std::ops::Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        let mut out = self.clone();
        out.add_scaled(rhs, ONE);
        out
    }
}

pub(crate) fn qubits_for_len(len: usize) -> Result<usize> {
    if len == 0 || !len.is_power_of_two() {
        return Err(Error::DimensionMismatch(format!("length {len} is not a power of two")));
    }
    Ok(len.trailing_zeros() as usize)
}

#[inline]
pub(crate) fn parity(x: usize) -> bool {
    x.count_ones() & 1 == 1
}

#[inline]
pub(crate) fn insert_bit(i: usize, q: usize, bit: usize) -> usize {
    let low = i & ((1usize << q) - 1);
    let high = (i >> q) << (q + 1);
    high | (bit << q) | low
}

/// Register offsets for every local index over `targets`.
pub(crate) fn local_offsets(targets: &[usize]) -> Vec<usize> {
    (0..1usize << targets.len())
        .map(|l| {
            targets
                .iter()
                .enumerate()
                .map(|(j, &q)| ((l >> j) & 1) << q)
                .sum()
        })
        .collect()
}

/// All register indices whose `targets` bits are zero.
pub(crate) fn rest_bases(dim: usize, targets: &[usize]) -> Vec<usize> {
    let mask: usize = targets.iter().map(|&q| 1usize << q).sum();
    (0..dim).filter(|i| i & mask == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn random_op(n: usize, seed: u64) -> Operator {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let dim = 1usize << n;
        let data = (0..dim * dim).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
        Operator::from_entries(n, data).unwrap()
    }

    #[test]
    fn kron_places_first_factor_on_low_qubits() {
        let a = Operator::basis_element(1, 1, 1); // qubit 0 in |1>
        let b = Operator::basis_element(1, 0, 0); // qubit 1 in |0>
        let ab = a.kron(&b);
        assert_eq!(ab.get(1, 1), ONE);
        assert_eq!(ab.trace(), ONE);
    }

    #[test]
    fn conjugate_matches_dense_product() {
        let x = random_op(3, 7);
        let k = Matrix::from_fn(4, 4, |r, c| C64::new((r * 4 + c) as f64 * 0.1, (r as f64) - (c as f64)));
        let got = x.conjugate(&[2, 0], &k).unwrap();
        // embed K on qubits (2, 0) densely: local bit0 -> qubit 2, bit1 -> qubit 0
        let full = Operator::from_fn(3, |r, c| {
            if (r >> 1) & 1 != (c >> 1) & 1 {
                return ZERO;
            }
            let lr = ((r >> 2) & 1) | ((r & 1) << 1);
            let lc = ((c >> 2) & 1) | ((c & 1) << 1);
            k[(lr, lc)]
        });
        let want = full.matmul(&x).matmul(&full.dagger());
        assert!(got.max_abs_diff(&want) < 1e-12);
    }

    #[test]
    fn pauli_conjugation_matches_dense_product() {
        let x = random_op(2, 3);
        let y = Matrix::from_row_slice(2, 2, &[ZERO, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO]);
        let via_dense = x.conjugate(&[1], &y).unwrap();
        assert!(x.conjugate_pauli(0b10, 0b10).max_abs_diff(&via_dense) < 1e-12);
    }

    #[test]
    fn partial_trace_of_product_recovers_factor() {
        let a = Operator::projector(&[C64::new(0.6, 0.0), C64::new(0.0, 0.8)]).unwrap();
        let b = Operator::identity(1).scaled(C64::new(0.5, 0.0));
        let ab = a.kron(&b);
        assert!(ab.partial_trace(&[0]).unwrap().max_abs_diff(&a) < 1e-12);
        assert!(ab.partial_trace(&[1]).unwrap().max_abs_diff(&b) < 1e-12);
        assert_eq!(ab.partial_trace(&[]), Err(Error::EmptyKeepSet));
    }

    #[test]
    fn out_of_range_and_duplicate_targets_rejected() {
        let x = Operator::identity(2);
        let h = Matrix::identity(4, 4);
        assert!(matches!(x.conjugate(&[0, 2], &h), Err(Error::QubitOutOfRange { .. })));
        assert!(matches!(x.conjugate(&[1, 1], &h), Err(Error::DuplicateQubits(_))));
    }
}
