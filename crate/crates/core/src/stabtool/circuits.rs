//! Four-node parity measurements built from purified pairs.
//!
//! Method (a) uses a fifth node E as the ancilla. E starts in `|+>`, takes a
//! remote cPhase from each data node in turn and is read out in X. This is
//! the remote-CNOT circuit with the Hadamards on E merged.
//!
//! Method (b) first joins three pairs into a four-node GHZ state. The pairs
//! link A-B, B-C and C-D. B and C each hold two envoys and fuse them with a
//! local CNOT and a Z measurement, correcting the next node with X. Every
//! node then applies a local cPhase between its data qubit and its
//! remaining envoy, and reads the envoy out in X. The reported parity is the
//! XOR of the four outcomes.
//!
//! X-type checks run the same circuits between Hadamards on the data
//! qubits. Every Hadamard is followed by single-qubit noise.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::purify::{run_level, Level, NoiseModel};
use crate::qcore::channels;
use crate::qcore::{
    extract_superoperator, Basis, DensityMatrix, FnProcess, GateKind, GateOp, Operator, Superoperator, C64, DEFAULT_QUBIT_BUDGET,
};

use super::decompose::{decompose_with_residual, Decomposition, DECOMPOSITION_TOL};
use super::remote::{remote_cphase_superop, RemoteGateResource};
use super::table::{ParityBasis, ParityErrorTable};

/// Steering for method (a): the largest error goes to `Psi-`, which the
/// remote gate turns into a phase flip on E alone, i.e. a lie.
pub const ANCILLA_STEERING: [usize; 3] = [2, 1, 0];
/// Steering for method (b): the largest error goes to `Phi-`, a phase flip
/// of the GHZ state, which again is a lie.
pub const GHZ_STEERING: [usize; 3] = [0, 1, 2];

/// How the four-qubit parity is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StabilizerMethod {
    /// Ancilla node and four remote gates.
    Ancilla,
    /// Shared four-node GHZ state.
    Ghz,
}

impl StabilizerMethod {
    pub fn default_steering(self) -> [usize; 3] {
        match self {
            StabilizerMethod::Ancilla => ANCILLA_STEERING,
            StabilizerMethod::Ghz => GHZ_STEERING,
        }
    }
}

impl fmt::Display for StabilizerMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StabilizerMethod::Ancilla => "a",
            StabilizerMethod::Ghz => "b",
        })
    }
}

impl FromStr for StabilizerMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" | "ancilla" => Ok(StabilizerMethod::Ancilla),
            "b" | "ghz" => Ok(StabilizerMethod::Ghz),
            other => Err(Error::Parse(format!("method must be 'a' or 'b', got '{other}'"))),
        }
    }
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn local(op: &Operator, kind: GateKind, q: usize, p1: f64) -> Result<Operator> {
    channels::depolarize_1q(&channels::apply_gate(op, &GateOp::single(kind, q)?)?, q, p1)
}

fn hadamards(op: &Operator, p1: f64) -> Result<Operator> {
    (0..4).try_fold(op.clone(), |x, q| local(&x, GateKind::H, q, p1))
}

/// Extracts a Z-type parity circuit on four data qubits and decomposes it
/// for `basis`. X-type branches are the Z-type ones between two layers of
/// noisy Hadamards.
fn extract_parity<F>(circuit: F, num_ancillas: usize, basis: ParityBasis, p1: f64, budget: usize) -> Result<Decomposition>
where
    F: Fn(&Operator) -> Result<[Operator; 2]> + Sync,
{
    let process = FnProcess::new(4, num_ancillas, 2, |x: &Operator| Ok(circuit(x)?.to_vec()));
    let mut branches: Vec<Superoperator> = extract_superoperator(&process, budget)?;
    if basis == ParityBasis::X {
        let z = branches;
        let conjugated = FnProcess::new(4, 0, 2, |x: &Operator| {
            let h = hadamards(x, p1)?;
            z.iter().map(|s| hadamards(&s.apply(&h)?, p1)).collect()
        });
        branches = extract_superoperator(&conjugated, budget)?;
    }
    decompose_with_residual(&branches, basis)
}

/// Method (a) with every remote gate consuming a copy of `resource`.
pub fn ancilla_parity(resource: &RemoteGateResource, noise: &NoiseModel, basis: ParityBasis, budget: usize) -> Result<Decomposition> {
    let gate = remote_cphase_superop(resource, noise)?;
    let plus = Operator::from_fn(1, |_, _| C64::new(0.5, 0.0));
    let circuit = |x: &Operator| -> Result<[Operator; 2]> {
        let mut y = x.kron(&plus);
        for d in 0..4 {
            y = gate.apply_to(&y, &[d, 4])?;
        }
        Ok([
            channels::measure_branch(&y, 4, Basis::X, noise.pm, 0)?,
            channels::measure_branch(&y, 4, Basis::X, noise.pm, 1)?,
        ])
    };
    extract_parity(circuit, 1, basis, noise.p1, budget)
}

/// Four-node GHZ state on (A, B, C, D) from three copies of `resource`.
pub fn build_ghz(resource: &RemoteGateResource, noise: &NoiseModel) -> Result<DensityMatrix> {
    let pair = resource.consumed_state(noise.p1)?;
    // 0 = A, 1 = B1, 2 = B2, 3 = C1, 4 = C2, 5 = D
    let six = pair.tensor(&pair).tensor(&pair).into_operator();
    let fuse = |x: &Operator, keep: usize, gone: usize, fix: usize| -> Result<Operator> {
        let y = channels::apply_gate(x, &GateOp::cnot(keep, gone)?)?;
        let y = channels::depolarize_2q(&y, keep, gone, noise.p2)?;
        let mut out = channels::measure_branch(&y, gone, Basis::Z, noise.pm, 0)?;
        let flipped = channels::measure_branch(&y, gone, Basis::Z, noise.pm, 1)?;
        out.add_scaled(&local(&flipped, GateKind::X, fix, noise.p1)?, one());
        Ok(out)
    };
    // after removing B2 the register is A, B1, C1, C2, D
    let five = fuse(&six, 1, 2, 2)?;
    let four = fuse(&five, 2, 3, 3)?;
    DensityMatrix::from_operator(four)
}

/// Output of one node of method (b) for data `|i><j|` and envoy `|a><b|`
/// after the local cPhase and the envoy readout with outcome `s`, as a
/// row-major 2x2 block. Indexed by `s, a, b, i, j`.
fn node_instrument(noise: &NoiseModel) -> Result<Vec<[C64; 4]>> {
    let mut out = Vec::with_capacity(32);
    for s in 0..2u8 {
        for a in 0..2 {
            for b in 0..2 {
                for i in 0..2 {
                    for j in 0..2 {
                        let x = Operator::basis_element(2, i | (a << 1), j | (b << 1));
                        let y = channels::apply_gate(&x, &GateOp::cphase(0, 1)?)?;
                        let y = channels::depolarize_2q(&y, 0, 1, noise.p2)?;
                        let m = channels::measure_branch(&y, 1, Basis::X, noise.pm, s)?;
                        out.push([m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)]);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Method (b) with the GHZ state built from copies of `resource`.
///
/// The nodes act independently once the GHZ state is given, so each
/// branch is contracted node by node: summing the envoy outcomes with a
/// fixed parity `m` gives `(prod_k A_k + (-1)^m prod_k B_k) / 2` with
/// `A = T^0 + T^1` and `B = T^0 - T^1` per node.
pub fn ghz_parity(resource: &RemoteGateResource, noise: &NoiseModel, basis: ParityBasis, budget: usize) -> Result<Decomposition> {
    let ghz = build_ghz(resource, noise)?;
    let node = node_instrument(noise)?;
    let at = |s: usize, a: usize, b: usize, i: usize, j: usize| &node[(((s * 2 + a) * 2 + b) * 2 + i) * 2 + j];
    let circuit = |x: &Operator| -> Result<[Operator; 2]> {
        let mut out = [vec![C64::new(0.0, 0.0); 256], vec![C64::new(0.0, 0.0); 256]];
        for big_i in 0..16 {
            for big_j in 0..16 {
                let xij = x.get(big_i, big_j);
                if xij == C64::new(0.0, 0.0) {
                    continue;
                }
                for a in 0..16 {
                    for b in 0..16 {
                        let g = ghz.get(a, b) * xij;
                        if g.norm() < 1e-300 {
                            continue;
                        }
                        let mut sum = [[C64::new(0.0, 0.0); 4]; 4];
                        let mut diff = [[C64::new(0.0, 0.0); 4]; 4];
                        for k in 0..4 {
                            let bit = |v: usize| (v >> k) & 1;
                            let t0 = at(0, bit(a), bit(b), bit(big_i), bit(big_j));
                            let t1 = at(1, bit(a), bit(b), bit(big_i), bit(big_j));
                            for e in 0..4 {
                                sum[k][e] = t0[e] + t1[e];
                                diff[k][e] = t0[e] - t1[e];
                            }
                        }
                        for r in 0..16 {
                            for c in 0..16 {
                                let (mut ps, mut pd) = (g * 0.5, g * 0.5);
                                for k in 0..4 {
                                    let e = (((r >> k) & 1) << 1) | ((c >> k) & 1);
                                    ps *= sum[k][e];
                                    pd *= diff[k][e];
                                }
                                out[0][r * 16 + c] += ps + pd;
                                out[1][r * 16 + c] += ps - pd;
                            }
                        }
                    }
                }
            }
        }
        let [o0, o1] = out;
        Ok([Operator::from_entries(4, o0)?, Operator::from_entries(4, o1)?])
    };
    extract_parity(circuit, 4, basis, noise.p1, budget)
}

/// Table of `method` with pairs from purification level `level`, steered
/// with the method's default order.
pub fn build_parity_table(
    method: StabilizerMethod,
    level: Level,
    noise: &NoiseModel,
    basis: ParityBasis,
    budget: usize,
) -> Result<ParityErrorTable> {
    noise.validate()?;
    let pair = run_level(level, noise)?.state;
    let resource = RemoteGateResource::steered(pair, method.default_steering())?;
    let d = match method {
        StabilizerMethod::Ancilla => ancilla_parity(&resource, noise, basis, budget)?,
        StabilizerMethod::Ghz => ghz_parity(&resource, noise, basis, budget)?,
    };
    if d.residual > DECOMPOSITION_TOL {
        return Err(Error::NotPauliDecomposable(d.residual));
    }
    Ok(d.table)
}

pub fn build_parity_superop_ancilla(level: Level, noise: &NoiseModel, basis: ParityBasis) -> Result<ParityErrorTable> {
    build_parity_table(StabilizerMethod::Ancilla, level, noise, basis, DEFAULT_QUBIT_BUDGET)
}

pub fn build_parity_superop_ghz(level: Level, noise: &NoiseModel, basis: ParityBasis) -> Result<ParityErrorTable> {
    build_parity_table(StabilizerMethod::Ghz, level, noise, basis, DEFAULT_QUBIT_BUDGET)
}
