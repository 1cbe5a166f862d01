//! Space-time syndrome histories driven by parity error tables.

use rand::Rng;

use crate::error::{Error, Result};
use crate::stabtool::{ErrorEvent, ParityBasis, ParityErrorTable, TableSampler};

use super::lattice::{CheckKind, ToricLattice};

/// Tracked Pauli errors on the data qubits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliFrame {
    pub x: Vec<bool>,
    pub z: Vec<bool>,
}

impl PauliFrame {
    pub fn identity(num_qubits: usize) -> Self {
        PauliFrame { x: vec![false; num_qubits], z: vec![false; num_qubits] }
    }

    pub fn is_identity(&self) -> bool {
        !self.x.iter().chain(&self.z).any(|&b| b)
    }

    pub fn weight(&self) -> usize {
        self.x.iter().zip(&self.z).filter(|(x, z)| **x || **z).count()
    }

    /// Product with `other`, ignoring phase.
    pub fn compose(&mut self, other: &PauliFrame) {
        for (a, b) in self.x.iter_mut().zip(&other.x) {
            *a ^= b;
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            *a ^= b;
        }
    }

    /// The error component seen by checks of `kind`.
    pub fn seen_by(&self, kind: CheckKind) -> &[bool] {
        match kind {
            CheckKind::Vertex => &self.x,
            CheckKind::Plaquette => &self.z,
        }
    }

    fn apply_event(&mut self, support: &[usize; 4], e: ErrorEvent) {
        for (k, &q) in support.iter().enumerate() {
            self.x[q] ^= (e.x_mask >> k) & 1 == 1;
            self.z[q] ^= (e.z_mask >> k) & 1 == 1;
        }
    }
}

/// The two tables of a noisy round with their samplers. Vertex checks use
/// the Z-basis table and plaquette checks the X-basis one.
#[derive(Clone, Debug)]
pub struct RoundTables {
    table_z: ParityErrorTable,
    table_x: ParityErrorTable,
    sampler_z: TableSampler,
    sampler_x: TableSampler,
}

impl RoundTables {
    pub fn new(table_z: ParityErrorTable, table_x: ParityErrorTable) -> Result<Self> {
        if table_z.basis() != ParityBasis::Z || table_x.basis() != ParityBasis::X {
            return Err(Error::InvalidConfig("expected a Z-basis table and an X-basis table".into()));
        }
        Ok(RoundTables { sampler_z: table_z.sampler()?, sampler_x: table_x.sampler()?, table_z, table_x })
    }

    pub fn ideal() -> Self {
        RoundTables::new(ParityErrorTable::ideal(ParityBasis::Z), ParityErrorTable::ideal(ParityBasis::X)).expect("ideal tables")
    }

    pub fn table(&self, kind: CheckKind) -> &ParityErrorTable {
        match kind {
            CheckKind::Vertex => &self.table_z,
            CheckKind::Plaquette => &self.table_x,
        }
    }

    fn sampler(&self, kind: CheckKind) -> &TableSampler {
        match kind {
            CheckKind::Vertex => &self.sampler_z,
            CheckKind::Plaquette => &self.sampler_x,
        }
    }
}

/// Reported outcomes of `t` noisy rounds followed by one perfect readout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyndromeHistory {
    lattice: ToricLattice,
    rounds: usize,
    vertex: Vec<bool>,
    plaquette: Vec<bool>,
    final_vertex: Vec<bool>,
    final_plaquette: Vec<bool>,
}

impl SyndromeHistory {
    /// History from raw bits: `t * L^2` outcomes per kind, round-major, and
    /// the perfect final readouts.
    pub fn from_bits(
        lattice: ToricLattice,
        rounds: usize,
        vertex: Vec<bool>,
        plaquette: Vec<bool>,
        final_vertex: Vec<bool>,
        final_plaquette: Vec<bool>,
    ) -> Result<Self> {
        let n = lattice.num_checks();
        if vertex.len() != rounds * n || plaquette.len() != rounds * n || final_vertex.len() != n || final_plaquette.len() != n {
            return Err(Error::DimensionMismatch("syndrome history does not match the lattice".into()));
        }
        Ok(SyndromeHistory { lattice, rounds, vertex, plaquette, final_vertex, final_plaquette })
    }

    pub fn lattice(&self) -> &ToricLattice {
        &self.lattice
    }

    /// Number of noisy rounds.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    /// Outcome of check `s` in round `k`; round `t` is the perfect readout.
    pub fn outcome(&self, kind: CheckKind, k: usize, s: usize) -> bool {
        let n = self.lattice.num_checks();
        let (noisy, last) = match kind {
            CheckKind::Vertex => (&self.vertex, &self.final_vertex),
            CheckKind::Plaquette => (&self.plaquette, &self.final_plaquette),
        };
        if k == self.rounds {
            last[s]
        } else {
            noisy[k * n + s]
        }
    }

    /// Space-time points `(check, round)` where an outcome differs from the
    /// previous round. Round `-1` reads all zeros.
    pub fn defects(&self, kind: CheckKind) -> Vec<(usize, usize)> {
        let n = self.lattice.num_checks();
        let mut out = Vec::new();
        for k in 0..=self.rounds {
            for s in 0..n {
                let prev = k > 0 && self.outcome(kind, k - 1, s);
                if self.outcome(kind, k, s) != prev {
                    out.push((s, k));
                }
            }
        }
        out
    }
}

/// Events sampled during a simulation, indexed `[2 * round + kind][check]`
/// with vertex checks first.
#[derive(Clone, Debug, Default)]
pub struct HistoryTrace {
    pub events: Vec<Vec<ErrorEvent>>,
}

/// Default number of noisy rounds, `4 L`.
pub fn default_rounds(lattice: &ToricLattice) -> usize {
    4 * lattice.size()
}

fn run<R: Rng + ?Sized>(
    lattice: &ToricLattice,
    tables: &RoundTables,
    t: usize,
    rng: &mut R,
    mut trace: Option<&mut HistoryTrace>,
) -> Result<(SyndromeHistory, PauliFrame)> {
    if t == 0 {
        return Err(Error::InvalidConfig("at least one round is required".into()));
    }
    let n = lattice.num_checks();
    let mut frame = PauliFrame::identity(lattice.num_qubits());
    let mut bits = [Vec::with_capacity(t * n), Vec::with_capacity(t * n)];
    let supports: Vec<Vec<[usize; 4]>> = [CheckKind::Vertex, CheckKind::Plaquette]
        .iter()
        .map(|&kind| (0..n).map(|s| lattice.support(kind, s)).collect())
        .collect();
    let mut events = Vec::with_capacity(n);
    for _ in 0..t {
        for (i, kind) in [CheckKind::Vertex, CheckKind::Plaquette].into_iter().enumerate() {
            // all checks of a kind read the frame as it was before any of them
            let sampler = tables.sampler(kind);
            events.clear();
            for sup in &supports[i] {
                let e = sampler.sample(rng);
                let seen = frame.seen_by(kind);
                let parity = sup.iter().fold(false, |p, &q| p ^ seen[q]);
                bits[i].push(parity ^ e.lie);
                events.push(e);
            }
            for (sup, &e) in supports[i].iter().zip(&events) {
                frame.apply_event(sup, e);
            }
            if let Some(tr) = trace.as_deref_mut() {
                tr.events.push(events.clone());
            }
        }
    }
    let [vertex, plaquette] = bits;
    let history = SyndromeHistory {
        lattice: *lattice,
        rounds: t,
        vertex,
        plaquette,
        final_vertex: lattice.syndrome(CheckKind::Vertex, &frame.x),
        final_plaquette: lattice.syndrome(CheckKind::Plaquette, &frame.z),
    };
    Ok((history, frame))
}

/// Runs `t` noisy rounds and a perfect readout; returns the history and the
/// accumulated errors.
pub fn simulate_history<R: Rng + ?Sized>(
    lattice: &ToricLattice,
    tables: &RoundTables,
    t: usize,
    rng: &mut R,
) -> Result<(SyndromeHistory, PauliFrame)> {
    run(lattice, tables, t, rng, None)
}

/// [`simulate_history`] that also records every sampled event.
pub fn simulate_history_traced<R: Rng + ?Sized>(
    lattice: &ToricLattice,
    tables: &RoundTables,
    t: usize,
    rng: &mut R,
) -> Result<(SyndromeHistory, PauliFrame, HistoryTrace)> {
    let mut trace = HistoryTrace::default();
    let (h, f) = run(lattice, tables, t, rng, Some(&mut trace))?;
    Ok((h, f, trace))
}
