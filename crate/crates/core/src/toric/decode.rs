//! Matching decoder and single logical-error trials.

use rand::Rng;

use crate::error::{Error, Result};

use super::history::{simulate_history, PauliFrame, RoundTables, SyndromeHistory};
use super::lattice::{CheckKind, ToricLattice};
use super::matching::MatchingGraph;

/// Space-time distance between defects `(check, round)`.
pub fn defect_distance(lattice: &ToricLattice, a: (usize, usize), b: (usize, usize)) -> u32 {
    (lattice.distance(a.0, b.0) + a.1.abs_diff(b.1)) as u32
}

/// Matched defect pairs of one check kind.
pub fn match_defects(history: &SyndromeHistory, kind: CheckKind) -> Result<(Vec<(usize, usize)>, Vec<(usize, usize)>)> {
    let lattice = *history.lattice();
    let defects = history.defects(kind);
    let l = lattice.size() as i32;
    let coords: Vec<[i32; 3]> = defects
        .iter()
        .map(|&(s, k)| {
            let (r, c) = lattice.check_coords(s);
            [r as i32, c as i32, k as i32]
        })
        .collect();
    let ring = |d: i32| {
        let d = d.abs();
        d.min(l - d)
    };
    let weight = |i: usize, j: usize| {
        let (a, b) = (coords[i], coords[j]);
        (ring(a[0] - b[0]) + ring(a[1] - b[1]) + (a[2] - b[2]).abs()) as u32
    };
    let bound = 2 * (lattice.size() / 2) + history.rounds();
    let graph = MatchingGraph::new(defects.len(), weight).with_bound(bound as u32);
    let pairs = graph.min_weight_perfect_matching()?;
    Ok((defects, pairs))
}

/// Correction from minimum-weight matchings of the vertex and plaquette
/// defects, decoded independently.
pub fn decode(history: &SyndromeHistory) -> Result<PauliFrame> {
    let lattice = *history.lattice();
    let mut correction = PauliFrame::identity(lattice.num_qubits());
    for kind in [CheckKind::Vertex, CheckKind::Plaquette] {
        let (defects, pairs) = match_defects(history, kind)?;
        let target = match kind {
            CheckKind::Vertex => &mut correction.x,
            CheckKind::Plaquette => &mut correction.z,
        };
        for (i, j) in pairs {
            for e in lattice.path(kind, defects[i].0, defects[j].0) {
                target[e] ^= true;
            }
        }
    }
    Ok(correction)
}

/// Which logical operators `residual` (errors times correction) flips: the
/// two X-type loops, then the two Z-type loops. Fails if the residual still
/// has a syndrome.
pub fn logical_flips(lattice: &ToricLattice, residual: &PauliFrame) -> Result<[bool; 4]> {
    let mut flips = [false; 4];
    for (i, kind) in [CheckKind::Vertex, CheckKind::Plaquette].into_iter().enumerate() {
        let errs = residual.seen_by(kind);
        if lattice.syndrome(kind, errs).iter().any(|&b| b) {
            return Err(Error::Numerical("correction leaves a nontrivial syndrome".into()));
        }
        for (j, cut) in lattice.logical_cuts(kind).iter().enumerate() {
            flips[2 * i + j] = cut.iter().fold(false, |p, &e| p ^ errs[e]);
        }
    }
    Ok(flips)
}

/// Whether any logical operator is flipped.
pub fn is_logical_failure(lattice: &ToricLattice, residual: &PauliFrame) -> Result<bool> {
    Ok(logical_flips(lattice, residual)?.contains(&true))
}

/// Simulates and decodes one history, returning the flipped logicals.
pub fn logical_trial_flips<R: Rng + ?Sized>(lattice: &ToricLattice, tables: &RoundTables, t: usize, rng: &mut R) -> Result<[bool; 4]> {
    let (history, mut frame) = simulate_history(lattice, tables, t, rng)?;
    frame.compose(&decode(&history)?);
    logical_flips(lattice, &frame)
}

/// One memory experiment: simulate, decode, check the logical operators.
pub fn logical_error_trial<R: Rng + ?Sized>(lattice: &ToricLattice, tables: &RoundTables, t: usize, rng: &mut R) -> Result<bool> {
    Ok(logical_trial_flips(lattice, tables, t, rng)?.contains(&true))
}
