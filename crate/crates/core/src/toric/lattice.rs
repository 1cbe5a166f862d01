//! The L x L toric lattice.
//!
//! Data qubits sit on edges. Horizontal edge `h(r, c) = r L + c` joins
//! vertices `(r, c)` and `(r, c + 1)`; vertical edge `v(r, c) = L^2 + r L + c`
//! joins `(r, c)` and `(r + 1, c)`, all indices mod L. Vertex checks are
//! `ZZZZ` and see X errors; plaquette checks are `XXXX` and see Z errors.
//! Plaquette `(r, c)` is the face with top-left corner at vertex `(r, c)`.

use crate::error::{Error, Result};

/// Kind of stabilizer check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CheckKind {
    /// `ZZZZ` around a vertex.
    Vertex,
    /// `XXXX` around a face.
    Plaquette,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ToricLattice {
    l: usize,
}

impl ToricLattice {
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidConfig(format!("lattice size must be at least 2, got {l}")));
        }
        Ok(ToricLattice { l })
    }

    pub fn size(&self) -> usize {
        self.l
    }

    pub fn num_qubits(&self) -> usize {
        2 * self.l * self.l
    }

    /// Checks of one kind.
    pub fn num_checks(&self) -> usize {
        self.l * self.l
    }

    fn wrap(&self, x: isize) -> usize {
        x.rem_euclid(self.l as isize) as usize
    }

    pub fn h(&self, r: isize, c: isize) -> usize {
        self.wrap(r) * self.l + self.wrap(c)
    }

    pub fn v(&self, r: isize, c: isize) -> usize {
        self.l * self.l + self.wrap(r) * self.l + self.wrap(c)
    }

    pub fn check_index(&self, r: usize, c: usize) -> usize {
        r * self.l + c
    }

    pub fn check_coords(&self, index: usize) -> (usize, usize) {
        (index / self.l, index % self.l)
    }

    /// Edges of a check in table-qubit order.
    pub fn support(&self, kind: CheckKind, index: usize) -> [usize; 4] {
        let (r, c) = self.check_coords(index);
        let (r, c) = (r as isize, c as isize);
        match kind {
            CheckKind::Vertex => [self.h(r, c), self.v(r, c), self.h(r, c - 1), self.v(r - 1, c)],
            CheckKind::Plaquette => [self.h(r, c), self.v(r, c + 1), self.h(r + 1, c), self.v(r, c)],
        }
    }

    /// Distance between two checks of the same kind on the periodic lattice.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        let (ra, ca) = self.check_coords(a);
        let (rb, cb) = self.check_coords(b);
        let d = |x: usize, y: usize| {
            let t = x.abs_diff(y);
            t.min(self.l - t)
        };
        d(ra, rb) + d(ca, cb)
    }

    /// Edges of a shortest path joining two checks of `kind`: columns first,
    /// then rows.
    pub fn path(&self, kind: CheckKind, a: usize, b: usize) -> Vec<usize> {
        let l = self.l as isize;
        let (ra, ca) = self.check_coords(a);
        let (rb, cb) = self.check_coords(b);
        let step = |from: usize, to: usize| {
            let fwd = (to as isize - from as isize).rem_euclid(l);
            if fwd <= l - fwd {
                (fwd, 1)
            } else {
                (l - fwd, -1)
            }
        };
        let mut edges = Vec::new();
        let (mut r, mut c) = (ra as isize, ca as isize);
        let (n, dir) = step(ca, cb);
        for _ in 0..n {
            edges.push(match (kind, dir) {
                (CheckKind::Vertex, 1) => self.h(r, c),
                (CheckKind::Vertex, _) => self.h(r, c - 1),
                (CheckKind::Plaquette, 1) => self.v(r, c + 1),
                (CheckKind::Plaquette, _) => self.v(r, c),
            });
            c += dir;
        }
        let (n, dir) = step(ra, rb);
        for _ in 0..n {
            edges.push(match (kind, dir) {
                (CheckKind::Vertex, 1) => self.v(r, c),
                (CheckKind::Vertex, _) => self.v(r - 1, c),
                (CheckKind::Plaquette, 1) => self.h(r + 1, c),
                (CheckKind::Plaquette, _) => self.h(r, c),
            });
            r += dir;
        }
        edges
    }

    /// Outcomes of every check of `kind` on an error pattern of the type it
    /// detects.
    pub fn syndrome(&self, kind: CheckKind, errors: &[bool]) -> Vec<bool> {
        (0..self.num_checks()).map(|s| self.support(kind, s).iter().fold(false, |p, &e| p ^ errors[e])).collect()
    }

    /// Cuts crossed once by each of the two independent non-contractible
    /// loops of errors seen by `kind`.
    pub fn logical_cuts(&self, kind: CheckKind) -> [Vec<usize>; 2] {
        let l = self.l as isize;
        match kind {
            // X chains run along edges of the lattice
            CheckKind::Vertex => [(0..l).map(|r| self.h(r, 0)).collect(), (0..l).map(|c| self.v(0, c)).collect()],
            // Z chains run along the dual lattice
            CheckKind::Plaquette => [(0..l).map(|r| self.v(r, 0)).collect(), (0..l).map(|c| self.h(0, c)).collect()],
        }
    }

    /// Whether an error pattern without syndrome wraps the torus.
    pub fn is_logical(&self, kind: CheckKind, errors: &[bool]) -> bool {
        self.logical_cuts(kind).iter().any(|cut| cut.iter().fold(false, |p, &e| p ^ errors[e]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_qubit_in_two_checks_of_each_kind() {
        let lat = ToricLattice::new(5).unwrap();
        for kind in [CheckKind::Vertex, CheckKind::Plaquette] {
            let mut count = vec![0; lat.num_qubits()];
            for s in 0..lat.num_checks() {
                let sup = lat.support(kind, s);
                let mut sorted = sup.to_vec();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), 4);
                for e in sup {
                    count[e] += 1;
                }
            }
            assert!(count.iter().all(|&n| n == 2));
        }
    }

    #[test]
    fn vertex_and_plaquette_checks_commute() {
        let lat = ToricLattice::new(4).unwrap();
        for a in 0..lat.num_checks() {
            for b in 0..lat.num_checks() {
                let va = lat.support(CheckKind::Vertex, a);
                let overlap = lat.support(CheckKind::Plaquette, b).iter().filter(|e| va.contains(e)).count();
                assert_eq!(overlap % 2, 0);
            }
        }
    }

    #[test]
    fn paths_join_their_ends() {
        let lat = ToricLattice::new(6).unwrap();
        for kind in [CheckKind::Vertex, CheckKind::Plaquette] {
            for a in 0..lat.num_checks() {
                for b in 0..lat.num_checks() {
                    let mut err = vec![false; lat.num_qubits()];
                    let p = lat.path(kind, a, b);
                    assert_eq!(p.len(), lat.distance(a, b));
                    for e in p {
                        err[e] ^= true;
                    }
                    let syn = lat.syndrome(kind, &err);
                    for (s, &bit) in syn.iter().enumerate() {
                        assert_eq!(bit, a != b && (s == a || s == b));
                    }
                }
            }
        }
    }

    #[test]
    fn loops_and_boundaries() {
        let lat = ToricLattice::new(4).unwrap();
        let l = 4;
        // a row of horizontal edges is a wrapping X chain
        let mut err = vec![false; lat.num_qubits()];
        for c in 0..l {
            err[lat.h(2, c)] = true;
        }
        assert!(lat.syndrome(CheckKind::Vertex, &err).iter().all(|&b| !b));
        assert!(lat.is_logical(CheckKind::Vertex, &err));
        // the boundary of a plaquette is trivial
        let mut err = vec![false; lat.num_qubits()];
        for e in lat.support(CheckKind::Plaquette, 5) {
            err[e] = true;
        }
        assert!(lat.syndrome(CheckKind::Vertex, &err).iter().all(|&b| !b));
        assert!(!lat.is_logical(CheckKind::Vertex, &err));
        // dual loop of vertical edges is a wrapping Z chain
        let mut err = vec![false; lat.num_qubits()];
        for c in 0..l {
            err[lat.v(1, c)] = true;
        }
        assert!(lat.syndrome(CheckKind::Plaquette, &err).iter().all(|&b| !b));
        assert!(lat.is_logical(CheckKind::Plaquette, &err));
        let mut err = vec![false; lat.num_qubits()];
        for e in lat.support(CheckKind::Vertex, 7) {
            err[e] = true;
        }
        assert!(!lat.is_logical(CheckKind::Plaquette, &err));
    }
}
