use std::fmt;

use crate::error::{Error, Result};
use crate::qcore::{bell_decomposition, bell_mixture, DensityMatrix};

/// Off-diagonal weight tolerated when reading a state as a tuple.
pub const BELL_DIAGONAL_TOL: f64 = 1e-10;

/// Weights of the three error Bell states `(Phi-, Psi+, Psi-)`; the
/// remainder sits on `Phi+`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct BellDiagonalTuple {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

/// Local rotation applied to both halves of a pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rotation {
    /// `H x H`, swaps `r1` and `r2`.
    G1,
    /// `S^dagger x S`, swaps `r2` and `r3`.
    G2,
}

impl Rotation {
    /// All six elements of the group, as words with the rightmost letter
    /// applied first.
    pub fn group_words() -> [&'static [Rotation]; 6] {
        use Rotation::*;
        [&[], &[G1], &[G2], &[G1, G2], &[G2, G1], &[G1, G2, G1]]
    }
}

impl BellDiagonalTuple {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        let t = BellDiagonalTuple { r1, r2, r3 };
        for (name, v) in [("r1", r1), ("r2", r2), ("r3", r3)] {
            if !(v >= 0.0 && v <= 1.0) {
                return Err(Error::ParameterOutOfRange { name, value: v, lo: 0.0, hi: 1.0 });
            }
        }
        if t.error_mass() > 1.0 + 1e-12 {
            return Err(Error::ParameterOutOfRange { name: "r1 + r2 + r3", value: t.error_mass(), lo: 0.0, hi: 1.0 });
        }
        Ok(t)
    }

    /// The Werner state `(eps/3, eps/3, eps/3)`.
    pub fn werner(epsilon: f64) -> Self {
        let e = epsilon / 3.0;
        BellDiagonalTuple { r1: e, r2: e, r3: e }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.r1, self.r2, self.r3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        BellDiagonalTuple { r1: a[0], r2: a[1], r3: a[2] }
    }

    pub fn error_mass(&self) -> f64 {
        self.r1 + self.r2 + self.r3
    }

    pub fn fidelity(&self) -> f64 {
        1.0 - self.error_mass()
    }

    /// Reads the Bell weights of a normalized pair, rejecting states with
    /// coherences between Bell states.
    pub fn from_state(state: &DensityMatrix) -> Result<Self> {
        let (w, dev) = bell_decomposition(state)?;
        if dev > BELL_DIAGONAL_TOL {
            return Err(Error::NotBellDiagonal(dev));
        }
        let t = state.norm();
        if (t - 1.0).abs() > 1e-9 {
            return Err(Error::Unnormalized(t));
        }
        Ok(BellDiagonalTuple { r1: w[1].max(0.0), r2: w[2].max(0.0), r3: w[3].max(0.0) })
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        bell_mixture([self.fidelity(), self.r1, self.r2, self.r3])
    }

    /// Permutes the weights as the rotation word does, rightmost letter first.
    pub fn rotate(&self, word: &[Rotation]) -> Self {
        let mut r = self.as_array();
        for g in word.iter().rev() {
            match g {
                Rotation::G1 => r.swap(0, 1),
                Rotation::G2 => r.swap(1, 2),
            }
        }
        Self::from_array(r)
    }
}

impl fmt::Display for BellDiagonalTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e}, {:e}, {:e})", self.r1, self.r2, self.r3)
    }
}

/// Leading-order action of one purification round on two tuples.
pub fn tuple_map_f(a: &BellDiagonalTuple, b: &BellDiagonalTuple) -> BellDiagonalTuple {
    BellDiagonalTuple {
        r1: a.r1 + b.r1,
        r2: a.r2 * b.r2 + a.r3 * b.r3,
        r3: a.r2 * b.r3 + a.r3 * b.r2,
    }
}

pub fn rotate_tuple(t: &BellDiagonalTuple, word: &[Rotation]) -> BellDiagonalTuple {
    t.rotate(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn werner_twice() {
        let e = 0.1;
        let w = BellDiagonalTuple::werner(e);
        let l1 = tuple_map_f(&w, &w);
        assert_relative_eq!(l1.r1, 2.0 * e / 3.0, max_relative = 1e-12);
        assert_relative_eq!(l1.r2, 2.0 * e * e / 9.0, max_relative = 1e-12);
        assert_relative_eq!(l1.r3, 2.0 * e * e / 9.0, max_relative = 1e-12);
    }

    #[test]
    fn g1_then_g2_word() {
        let t = BellDiagonalTuple::from_array([1.0, 2.0, 3.0]);
        assert_eq!(t.rotate(&[Rotation::G1]).as_array(), [2.0, 1.0, 3.0]);
        assert_eq!(t.rotate(&[]).as_array(), [1.0, 2.0, 3.0]);
        // g2 first: (1,3,2), then g1: (3,1,2)
        assert_eq!(t.rotate(&[Rotation::G1, Rotation::G2]).as_array(), [3.0, 1.0, 2.0]);
    }

    #[test]
    fn group_words_give_all_permutations() {
        let t = BellDiagonalTuple::from_array([1.0, 2.0, 3.0]);
        let mut seen: Vec<[i64; 3]> = Rotation::group_words()
            .iter()
            .map(|w| t.rotate(w).as_array().map(|v| v as i64))
            .collect();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 6);
    }

    #[test]
    fn rejects_invalid() {
        assert!(BellDiagonalTuple::new(0.6, 0.6, 0.0).is_err());
        assert!(BellDiagonalTuple::new(-0.1, 0.0, 0.0).is_err());
    }
}
