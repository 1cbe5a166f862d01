use std::fmt;
use std::str::FromStr;

use super::operator::{Matrix, C64};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// `(x, z)` symplectic bits.
    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn matrix(self) -> Matrix {
        let (o, l, i) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 1.0));
        match self {
            Pauli::I => Matrix::from_row_slice(2, 2, &[l, o, o, l]),
            Pauli::X => Matrix::from_row_slice(2, 2, &[o, l, l, o]),
            Pauli::Y => Matrix::from_row_slice(2, 2, &[o, -i, i, o]),
            Pauli::Z => Matrix::from_row_slice(2, 2, &[l, o, o, -l]),
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis; `letters[q]` acts on qubit `q`.
///
/// Displayed left to right in qubit order, so `"XIZ"` has X on qubit 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    letters: Vec<Pauli>,
}

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        PauliString { letters }
    }

    pub fn identity(num_qubits: usize) -> Self {
        PauliString { letters: vec![Pauli::I; num_qubits] }
    }

    pub fn from_masks(num_qubits: usize, x_mask: usize, z_mask: usize) -> Self {
        let letters = (0..num_qubits)
            .map(|q| Pauli::from_bits((x_mask >> q) & 1 == 1, (z_mask >> q) & 1 == 1))
            .collect();
        PauliString { letters }
    }

    pub fn num_qubits(&self) -> usize {
        self.letters.len()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.letters
    }

    pub fn get(&self, q: usize) -> Pauli {
        self.letters[q]
    }

    pub fn x_mask(&self) -> usize {
        self.mask(|p| p.bits().0)
    }

    pub fn z_mask(&self) -> usize {
        self.mask(|p| p.bits().1)
    }

    fn mask(&self, f: impl Fn(Pauli) -> bool) -> usize {
        self.letters
            .iter()
            .enumerate()
            .filter(|(_, &p)| f(p))
            .map(|(q, _)| 1usize << q)
            .sum()
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&p| p != Pauli::I).count()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Product up to phase.
    pub fn times(&self, other: &PauliString) -> PauliString {
        assert_eq!(self.num_qubits(), other.num_qubits());
        PauliString::from_masks(self.num_qubits(), self.x_mask() ^ other.x_mask(), self.z_mask() ^ other.z_mask())
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let a = (self.x_mask() & other.z_mask()).count_ones();
        let b = (self.z_mask() & other.x_mask()).count_ones();
        (a + b) % 2 == 0
    }

    /// Dense matrix in the little-endian basis.
    pub fn matrix(&self) -> Matrix {
        self.letters
            .iter()
            .rev()
            .fold(Matrix::from_element(1, 1, C64::new(1.0, 0.0)), |acc, p| acc.kronecker(&p.matrix()))
    }

    /// All `4^n` strings in lexicographic order (I < X < Y < Z, qubit 0 first).
    pub fn all(num_qubits: usize) -> Vec<PauliString> {
        let mut out = vec![PauliString::identity(0)];
        for _ in 0..num_qubits {
            out = out
                .into_iter()
                .flat_map(|s| {
                    Pauli::ALL.iter().map(move |&p| {
                        let mut l = s.letters.clone();
                        l.push(p);
                        PauliString { letters: l }
                    })
                })
                .collect();
        }
        out
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.letters {
            write!(f, "{}", p.letter())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("'{other}' is not a Pauli letter"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString::new)
    }
}
