//! Error tables of one noisy four-qubit parity measurement.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qcore::PauliString;

/// Tolerance on the total probability of a table.
pub const TABLE_SUM_TOL: f64 = 1e-9;

const HEADER: &str = "parity-error-table 1";

/// Which four-qubit operator is measured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParityBasis {
    X,
    Z,
}

impl ParityBasis {
    /// `XXXX` or `ZZZZ`.
    pub fn stabilizer(self) -> PauliString {
        match self {
            ParityBasis::X => PauliString::from_masks(4, 0b1111, 0),
            ParityBasis::Z => PauliString::from_masks(4, 0, 0b1111),
        }
    }

    /// Representative of `pauli` modulo the measured stabilizer: lowest
    /// weight, then first in string order.
    pub fn canonical(self, pauli: &PauliString) -> PauliString {
        let other = pauli.times(&self.stabilizer());
        if (other.weight(), &other) < (pauli.weight(), pauli) {
            other
        } else {
            pauli.clone()
        }
    }
}

impl fmt::Display for ParityBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ParityBasis::X => "X",
            ParityBasis::Z => "Z",
        })
    }
}

impl FromStr for ParityBasis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(ParityBasis::X),
            "Z" | "z" => Ok(ParityBasis::Z),
            other => Err(Error::Parse(format!("parity basis must be X or Z, got '{other}'"))),
        }
    }
}

/// One error class: the ideal projection, then `pauli` on the data qubits,
/// with the reported outcome flipped when `lie` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub pauli: PauliString,
    pub lie: bool,
    pub probability: f64,
}

/// Distribution over `(Pauli, lie)` classes of a parity measurement.
///
/// Paulis differing by the measured stabilizer act identically after the
/// projection and are stored once, under [`ParityBasis::canonical`].
/// Entries are sorted by Pauli string, then lie flag.
#[derive(Clone, Debug, PartialEq)]
pub struct ParityErrorTable {
    basis: ParityBasis,
    entries: Vec<TableEntry>,
}

impl ParityErrorTable {
    /// Validates, merges duplicate classes and sorts. Probabilities above
    /// `-1e-12` are clamped to zero; zero entries are dropped.
    pub fn new(basis: ParityBasis, entries: Vec<TableEntry>) -> Result<Self> {
        let mut merged: Vec<TableEntry> = Vec::with_capacity(entries.len());
        for mut e in entries {
            if e.pauli.num_qubits() != 4 {
                return Err(Error::DimensionMismatch(format!("table Pauli {} is not on four qubits", e.pauli)));
            }
            if !e.probability.is_finite() || e.probability < -1e-12 {
                return Err(Error::ParameterOutOfRange { name: "table probability", value: e.probability, lo: 0.0, hi: 1.0 });
            }
            e.probability = e.probability.max(0.0);
            e.pauli = basis.canonical(&e.pauli);
            merged.push(e);
        }
        merged.sort_by(|a, b| (&a.pauli, a.lie).cmp(&(&b.pauli, b.lie)));
        merged.dedup_by(|next, kept| {
            if next.pauli == kept.pauli && next.lie == kept.lie {
                kept.probability += next.probability;
                true
            } else {
                false
            }
        });
        merged.retain(|e| e.probability > 0.0);
        let total: f64 = merged.iter().map(|e| e.probability).sum();
        if (total - 1.0).abs() > TABLE_SUM_TOL {
            return Err(Error::Unnormalized(total));
        }
        Ok(ParityErrorTable { basis, entries: merged })
    }

    /// The noiseless measurement.
    pub fn ideal(basis: ParityBasis) -> Self {
        ParityErrorTable { basis, entries: vec![TableEntry { pauli: PauliString::identity(4), lie: false, probability: 1.0 }] }
    }

    pub fn basis(&self) -> ParityBasis {
        self.basis
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn probability(&self, pauli: &PauliString, lie: bool) -> f64 {
        let key = self.basis.canonical(pauli);
        self.entries.iter().find(|e| e.pauli == key && e.lie == lie).map_or(0.0, |e| e.probability)
    }

    /// Weight of the error-free class.
    pub fn success_probability(&self) -> f64 {
        self.probability(&PauliString::identity(4), false)
    }

    pub fn error_mass(&self) -> f64 {
        1.0 - self.success_probability()
    }

    /// Total weight of the classes with a wrong reported outcome.
    pub fn lie_probability(&self) -> f64 {
        self.entries.iter().filter(|e| e.lie).map(|e| e.probability).sum()
    }

    /// The most likely class other than the error-free one.
    pub fn dominant_error(&self) -> Option<&TableEntry> {
        self.entries
            .iter()
            .filter(|e| e.lie || !e.pauli.is_identity())
            .max_by(|a, b| a.probability.total_cmp(&b.probability))
    }

    pub fn is_identity_dominant(&self) -> bool {
        self.dominant_error().is_none_or(|e| e.probability <= self.success_probability())
    }

    /// Sampler over the entries for Monte Carlo use.
    pub fn sampler(&self) -> Result<TableSampler> {
        let weights: Vec<f64> = self.entries.iter().map(|e| e.probability).collect();
        let index = WeightedIndex::new(&weights).map_err(|e| Error::Numerical(e.to_string()))?;
        let events = self
            .entries
            .iter()
            .map(|e| ErrorEvent { x_mask: e.pauli.x_mask() as u8, z_mask: e.pauli.z_mask() as u8, lie: e.lie })
            .collect();
        Ok(TableSampler { index, events })
    }
}

/// Text form: a header line, the basis, the entry count, then one
/// `PAULI LIE PROBABILITY` line per entry with the probability to 12
/// significant digits.
impl fmt::Display for ParityErrorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER}")?;
        writeln!(f, "basis {}", self.basis)?;
        writeln!(f, "entries {}", self.entries.len())?;
        for e in &self.entries {
            writeln!(f, "{} {} {:.11e}", e.pauli, u8::from(e.lie), e.probability)?;
        }
        Ok(())
    }
}

impl FromStr for ParityErrorTable {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut next = |what: &str| lines.next().ok_or_else(|| Error::Parse(format!("missing {what}")));
        if next("header")? != HEADER {
            return Err(Error::Parse("not a parity error table".into()));
        }
        let basis = next("basis")?
            .strip_prefix("basis ")
            .ok_or_else(|| Error::Parse("expected 'basis X|Z'".into()))?
            .parse()?;
        let count: usize = next("entry count")?
            .strip_prefix("entries ")
            .and_then(|n| n.parse().ok())
            .ok_or_else(|| Error::Parse("expected 'entries N'".into()))?;
        let mut entries = Vec::with_capacity(count);
        for k in 0..count {
            let line = next("entry")?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [pauli, lie, p] = fields[..] else {
                return Err(Error::Parse(format!("entry {k}: expected three fields, got '{line}'")));
            };
            let lie = match lie {
                "0" => false,
                "1" => true,
                other => return Err(Error::Parse(format!("entry {k}: lie flag '{other}'"))),
            };
            let probability = p.parse().map_err(|_| Error::Parse(format!("entry {k}: probability '{p}'")))?;
            entries.push(TableEntry { pauli: pauli.parse()?, lie, probability });
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after the entries".into()));
        }
        ParityErrorTable::new(basis, entries)
    }
}

/// A sampled error class in mask form; bit `k` refers to data qubit `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ErrorEvent {
    pub x_mask: u8,
    pub z_mask: u8,
    pub lie: bool,
}

#[derive(Clone, Debug)]
pub struct TableSampler {
    index: WeightedIndex<f64>,
    events: Vec<ErrorEvent>,
}

impl TableSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ErrorEvent {
        self.events[self.index.sample(rng)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn entry(p: &str, lie: bool, probability: f64) -> TableEntry {
        TableEntry { pauli: p.parse().unwrap(), lie, probability }
    }

    #[test]
    fn text_round_trip() {
        let t = ParityErrorTable::new(
            ParityBasis::Z,
            vec![entry("IIII", false, 0.9), entry("IIII", true, 0.07), entry("XIII", false, 0.03)],
        )
        .unwrap();
        let text = t.to_string();
        assert!(text.contains("IIII 1 7.00000000000e-2"));
        let back: ParityErrorTable = text.parse().unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_string(), text);
    }

    #[test]
    fn stabilizer_multiples_merge() {
        let t = ParityErrorTable::new(ParityBasis::Z, vec![entry("IIII", false, 0.5), entry("ZZZZ", false, 0.2), entry("ZZZI", true, 0.3)])
            .unwrap();
        assert_eq!(t.entries().len(), 2);
        assert!((t.success_probability() - 0.7).abs() < 1e-15);
        assert_eq!(t.probability(&"IIIZ".parse().unwrap(), true), 0.3);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(ParityErrorTable::new(ParityBasis::X, vec![entry("IIII", false, 0.5)]).is_err());
        assert!(ParityErrorTable::new(ParityBasis::X, vec![entry("III", false, 1.0)]).is_err());
        assert!(ParityErrorTable::new(ParityBasis::X, vec![entry("IIII", false, 1.1), entry("XIII", false, -0.1)]).is_err());
        assert!("parity-error-table 1\nbasis Y\nentries 0\n".parse::<ParityErrorTable>().is_err());
        assert!("parity-error-table 1\nbasis Z\nentries 2\nIIII 0 1.0\n".parse::<ParityErrorTable>().is_err());
    }

    #[test]
    fn sampler_frequencies() {
        let t = ParityErrorTable::new(ParityBasis::Z, vec![entry("IIII", false, 0.75), entry("IXII", true, 0.25)]).unwrap();
        let s = t.sampler().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let n = 40_000;
        let hits = (0..n).filter(|_| s.sample(&mut rng).lie).count();
        let f = hits as f64 / n as f64;
        assert!((f - 0.25).abs() < 4.0 * (0.25f64 * 0.75 / n as f64).sqrt());
        assert_eq!(ErrorEvent { x_mask: 0b10, z_mask: 0, lie: true }, {
            let mut e;
            loop {
                e = s.sample(&mut rng);
                if e.lie {
                    break e;
                }
            }
        });
    }
}
