//! Moving error weight between the three error Bell states.

use crate::error::{Error, Result};
use crate::purify::{rotate_pair, BellDiagonalTuple, Rotation};
use crate::qcore::DensityMatrix;

/// Rotation word that sends the current weights into `target_order`.
///
/// `target_order[k]` is the error channel (0 = `Phi-`, 1 = `Psi+`,
/// 2 = `Psi-`) that should carry the `k`-th largest weight.
pub fn steering_word(tuple: &BellDiagonalTuple, target_order: [usize; 3]) -> Result<&'static [Rotation]> {
    let mut seen = [false; 3];
    for &c in &target_order {
        if c > 2 || seen[c] {
            return Err(Error::InvalidConfig(format!("{target_order:?} is not a permutation of the error channels")));
        }
        seen[c] = true;
    }
    let mut ranked = tuple.as_array();
    ranked.sort_by(|a, b| b.total_cmp(a));
    let mut want = [0.0; 3];
    for (k, &c) in target_order.iter().enumerate() {
        want[c] = ranked[k];
    }
    Rotation::group_words()
        .into_iter()
        .find(|w| tuple.rotate(w).as_array() == want)
        .ok_or_else(|| Error::Numerical("no group element realizes the requested order".into()))
}

/// Rotates a Bell-diagonal pair so its error weights follow `target_order`.
/// Single-qubit gates carry noise `p1`.
pub fn steer_errors(pair: &DensityMatrix, target_order: [usize; 3], p1: f64) -> Result<DensityMatrix> {
    let tuple = BellDiagonalTuple::from_state(pair)?;
    let word = steering_word(&tuple, target_order)?;
    rotate_pair(pair, word, p1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descending_order() {
        let t = BellDiagonalTuple::new(0.01, 0.02, 0.03).unwrap();
        let s = steer_errors(&t.to_state().unwrap(), [0, 1, 2], 0.0).unwrap();
        let got = BellDiagonalTuple::from_state(&s).unwrap().as_array();
        for (g, w) in got.iter().zip([0.03, 0.02, 0.01]) {
            assert!((g - w).abs() < 1e-12);
        }
    }

    #[test]
    fn ordered_input_unchanged() {
        let t = BellDiagonalTuple::new(0.03, 0.02, 0.01).unwrap();
        assert!(steering_word(&t, [0, 1, 2]).unwrap().is_empty());
        assert!(steering_word(&t, [0, 0, 2]).is_err());
    }

    #[test]
    fn rejects_coherent_input() {
        let plus = crate::qcore::DensityMatrix::zero(2);
        assert!(steer_errors(&plus, [0, 1, 2], 0.0).is_err());
    }
}
