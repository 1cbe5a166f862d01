use crate::error::{check_probability, Result};

/// Error rates of the raw link and of local operations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NoiseModel {
    /// Infidelity of a raw (Werner) pair.
    pub epsilon: f64,
    pub p1: f64,
    pub p2: f64,
    pub pm: f64,
    /// Each raw half is swapped from the photonic ion into a memory ion
    /// (three CNOTs with two-qubit noise) before it is used.
    pub memory_swap: bool,
}

impl NoiseModel {
    pub const REFERENCE_P1: f64 = 1e-6;
    pub const REFERENCE_P2: f64 = 1e-3;
    pub const REFERENCE_PM: f64 = 5e-4;

    pub fn new(epsilon: f64, p1: f64, p2: f64, pm: f64) -> Result<Self> {
        let n = NoiseModel { epsilon, p1, p2, pm, memory_swap: false };
        n.validate()?;
        Ok(n)
    }

    /// Local error rates of the reference ion-trap device, including the
    /// swap of each raw half into memory.
    pub fn reference(epsilon: f64) -> Result<Self> {
        Ok(Self::new(epsilon, Self::REFERENCE_P1, Self::REFERENCE_P2, Self::REFERENCE_PM)?.with_memory_swap(true))
    }

    pub fn with_memory_swap(mut self, on: bool) -> Self {
        self.memory_swap = on;
        self
    }

    /// Same model with perfect measurements.
    pub fn without_lies(mut self) -> Self {
        self.pm = 0.0;
        self
    }

    /// Noisy links, perfect local operations.
    pub fn link_only(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, 0.0, 0.0, 0.0)
    }

    pub fn noiseless() -> Self {
        NoiseModel { epsilon: 0.0, p1: 0.0, p2: 0.0, pm: 0.0, memory_swap: false }
    }

    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Ok(Self::new(epsilon, self.p1, self.p2, self.pm)?.with_memory_swap(self.memory_swap))
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("epsilon", self.epsilon, 0.0, 0.5)?;
        if self.epsilon >= 0.5 {
            return Err(crate::Error::ParameterOutOfRange { name: "epsilon", value: self.epsilon, lo: 0.0, hi: 0.5 });
        }
        check_probability("p1", self.p1, 0.0, 1.0)?;
        check_probability("p2", self.p2, 0.0, 1.0)?;
        check_probability("pm", self.pm, 0.0, 0.5)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert!(NoiseModel::reference(0.1).is_ok());
        assert!(NoiseModel::reference(0.5).is_err());
        assert!(NoiseModel::new(0.1, 0.0, 1.2, 0.0).is_err());
        assert!(NoiseModel::new(-0.1, 0.0, 0.0, 0.0).is_err());
    }
}
