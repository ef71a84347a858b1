//! Numerical thresholds shared by every module.

/// Tolerances used when validating inputs and classifying degeneracies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Slack on `0 <= p_j <= 1` and `Σ p_j = 1`.
    pub probability: f64,
    /// Relative gap below which two eigenvalues (or energies) count as equal.
    pub degeneracy: f64,
    /// Maximum `|H - H†|` entry accepted as Hermitian.
    pub hermitian: f64,
    /// Characteristic-polynomial coefficients above `-positivity` count as non-negative.
    pub positivity: f64,
    /// Distance in `g₊` from a separatrix treated as lying on it.
    pub separatrix: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        probability: 1e-12,
        degeneracy: 1e-9,
        hermitian: 1e-10,
        positivity: 1e-10,
        separatrix: 1e-9,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
