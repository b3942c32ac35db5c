use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and domain errors for every operation in the crate.
///
/// Matrix-shaped variants report which invariant failed and by how much, so
/// callers can tell a rounding artifact from a genuinely bad state.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported matrix dimension {dim}: only 2 and 4 are handled")]
    UnsupportedDimension { dim: usize },

    #[error("expected {expected} matrix entries, got {actual}")]
    EntryCountMismatch { expected: usize, actual: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian: max |M - M^H| = {max_deviation:.3e}")]
    NotHermitian { max_deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    NonUnitTrace { trace: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:.3e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("matrix is not unitary: max |U^H U - I| = {max_deviation:.3e}")]
    NotUnitary { max_deviation: f64 },

    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("source probabilities must sum to 1, got {sum}")]
    UnnormalizedDistribution { sum: f64 },

    #[error("pure-state amplitudes must have unit norm, got |a0|^2 + |a1|^2 = {norm_sq}")]
    UnnormalizedAmplitudes { norm_sq: f64 },

    #[error("level splitting delta = {delta} is negative: the thermal error rate equals the \
             upper-level population only on the b <= 1/2 branch, which requires delta >= 0")]
    NegativeLevelSplitting { delta: f64 },

    #[error("error rate b = {b} has no thermal level splitting: {reason}")]
    NoThermalInverse { b: f64, reason: &'static str },

    #[error("error rate b = 1/2 carries zero transinformation: redundancy per useful bit diverges")]
    InfiniteRedundancy,

    #[error("{name} = {value} must be {requirement}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("sweep grid needs at least 2 steps, got {steps}")]
    InsufficientSteps { steps: usize },

    #[error("Monte Carlo run needs at least 1 trial")]
    NoTrials,
}
