use crate::model::LevelIndex;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Model parameters failed validation (non-positive or non-finite).
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    /// The similarity transform does not exist at exactly equal frequencies;
    /// that sector is handled by the Jordan-block machinery instead.
    #[error("similarity transform is singular at equal frequencies")]
    DegenerateTransform,

    /// A level or count argument was outside its documented range.
    #[error("invalid input: {0}")]
    InvalidInput(&'static str),

    /// The combined Gaussian weight of a pair integral is not positive
    /// definite, so the integral diverges.
    #[error("pair integral diverges: combined Gaussian form is not positive definite")]
    DivergentIntegral,

    /// A derivative order above the supported cap was requested.
    #[error("derivative order {0} exceeds the supported maximum of 2")]
    UnsupportedDerivativeOrder(u32),

    /// No closed-form expression is tabulated for this level.
    #[error("no tabulated closed form for level {0}")]
    NotTabulated(LevelIndex),

    /// The requested tolerance cannot be certified by the tail bound at any
    /// affordable momentum cutoff.
    #[error("cannot certify relative tolerance {requested:e}; would need cutoff beyond {cutoff:.3e}")]
    PrecisionUnreachable { requested: f64, cutoff: f64 },

    /// Frequency-splitting parameter outside (0, omega).
    #[error("perturbation epsilon={epsilon} must lie strictly between 0 and omega={omega}")]
    InvalidPerturbation { epsilon: f64, omega: f64 },

    /// A requested Euclidean time does not sit on a lattice site.
    #[error("tau={tau} is not a multiple of the lattice spacing {spacing}")]
    MisalignedTau { tau: f64, spacing: f64 },

    /// The lattice spacing is too coarse to resolve the fastest frequency.
    #[error("lattice spacing {spacing} too coarse for frequency {omega_max} (need spacing*omega < 0.5)")]
    UnderResolved { spacing: f64, omega_max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
