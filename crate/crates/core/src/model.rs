//! Model parameters and exactly-solvable bookkeeping for the Euclidean
//! acceleration oscillator
//!
//!   H = -(1/(2 gamma)) d^2/dv^2 - v d/dx
//!       + (gamma/2)(omega1^2 + omega2^2) v^2
//!       + (gamma/2) omega1^2 omega2^2 x^2,
//!
//! a fourth-order (two-frequency) oscillator written on phase space (x, v).
//! H is not Hermitian, but it is mapped to its adjoint by the parity
//! v -> -v, and for omega1 != omega2 a similarity transform built from the
//! coefficients in [`SimilarityCoefficients`] relates it to a pair of
//! ordinary oscillators with frequencies omega1 and omega2.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative frequency split below which the similarity transform is
/// numerically ill-conditioned even though it formally exists.
pub const NEAR_DEGENERATE_REL_SPLIT: f64 = 1e-9;

/// Which spectral regime the parameters fall in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// omega1 > omega2: diagonalizable, two independent towers.
    UnequalFrequency,
    /// omega1 == omega2: the Hamiltonian is defective (Jordan blocks).
    EqualFrequency,
}

/// Validated model parameters. Frequencies are stored with
/// `omega1 >= omega2`; the constructor swaps them if given in the other
/// order, which is harmless because the model is symmetric under
/// omega1 <-> omega2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    gamma: f64,
    omega1: f64,
    omega2: f64,
}

impl ModelParams {
    pub fn new(gamma: f64, omega1: f64, omega2: f64) -> Result<Self> {
        for (name, value) in [("gamma", gamma), ("omega1", omega1), ("omega2", omega2)] {
            if !value.is_finite() || value <= 0.0 {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        let (omega1, omega2) = if omega1 >= omega2 {
            (omega1, omega2)
        } else {
            (omega2, omega1)
        };
        Ok(Self {
            gamma,
            omega1,
            omega2,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// The larger frequency.
    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    /// The smaller frequency.
    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn regime(&self) -> Regime {
        if self.omega1 == self.omega2 {
            Regime::EqualFrequency
        } else {
            Regime::UnequalFrequency
        }
    }

    /// True when the frequencies differ but by less than
    /// [`NEAR_DEGENERATE_REL_SPLIT`] relative to omega1. The transform
    /// coefficients then carry a large logarithm and results lose accuracy;
    /// callers should warn but may proceed.
    pub fn is_near_degenerate(&self) -> bool {
        let split = self.omega1 - self.omega2;
        split > 0.0 && split < NEAR_DEGENERATE_REL_SPLIT * self.omega1
    }

    /// omega1^2 - omega2^2, the denominator scale of the unequal-frequency
    /// constructions.
    pub fn freq_sq_split(&self) -> f64 {
        self.omega1 * self.omega1 - self.omega2 * self.omega2
    }
}

/// Coefficients of the similarity transform that maps H to a Hermitian
/// two-oscillator Hamiltonian, valid only for omega1 > omega2.
///
/// With L = ln((omega1 + omega2)/(omega1 - omega2)):
///
///   a = gamma omega1 omega2 L,   b = L / (gamma omega1 omega2),
///
/// so that sqrt(a b) = L and sinh(L) = 2 omega1 omega2 / (omega1^2 - omega2^2).
/// The transformed ladder structure is controlled by
///
///   A = omega1 / sqrt(omega1^2 - omega2^2),
///   B = omega2 / sqrt(omega1^2 - omega2^2),
///   C = gamma omega1 omega2,
///
/// with the hyperbolic identity A^2 - B^2 = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityCoefficients {
    pub a: f64,
    pub b: f64,
    pub big_a: f64,
    pub big_b: f64,
    pub big_c: f64,
    /// Set when the frequency split is below the near-degenerate threshold;
    /// the coefficients are still returned but carry amplified rounding.
    pub ill_conditioned: bool,
}

impl SimilarityCoefficients {
    pub fn new(params: &ModelParams) -> Result<Self> {
        if params.regime() == Regime::EqualFrequency {
            return Err(Error::DegenerateTransform);
        }
        let (w1, w2) = (params.omega1, params.omega2);
        let log_ratio = ((w1 + w2) / (w1 - w2)).ln();
        let ww = params.gamma * w1 * w2;
        let split = params.freq_sq_split().sqrt();
        Ok(Self {
            a: ww * log_ratio,
            b: log_ratio / ww,
            big_a: w1 / split,
            big_b: w2 / split,
            big_c: ww,
            ill_conditioned: params.is_near_degenerate(),
        })
    }
}

/// Occupation numbers (p, q) of the two towers: p quanta of omega1,
/// q quanta of omega2.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
pub struct LevelIndex {
    pub p: u32,
    pub q: u32,
}

impl LevelIndex {
    pub fn new(p: u32, q: u32) -> Self {
        Self { p, q }
    }

    /// Total occupation p + q.
    pub fn total(&self) -> u32 {
        self.p + self.q
    }
}

impl std::fmt::Display for LevelIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Eigenvalue of level (p, q):
/// E_pq = p omega1 + q omega2 + (omega1 + omega2)/2.
pub fn energy(level: LevelIndex, params: &ModelParams) -> f64 {
    f64::from(level.p) * params.omega1
        + f64::from(level.q) * params.omega2
        + 0.5 * (params.omega1 + params.omega2)
}

/// Number of states sharing the energy (n + 1) omega at equal frequencies,
/// where n = p + q: the level set {(p, q) : p + q = n} has n + 1 members.
pub fn degeneracy_at_equal_frequency(n: u32) -> u32 {
    n + 1
}

/// All levels with total occupation p + q <= cap, ordered by total and then
/// by p. This is the enumeration order used by the spectral tables.
pub fn levels_up_to(cap: u32) -> Vec<LevelIndex> {
    let mut out = Vec::new();
    for total in 0..=cap {
        for p in 0..=total {
            out.push(LevelIndex::new(p, total - p));
        }
    }
    out
}
