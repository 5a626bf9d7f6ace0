//! Exact and numerical machinery for the Euclidean acceleration
//! oscillator: a pseudo-Hermitian two-frequency model whose eigenstates
//! are polynomials times a fixed Gaussian.
//!
//! The crate is organized around routes that must agree:
//!
//! * [`spectrum`] builds biorthogonal eigenstate towers exactly;
//! * [`propagator`] evaluates <x(tau) x(0)> by closed form, spectral sum
//!   and certified momentum integral;
//! * [`jordan`] handles the defective equal-frequency sector, where the
//!   Hamiltonian picks up Jordan blocks;
//! * [`lattice`] cross-checks the continuum answers with a periodic
//!   lattice sum and a Monte Carlo sampler;
//! * [`verify`] bundles all of the above into machine-checkable suites.
//!
//! Heavy loops use data parallelism when the default `parallel` feature is
//! on; results are bit-identical with the feature off.

pub mod error;
pub mod jordan;
pub mod lattice;
pub mod model;
mod par;
pub mod propagator;
pub mod spectrum;
pub mod verify;
pub mod wavefunc;

pub use error::{Error, Result};
