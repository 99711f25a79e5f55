//! A pseudo-differential calculus on the principal unit groups of Q_p.
//!
//! The configuration space is the compact group U_n = 1 + p^n Z_p, the phase
//! space is X_n = U_n x Gamma_n with Gamma_n = Q_p / p^{-n} Z_p, and the
//! covariance group is G_n = U_n x| Q_p.  Everything the crate computes --
//! Fourier transforms, the covariant quantization map, Wigner functions, the
//! star product, the J^s symbol calculus and the operator-norm certificates --
//! reduces to finite, mostly exact sums over coset grids at a chosen
//! resolution, so identities can be verified numerically at tight tolerances.

pub mod artifact;
pub mod calculus;
pub mod config;
pub mod error;
pub mod harmonic;
pub mod padic;
pub mod quantize;
pub mod repn;
pub mod report;
pub mod sample;
pub mod star;
pub mod suites;

pub use error::{Error, Result};
pub use padic::{FieldParams, PAdicScalar};
