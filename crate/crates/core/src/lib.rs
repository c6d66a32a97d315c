//! Factorization of `Y = H X` where `H = I - 2 u u^T` is a Householder reflection
//! and `X` is a binary matrix.
//!
//! * [`exact`] recovers `(u, X)` with zero error by enumerating binary column
//!   guesses (exponential in `n`).
//! * [`estimators`] recovers `theta`, `u` and `X` in `O(n p)` under an i.i.d.
//!   Bernoulli model on `X`.
//! * [`analysis`] evaluates the concentration bounds for those estimators and
//!   checks them by simulation.

pub mod analysis;
pub mod error;
pub mod estimators;
pub mod exact;
pub mod householder;
pub mod matrix;
pub mod sampling;

pub use error::{Error, Result};
pub use estimators::{recover_factors, RecoveryResult};
pub use householder::{linf_error_up_to_sign, Householder, UnitVector};
pub use matrix::{BinaryMatrix, DataMatrix};
pub use sampling::{BernoulliParams, Instance};
