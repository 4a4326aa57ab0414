//! Perturbation analysis of defective eigenvalues of indefinite-Hermitian
//! (Δ-Hermitian) and Hamiltonian matrices.
//!
//! The crate builds structured canonical-form test problems with a known
//! Jordan structure at one target eigenvalue, computes the leading-order
//! fractional-power predictions for the perturbed eigenvalues and invariant
//! subspaces of `A + t·E`, and verifies the predicted orders, subspace
//! angles, and indefinite Gram identities against a dense eigensolver over
//! a geometric grid of perturbation sizes.
//!
//! Start from [`canonical::generate_problem`] to build a problem,
//! [`analysis::analyze_case`] for predictions, and [`verify::run_sweep`]
//! for the numerical comparison. The `examples/` directory exercises every
//! major capability; the thin `eigperturb` binary drives the same code from
//! JSON configs.

pub mod analysis;
pub mod assign;
pub mod canonical;
pub mod config;
pub mod delta;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod matrix;
pub mod perturb;
pub mod report;
pub mod run;
pub mod tol;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use tol::Tolerances;
