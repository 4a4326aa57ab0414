//! Error type shared across the crate, with the process exit codes the CLI
//! maps each class to.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    Dimension { op: &'static str, detail: String },

    #[error("matrix is singular to tolerance (pivot magnitude {pivot:.3e})")]
    Singular { pivot: f64 },

    #[error("rank deficient to tolerance in {op} (column pivot {pivot:.3e})")]
    RankDeficient { op: &'static str, pivot: f64 },

    #[error("{what} did not converge within the iteration cap")]
    NonConvergence { what: &'static str },

    #[error("non-finite entry encountered in {0}")]
    NonFinite(&'static str),

    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),

    #[error("spectrum collision: {0}")]
    SpectrumCollision(String),

    #[error("structure violation: {0}")]
    Structure(String),

    #[error("non-generic perturbation: coupling matrix k={k} has condition estimate {cond:.3e}")]
    NonGeneric { k: usize, cond: f64 },

    #[error("selected cluster is not spectrally isolated (root gap {gap:.3e})")]
    ClusterNotIsolated { gap: f64 },

    #[error("cluster cardinality mismatch: expected {expected} eigenvalues, found {found}")]
    ClusterMismatch { expected: usize, found: usize },

    #[error("selected root is not simple: gap to nearest other root {gap:.3e}")]
    NonSimpleRoot { gap: f64 },

    #[error("case mismatch: operation requires {expected}, problem is {found}")]
    CaseMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("nonpositive data passed to {0}")]
    NonPositiveData(&'static str),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable exit code used by the `eigperturb` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_) | Error::SpectrumCollision(_) | Error::Config(_) => 2,
            Error::Structure(_) | Error::CaseMismatch { .. } => 3,
            Error::NonGeneric { .. } => 4,
            Error::ClusterMismatch { .. } => 5,
            _ => 1,
        }
    }
}
