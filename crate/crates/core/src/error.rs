use thiserror::Error;

/// Errors surfaced by the simulation kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input outside the supported domain of a numerical kernel.
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix dimensions do not match what the operation requires.
    #[error("shape error: {0}")]
    Shape(String),

    /// 1-based element or antenna index outside its valid range.
    #[error("index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },

    /// A matrix expected to be positive semidefinite has an eigenvalue
    /// more negative than the clamp tolerance allows.
    #[error(
        "matrix is not positive semidefinite: eigenvalue {min_eigenvalue:e} \
         below -1e-6 * {max_eigenvalue:e}"
    )]
    NotPsd {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
    },

    /// An OAM mode index that lies outside the canonical range for the
    /// given element count; the caller must fold it first.
    #[error("OAM mode {mode} is outside the canonical range for {count} elements")]
    ModeAliases { mode: i64, count: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
