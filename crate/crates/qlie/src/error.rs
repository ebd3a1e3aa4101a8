//! Error taxonomy shared by the kernel.
//!
//! Structural errors (shape mismatches, bad indices) are kept distinct from
//! axiom failures, which travel inside [`crate::bialg::ValidationReport`]s,
//! and from internal faults, which indicate a broken invariant of the
//! implementation itself rather than bad user data.

use thiserror::Error;

use crate::bialg::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("variable index {index} out of range (count {count})")]
    VarIndex { index: usize, count: usize },

    #[error("series has zero constant term, no reciprocal")]
    SingularSeries,

    #[error("matrix argument must be square")]
    NonSquareMatrix,

    #[error("matrix entry ({row},{col}) has a constant term; series would not terminate")]
    ConstantTermInMatrix { row: usize, col: usize },

    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("elements belong to different algebras")]
    AlgebraMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("spec fails validation ({} violation(s))", report.violations.len())]
    InvalidSpec { report: ValidationReport },

    #[error("classical r-matrix violates the classical Yang-Baxter equation ({} residual component(s))", report.violations.len())]
    CybeViolation { report: ValidationReport },

    #[error("pairing Gram matrix is singular at degree cap {cap}")]
    SingularGram { cap: usize },

    #[error("internal fault: {0}")]
    Internal(String),
}

impl Error {
    /// Internal faults signal implementation bugs or broken committed
    /// conventions, never bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::SingularGram { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
