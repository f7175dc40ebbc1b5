use thiserror::Error;

use crate::glued_scheme::Diagnostic;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("characteristic 2 unsupported")]
    Characteristic2,
    #[error("zero polynomial rejected")]
    ZeroPolynomial,
    #[error("zero function rejected")]
    ZeroFunction,
    #[error("discrete logarithm of zero")]
    ZeroLogarithm,
    #[error("divisor has degree {0}, expected 0")]
    NonzeroDegree(i64),
    #[error("degree {0} does not divide p-1 = {1}")]
    DegreeNotDividing(u64, u64),
    #[error("not component-wise trivial: class {0:?}")]
    NotComponentwiseTrivial(Vec<i64>),
    #[error("support contains conductor piece: {0}")]
    SupportContainsConductor(String),
    #[error("moving lemma sampling failed: {0}")]
    SamplingFailed(String),
    #[error("torsion undefined: infinite-order component")]
    TorsionUndefined,
    #[error("invalid scheme: {}", format_diagnostics(.0))]
    InvalidScheme(Vec<Diagnostic>),
    #[error("not a Mumford divisor: {}", format_diagnostics(.0))]
    NotMumford(Vec<Diagnostic>),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn format_diagnostics(diags: &[Diagnostic]) -> String {
    diags
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    /// True for errors caused by malformed or out-of-contract input, as
    /// opposed to broken internal invariants.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Internal(_))
    }
}
