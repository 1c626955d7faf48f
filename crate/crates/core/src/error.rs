use thiserror::Error;

use crate::invariants::BlockLabel;

#[derive(Debug, Error)]
pub enum Error {
    #[error("casimir operator is not a scalar matrix")]
    NotScalar,
    #[error("pairing operator realizations disagree")]
    PairingMismatch,
    #[error("vector does not lie in the span of the basis")]
    NotInSpan,
    #[error("matrix is singular")]
    Singular,
    #[error("block {0} has an empty S1-invariant space")]
    EmptyBlock(BlockLabel),
    #[error("block {label} is not admissible: {reason}")]
    Inadmissible { label: BlockLabel, reason: String },
    #[error("no function block at {0} (|K| > L or parity mismatch)")]
    NoFunctionBlock(BlockLabel),
    #[error("symbolic reduction mismatch for {label}: {detail}")]
    ReductionMismatch { label: BlockLabel, detail: String },
    #[error("step size underflow at r = {r}")]
    StepUnderflow { r: f64 },
    #[error("constraint residual {residual:e} exceeded the blow-up threshold at r = {r}")]
    ResidualBlowUp { r: f64, residual: f64 },
    #[error("hypergeometric series did not converge within {terms} terms")]
    NonConvergence { terms: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid deformation spectrum: {0}")]
    InvalidSpectrum(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
