use thiserror::Error;

/// Errors raised across the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown algebra label `{0}`")]
    UnknownType(String),
    #[error("rank {rank} out of range for type {family}")]
    RankOutOfRange { family: char, rank: usize },
    #[error("node {node} out of range 1..={rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("kind or flavor mismatch: {0}")]
    Mismatch(String),
    #[error("not in ring: {0}")]
    NotInRing(String),
    #[error("block factorization failed at node {node} for {monomial}")]
    BlockFactorizationFailed { node: usize, monomial: String },
    #[error("step budget {cap} exceeded with {frontier} monomials pending")]
    CapExceeded { cap: usize, frontier: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("regrouping failed for {0}")]
    RegroupFailed(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("pole detected: {0}")]
    PoleDetected(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
