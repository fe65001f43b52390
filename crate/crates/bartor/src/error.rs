//! Crate-wide error type.
//!
//! Variants are grouped by how a caller should react: bad input
//! (`NotPrime` through `InvalidInput`), resource exhaustion
//! (`ResourceLimit`), and `Internal`, which means a mathematical
//! invariant the engine relies on was violated and the result cannot be
//! trusted.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("cap mismatch: {left} vs {right}")]
    CapMismatch { left: usize, right: usize },

    #[error("subspace vector {index} does not lie in the ambient space")]
    SubspaceNotContained { index: usize },

    #[error("generator degree {degree} must be {requirement} over F_{p}")]
    BadGeneratorDegree {
        degree: u32,
        p: u32,
        requirement: &'static str,
    },

    #[error("truncation height {0} must be at least 2")]
    BadHeight(u32),

    #[error("product of degrees {left_degree} and {right_degree} exceeds cap {cap}: untracked")]
    Untracked {
        left_degree: u32,
        right_degree: u32,
        cap: usize,
    },

    #[error("requested cap {requested} exceeds the base algebra's cap {base}")]
    CapExceedsBase { requested: usize, base: usize },

    #[error(
        "resource limit exceeded{}: bidegree (s={s}, t={t}) needs {needed} words, limit {limit}",
        stage.map(|n| format!(" at tower stage {n}")).unwrap_or_default()
    )]
    ResourceLimit {
        stage: Option<usize>,
        s: u32,
        t: u32,
        needed: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
