//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by field construction, matrix algebra, code construction,
/// verification, and file parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("field size {p}^{e} exceeds the supported bound 2^16")]
    FieldTooLarge { p: u64, e: u32 },

    #[error("invalid modulus: {0}")]
    BadModulus(String),

    #[error("polynomial is not primitive over GF({q}): {reason}")]
    NotPrimitive { q: u64, reason: String },

    #[error("no primitive polynomial found (degree {degree} over GF({q}))")]
    NoPrimitivePolynomial { q: u64, degree: usize },

    #[error("element encoding {value} is out of range for GF({q})")]
    BadEncoding { value: u64, q: u64 },

    #[error("operands belong to different fields (GF({left}) vs GF({right}))")]
    MixedFields { left: u64, right: u64 },

    #[error("division by zero in GF({q})")]
    ZeroInverse { q: u64 },

    #[error("{0} does not embed in {1}")]
    NoEmbedding(String, String),

    #[error("shape mismatch: {op} needs {need}, got {got}")]
    ShapeMismatch {
        op: &'static str,
        need: String,
        got: String,
    },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },

    #[error("matrix does not have full row rank (rank {rank} < {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("representing set contains two matrices with the same row space (indices {first} and {second})")]
    DuplicateRowSpace { first: usize, second: usize },

    #[error("duplicate codeword (indices {first} and {second})")]
    DuplicateCodeword { first: usize, second: usize },

    #[error("code is empty")]
    EmptyCode,

    #[error("code does not have constant dimension ({0} vs {1})")]
    MixedDimension(usize, usize),

    #[error("work size {needed} exceeds the cap {cap}; raise the cap to force the computation")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("rank-metric code is not linear: {0}")]
    NotLinear(String),

    #[error("rank-metric code must satisfy m >= k (rows {k} x cols {m}); transpose first")]
    BadOrientation { k: usize, m: usize },

    #[error("distance check failed: predicted {predicted}, found {found} (witness: pair {i}, {j})")]
    DistanceMismatch {
        predicted: usize,
        found: usize,
        i: usize,
        j: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("no codeword within decoding radius of the received space")]
    NotDecodable,

    #[error("seed file rejected: {0}")]
    SeedInvalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
