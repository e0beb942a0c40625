//! Constant-dimension subspace codes built by linking rank-metric codes.
//!
//! The crate provides exact arithmetic over small finite fields `GF(p^e)`
//! (`q <= 2^16`), dense and bit-packed matrices with reduced-row-echelon
//! canonical forms, subspaces and subspace codes under the subspace metric,
//! rank-metric codes (companion-matrix MRD codes and Gabidulin codes), the
//! linkage construction that concatenates two constant-dimension codes through
//! a linear rank-metric code, partial-spread constructions and bounds, and a
//! three-block code with a rank-deficiency-guided minimum-distance decoder.
//!
//! All computations are exact; nothing uses floating point. Randomized pieces
//! (the partial-spread seed search, sampled verification of very large codes)
//! take explicit RNG seeds so runs are reproducible.

pub mod decoder;
pub mod extension;
pub mod field;
pub mod linkage;
pub mod matrix;
pub mod rankcode;
pub mod spreads;
pub mod subspace;
pub mod tables;
pub mod verify;

mod error;

pub use decoder::{build_three_block, DecodeBranch, Decoded, ThreeBlockCode};
pub use error::{Error, Result};
pub use extension::FieldExtension;
pub use field::{FieldElement, FiniteField};
pub use linkage::{link, LinkageCode};
pub use matrix::{companion_matrix, Matrix};
pub use rankcode::{gabidulin, lift, RankMetricCode};
pub use subspace::{ScRepSet, Subspace, SubspaceCode};

/// Default cap on pairwise brute-force work (number of codeword pairs).
pub const DEFAULT_PAIR_CAP: u64 = 1 << 20;

/// Default cap on subspace enumeration (number of subspaces).
pub const DEFAULT_ENUM_CAP: u128 = 1 << 20;

/// Default cap on materialized codewords of a rank-metric code.
pub const DEFAULT_WORD_CAP: u64 = 1 << 16;
