//! Reproduction of two published size tables for linked binary codes with
//! `k = 3` and subspace distance 4.
//!
//! The "linkage" columns are recomputed here from the size formula
//! `N = N2 + N1 * NR` with `NR` the full MRD size for the chosen rank
//! distance; the comparison columns (modified-multilevel sizes, largest
//! known sizes, extended lifted MRD sizes) and the constituent sizes
//! `N1`, `N2` are external constants from the literature, kept verbatim.
//! This module never claims to reconstruct the externally found codes —
//! only their sizes enter the arithmetic.

use crate::rankcode::mrd_size;

/// Largest known size of a binary constant-dimension code of dimension 3
/// and subspace distance 4 for lengths 6 through 9, from published
/// computer-search tables (Braun–Reichelt 2014; the length-6 value 77 is
/// known to be optimal by Honold–Kiermaier–Kurz 2014).
pub const fn best_known_size(length: usize) -> Option<u64> {
    match length {
        6 => Some(77),
        7 => Some(329),
        8 => Some(1312),
        9 => Some(5694),
        _ => None,
    }
}

/// Largest size achieved by the modified multilevel construction of
/// Etzion–Silberstein (2013) for binary codes of dimension 3, distance 4,
/// and lengths 12 through 15 (external constants).
pub const fn mml_size(n: usize) -> Option<u64> {
    match n {
        12 => Some(305_324),
        13 => Some(1_221_296),
        14 => Some(4_885_184),
        15 => Some(19_540_736),
        _ => None,
    }
}

/// Largest known size of a binary constant-dimension code of dimension 3
/// and distance 4 for lengths 12 through 15 (external constants; lengths up
/// to 14 from computer search, length 15 from the linkage value itself,
/// and the length-13 value 1,597,245 is optimal by the anticode bound).
pub const fn largest_known_size(n: usize) -> Option<u64> {
    match n {
        12 => Some(385_515),
        13 => Some(1_597_245),
        14 => Some(5_996_178),
        15 => Some(23_322_701),
        _ => None,
    }
}

/// Size of the extended lifted MRD codes of Skachek (2010) for the same
/// parameters (external constants used as a comparison column).
pub const fn extended_lifted_mrd_size(n: usize) -> Option<u64> {
    match n {
        12 => Some(266_304),
        13 => Some(1_065_216),
        14 => Some(4_260_864),
        _ => None,
    }
}

/// One row of the linked-code size table built from the best known
/// constituent codes of lengths 6 through 9.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LargeLinkRow {
    /// Total length `n = n1 + n2`.
    pub n: usize,
    /// Length of the left constituent.
    pub n1: usize,
    /// Length of the right constituent.
    pub n2: usize,
    /// Size of the left constituent (external constant).
    pub n1_size: u64,
    /// Size of the right constituent (external constant).
    pub n2_size: u64,
    /// Linked size `N2 + N1 * 2^(2 n2)`, recomputed.
    pub linkage: u64,
    /// Modified-multilevel comparison size (external constant).
    pub mml: u64,
    /// Largest known size for the same parameters (external constant).
    pub largest_known: u64,
}

/// The ten-row table of linked binary codes with `k = 3`, subspace distance
/// 4, lengths 12 through 15, built from best known constituents of lengths
/// 6 through 9 and a full MRD code of rank distance 2 on the right length.
pub fn table_largelink() -> Vec<LargeLinkRow> {
    let splits: [(usize, usize); 10] = [
        (6, 6),
        (6, 7),
        (7, 6),
        (7, 7),
        (6, 8),
        (8, 6),
        (8, 7),
        (7, 8),
        (6, 9),
        (9, 6),
    ];
    splits
        .iter()
        .map(|&(n1, n2)| {
            let n1_size = best_known_size(n1).expect("table length");
            let n2_size = best_known_size(n2).expect("table length");
            let nr = mrd_size(2, 3, n2, 2).expect("in range") as u64;
            LargeLinkRow {
                n: n1 + n2,
                n1,
                n2,
                n1_size,
                n2_size,
                linkage: n2_size + n1_size * nr,
                mml: mml_size(n1 + n2).expect("table length"),
                largest_known: largest_known_size(n1 + n2).expect("table length"),
            }
        })
        .collect()
}

/// One row of the all-MRD linked-code size table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MrdLinkRow {
    /// Total length `n = n1 + n2`.
    pub n: usize,
    /// Length of the left constituent (a lifted MRD code).
    pub n1: usize,
    /// Length of the right constituent.
    pub n2: usize,
    /// Linked size with the best known code of length `n2` on the right.
    pub link_largest: u64,
    /// Linked size with a lifted MRD code on the right:
    /// `2^(2(n2-3)) + 2^(2(n-3))`, recomputed.
    pub link_mrd: u64,
    /// Size `2^(2(n-3))` of a plain lifted MRD code of length `n`.
    pub lifted_mrd: u64,
    /// Extended lifted MRD comparison size (external constant).
    pub extended_lifted_mrd: u64,
}

/// The three-row table of linked binary codes with `k = 3`, subspace
/// distance 4, built entirely from (lifted) MRD codes: each length `n` from
/// 12 to 14 is split as `n = 6 + n2` with `n2` maximal subject to both
/// parts being at least `2k`.
pub fn table_mrdlinkage() -> Vec<MrdLinkRow> {
    (12..=14)
        .map(|n| {
            let (n1, n2) = (6, n - 6);
            let lifted_left = mrd_size(2, 3, n1 - 3, 2).expect("in range") as u64;
            let nr = mrd_size(2, 3, n2, 2).expect("in range") as u64;
            MrdLinkRow {
                n,
                n1,
                n2,
                link_largest: best_known_size(n2).expect("table length") + lifted_left * nr,
                link_mrd: mrd_size(2, 3, n2 - 3, 2).expect("in range") as u64
                    + mrd_size(2, 3, n - 3, 2).expect("in range") as u64,
                lifted_mrd: mrd_size(2, 3, n - 3, 2).expect("in range") as u64,
                extended_lifted_mrd: extended_lifted_mrd_size(n).expect("table length"),
            }
        })
        .collect()
}
