//! Partial spreads: constructions, size bounds, and maximality checks.
//!
//! A partial `k`-spread in `F_q^n` is a set of `k`-dimensional subspaces
//! that pairwise intersect only in zero; when the subspaces also cover every
//! nonzero vector it is a spread (possible exactly when `k | n`). This
//! module provides:
//!
//! * two classical spreads for `k | n` — the block-matrix construction in
//!   [`desarguesian_spread`] and the subfield-orbit construction in
//!   [`orbit_spread`];
//! * the general size formula [`m_nk`] attained by linking a spread with a
//!   small maximal partial spread, the upper bound [`mu_upper`], and the
//!   exact maximum [`max_partial_3spread_size`] for `q = 2, k = 3`;
//! * two linked partial-spread families, [`etzion_vardy`] and
//!   [`gorla_ravagnani`], both of size `m(n, k)` and maximal;
//! * [`binary_3spread`], which attains the `q = 2, k = 3` maximum for every
//!   `n` once a 34-element seed in `F_2^8` is supplied (the seed comes from
//!   an external computer search; [`search_34_seed`] tries to find one);
//! * verification: [`is_partial_spread`], the exact pruning-based
//!   [`is_maximal_partial_spread`], and the exhaustive
//!   [`is_maximal_by_enumeration`].

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::extension::FieldExtension;
use crate::field::{primitive_polynomial, FiniteField};
use crate::linkage::{link_with, LinkOptions, LinkageCode};
use crate::matrix::{companion_matrix, Matrix};
use crate::rankcode::companion_mrd;
use crate::subspace::{enumerate_subspaces, ScRepSet, Subspace, SubspaceCode};
use crate::{Error, Result, DEFAULT_WORD_CAP};

/// Largest ambient vector count `q^n` for which coverage bitmaps are used.
const COVERAGE_CAP: u128 = 1 << 24;

fn upow(q: u64, e: usize) -> Result<u128> {
    (q as u128)
        .checked_pow(e as u32)
        .ok_or_else(|| Error::InvalidParams(format!("{q}^{e} does not fit in 128 bits")))
}

/// Size of the standard partial-spread construction in `F_q^n` with block
/// dimension `k`: `(q^n - q^c)/(q^k - 1) - q^c + 1` where `c = n mod k`.
/// For `c = 0` this is the spread size `(q^n - 1)/(q^k - 1)`.
pub fn m_nk(q: u64, n: usize, k: usize) -> Result<u128> {
    if k == 0 || n < k || q < 2 {
        return Err(Error::InvalidParams(format!(
            "need q >= 2 and n >= k >= 1, got q = {q}, n = {n}, k = {k}"
        )));
    }
    let c = n % k;
    let qc = upow(q, c)?;
    let quotient = (upow(q, n)? - qc) / (upow(q, k)? - 1);
    Ok(quotient - qc + 1)
}

/// Floor of `θ = (sqrt(1 + 4 q^k (q^k - q^c)) - (2 q^k - 2 q^c + 1)) / 2`,
/// computed in exact integer arithmetic.
pub fn theta_floor(q: u64, k: usize, c: usize) -> Result<i128> {
    let qk = upow(q, k)?;
    let qc = upow(q, c)?;
    let disc = 1 + 4 * qk * (qk - qc);
    let root = disc.isqrt() as i128;
    let t = (2 * qk - 2 * qc + 1) as i128;
    Ok((root - t).div_euclid(2))
}

/// Upper bound on the size of a maximal partial `k`-spread in `F_q^n`. For
/// `c = n mod k` in `{0, 1}` the bound coincides with [`m_nk`]; otherwise it
/// is `(q^n - q^c)/(q^k - 1) - floor(θ) - 1`.
pub fn mu_upper(q: u64, n: usize, k: usize) -> Result<u128> {
    let c = n % k;
    let construction = m_nk(q, n, k)?;
    if c <= 1 {
        return Ok(construction);
    }
    let quotient = (upow(q, n)? - upow(q, c)?) / (upow(q, k)? - 1);
    let bound = quotient as i128 - theta_floor(q, k, c)? - 1;
    Ok(bound as u128)
}

/// Largest partial 3-spread in `F_2^n` (`n >= 6`): `(2^n - 2^c)/7 - c` with
/// `c = n mod 3`.
pub fn max_partial_3spread_size(n: usize) -> Result<u128> {
    if n < 6 {
        return Err(Error::InvalidParams(format!(
            "the closed form needs n >= 6, got {n}"
        )));
    }
    let c = n % 3;
    Ok((upow(2, n)? - upow(2, c)?) / 7 - c as u128)
}

/// Size bounds for partial `k`-spreads in `F_q^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpreadBounds {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    /// `n mod k`.
    pub c: usize,
    /// Attained by the linked construction: [`m_nk`].
    pub construction: u128,
    /// Upper bound [`mu_upper`]; equals `construction` when `c <= 1`.
    pub upper: u128,
    /// Floor of the auxiliary quantity `θ` in the upper bound.
    pub theta_floor: i128,
}

/// Computes [`SpreadBounds`] for `(q, n, k)`.
pub fn bounds(q: u64, n: usize, k: usize) -> Result<SpreadBounds> {
    let construction = m_nk(q, n, k)?;
    let upper = mu_upper(q, n, k)?;
    let c = n % k;
    Ok(SpreadBounds {
        q,
        n,
        k,
        c,
        construction,
        upper,
        theta_floor: theta_floor(q, k, c)?,
    })
}

/// The elements of the matrix field `F_q[M]` for a `k x k` companion matrix
/// `M` of a primitive polynomial: all `q^k` polynomials in `M` of degree
/// below `k`, indexed by base-`q` digit strings of their coefficients.
fn matrix_field(field: &FiniteField, m: &Matrix) -> Vec<Matrix> {
    let k = m.rows();
    let q = field.q() as usize;
    let mut powers = Vec::with_capacity(k);
    powers.push(Matrix::identity(field, k));
    for i in 1..k {
        powers.push(powers[i - 1].mat_mul(m).expect("square powers"));
    }
    let count = q.pow(k as u32);
    let mut out = Vec::with_capacity(count);
    for idx in 0..count {
        let mut acc = Matrix::zero(field, k, k);
        let mut rest = idx;
        for power in &powers {
            let digit = (rest % q) as u16;
            rest /= q;
            if digit != 0 {
                acc = acc.add(&power.scale(digit)).expect("same shape");
            }
        }
        out.push(acc);
    }
    out
}

/// The block-matrix `k`-spread of `F_q^{km}`: row spaces of
/// `(A_1 | ... | A_m)` with all `A_i` in the matrix field `F_q[M]` and not
/// all zero, one representative per subspace, normalized so the leftmost
/// nonzero block is the identity. Size `(q^{km} - 1)/(q^k - 1)`; every
/// nonzero vector is covered exactly once.
pub fn desarguesian_spread(q: u64, k: usize, m: usize) -> Result<SubspaceCode> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidParams("need k, m >= 1".into()));
    }
    let field = FiniteField::from_order(q)?;
    let size = (upow(q, k * m)? - 1) / (upow(q, k)? - 1);
    if size > DEFAULT_WORD_CAP as u128 {
        return Err(Error::CapExceeded {
            needed: size,
            cap: DEFAULT_WORD_CAP as u128,
        });
    }
    let companion = companion_matrix(&field, &primitive_polynomial(&field, k)?)?;
    let elements = matrix_field(&field, &companion);
    let qk = elements.len();
    let mut code = SubspaceCode::new(&field, k * m);
    // leftmost block at position j: identity there, free blocks to its right
    for j in 0..m {
        let free = m - 1 - j;
        let mut indices = vec![0usize; free];
        loop {
            let mut basis = Matrix::zero(&field, k, k * m);
            for r in 0..k {
                basis.set(r, j * k + r, 1);
            }
            for (b, &idx) in indices.iter().enumerate() {
                let block = &elements[idx];
                let col0 = (j + 1 + b) * k;
                for r in 0..k {
                    for c in 0..k {
                        basis.set(r, col0 + c, block.get(r, c));
                    }
                }
            }
            code.push(Subspace::from_canonical_unchecked(basis))?;
            // odometer over the free blocks, leftmost fastest
            let mut pos = 0;
            while pos < free {
                indices[pos] += 1;
                if indices[pos] < qk {
                    break;
                }
                indices[pos] = 0;
                pos += 1;
            }
            if pos == free {
                break;
            }
        }
    }
    debug_assert_eq!(code.len() as u128, size);
    Ok(code)
}

/// The subfield-orbit `k`-spread of `F_q^{kl}`: the field `GF(q^{kl})` is an
/// `F_q`-space of dimension `kl`; the subfield `GF(q^k)` is a `k`-dimensional
/// subspace, and its multiplicative translates `δ^t ⋅ GF(q^k)` for a
/// generator `δ` partition the nonzero vectors. Expressed in coordinates
/// over the power basis of `GF(q^{kl})`.
pub fn orbit_spread(q: u64, k: usize, l: usize) -> Result<SubspaceCode> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidParams("need k, l >= 1".into()));
    }
    let field = FiniteField::from_order(q)?;
    let whole = FieldExtension::new(&field, k * l)?;
    let mid = FieldExtension::new(&field, k)?;
    let up = FieldExtension::new(mid.top(), l)?;
    debug_assert_eq!(up.top(), whole.top(), "same default tower");
    let top = whole.top().clone();

    // an F_q-basis of the embedded subfield GF(q^k)
    let alpha_mid = mid.top().generator();
    let sub_basis: Vec<u16> = (0..k)
        .map(|i| up.embed(mid.top().pow(alpha_mid, i as u64)))
        .collect();

    let count = ((top.q() as u128 - 1) / (upow(q, k)? - 1)) as u64;
    let delta = top.generator();
    let mut shift: u16 = 1; // the element one
    let mut code = SubspaceCode::new(&field, k * l);
    for _ in 0..count {
        let rows: Vec<Vec<u64>> = sub_basis
            .iter()
            .map(|&b| {
                whole
                    .to_coords(top.mul(shift, b))
                    .into_iter()
                    .map(u64::from)
                    .collect()
            })
            .collect();
        let basis = Matrix::from_rows(&field, &rows)?;
        code.push(Subspace::from_matrix(&basis))?;
        shift = top.mul(shift, delta);
    }
    Ok(code)
}

/// Positional index of a coordinate vector: `sum of entry_i * q^i`.
fn vector_index(q: u64, row: &[u16]) -> usize {
    let mut idx = 0u128;
    let mut scale = 1u128;
    for &e in row {
        idx += e as u128 * scale;
        scale *= q as u128;
    }
    idx as usize
}

/// Marks every nonzero vector of every codeword in a bitmap of size `q^n`.
/// Returns `None` if some nonzero vector is hit twice (not a partial
/// spread).
fn coverage_bitmap(code: &SubspaceCode) -> Result<Option<Vec<bool>>> {
    let q = code.field().q();
    let n = code.ambient();
    let total = upow(q, n)?;
    if total > COVERAGE_CAP {
        return Err(Error::CapExceeded {
            needed: total,
            cap: COVERAGE_CAP,
        });
    }
    let mut covered = vec![false; total as usize];
    let mut clash = false;
    for w in code.iter() {
        w.for_each_vector(|row| {
            if clash || row.iter().all(|&e| e == 0) {
                return;
            }
            let idx = vector_index(q, row);
            if covered[idx] {
                clash = true;
            } else {
                covered[idx] = true;
            }
        });
        if clash {
            return Ok(None);
        }
    }
    Ok(Some(covered))
}

/// Whether all pairwise intersections are zero. Uses a coverage bitmap when
/// `q^n` is small enough and a pairwise scan otherwise. Mixed-dimension
/// codes are rejected.
pub fn is_partial_spread(code: &SubspaceCode) -> Result<bool> {
    if code.constant_dimension().is_none() {
        let dims: Vec<usize> = code.iter().map(|w| w.dim()).collect();
        return Err(Error::MixedDimension(
            dims.iter().copied().min().unwrap_or(0),
            dims.iter().copied().max().unwrap_or(0),
        ));
    }
    let q = code.field().q();
    if upow(q, code.ambient())? <= COVERAGE_CAP {
        return Ok(coverage_bitmap(code)?.is_some());
    }
    for i in 0..code.len() {
        for j in i + 1..code.len() {
            if code.words()[i].intersection_dim(&code.words()[j])? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether a spread: a partial spread covering every nonzero vector.
pub fn is_spread(code: &SubspaceCode) -> Result<bool> {
    match coverage_bitmap(code)? {
        None => Ok(false),
        Some(covered) => Ok(covered.iter().skip(1).all(|&b| b)),
    }
}

/// The nonzero vectors (as coordinate rows) not covered by any codeword.
pub(crate) fn uncovered_vectors(code: &SubspaceCode) -> Result<Vec<Vec<u16>>> {
    let covered = coverage_bitmap(code)?.ok_or_else(|| {
        Error::InvalidParams("not a partial spread: a nonzero vector is covered twice".into())
    })?;
    let q = code.field().q();
    let n = code.ambient();
    let mut out = Vec::new();
    let mut row = vec![0u16; n];
    for (idx, &c) in covered.iter().enumerate().skip(1) {
        if !c {
            let mut rest = idx as u128;
            for e in row.iter_mut() {
                *e = (rest % q as u128) as u16;
                rest /= q as u128;
            }
            out.push(row.clone());
        }
    }
    Ok(out)
}

/// Searches for a `k`-dimensional subspace whose nonzero vectors all lie in
/// `pool` (given as coordinate rows, with `allowed` the membership bitmap).
/// Depth-first over pool positions in increasing order; returns a basis.
fn find_disjoint_subspace(
    field: &FiniteField,
    k: usize,
    pool: &[Vec<u16>],
    allowed: &[bool],
) -> Option<Vec<Vec<u16>>> {
    let q = field.q();
    // span: all vectors spanned so far (zero excluded); basis: chosen rows
    fn extend(
        field: &FiniteField,
        q: u64,
        k: usize,
        pool: &[Vec<u16>],
        allowed: &[bool],
        start: usize,
        basis: &mut Vec<Vec<u16>>,
        span: &mut Vec<Vec<u16>>,
    ) -> bool {
        if basis.len() == k {
            return true;
        }
        'candidates: for (offset, v) in pool[start..].iter().enumerate() {
            // the new vectors are s + λv for s in span ∪ {0}, λ ≠ 0
            let mut new_vectors = Vec::with_capacity((span.len() + 1) * (q as usize - 1));
            for lambda in 1..q as u16 {
                let scaled: Vec<u16> = v.iter().map(|&e| field.mul(e, lambda)).collect();
                if !allowed[vector_index(q, &scaled)] {
                    continue 'candidates;
                }
                for s in span.iter() {
                    let sum: Vec<u16> = s
                        .iter()
                        .zip(&scaled)
                        .map(|(&a, &b)| field.add(a, b))
                        .collect();
                    if !allowed[vector_index(q, &sum)] {
                        continue 'candidates;
                    }
                    new_vectors.push(sum);
                }
                new_vectors.push(scaled);
            }
            basis.push(v.clone());
            let old_len = span.len();
            span.append(&mut new_vectors);
            if extend(field, q, k, pool, allowed, start + offset + 1, basis, span) {
                return true;
            }
            span.truncate(old_len);
            basis.pop();
        }
        false
    }
    let mut basis = Vec::new();
    let mut span = Vec::new();
    extend(field, q, k, pool, allowed, 0, &mut basis, &mut span).then_some(basis)
}

/// Exact maximality check by pruning: a `k`-dimensional subspace disjoint
/// from every codeword can only consist of vectors no codeword covers, so it
/// suffices to search inside the uncovered set. Requires `q^n` under the
/// coverage cap.
pub fn is_maximal_partial_spread(code: &SubspaceCode) -> Result<bool> {
    Ok(maximality_witness(code)?.is_none())
}

/// Basis of a `k`-dimensional subspace disjoint from every codeword, if one
/// exists; `None` certifies that the partial spread is maximal. Same exact
/// search as [`is_maximal_partial_spread`].
pub fn maximality_witness(code: &SubspaceCode) -> Result<Option<Matrix>> {
    let k = code
        .constant_dimension()
        .ok_or(Error::MixedDimension(0, 0))?;
    let field = code.field().clone();
    let q = field.q();
    let pool = uncovered_vectors(code)?;
    if (pool.len() as u128) < upow(q, k)? - 1 {
        return Ok(None);
    }
    let mut allowed = vec![false; upow(q, code.ambient())? as usize];
    for v in &pool {
        allowed[vector_index(q, v)] = true;
    }
    match find_disjoint_subspace(&field, k, &pool, &allowed) {
        None => Ok(None),
        Some(basis) => {
            let rows: Vec<Vec<u64>> = basis
                .iter()
                .map(|r| r.iter().map(|&e| u64::from(e)).collect())
                .collect();
            Ok(Some(Matrix::from_rows(&field, &rows)?))
        }
    }
}

/// Exhaustive maximality check: enumerates every `k`-dimensional subspace of
/// the ambient space (within `cap`) and tests it against all codewords.
pub fn is_maximal_by_enumeration(code: &SubspaceCode, cap: u128) -> Result<bool> {
    let k = code
        .constant_dimension()
        .ok_or(Error::MixedDimension(0, 0))?;
    let field = code.field().clone();
    for candidate in enumerate_subspaces(&field, code.ambient(), k, cap)? {
        let mut disjoint = true;
        for w in code.iter() {
            if candidate.intersection_dim(w)? != 0 {
                disjoint = false;
                break;
            }
        }
        if disjoint {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Shared layout of the two linked partial-spread families: a `k`-spread of
/// `F_q^{k(l-1)}` on the left, a single `k`-subspace of `F_q^{k+c}` on the
/// right, and the full-size orbit rank code generated from `w`.
fn linked_partial_spread(
    left: &SubspaceCode,
    single_right: Matrix,
    w: Matrix,
) -> Result<LinkageCode> {
    let field = w.field().clone();
    let n2 = w.cols();
    let companion = companion_matrix(&field, &primitive_polynomial(&field, n2)?)?;
    let cr = companion_mrd(&w, &companion)?;
    let m1 = ScRepSet::from_code(left)?;
    let m2 = ScRepSet::from_matrices(vec![single_right])?;
    link_with(&m1, &m2, &cr, LinkOptions::default())
}

fn check_spread_params(k: usize, n: usize) -> Result<(usize, usize)> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidParams(format!(
            "need n >= 2k >= 2, got n = {n}, k = {k}"
        )));
    }
    Ok((n / k, n % k))
}

/// Maximal partial `k`-spread of `F_q^n` of size `m(n, k)`: links the orbit
/// spread of `F_q^{k(l-1)}` with the single subspace `rowspace(I | 0)` of
/// `F_q^{k+c}` through the orbit rank code generated by `W = (I | 0)`.
pub fn etzion_vardy(q: u64, k: usize, n: usize) -> Result<LinkageCode> {
    let (l, c) = check_spread_params(k, n)?;
    let field = FiniteField::from_order(q)?;
    let left = orbit_spread(q, k, l - 1)?;
    let mut right = Matrix::zero(&field, k, k + c);
    for r in 0..k {
        right.set(r, r, 1);
    }
    linked_partial_spread(&left, right.clone(), right)
}

/// Maximal partial `k`-spread of `F_q^n` of size `m(n, k)`: links the
/// block-matrix spread of `F_q^{k(l-1)}` with the single subspace
/// `rowspace(0 | I)` of `F_q^{k+c}` through the orbit rank code generated by
/// `W = (0 | I)`.
pub fn gorla_ravagnani(q: u64, k: usize, n: usize) -> Result<LinkageCode> {
    let (l, c) = check_spread_params(k, n)?;
    let field = FiniteField::from_order(q)?;
    let left = desarguesian_spread(q, k, l - 1)?;
    let mut right = Matrix::zero(&field, k, k + c);
    for r in 0..k {
        right.set(r, c + r, 1);
    }
    linked_partial_spread(&left, right.clone(), right)
}

/// Maximum-size partial 3-spread of `F_2^n` for `n >= 10`: links a 3-spread
/// of `F_2^{n - n2}` with a maximum partial 3-spread of `F_2^{n2}` (where
/// `n2` in `{6, 7, 8}` matches `n mod 3`) through a rank-distance-3 orbit
/// code. Sizes: `(2^n - 2^c)/7 - c`. The `n2 = 8` case needs `seed8`, an
/// externally found 34-element partial 3-spread of `F_2^8`; the seed is
/// validated on every call. For `n2` in `{6, 7}` the built-in spread /
/// linked construction is used and `seed8` is ignored.
pub fn binary_3spread(n: usize, seed8: Option<&SubspaceCode>) -> Result<LinkageCode> {
    binary_3spread_with(n, seed8, LinkOptions::default())
}

/// [`binary_3spread`] with explicit linking options.
pub fn binary_3spread_with(
    n: usize,
    seed8: Option<&SubspaceCode>,
    opts: LinkOptions,
) -> Result<LinkageCode> {
    if n < 10 {
        return Err(Error::InvalidParams(format!(
            "the extension construction starts at n = 10, got {n}"
        )));
    }
    let n2 = 6 + n % 3; // 6, 7, or 8 with n2 ≡ n (mod 3)
    let n1 = n - n2;
    let field = FiniteField::from_order(2)?;
    let right_code: SubspaceCode = match n2 {
        6 => desarguesian_spread(2, 3, 2)?,
        7 => etzion_vardy(2, 3, 7)?.into_code(),
        8 => {
            let seed = seed8.ok_or_else(|| {
                Error::SeedInvalid(format!(
                    "n = {n} needs a 34-element partial 3-spread of F_2^8"
                ))
            })?;
            validate_seed34(seed)?;
            seed.clone()
        }
        _ => unreachable!(),
    };
    let left = desarguesian_spread(2, 3, n1 / 3)?;
    let mut w = Matrix::zero(&field, 3, n2);
    for r in 0..3 {
        w.set(r, r, 1);
    }
    let companion = companion_matrix(&field, &primitive_polynomial(&field, n2)?)?;
    let cr = companion_mrd(&w, &companion)?;
    link_with(
        &ScRepSet::from_code(&left)?,
        &ScRepSet::from_code(&right_code)?,
        &cr,
        opts,
    )
}

/// Checks that `seed` is a 34-element partial 3-spread of `F_2^8`.
pub fn validate_seed34(seed: &SubspaceCode) -> Result<()> {
    if seed.field().q() != 2 || seed.ambient() != 8 {
        return Err(Error::SeedInvalid(format!(
            "expected subspaces of F_2^8, got F_{}^{}",
            seed.field().q(),
            seed.ambient()
        )));
    }
    if seed.constant_dimension() != Some(3) {
        return Err(Error::SeedInvalid(
            "expected constant dimension 3".into(),
        ));
    }
    if seed.len() != 34 {
        return Err(Error::SeedInvalid(format!(
            "expected 34 subspaces, got {}",
            seed.len()
        )));
    }
    if !is_partial_spread(seed)? {
        return Err(Error::SeedInvalid(
            "subspaces do not pairwise intersect trivially".into(),
        ));
    }
    Ok(())
}

/// Randomized search for a 34-element partial 3-spread of `F_2^8`: starts
/// from the 33-element linked construction, greedily inserts disjoint
/// subspaces found among uncovered vectors, and when stuck removes a few
/// random members and retries (ruin-and-recreate). Deterministic for a fixed
/// `rng_seed`. Returns `None` when the time budget runs out — absence of a
/// result is normal, the target is known to exist but is rare.
pub fn search_34_seed(budget: Duration, rng_seed: u64) -> Option<SubspaceCode> {
    const TARGET: usize = 34;
    let start = Instant::now();
    let field = FiniteField::from_order(2).ok()?;
    // each subspace is held as its 3 basis rows, packed into bit patterns
    let base: Vec<[u8; 3]> = {
        let code = etzion_vardy(2, 3, 8).ok()?;
        code.code().iter().map(basis_bits).collect()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut current = base.clone();
    let mut rounds = 0u64;
    while start.elapsed() < budget {
        rounds += 1;
        // fill the uncovered hole as densely as an exact (budgeted) packing
        // search can manage
        let mut covered = [false; 256];
        covered[0] = true; // zero never counts as available
        for b in &current {
            for v in span7(*b) {
                covered[v as usize] = true;
            }
        }
        let mut pool: Vec<u8> = (1..=255u8).filter(|&v| !covered[v as usize]).collect();
        pool.shuffle(&mut rng);
        let candidates = addable_subspaces(&pool, &covered);
        let packing = max_packing(&candidates, TARGET - current.len(), 500_000);
        for &idx in &packing {
            current.push(candidates[idx].0);
        }
        if current.len() >= TARGET {
            let words = current.iter().map(|b| {
                let rows: Vec<Vec<u64>> = b
                    .iter()
                    .map(|&bits| (0..8).map(|i| u64::from(bits >> i & 1)).collect())
                    .collect();
                Subspace::from_matrix(&Matrix::from_rows(&field, &rows).expect("3x8 basis"))
            });
            let code = SubspaceCode::from_subspaces(&field, 8, words).ok()?;
            debug_assert!(validate_seed34(&code).is_ok());
            return Some(code);
        }
        // ruin: usually a small perturbation, occasionally a heavy shake or
        // a restart from the deterministic base
        let drop = if rounds % 256 == 0 {
            current = base.clone();
            continue;
        } else if rounds % 16 == 0 {
            rng.gen_range(6..=10)
        } else {
            rng.gen_range(2..=5)
        };
        for _ in 0..drop.min(current.len() as i32 / 2) {
            let i = rng.gen_range(0..current.len());
            current.swap_remove(i);
        }
    }
    None
}

/// Basis rows of a 3-dimensional subspace of `F_2^8` as bit patterns.
fn basis_bits(w: &Subspace) -> [u8; 3] {
    debug_assert_eq!((w.dim(), w.ambient()), (3, 8));
    let b = w.basis();
    let mut rows = [0u8; 3];
    for (r, row) in rows.iter_mut().enumerate() {
        for c in 0..8 {
            if b.get(r, c) != 0 {
                *row |= 1 << c;
            }
        }
    }
    rows
}

/// The 7 nonzero vectors of the span of three independent bit rows.
fn span7(b: [u8; 3]) -> [u8; 7] {
    [
        b[0],
        b[1],
        b[2],
        b[0] ^ b[1],
        b[0] ^ b[2],
        b[1] ^ b[2],
        b[0] ^ b[1] ^ b[2],
    ]
}

/// All 3-dimensional subspaces whose 7 nonzero vectors avoid `covered`,
/// without duplicates, in an order driven by `pool`'s order.
fn addable_subspaces(pool: &[u8], covered: &[bool; 256]) -> Vec<([u8; 3], [u8; 7])> {
    let ok = |v: u8| v != 0 && !covered[v as usize];
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, &a) in pool.iter().enumerate() {
        for (j, &b) in pool.iter().enumerate().skip(i + 1) {
            if !ok(a ^ b) {
                continue;
            }
            for &c in pool.iter().skip(j + 1) {
                if ok(a ^ c) && ok(b ^ c) && ok(a ^ b ^ c) {
                    let mut span = span7([a, b, c]);
                    span.sort_unstable();
                    if seen.insert(span) {
                        out.push(([a, b, c], span));
                    }
                }
            }
        }
    }
    out
}

/// Largest vector-disjoint subset of candidate subspaces found within a
/// node budget (depth-first with a capacity bound); returns candidate
/// indices and stops early once `enough` are packed.
fn max_packing(cands: &[([u8; 3], [u8; 7])], enough: usize, node_budget: u64) -> Vec<usize> {
    fn dfs(
        cands: &[([u8; 3], [u8; 7])],
        from: usize,
        used: &mut [bool; 256],
        chosen: &mut Vec<usize>,
        best: &mut Vec<usize>,
        enough: usize,
        nodes: &mut u64,
    ) {
        if chosen.len() > best.len() {
            best.clone_from(chosen);
        }
        if best.len() >= enough || *nodes == 0 {
            return;
        }
        for i in from..cands.len() {
            let span = &cands[i].1;
            if span.iter().any(|&v| used[v as usize]) {
                continue;
            }
            *nodes = nodes.saturating_sub(1);
            for &v in span {
                used[v as usize] = true;
            }
            chosen.push(i);
            dfs(cands, i + 1, used, chosen, best, enough, nodes);
            chosen.pop();
            for &v in span {
                used[v as usize] = false;
            }
            if best.len() >= enough || *nodes == 0 {
                return;
            }
        }
    }
    let mut best = Vec::new();
    let mut chosen = Vec::new();
    let mut used = [false; 256];
    let mut nodes = node_budget;
    dfs(cands, 0, &mut used, &mut chosen, &mut best, enough, &mut nodes);
    best
}
