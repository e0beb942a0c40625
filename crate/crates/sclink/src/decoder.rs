//! Three-block subspace codes and their block-routing decoder.
//!
//! A three-block code over `F_q^n` with `n = k + n1 + n2` is the union of
//!
//! * an identity-headed block `{ im(I_k | M1 | M2) }` with `M1`, `M2` drawn
//!   from two linear MRD codes of rank distance `d`,
//! * a middle block `{ im(0 | M | 0) }` with `M` from a representing set of a
//!   constant-dimension code of subspace distance `2d`, and
//! * a right block `{ im(0 | 0 | M) }` built the same way.
//!
//! The union has subspace distance `2d`, and a received space can be routed
//! to the correct block by comparing the ranks of its coordinate slices
//! against half its dimension, after which only the constituent codes need to
//! be searched. The routine [`check_rank_decoding_failure`] demonstrates the
//! limits of decoding the right block directly in the rank metric: there are
//! decodable received spaces none of whose matrix representations come close
//! to the transmitted right-block matrix in rank distance.

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::linkage::{link, LinkageCode};
use crate::matrix::Matrix;
use crate::rankcode::{lift, RankMetricCode};
use crate::subspace::{subspace_distance, ScRepSet, Subspace, SubspaceCode};

/// Which block of a three-block code a decoded word belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecodeBranch {
    /// Right block `im(0 | 0 | M)`; routing tag `a`.
    RightBlock,
    /// Middle block `im(0 | M | 0)`; routing tag `b`.
    MiddleBlock,
    /// Identity-headed block `im(I | M1 | M2)`; routing tag `c`.
    FullBlock,
}

impl DecodeBranch {
    /// One-letter routing tag (`a`, `b`, or `c`).
    pub fn tag(&self) -> char {
        match self {
            DecodeBranch::RightBlock => 'a',
            DecodeBranch::MiddleBlock => 'b',
            DecodeBranch::FullBlock => 'c',
        }
    }
}

/// Result of a successful decode: the branch taken, the codeword, and its
/// subspace distance from the received space.
#[derive(Clone, Debug)]
pub struct Decoded {
    pub branch: DecodeBranch,
    pub codeword: Subspace,
    pub distance: usize,
}

/// A three-block code together with the constituent codes its decoder needs.
#[derive(Clone, Debug)]
pub struct ThreeBlockCode {
    field: FiniteField,
    k: usize,
    n1: usize,
    n2: usize,
    dist: usize,
    m1: RankMetricCode,
    m2: RankMetricCode,
    m3: ScRepSet,
    m4: ScRepSet,
    c1: SubspaceCode,
    c2: SubspaceCode,
    c3: SubspaceCode,
    c4: SubspaceCode,
    size: u128,
    code: Option<SubspaceCode>,
}

impl ThreeBlockCode {
    /// Base field.
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Codeword dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Width of the middle coordinate block.
    pub fn n1(&self) -> usize {
        self.n1
    }

    /// Width of the right coordinate block.
    pub fn n2(&self) -> usize {
        self.n2
    }

    /// Ambient dimension `k + n1 + n2`.
    pub fn n(&self) -> usize {
        self.k + self.n1 + self.n2
    }

    /// Subspace distance of the code (twice the constituent rank distance).
    pub fn distance(&self) -> usize {
        self.dist
    }

    /// Number of codewords.
    pub fn size(&self) -> u128 {
        self.size
    }

    /// First MRD constituent (`k x n1`).
    pub fn m1(&self) -> &RankMetricCode {
        &self.m1
    }

    /// Second MRD constituent (`k x n2`).
    pub fn m2(&self) -> &RankMetricCode {
        &self.m2
    }

    /// Representing set behind the middle block.
    pub fn m3(&self) -> &ScRepSet {
        &self.m3
    }

    /// Representing set behind the right block.
    pub fn m4(&self) -> &ScRepSet {
        &self.m4
    }

    /// Full codeword list when the size was within the build cap.
    pub fn materialized(&self) -> Option<&SubspaceCode> {
        self.code.as_ref()
    }

    /// Rank of each coordinate slice pairing of a received space: the
    /// headline routing quantities `rk(V0|V1)`, `rk(V0|V2)`, `rk(V0)`.
    pub fn slice_ranks(&self, v: &Subspace) -> Result<(usize, usize, usize)> {
        if v.ambient() != self.n() {
            return Err(Error::AmbientMismatch {
                left: v.ambient(),
                right: self.n(),
            });
        }
        let b = v.basis();
        let v0 = b.col_range(0..self.k);
        let v1 = b.col_range(self.k..self.k + self.n1);
        let v2 = b.col_range(self.k + self.n1..self.n());
        let r01 = v0.hconcat(&v1)?.rank();
        let r02 = v0.hconcat(&v2)?.rank();
        Ok((r01, r02, v0.rank()))
    }

    /// The three headline routing conditions, evaluated exactly:
    /// `rk(V0|V1) < K/2`, `rk(V0|V2) < K/2`, `rk(V0) > K/2`.
    pub fn branch_flags(&self, v: &Subspace) -> Result<(bool, bool, bool)> {
        let kdim = v.dim();
        let (r01, r02, r0) = self.slice_ranks(v)?;
        Ok((2 * r01 < kdim, 2 * r02 < kdim, 2 * r0 > kdim))
    }

    /// Decode a received space to the unique codeword within distance
    /// `(distance - 1) / 2`, routing through exactly one block.
    ///
    /// Routing follows slice ranks: when `rk(V0|V1) < K/2` only the right
    /// block can be closest, and the right slice alone is decoded; when
    /// `rk(V0|V2) < K/2`, symmetrically the middle block; otherwise the
    /// closest word carries an identity head and the two slices `im(V0|V1)`,
    /// `im(V0|V2)` are decoded independently against the lifted MRD codes.
    /// The returned codeword is always re-checked against the radius, so a
    /// received space outside every decoding ball reports
    /// [`Error::NotDecodable`] rather than a wrong answer.
    pub fn decode(&self, v: &Subspace) -> Result<Decoded> {
        let kdim = v.dim();
        let b = v.basis();
        let v0 = b.col_range(0..self.k);
        let v1 = b.col_range(self.k..self.k + self.n1);
        let v2 = b.col_range(self.k + self.n1..self.n());
        if v.ambient() != self.n() {
            return Err(Error::AmbientMismatch {
                left: v.ambient(),
                right: self.n(),
            });
        }
        let radius_twice = self.dist - 1;
        let (branch, codeword) = if 2 * v0.hconcat(&v1)?.rank() < kdim {
            let target = Subspace::from_matrix(&v2);
            let (idx, d) = nearest_codeword(&self.c4, &target)?;
            if 2 * d > radius_twice {
                return Err(Error::NotDecodable);
            }
            let left = Matrix::zero(&self.field, self.k, self.k + self.n1);
            let word = Subspace::from_matrix(&left.hconcat(self.m4.get(idx))?);
            (DecodeBranch::RightBlock, word)
        } else if 2 * v0.hconcat(&v2)?.rank() < kdim {
            let target = Subspace::from_matrix(&v1);
            let (idx, d) = nearest_codeword(&self.c3, &target)?;
            if 2 * d > radius_twice {
                return Err(Error::NotDecodable);
            }
            let zk = Matrix::zero(&self.field, self.k, self.k);
            let zr = Matrix::zero(&self.field, self.k, self.n2);
            let word = Subspace::from_matrix(&zk.hconcat(self.m3.get(idx))?.hconcat(&zr)?);
            (DecodeBranch::MiddleBlock, word)
        } else {
            // the two slice decodes are independent of each other
            let t1 = Subspace::from_matrix(&v0.hconcat(&v1)?);
            let t2 = Subspace::from_matrix(&v0.hconcat(&v2)?);
            let (i1, d1) = nearest_codeword(&self.c1, &t1)?;
            let (i2, d2) = nearest_codeword(&self.c2, &t2)?;
            if 2 * d1 > radius_twice || 2 * d2 > radius_twice {
                return Err(Error::NotDecodable);
            }
            let head = Matrix::identity(&self.field, self.k);
            let word = Subspace::from_matrix(
                &head.hconcat(self.m1.word(i1))?.hconcat(self.m2.word(i2))?,
            );
            (DecodeBranch::FullBlock, word)
        };
        let distance = subspace_distance(&codeword, v)?;
        if 2 * distance > radius_twice {
            return Err(Error::NotDecodable);
        }
        Ok(Decoded {
            branch,
            codeword,
            distance,
        })
    }
}

/// Index and distance of the closest codeword to `v` (first of the minima).
pub fn nearest_codeword(code: &SubspaceCode, v: &Subspace) -> Result<(usize, usize)> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    let mut best = (0usize, usize::MAX);
    for (i, w) in code.iter().enumerate() {
        let d = w.distance(v)?;
        if d < best.1 {
            best = (i, d);
            if d == 0 {
                break;
            }
        }
    }
    Ok((best.0, best.1))
}

/// Exhaustive unique decoding against an arbitrary code: returns the closest
/// codeword when its distance is at most `(d - 1) / 2` for the code distance
/// `d`, and `None` when the received space lies outside every decoding ball.
pub fn is_decodable(code: &SubspaceCode, v: &Subspace) -> Result<Option<Subspace>> {
    let d = code.code_distance()?;
    let (idx, dist) = nearest_codeword(code, v)?;
    if 2 * dist <= d.saturating_sub(1) {
        Ok(Some(code.words()[idx].clone()))
    } else {
        Ok(None)
    }
}

/// Build a three-block code from two linear MRD codes (equal rank distance
/// `d`) and two representing sets of constant-dimension codes of subspace
/// distance `2d`. The codeword list is materialized, and its distance
/// verified pair-by-pair, when the size is within `cap`.
pub fn build_three_block(
    m1: &RankMetricCode,
    m2: &RankMetricCode,
    m3: &ScRepSet,
    m4: &ScRepSet,
    cap: u128,
) -> Result<ThreeBlockCode> {
    let field = m1.field().clone();
    for f in [m2.field(), m3.field(), m4.field()] {
        if *f != field {
            return Err(Error::MixedFields {
                left: field.q(),
                right: f.q(),
            });
        }
    }
    let k = m1.k();
    if m2.k() != k || m3.k() != k || m4.k() != k {
        return Err(Error::InvalidParams(format!(
            "row counts differ: {} / {} / {} / {}",
            k,
            m2.k(),
            m3.k(),
            m4.k()
        )));
    }
    let (n1, n2) = (m1.m(), m2.m());
    if m3.ambient() != n1 || m4.ambient() != n2 {
        return Err(Error::InvalidParams(format!(
            "block widths differ: rank codes {} x {}, representing sets {} x {}",
            n1,
            n2,
            m3.ambient(),
            m4.ambient()
        )));
    }
    for m in [m1, m2] {
        if !m.is_linear() {
            return Err(Error::NotLinear(
                "three-block constituents must be linear".into(),
            ));
        }
        if !m.is_mrd()? {
            return Err(Error::InvalidParams(
                "rank-metric constituent is not MRD".into(),
            ));
        }
    }
    let d = m1.distance()?;
    if m2.distance()? != d {
        return Err(Error::InvalidParams(format!(
            "rank distances differ: {} vs {}",
            d,
            m2.distance()?
        )));
    }
    let c3 = m3.code();
    let c4 = m4.code();
    for c in [&c3, &c4] {
        if c.len() >= 2 && c.code_distance()? != 2 * d {
            return Err(Error::InvalidParams(format!(
                "constant-dimension constituent has distance {}, need {}",
                c.code_distance()?,
                2 * d
            )));
        }
    }
    let q = field.q() as u128;
    let exp = ((n1 + n2) * (k - d + 1)) as u32;
    let product = q
        .checked_pow(exp)
        .ok_or_else(|| Error::InvalidParams("code size overflows u128".into()))?;
    debug_assert_eq!(product, m1.len() as u128 * m2.len() as u128);
    let size = product + m3.len() as u128 + m4.len() as u128;
    let code = if size <= cap {
        let n = k + n1 + n2;
        let head = Matrix::identity(&field, k);
        let zk = Matrix::zero(&field, k, k);
        let z1 = Matrix::zero(&field, k, n1);
        let z2 = Matrix::zero(&field, k, n2);
        let mut words = Vec::with_capacity(size as usize);
        for a in m1.iter() {
            let left = head.hconcat(a)?;
            for b in m2.iter() {
                words.push(Subspace::from_matrix(&left.hconcat(b)?));
            }
        }
        for m in m3.iter() {
            words.push(Subspace::from_matrix(&zk.hconcat(m)?.hconcat(&z2)?));
        }
        for m in m4.iter() {
            words.push(Subspace::from_matrix(&zk.hconcat(&z1)?.hconcat(m)?));
        }
        let code = SubspaceCode::from_subspaces(&field, n, words)?;
        let (found, i, j) = code.min_distance_pair(u64::MAX)?;
        if found != 2 * d {
            return Err(Error::DistanceMismatch {
                predicted: 2 * d,
                found,
                i,
                j,
            });
        }
        Some(code)
    } else {
        None
    };
    Ok(ThreeBlockCode {
        field,
        k,
        n1,
        n2,
        dist: 2 * d,
        m1: m1.clone(),
        m2: m2.clone(),
        m3: m3.clone(),
        m4: m4.clone(),
        c1: lift(m1)?,
        c2: lift(m2)?,
        c3,
        c4,
        size,
        code,
    })
}

/// Consistency report for the left-block criterion on a two-block code: the
/// closest codeword has a zero left slice exactly when the received space's
/// projection onto the left coordinates has dimension at most half the
/// received dimension. Also checks the overlap bounds satisfied by any
/// decodable received space: `dim(U ∩ V) > K/2` and `dim(U + V) < k + K/2`.
#[derive(Clone, Copy, Debug)]
pub struct LeftBlockReport {
    /// Dimension `K` of the received space.
    pub received_dim: usize,
    /// Dimension of the projection of the received space onto the left
    /// coordinate block.
    pub left_projection_dim: usize,
    /// Whether the received space lies within the unique decoding radius.
    pub decodable: bool,
    /// Index of the closest codeword (always present; meaningful when
    /// `decodable`).
    pub closest_index: usize,
    /// Whether the closest codeword's left slice is zero.
    pub closest_left_zero: bool,
    /// `closest_left_zero == (2 * left_projection_dim <= received_dim)`;
    /// vacuously true when not decodable.
    pub equivalence_holds: bool,
    /// Overlap bounds above; vacuously true when not decodable.
    pub overlap_holds: bool,
}

/// Evaluate the left-block criterion for a received space against a code
/// whose words have a left `left_cols`-column slice that is either zero or
/// of full row rank (the shape produced by [`link`]).
pub fn check_left_block_criterion(
    code: &SubspaceCode,
    left_cols: usize,
    v: &Subspace,
) -> Result<LeftBlockReport> {
    let d = code.code_distance()?;
    check_left_block_criterion_with(code, left_cols, v, d)
}

/// [`check_left_block_criterion`] with the code distance supplied by the
/// caller, saving the pairwise scan when many spaces are checked against the
/// same code.
pub fn check_left_block_criterion_with(
    code: &SubspaceCode,
    left_cols: usize,
    v: &Subspace,
    code_distance: usize,
) -> Result<LeftBlockReport> {
    let d = code_distance;
    let (closest_index, dist) = nearest_codeword(code, v)?;
    let decodable = 2 * dist <= d.saturating_sub(1);
    let received_dim = v.dim();
    let left_projection_dim = v.basis().col_range(0..left_cols).rank();
    let u = &code.words()[closest_index];
    let closest_left_zero = u.basis().col_range(0..left_cols).is_zero();
    let mut equivalence_holds = true;
    let mut overlap_holds = true;
    if decodable {
        equivalence_holds = closest_left_zero == (2 * left_projection_dim <= received_dim);
        let meet = u.intersection_dim(v)?;
        let join = u.dim() + received_dim - meet;
        overlap_holds = 2 * meet > received_dim && 2 * join < 2 * u.dim() + received_dim;
    }
    Ok(LeftBlockReport {
        received_dim,
        left_projection_dim,
        decodable,
        closest_index,
        closest_left_zero,
        equivalence_holds,
        overlap_holds,
    })
}

/// Check that no `rows`-row matrix representation of `v` has a right slice
/// within rank distance `(dr - 1) / 2` of the designated right-block matrix
/// `u2`: returns `true` when every representation stays outside that radius,
/// i.e. when rank-metric decoding of the right block cannot succeed.
///
/// Representations are enumerated as `C * B` over all `rows x dim(v)`
/// coefficient matrices `C` of full column rank, with `B` a fixed basis of
/// `v`; there are at most `q^(rows * dim(v))` candidates, which must fit in
/// `cap`.
pub fn check_rank_decoding_failure(
    v: &Subspace,
    u2: &Matrix,
    rows: usize,
    dr: usize,
    cap: u128,
) -> Result<bool> {
    let field = v.field().clone();
    let n2 = u2.cols();
    if u2.rows() != rows || n2 > v.ambient() {
        return Err(Error::ShapeMismatch {
            op: "rank-decoding check",
            need: format!("{} x (<= {}) right block", rows, v.ambient()),
            got: format!("{} x {}", u2.rows(), n2),
        });
    }
    let kdim = v.dim();
    if kdim > rows {
        return Err(Error::InvalidParams(format!(
            "a {}-dimensional space has no {}-row representation",
            kdim, rows
        )));
    }
    let b2 = v.basis().col_range(v.ambient() - n2..v.ambient());
    let q = field.q();
    let digits = rows * kdim;
    let count = (q as u128)
        .checked_pow(digits as u32)
        .ok_or_else(|| Error::InvalidParams("representation count overflows u128".into()))?;
    if count > cap {
        return Err(Error::CapExceeded { needed: count, cap });
    }
    let mut coeffs = vec![0u16; digits];
    loop {
        let c = Matrix::from_fn(&field, rows, kdim, |r, col| coeffs[r * kdim + col]);
        if c.rank() == kdim {
            let delta = c.mat_mul(&b2)?.sub(u2)?;
            if 2 * delta.rank() <= dr.saturating_sub(1) {
                return Ok(false);
            }
        }
        // odometer over all coefficient matrices
        let mut pos = 0;
        while pos < digits {
            coeffs[pos] += 1;
            if u64::from(coeffs[pos]) < q {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
        if pos == digits {
            return Ok(true);
        }
    }
}

/// A worked instance where rank-metric decoding of the right block must
/// fail: a two-block code over `F_2^16`, a codeword `U`, and a decodable
/// received space `V ⊆ U` (an erasure pattern) such that every matrix
/// representation of `V` keeps its right slice at rank distance at least 2
/// from the codeword's right-block matrix.
#[derive(Clone, Debug)]
pub struct RankPitfall {
    /// The two-block code (10 words, subspace distance 8).
    pub code: LinkageCode,
    /// The transmitted codeword `U = im(U1 | U2)`.
    pub codeword: Subspace,
    /// The codeword's designated right-block matrix `U2`.
    pub right_block: Matrix,
    /// The received space `V`, a 2-dimensional subspace of `U`.
    pub received: Subspace,
    /// Rank distance of the inner rank-metric code.
    pub rank_dist: usize,
}

/// Construct the reference pitfall instance over `F_2` with `k = 4` and
/// two length-8 blocks.
pub fn rank_decoding_pitfall() -> Result<RankPitfall> {
    let field = FiniteField::new(2, 1, None)?;
    let id = Matrix::identity(&field, 4);
    let z4 = Matrix::zero(&field, 4, 4);
    let z8 = Matrix::zero(&field, 4, 8);
    // companion matrix of x^4 + x + 1
    let m = crate::matrix::companion_matrix(&field, &[1, 1, 0, 0, 1])?;
    let reps = ScRepSet::from_matrices(vec![id.hconcat(&id)?, id.hconcat(&z4)?])?;
    let cr = RankMetricCode::from_words(
        vec![
            z8.clone(),
            id.hconcat(&z4)?,
            m.hconcat(&z4)?,
            id.add(&m)?.hconcat(&z4)?,
        ],
        true,
    )?;
    let rank_dist = cr.distance()?;
    let code = link(&reps, &reps, &cr)?;
    let right_block = m.hconcat(&z4)?;
    let codeword = Subspace::from_matrix(&id.hconcat(&id)?.hconcat(&right_block)?);
    let received = Subspace::from_matrix(&Matrix::from_rows(
        &field,
        &[
            vec![1, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0],
            vec![0, 1, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 0, 0],
        ],
    )?);
    Ok(RankPitfall {
        code,
        codeword,
        right_block,
        received,
        rank_dist,
    })
}
