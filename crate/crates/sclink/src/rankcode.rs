//! Rank-metric codes: sets of `k x m` matrices under the rank distance.
//!
//! The rank distance between two matrices is the rank of their difference.
//! A code is maximum rank distance (MRD) when it meets the Singleton-like
//! bound `|C| = q^{m (k - d + 1)}` (for `m >= k`). Two MRD families are
//! provided: the orbit of a full-rank matrix under a companion matrix of
//! full multiplicative order, and Gabidulin codes obtained by evaluating
//! linearized polynomials over `GF(q^m)` and expanding the values into
//! coordinates over `GF(q)`.
//!
//! Codes are materialized word lists (capped); linear codes additionally
//! carry a generator list. Linearity is never taken on trust: a claimed
//! linear code is checked by counting, `|C| = q^rank(span)`, which for a
//! distinct word list is equivalent to closure under addition and scalars.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use crate::field::FiniteField;
use crate::matrix::{parse_row, Matrix};
use crate::subspace::{Subspace, SubspaceCode};
use crate::{Error, FieldExtension, Result, DEFAULT_PAIR_CAP, DEFAULT_WORD_CAP};

/// Rank distance `rank(a - b)` between two matrices of equal shape.
pub fn rank_distance(a: &Matrix, b: &Matrix) -> Result<usize> {
    Ok(a.sub(b)?.rank())
}

/// Size of an MRD code in `F_q^{k x m}` with rank distance `d`:
/// `q^{m (k - d + 1)}`, saturating at `u128::MAX`. Requires
/// `1 <= d <= k <= m`.
pub fn mrd_size(q: u64, k: usize, m: usize, d: usize) -> Result<u128> {
    if m < k {
        return Err(Error::BadOrientation { k, m });
    }
    if d == 0 || d > k {
        return Err(Error::InvalidParams(format!(
            "rank distance must satisfy 1 <= d <= k (got d = {d}, k = {k})"
        )));
    }
    let exponent = m * (k - d + 1);
    Ok((q as u128).saturating_pow(exponent as u32))
}

/// A materialized rank-metric code.
#[derive(Clone, Debug)]
pub struct RankMetricCode {
    field: FiniteField,
    k: usize,
    m: usize,
    words: Vec<Matrix>,
    linear: bool,
    generators: Option<Vec<Matrix>>,
    distance: OnceLock<usize>,
}

impl RankMetricCode {
    /// Builds a code from a distinct word list. With `claim_linear` the set
    /// is verified to be a subspace of `F_q^{k x m}` (by the counting
    /// argument) and its elimination basis is kept as the generator list.
    pub fn from_words(words: Vec<Matrix>, claim_linear: bool) -> Result<RankMetricCode> {
        let Some(first) = words.first() else {
            return Err(Error::EmptyCode);
        };
        let field = first.field().clone();
        let (k, m) = (first.rows(), first.cols());
        if k == 0 || m == 0 {
            return Err(Error::InvalidParams(
                "rank-metric words must have positive shape".into(),
            ));
        }
        let mut seen: HashMap<&Matrix, usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if *w.field() != field {
                return Err(Error::MixedFields {
                    left: field.q(),
                    right: w.field().q(),
                });
            }
            if w.rows() != k || w.cols() != m {
                return Err(Error::ShapeMismatch {
                    op: "rank-metric code",
                    need: format!("{k}x{m}"),
                    got: format!("{}x{} at index {i}", w.rows(), w.cols()),
                });
            }
            if let Some(&first) = seen.get(w) {
                return Err(Error::DuplicateCodeword { first, second: i });
            }
            seen.insert(w, i);
        }
        let generators = if claim_linear {
            Some(verify_linear(&field, k, m, &words)?)
        } else {
            None
        };
        Ok(RankMetricCode {
            field,
            k,
            m,
            words,
            linear: claim_linear,
            generators,
            distance: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Row count of every word.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Column count of every word.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one word
    }

    pub fn words(&self) -> &[Matrix] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &Matrix {
        &self.words[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Matrix> {
        self.words.iter()
    }

    /// Whether the code was constructed (and verified) linear.
    pub fn is_linear(&self) -> bool {
        self.linear
    }

    /// Generator words of a linear code (an `F_q`-basis of the span).
    pub fn generators(&self) -> Option<&[Matrix]> {
        self.generators.as_deref()
    }

    /// Minimum rank distance with the default pair cap.
    pub fn distance(&self) -> Result<usize> {
        self.distance_capped(DEFAULT_PAIR_CAP)
    }

    /// Minimum rank distance. Linear codes scan nonzero words; general codes
    /// scan pairs (capped). A singleton takes the conventional value
    /// `min(k, m)`.
    pub fn distance_capped(&self, cap: u64) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let n = self.words.len();
        let d = if n == 1 {
            self.k.min(self.m)
        } else if self.linear {
            self.words
                .iter()
                .filter(|w| !w.is_zero())
                .map(|w| w.rank())
                .min()
                .expect("a linear code with more than one word has a nonzero word")
        } else {
            let pairs = n as u128 * (n as u128 - 1) / 2;
            if pairs > cap as u128 {
                return Err(Error::CapExceeded {
                    needed: pairs,
                    cap: cap as u128,
                });
            }
            let mut best = usize::MAX;
            for i in 0..n {
                for j in i + 1..n {
                    best = best.min(rank_distance(&self.words[i], &self.words[j])?);
                }
            }
            best
        };
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Whether the code meets the MRD size bound for its own minimum
    /// distance. Requires the `m >= k` orientation.
    pub fn is_mrd(&self) -> Result<bool> {
        if self.m < self.k {
            return Err(Error::BadOrientation {
                k: self.k,
                m: self.m,
            });
        }
        let d = self.distance()?;
        Ok(self.words.len() as u128 == mrd_size(self.field.q(), self.k, self.m, d)?)
    }

    /// Serializes to the rank-code file format: header
    /// `q k m N linear:{0,1}`, then one matrix text block per word separated
    /// by blank lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} {} {} {} linear:{}",
            self.field.q(),
            self.k,
            self.m,
            self.words.len(),
            u8::from(self.linear)
        )
        .unwrap();
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses the rank-code file format. The field is reconstructed from `q`
    /// with the built-in modulus; a `linear:1` header is re-verified. Lines
    /// starting with `#` are comments.
    pub fn parse_text(text: &str) -> Result<RankMetricCode> {
        let mut lines = text.lines().filter(|l| !l.trim_start().starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty file".into()))?;
        let tokens: Vec<&str> = header.split_whitespace().collect();
        if tokens.len() != 5 {
            return Err(Error::Parse(format!(
                "expected header `q k m N linear:{{0,1}}`, got {header:?}"
            )));
        }
        let q: u64 = tokens[0]
            .parse()
            .map_err(|_| Error::Parse("bad q in header".into()))?;
        let k: usize = tokens[1]
            .parse()
            .map_err(|_| Error::Parse("bad k in header".into()))?;
        let m: usize = tokens[2]
            .parse()
            .map_err(|_| Error::Parse("bad m in header".into()))?;
        let count: usize = tokens[3]
            .parse()
            .map_err(|_| Error::Parse("bad N in header".into()))?;
        let linear = match tokens[4] {
            "linear:0" => false,
            "linear:1" => true,
            other => return Err(Error::Parse(format!("bad linear flag {other:?}"))),
        };
        let field = FiniteField::from_order(q)?;
        let mut words = Vec::with_capacity(count);
        let mut block: Vec<Vec<u64>> = Vec::new();
        for line in lines.chain(std::iter::once("")) {
            let line = line.trim();
            if line.is_empty() {
                if !block.is_empty() {
                    words.push(Matrix::from_rows(&field, &block)?);
                    block.clear();
                }
            } else {
                block.push(parse_row(line)?);
            }
        }
        if words.len() != count {
            return Err(Error::Parse(format!(
                "header promises {count} words, found {}",
                words.len()
            )));
        }
        for w in &words {
            if w.rows() != k || w.cols() != m {
                return Err(Error::Parse(format!(
                    "word shape {}x{} does not match header {k}x{m}",
                    w.rows(),
                    w.cols()
                )));
            }
        }
        RankMetricCode::from_words(words, linear)
    }
}

/// Counting-based linearity check; returns an elimination basis of the span.
fn verify_linear(
    field: &FiniteField,
    k: usize,
    m: usize,
    words: &[Matrix],
) -> Result<Vec<Matrix>> {
    // flatten each word to a row of length k*m and find a basis
    let mut basis_rows: Vec<Matrix> = Vec::new();
    let mut flat_basis = Matrix::zero(field, 0, k * m);
    for w in words {
        let flat = Matrix::from_fn(field, 1, k * m, |_, c| w.get(c / m, c % m));
        let stacked = flat_basis.vstack(&flat)?;
        if stacked.rank() > flat_basis.rows() {
            flat_basis = stacked.rref().mat.row_range(0..flat_basis.rows() + 1);
            basis_rows.push(w.clone());
        }
    }
    let r = basis_rows.len() as u32;
    let span_size = (field.q() as u128).saturating_pow(r);
    if words.len() as u128 != span_size {
        return Err(Error::NotLinear(format!(
            "{} distinct words span a subspace of size q^{r} = {span_size}",
            words.len()
        )));
    }
    Ok(basis_rows)
}

/// The orbit code `{0} ∪ {W M^l : l = 0..q^m - 2}` of a full-row-rank
/// `k x m` matrix `W` under an `m x m` matrix `M` of full multiplicative
/// order `q^m - 1` (for example a companion matrix of a primitive
/// polynomial). The result is a linear MRD code of size `q^m` with rank
/// distance `k`. Deficient order is detected as a repeated orbit element.
pub fn companion_mrd(w: &Matrix, m_mat: &Matrix) -> Result<RankMetricCode> {
    let field = w.field().clone();
    if *m_mat.field() != field {
        return Err(Error::MixedFields {
            left: field.q(),
            right: m_mat.field().q(),
        });
    }
    let (k, m) = (w.rows(), w.cols());
    if m_mat.rows() != m || m_mat.cols() != m {
        return Err(Error::ShapeMismatch {
            op: "companion_mrd",
            need: format!("{m}x{m} orbit matrix"),
            got: format!("{}x{}", m_mat.rows(), m_mat.cols()),
        });
    }
    let rank = w.rank();
    if rank != k {
        return Err(Error::RankDeficient { rank, rows: k });
    }
    let order = (field.q() as u128).saturating_pow(m as u32);
    if order > (DEFAULT_WORD_CAP as u128) {
        return Err(Error::CapExceeded {
            needed: order,
            cap: DEFAULT_WORD_CAP as u128,
        });
    }
    let order = order as u64 - 1; // multiplicative order to walk
    let mut words = vec![Matrix::zero(&field, k, m)];
    let mut seen: HashMap<Matrix, u64> = HashMap::new();
    let mut x = w.clone();
    for l in 0..order {
        if let Some(&first) = seen.get(&x) {
            return Err(Error::InvalidParams(format!(
                "orbit repeats at steps {first} and {l}: the matrix does not have full \
                 multiplicative order q^m - 1"
            )));
        }
        seen.insert(x.clone(), l);
        words.push(x.clone());
        x = x.mat_mul(m_mat)?;
    }
    if x != *w {
        return Err(Error::InvalidParams(
            "orbit does not close after q^m - 1 steps: the matrix does not have full \
             multiplicative order"
                .into(),
        ));
    }
    RankMetricCode::from_words(words, true)
}

/// Gabidulin code in `F_q^{k x m}`: evaluations of the linearized
/// polynomials `f(x) = f_0 x + f_1 x^q + ... + f_{k-d} x^{q^{k-d}}` at the
/// points `1, α, ..., α^{k-1}` of `GF(q^m)` (with `α` its generator),
/// expanded row-wise into coordinates over `GF(q)`. Linear and MRD with rank
/// distance `d`; size `q^{m (k - d + 1)}`. Requires `1 <= d <= k <= m` and
/// the size to fit under `cap`.
pub fn gabidulin_capped(
    base: &FiniteField,
    k: usize,
    m: usize,
    d: usize,
    cap: u64,
) -> Result<RankMetricCode> {
    if d == 0 || d > k {
        return Err(Error::InvalidParams(format!(
            "need 1 <= d <= k, got d = {d}, k = {k}"
        )));
    }
    if k > m {
        return Err(Error::BadOrientation { k, m });
    }
    let size = mrd_size(base.q(), k, m, d)?;
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            needed: size,
            cap: cap as u128,
        });
    }
    let ext = FieldExtension::new(base, m)?;
    let top = ext.top().clone();
    let alpha = ext.alpha();
    let terms = k - d + 1;
    // pow_table[j][i] = (α^j)^(q^i)
    let pow_table: Vec<Vec<u16>> = (0..k)
        .map(|j| {
            let mut x = top.pow(alpha, j as u64);
            (0..terms)
                .map(|_| {
                    let cur = x;
                    x = ext.frobenius(x);
                    cur
                })
                .collect()
        })
        .collect();
    let build_word = |coeffs: &[u16]| -> Matrix {
        let mut rows = Matrix::zero(base, k, m);
        for (j, pows) in pow_table.iter().enumerate() {
            let mut acc = 0u16;
            for (i, &f) in coeffs.iter().enumerate() {
                acc = top.add(acc, top.mul(f, pows[i]));
            }
            for (c, v) in ext.to_coords(acc).into_iter().enumerate() {
                rows.set(j, c, v);
            }
        }
        rows
    };
    let mut words = Vec::with_capacity(size as usize);
    let mut coeffs = vec![0u16; terms];
    loop {
        words.push(build_word(&coeffs));
        let mut i = 0;
        loop {
            if i == terms {
                return RankMetricCode::from_words(words, true);
            }
            if (coeffs[i] as u64) + 1 < top.q() {
                coeffs[i] += 1;
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// [`gabidulin_capped`] with the default word cap.
pub fn gabidulin(base: &FiniteField, k: usize, m: usize, d: usize) -> Result<RankMetricCode> {
    gabidulin_capped(base, k, m, d, DEFAULT_WORD_CAP)
}

/// Lifts a rank-metric code to the subspace code
/// `{ rowspace(I_k | A) : A ∈ C }` in `F_q^{k + m}`: a constant-dimension
/// code with `N = |C|`, `k = k`, and subspace distance `2 d_R`.
pub fn lift(code: &RankMetricCode) -> Result<SubspaceCode> {
    let field = code.field().clone();
    let k = code.k();
    let m = code.m();
    let mut out = SubspaceCode::new(&field, k + m);
    for a in code.iter() {
        let mut basis = Matrix::zero(&field, k, k + m);
        for r in 0..k {
            basis.set(r, r, 1);
            for c in 0..m {
                basis.set(r, k + c, a.get(r, c));
            }
        }
        // (I | A) is already reduced row echelon
        out.push(Subspace::from_canonical_unchecked(basis))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::companion_matrix;

    fn gf(q: u64) -> FiniteField {
        FiniteField::from_order(q).unwrap()
    }

    #[test]
    fn rank_distance_is_a_metric_on_samples() {
        let f = gf(3);
        let mats: Vec<Matrix> = (0..30)
            .map(|s| Matrix::from_fn(&f, 2, 3, |r, c| ((s * 7 + r * 5 + c * 3) % 3) as u16))
            .collect();
        for a in &mats {
            assert_eq!(rank_distance(a, a).unwrap(), 0);
            for b in &mats {
                let d = rank_distance(a, b).unwrap();
                assert_eq!(d, rank_distance(b, a).unwrap());
                assert_eq!(d == 0, a == b);
                for c in &mats {
                    assert!(
                        rank_distance(a, c).unwrap()
                            <= d + rank_distance(b, c).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn mrd_size_values_and_errors() {
        assert_eq!(mrd_size(2, 3, 8, 3).unwrap(), 1 << 8);
        assert_eq!(mrd_size(2, 2, 4, 2).unwrap(), 16);
        assert_eq!(mrd_size(2, 3, 4, 2).unwrap(), 256);
        assert_eq!(mrd_size(3, 2, 2, 1).unwrap(), 81);
        assert!(matches!(mrd_size(2, 4, 3, 2), Err(Error::BadOrientation { .. })));
        assert!(mrd_size(2, 3, 4, 0).is_err());
        assert!(mrd_size(2, 3, 4, 4).is_err());
    }

    #[test]
    fn from_words_validates() {
        let f = gf(2);
        let a = Matrix::from_rows(&f, &[vec![1, 0]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![0, 1]]).unwrap();
        assert!(matches!(
            RankMetricCode::from_words(vec![a.clone(), a.clone()], false),
            Err(Error::DuplicateCodeword { first: 0, second: 1 })
        ));
        assert!(RankMetricCode::from_words(vec![], false).is_err());
        // {a, b} is not closed under addition
        assert!(matches!(
            RankMetricCode::from_words(vec![a.clone(), b.clone()], true),
            Err(Error::NotLinear(_))
        ));
        // {0, a} is closed
        let zero = Matrix::zero(&f, 1, 2);
        let code = RankMetricCode::from_words(vec![zero, a], true).unwrap();
        assert!(code.is_linear());
        assert_eq!(code.generators().unwrap().len(), 1);
    }

    #[test]
    fn companion_orbit_of_a_row_vector() {
        let f = gf(2);
        let w = Matrix::from_rows(&f, &[vec![1, 0]]).unwrap();
        let m = companion_matrix(&f, &[1, 1, 1]).unwrap();
        let code = companion_mrd(&w, &m).unwrap();
        assert_eq!(code.len(), 4);
        let rows: Vec<Vec<u16>> = code.iter().map(|w| w.row(0)).collect();
        assert_eq!(
            rows,
            vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]
        );
        assert!(code.is_linear());
        assert_eq!(code.distance().unwrap(), 1);
        assert!(code.is_mrd().unwrap());
    }

    #[test]
    fn companion_mrd_meets_the_bound() {
        let f = gf(2);
        let w = Matrix::from_rows(&f, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap();
        let m = companion_matrix(&f, &[1, 1, 0, 0, 1]).unwrap();
        let code = companion_mrd(&w, &m).unwrap();
        assert_eq!(code.len(), 16);
        assert_eq!(code.distance().unwrap(), 2);
        assert!(code.is_mrd().unwrap());
        // every nonzero word has full row rank
        assert!(code.iter().skip(1).all(|w| w.rank() == 2));
    }

    #[test]
    fn companion_mrd_rejects_deficient_order() {
        let f = gf(2);
        // x^4 + x^3 + x^2 + x + 1 is irreducible with root order 5
        let m = Matrix::from_rows(
            &f,
            &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 1, 1]],
        )
        .unwrap();
        let w = Matrix::from_rows(&f, &[vec![1, 0, 0, 0]]).unwrap();
        match companion_mrd(&w, &m) {
            Err(Error::InvalidParams(msg)) => assert!(msg.contains("full multiplicative order")),
            other => panic!("unexpected: {other:?}"),
        }
        // rank-deficient W
        let bad_w = Matrix::zero(&f, 1, 4);
        let good_m = companion_matrix(&f, &[1, 1, 0, 0, 1]).unwrap();
        assert!(matches!(
            companion_mrd(&bad_w, &good_m),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn gabidulin_parameters_and_distance() {
        let f2 = gf(2);
        for (k, m, d) in [(2, 4, 2), (3, 4, 2), (2, 3, 1), (3, 3, 3)] {
            let code = gabidulin(&f2, k, m, d).unwrap();
            assert_eq!(code.len() as u128, mrd_size(2, k, m, d).unwrap());
            assert!(code.is_linear());
            assert_eq!(code.distance().unwrap(), d, "distance for ({k},{m},{d})");
            assert!(code.is_mrd().unwrap());
        }
    }

    #[test]
    fn gabidulin_over_extension_base() {
        let f4 = gf(4);
        let code = gabidulin(&f4, 2, 2, 1).unwrap();
        assert_eq!(code.len(), 256);
        assert_eq!(code.field().q(), 4);
        assert_eq!(code.distance().unwrap(), 1);
        assert!(code.is_mrd().unwrap());

        let f3 = gf(3);
        let code = gabidulin(&f3, 2, 3, 2).unwrap();
        assert_eq!(code.len(), 27);
        assert_eq!(code.distance().unwrap(), 2);
    }

    #[test]
    fn gabidulin_rejects_bad_parameters() {
        let f = gf(2);
        assert!(matches!(
            gabidulin(&f, 3, 2, 1),
            Err(Error::BadOrientation { .. })
        ));
        assert!(gabidulin(&f, 2, 4, 0).is_err());
        assert!(gabidulin(&f, 2, 4, 3).is_err());
        assert!(matches!(
            gabidulin_capped(&f, 2, 4, 2, 8),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn lift_doubles_the_rank_distance() {
        let f = gf(2);
        let code = gabidulin(&f, 2, 3, 2).unwrap();
        let lifted = lift(&code).unwrap();
        assert_eq!(lifted.len(), code.len());
        assert_eq!(lifted.ambient(), 5);
        assert_eq!(lifted.constant_dimension(), Some(2));
        assert_eq!(
            lifted.code_distance().unwrap(),
            2 * code.distance().unwrap()
        );
    }

    #[test]
    fn text_roundtrip() {
        let f = gf(2);
        let w = Matrix::from_rows(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
        let m = companion_matrix(&f, &[1, 1, 1]).unwrap();
        let code = companion_mrd(&w, &m).unwrap();
        let text = code.to_text();
        assert!(text.starts_with("2 2 2 4 linear:1\n"));
        let parsed = RankMetricCode::parse_text(&text).unwrap();
        assert_eq!(parsed.words(), code.words());
        assert!(parsed.is_linear());
    }

    #[test]
    fn parse_rejects_inconsistent_files() {
        assert!(RankMetricCode::parse_text("").is_err());
        assert!(RankMetricCode::parse_text("2 1 2 1\n1 0\n").is_err()); // missing flag
        assert!(RankMetricCode::parse_text("2 1 2 2 linear:0\n1 0\n").is_err()); // count
        // a file claiming linearity is re-verified
        let bad = "2 1 2 2 linear:1\n1 0\n\n0 1\n";
        assert!(matches!(
            RankMetricCode::parse_text(bad),
            Err(Error::NotLinear(_))
        ));
    }
}
