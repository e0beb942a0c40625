//! Subspaces of `F_q^n`, the subspace metric, and subspace codes.
//!
//! A [`Subspace`] is stored as its reduced-row-echelon basis, which is a
//! canonical form: two subspaces are equal exactly when their stored bases
//! are identical, so subspaces hash and compare cheaply.
//!
//! The subspace distance between `V` and `W` is
//! `dim V + dim W - 2 dim(V ∩ W)`, computed as
//! `2 rank([basis V; basis W]) - dim V - dim W` — exact integer arithmetic,
//! one elimination per pair.
//!
//! A [`SubspaceCode`] is an ordered collection of pairwise-distinct
//! subspaces; a [`ScRepSet`] is an ordered set of full-row-rank matrices with
//! pairwise distinct row spaces, kept verbatim. The two are deliberately
//! separate: constructions that link codes through matrix representatives
//! depend on which basis was chosen, so representative matrices are never
//! canonicalized.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::field::FiniteField;
use crate::matrix::{rank_of_vstack, Matrix};
use crate::{Error, Result, DEFAULT_PAIR_CAP};

/// A subspace of `F_q^n`, held as its canonical (reduced row echelon) basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace<dim {} of F_{}^{}>",
            self.dim(),
            self.field().q(),
            self.ambient()
        )
    }
}

impl Subspace {
    /// Row space of an arbitrary matrix.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let r = m.rref();
        Subspace {
            basis: r.mat.row_range(0..r.rank),
        }
    }

    /// Wraps a matrix that is already a reduced echelon basis with full row
    /// rank. Used by enumeration to avoid re-reducing canonical output.
    pub(crate) fn from_canonical_unchecked(basis: Matrix) -> Subspace {
        debug_assert_eq!(basis.rref().mat, basis, "basis must be canonical");
        Subspace { basis }
    }

    /// The zero subspace of `F_q^n`.
    pub fn zero(field: &FiniteField, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::zero(field, 0, n),
        }
    }

    /// The full space `F_q^n`.
    pub fn full(field: &FiniteField, n: usize) -> Subspace {
        Subspace {
            basis: Matrix::identity(field, n),
        }
    }

    pub fn field(&self) -> &FiniteField {
        self.basis.field()
    }

    /// Dimension of the ambient space.
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Canonical basis (one row per dimension).
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::MixedFields {
                left: self.field().q(),
                right: other.field().q(),
            });
        }
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    /// Dimension of `self + other`.
    pub fn sum_dim(&self, other: &Subspace) -> Result<usize> {
        self.compatible(other)?;
        rank_of_vstack(&self.basis, &other.basis)
    }

    /// Dimension of `self ∩ other`.
    pub fn intersection_dim(&self, other: &Subspace) -> Result<usize> {
        Ok(self.dim() + other.dim() - self.sum_dim(other)?)
    }

    /// Subspace distance `dim V + dim W - 2 dim(V ∩ W)`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        let sum = self.sum_dim(other)?;
        Ok(2 * sum - self.dim() - other.dim())
    }

    /// Whether `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum_dim(other)? == self.dim())
    }

    /// Whether the vector (given as encodings) lies in the subspace.
    pub fn contains_vector(&self, row: &[u16]) -> Result<bool> {
        if row.len() != self.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: row.len(),
            });
        }
        let v = Matrix::from_fn(self.field(), 1, row.len(), |_, c| row[c]);
        Ok(rank_of_vstack(&self.basis, &v)? == self.dim())
    }

    /// Calls `f` with every vector of the subspace, the zero vector included
    /// (`q^dim` calls), in a fixed order given by the coefficient odometer.
    pub fn for_each_vector(&self, mut f: impl FnMut(&[u16])) {
        let field = self.field().clone();
        let k = self.dim();
        let n = self.ambient();
        let q = field.q();
        let mut coeffs = vec![0u16; k];
        let mut row = vec![0u16; n];
        loop {
            for c in 0..n {
                let mut acc = 0u16;
                for (i, &co) in coeffs.iter().enumerate() {
                    if co != 0 {
                        acc = field.add(acc, field.mul(co, self.basis.get(i, c)));
                    }
                }
                row[c] = acc;
            }
            f(&row);
            // advance odometer
            let mut i = 0;
            loop {
                if i == k {
                    return;
                }
                if (coeffs[i] as u64) + 1 < q {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

/// Subspace distance between two subspaces of the same ambient space.
pub fn subspace_distance(v: &Subspace, w: &Subspace) -> Result<usize> {
    v.distance(w)
}

/// An ordered collection of pairwise-distinct subspaces of a common ambient
/// space. Duplicates are rejected at insertion with both indices reported.
#[derive(Clone, Debug)]
pub struct SubspaceCode {
    field: FiniteField,
    n: usize,
    words: Vec<Subspace>,
    index: HashMap<Subspace, usize>,
    distance: OnceLock<usize>,
}

impl SubspaceCode {
    /// Empty code in `F_q^n`.
    pub fn new(field: &FiniteField, n: usize) -> SubspaceCode {
        SubspaceCode {
            field: field.clone(),
            n,
            words: Vec::new(),
            index: HashMap::new(),
            distance: OnceLock::new(),
        }
    }

    /// Collects subspaces into a code, rejecting duplicates.
    pub fn from_subspaces(
        field: &FiniteField,
        n: usize,
        words: impl IntoIterator<Item = Subspace>,
    ) -> Result<SubspaceCode> {
        let mut code = SubspaceCode::new(field, n);
        for w in words {
            code.push(w)?;
        }
        Ok(code)
    }

    /// Appends a codeword; errors on ambient mismatch or duplicates.
    pub fn push(&mut self, s: Subspace) -> Result<()> {
        if *s.field() != self.field {
            return Err(Error::MixedFields {
                left: self.field.q(),
                right: s.field().q(),
            });
        }
        if s.ambient() != self.n {
            return Err(Error::AmbientMismatch {
                left: self.n,
                right: s.ambient(),
            });
        }
        if let Some(&first) = self.index.get(&s) {
            return Err(Error::DuplicateCodeword {
                first,
                second: self.words.len(),
            });
        }
        self.index.insert(s.clone(), self.words.len());
        self.words.push(s);
        self.distance = OnceLock::new();
        Ok(())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Ambient dimension `n`.
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.words.iter()
    }

    /// Index of a codeword, if present.
    pub fn position(&self, s: &Subspace) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `Some(k)` when every codeword has dimension `k`.
    pub fn constant_dimension(&self) -> Option<usize> {
        let first = self.words.first()?.dim();
        self.words
            .iter()
            .all(|w| w.dim() == first)
            .then_some(first)
    }

    /// Minimum distance with the default pair cap.
    pub fn code_distance(&self) -> Result<usize> {
        self.code_distance_capped(DEFAULT_PAIR_CAP)
    }

    /// Minimum subspace distance over all unordered codeword pairs. A
    /// single-word constant-dimension code takes the conventional value
    /// `min(2k, 2(n - k))`. Errors when empty or when the pair count exceeds
    /// `cap`.
    pub fn code_distance_capped(&self, cap: u64) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let d = self.min_distance_pair(cap)?.0;
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Minimum distance together with a witness pair of codeword indices.
    /// For a singleton code the witness is `(0, 0)`.
    pub fn min_distance_pair(&self, cap: u64) -> Result<(usize, usize, usize)> {
        let n_words = self.words.len();
        if n_words == 0 {
            return Err(Error::EmptyCode);
        }
        if n_words == 1 {
            let k = self.words[0].dim();
            return Ok(((2 * k).min(2 * (self.n - k)), 0, 0));
        }
        let pairs = n_words as u128 * (n_words as u128 - 1) / 2;
        if pairs > cap as u128 {
            return Err(Error::CapExceeded {
                needed: pairs,
                cap: cap as u128,
            });
        }
        let mut best = (usize::MAX, 0, 0);
        for i in 0..n_words {
            for j in i + 1..n_words {
                let d = self.words[i].distance(&self.words[j])?;
                if d < best.0 {
                    best = (d, i, j);
                    if d == 0 {
                        return Ok(best);
                    }
                }
            }
        }
        Ok(best)
    }

    /// Histogram of pairwise distances over unordered pairs.
    pub fn distance_distribution(&self, cap: u64) -> Result<BTreeMap<usize, u64>> {
        let n_words = self.words.len();
        if n_words == 0 {
            return Err(Error::EmptyCode);
        }
        let pairs = n_words as u128 * (n_words as u128 - 1) / 2;
        if pairs > cap as u128 {
            return Err(Error::CapExceeded {
                needed: pairs,
                cap: cap as u128,
            });
        }
        let mut hist = BTreeMap::new();
        for i in 0..n_words {
            for j in i + 1..n_words {
                let d = self.words[i].distance(&self.words[j])?;
                *hist.entry(d).or_insert(0u64) += 1;
            }
        }
        Ok(hist)
    }

    /// Serializes to the subspace-code file format: header `q n k N`
    /// (`k = -1` for mixed dimensions), then for each codeword a line
    /// `dim <k_i>` followed by its canonical basis in the matrix text format.
    pub fn to_text(&self) -> String {
        let k = self
            .constant_dimension()
            .map_or(-1, |k| k as i64);
        emit_code_file(
            self.field.q(),
            self.n,
            k,
            self.words.iter().map(|w| w.basis()),
        )
    }

    /// Parses the subspace-code file format. Each printed matrix is taken as
    /// a basis of its row space (reduced if necessary).
    pub fn parse_text(text: &str) -> Result<SubspaceCode> {
        let (field, n, _, mats) = parse_code_file(text)?;
        let mut code = SubspaceCode::new(&field, n);
        for m in &mats {
            code.push(Subspace::from_matrix(m))?;
        }
        Ok(code)
    }
}

/// Writes the shared code/representative file layout.
fn emit_code_file<'a>(
    q: u64,
    n: usize,
    k: i64,
    mats: impl Iterator<Item = &'a Matrix>,
) -> String {
    use std::fmt::Write as _;
    let mats: Vec<&Matrix> = mats.collect();
    let mut out = String::new();
    writeln!(out, "{q} {n} {k} {}", mats.len()).unwrap();
    for m in mats {
        writeln!(out, "dim {}", m.rows()).unwrap();
        out.push_str(&m.to_string());
    }
    out
}

/// Reads the shared layout back: header values plus the matrices exactly as
/// printed (no reduction). Lines starting with `#` are comments.
fn parse_code_file(text: &str) -> Result<(FiniteField, usize, i64, Vec<Matrix>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty file".into()))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 {
        return Err(Error::Parse(format!(
            "expected header `q n k N`, got {header:?}"
        )));
    }
    let q: u64 = tokens[0]
        .parse()
        .map_err(|_| Error::Parse("bad q in header".into()))?;
    let n: usize = tokens[1]
        .parse()
        .map_err(|_| Error::Parse("bad n in header".into()))?;
    let k: i64 = tokens[2]
        .parse()
        .map_err(|_| Error::Parse("bad k in header".into()))?;
    let count: usize = tokens[3]
        .parse()
        .map_err(|_| Error::Parse("bad N in header".into()))?;
    let field = FiniteField::from_order(q)?;
    let mut mats = Vec::with_capacity(count);
    while let Some(line) = lines.next() {
        let line = line.trim();
        let Some(dim_str) = line.strip_prefix("dim ") else {
            return Err(Error::Parse(format!("expected `dim <k>` line, got {line:?}")));
        };
        let dim: usize = dim_str
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad dimension {dim_str:?}")))?;
        if k >= 0 && dim != k as usize {
            return Err(Error::Parse(format!(
                "entry of dimension {dim} in a file declaring k = {k}"
            )));
        }
        let mut rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let row_line = lines
                .next()
                .ok_or_else(|| Error::Parse("file ends inside a matrix block".into()))?;
            let row = crate::matrix::parse_row(row_line)?;
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row of length {} in a file declaring n = {n}",
                    row.len()
                )));
            }
            rows.push(row);
        }
        let m = if dim == 0 {
            Matrix::zero(&field, 0, n)
        } else {
            Matrix::from_rows(&field, &rows)?
        };
        mats.push(m);
    }
    if mats.len() != count {
        return Err(Error::Parse(format!(
            "header promises {count} entries, found {}",
            mats.len()
        )));
    }
    Ok((field, n, k, mats))
}

/// An ordered set of full-row-rank `k x n` matrices with pairwise distinct
/// row spaces. Matrices are kept exactly as given — constructions built on
/// representatives are sensitive to the choice of basis, so no
/// canonicalization ever happens here.
#[derive(Clone, Debug)]
pub struct ScRepSet {
    field: FiniteField,
    k: usize,
    n: usize,
    mats: Vec<Matrix>,
}

impl ScRepSet {
    /// Validates and wraps representative matrices: non-empty, uniform shape
    /// and field, full row rank, pairwise distinct row spaces. Order is
    /// preserved.
    pub fn from_matrices(mats: Vec<Matrix>) -> Result<ScRepSet> {
        let Some(first) = mats.first() else {
            return Err(Error::EmptyCode);
        };
        let field = first.field().clone();
        let (k, n) = (first.rows(), first.cols());
        let mut seen: HashMap<Subspace, usize> = HashMap::new();
        for (i, m) in mats.iter().enumerate() {
            if *m.field() != field {
                return Err(Error::MixedFields {
                    left: field.q(),
                    right: m.field().q(),
                });
            }
            if m.rows() != k || m.cols() != n {
                return Err(Error::ShapeMismatch {
                    op: "representing set",
                    need: format!("{k}x{n}"),
                    got: format!("{}x{} at index {i}", m.rows(), m.cols()),
                });
            }
            let rank = m.rank();
            if rank != k {
                return Err(Error::RankDeficient { rank, rows: k });
            }
            let space = Subspace::from_matrix(m);
            if let Some(&first) = seen.get(&space) {
                return Err(Error::DuplicateRowSpace { first, second: i });
            }
            seen.insert(space, i);
        }
        Ok(ScRepSet {
            field,
            k,
            n,
            mats,
        })
    }

    /// Representatives of a constant-dimension code: its canonical bases, in
    /// codeword order.
    pub fn from_code(code: &SubspaceCode) -> Result<ScRepSet> {
        let Some(k) = code.constant_dimension() else {
            let dims: Vec<usize> = code.words().iter().map(|w| w.dim()).collect();
            let hi = dims.iter().copied().max().unwrap_or(0);
            let lo = dims.iter().copied().min().unwrap_or(0);
            return Err(if code.is_empty() {
                Error::EmptyCode
            } else {
                Error::MixedDimension(lo, hi)
            });
        };
        let _ = k;
        ScRepSet::from_matrices(code.words().iter().map(|w| w.basis().clone()).collect())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    /// Row count of every representative.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Column count (ambient dimension).
    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one matrix
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Matrix> {
        self.mats.iter()
    }

    /// The represented code: row spaces in representative order.
    pub fn code(&self) -> SubspaceCode {
        SubspaceCode::from_subspaces(
            &self.field,
            self.n,
            self.mats.iter().map(Subspace::from_matrix),
        )
        .expect("row spaces are distinct by construction")
    }

    /// Serializes the representatives verbatim in the subspace-code file
    /// format (all entries share `dim k`).
    pub fn to_text(&self) -> String {
        emit_code_file(self.field.q(), self.n, self.k as i64, self.mats.iter())
    }

    /// Parses the subspace-code file format, keeping every printed matrix
    /// exactly as written — the result represents the same code as
    /// [`SubspaceCode::parse_text`] would produce, but preserves the file's
    /// choice of bases.
    pub fn parse_text(text: &str) -> Result<ScRepSet> {
        let (_, _, _, mats) = parse_code_file(text)?;
        ScRepSet::from_matrices(mats)
    }
}

/// Gaussian binomial `[n choose k]_q`: the number of `k`-dimensional
/// subspaces of `F_q^n`. Saturating at `u128::MAX`.
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k); // symmetry keeps the table small
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 1..=n {
        // in-place update of [i choose j]_q = [i-1 choose j-1]_q + q^j [i-1 choose j]_q,
        // descending j so the previous row is still intact
        for j in (1..=k).rev() {
            let qj = (q as u128).saturating_pow(j as u32);
            row[j] = row[j - 1].saturating_add(qj.saturating_mul(row[j]));
        }
    }
    row[k]
}

/// Iterator over all `k`-dimensional subspaces of `F_q^n` in a fixed order:
/// pivot-column sets ascend lexicographically, free entries run through an
/// ascending base-`q` odometer. Construction fails when the subspace count
/// exceeds `cap`.
pub fn enumerate_subspaces(
    field: &FiniteField,
    n: usize,
    k: usize,
    cap: u128,
) -> Result<SubspaceEnumerator> {
    let count = gaussian_binomial(field.q(), n, k);
    if count > cap {
        return Err(Error::CapExceeded { needed: count, cap });
    }
    Ok(SubspaceEnumerator {
        field: field.clone(),
        n,
        k,
        count,
        pivots: (0..k).collect(),
        free_cells: free_cells(&(0..k).collect::<Vec<_>>(), n),
        odometer: None,
        done: k > n,
    })
}

fn free_cells(pivots: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut cells = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        for c in p + 1..n {
            if !pivots.contains(&c) {
                cells.push((i, c));
            }
        }
    }
    cells
}

/// See [`enumerate_subspaces`].
pub struct SubspaceEnumerator {
    field: FiniteField,
    n: usize,
    k: usize,
    count: u128,
    pivots: Vec<usize>,
    free_cells: Vec<(usize, usize)>,
    /// digits aligned with `free_cells`; `None` before the first yield of the
    /// current pivot set
    odometer: Option<Vec<u16>>,
    done: bool,
}

impl SubspaceEnumerator {
    /// Total number of subspaces this enumerator will yield.
    pub fn total(&self) -> u128 {
        self.count
    }

    fn advance_pivots(&mut self) -> bool {
        // next k-subset of {0..n-1} in lexicographic order
        let k = self.k;
        if k == 0 {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if self.pivots[i] < self.n - (k - i) {
                self.pivots[i] += 1;
                for j in i + 1..k {
                    self.pivots[j] = self.pivots[j - 1] + 1;
                }
                self.free_cells = free_cells(&self.pivots, self.n);
                return true;
            }
        }
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        if self.done {
            return None;
        }
        match &mut self.odometer {
            None => self.odometer = Some(vec![0u16; self.free_cells.len()]),
            Some(digits) => {
                let q = self.field.q();
                let mut i = 0;
                loop {
                    if i == digits.len() {
                        // odometer exhausted; move to the next pivot set
                        if !self.advance_pivots() {
                            self.done = true;
                            return None;
                        }
                        self.odometer = Some(vec![0u16; self.free_cells.len()]);
                        break;
                    }
                    if (digits[i] as u64) + 1 < q {
                        digits[i] += 1;
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            }
        }
        let digits = self.odometer.as_ref().unwrap();
        let mut m = Matrix::zero(&self.field, self.k, self.n);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, 1);
        }
        for (&(r, c), &v) in self.free_cells.iter().zip(digits) {
            m.set(r, c, v);
        }
        Some(Subspace::from_canonical_unchecked(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FiniteField {
        let (p, e) = crate::field::factor_prime_power(q).unwrap();
        FiniteField::new(p, e, None).unwrap()
    }

    fn sub(f: &FiniteField, rows: &[Vec<u64>]) -> Subspace {
        Subspace::from_matrix(&Matrix::from_rows(f, rows).unwrap())
    }

    fn all_subspaces(q: u64, n: usize) -> Vec<Subspace> {
        let f = gf(q);
        (0..=n)
            .flat_map(|k| enumerate_subspaces(&f, n, k, 1 << 20).unwrap())
            .collect()
    }

    #[test]
    fn distance_of_nested_subspaces_is_codimension_gap() {
        let f = gf(2);
        let v = sub(&f, &[vec![1, 0, 0, 0]]);
        let w = sub(&f, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        assert_eq!(v.distance(&w).unwrap(), 1);
        assert!(w.contains(&v).unwrap());
        assert!(!v.contains(&w).unwrap());
    }

    #[test]
    fn distance_rejects_mismatched_spaces() {
        let f = gf(2);
        let v = sub(&f, &[vec![1, 0]]);
        let w = sub(&f, &[vec![1, 0, 0]]);
        assert!(matches!(
            v.distance(&w),
            Err(Error::AmbientMismatch { .. })
        ));
        let u = sub(&gf(3), &[vec![1, 0]]);
        assert!(matches!(v.distance(&u), Err(Error::MixedFields { .. })));
    }

    #[test]
    fn metric_axioms_hold_exhaustively() {
        // all 16 subspaces of F_2^3
        let spaces = all_subspaces(2, 3);
        assert_eq!(spaces.len(), 16);
        for a in &spaces {
            assert_eq!(a.distance(a).unwrap(), 0);
            for b in &spaces {
                let d = a.distance(b).unwrap();
                assert_eq!(d, b.distance(a).unwrap());
                assert_eq!(d == 0, a == b);
                for c in &spaces {
                    assert!(
                        a.distance(c).unwrap() <= d + b.distance(c).unwrap(),
                        "triangle inequality"
                    );
                }
            }
        }
    }

    #[test]
    fn equal_dimension_distance_via_sum_formula() {
        // For dim V = dim W = k: d = 2 (dim(V + W) - k), checked on F_2^4.
        let spaces = all_subspaces(2, 4);
        assert_eq!(spaces.len(), 67);
        for a in &spaces {
            for b in &spaces {
                if a.dim() == b.dim() {
                    let d = a.distance(b).unwrap();
                    assert_eq!(d, 2 * (a.sum_dim(b).unwrap() - a.dim()));
                    assert_eq!(d % 2, 0);
                }
            }
        }
    }

    #[test]
    fn intersection_dim_matches_vector_enumeration() {
        // Independent oracle: intersect the literal vector sets.
        let f = gf(2);
        let spaces = all_subspaces(2, 4);
        let vectors_of = |s: &Subspace| {
            let mut set = std::collections::HashSet::new();
            s.for_each_vector(|v| {
                set.insert(v.to_vec());
            });
            set
        };
        for a in spaces.iter().step_by(3) {
            let va = vectors_of(a);
            for b in spaces.iter().step_by(5) {
                let vb = vectors_of(b);
                let inter = va.intersection(&vb).count() as u64;
                assert_eq!(
                    inter,
                    f.q().pow(a.intersection_dim(b).unwrap() as u32),
                    "intersection of {a:?} and {b:?}"
                );
            }
        }
    }

    #[test]
    fn for_each_vector_counts() {
        let f = gf(3);
        let s = sub(&f, &[vec![1, 0, 2], vec![0, 1, 1]]);
        let mut count = 0;
        let mut zero_seen = false;
        s.for_each_vector(|v| {
            count += 1;
            if v.iter().all(|&x| x == 0) {
                zero_seen = true;
            }
            assert!(s.contains_vector(v).unwrap());
        });
        assert_eq!(count, 9);
        assert!(zero_seen);
    }

    #[test]
    fn gaussian_binomial_known_values() {
        assert_eq!(gaussian_binomial(2, 4, 2), 35);
        assert_eq!(gaussian_binomial(2, 4, 1), 15);
        assert_eq!(gaussian_binomial(2, 8, 3), 97_155);
        assert_eq!(gaussian_binomial(3, 3, 2), 13);
        assert_eq!(gaussian_binomial(2, 6, 3), 1395);
        assert_eq!(gaussian_binomial(5, 4, 4), 1);
        assert_eq!(gaussian_binomial(5, 4, 0), 1);
        assert_eq!(gaussian_binomial(2, 3, 5), 0);
    }

    #[test]
    fn enumeration_is_complete_and_canonical() {
        for (q, n, k) in [(2u64, 4, 2), (2, 4, 1), (3, 3, 2), (2, 5, 3), (4, 3, 1)] {
            let f = gf(q);
            let expect = gaussian_binomial(q, n, k);
            let it = enumerate_subspaces(&f, n, k, 1 << 20).unwrap();
            assert_eq!(it.total(), expect);
            let all: Vec<Subspace> = it.collect();
            assert_eq!(all.len() as u128, expect);
            let distinct: std::collections::HashSet<&Subspace> = all.iter().collect();
            assert_eq!(distinct.len(), all.len());
            for s in &all {
                assert_eq!(s.dim(), k);
                assert_eq!(s.basis().rref().mat, *s.basis());
            }
        }
    }

    #[test]
    fn enumeration_respects_cap() {
        let f = gf(2);
        assert!(matches!(
            enumerate_subspaces(&f, 8, 3, 1000),
            Err(Error::CapExceeded { needed: 97_155, .. })
        ));
    }

    #[test]
    fn enumeration_edge_dimensions() {
        let f = gf(2);
        let zero: Vec<Subspace> = enumerate_subspaces(&f, 4, 0, 10).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].dim(), 0);
        let full: Vec<Subspace> = enumerate_subspaces(&f, 4, 4, 10).unwrap().collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0], Subspace::full(&f, 4));
    }

    #[test]
    fn code_rejects_duplicates_with_indices() {
        let f = gf(2);
        let mut code = SubspaceCode::new(&f, 3);
        code.push(sub(&f, &[vec![1, 0, 0]])).unwrap();
        code.push(sub(&f, &[vec![0, 1, 0]])).unwrap();
        // same row space written with a different basis
        let dup = sub(&f, &[vec![1, 0, 0]]);
        match code.push(dup) {
            Err(Error::DuplicateCodeword { first: 0, second: 2 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn singleton_distance_convention() {
        let f = gf(2);
        // k = 2, n = 5: min(2k, 2(n-k)) = 4
        let code =
            SubspaceCode::from_subspaces(&f, 5, [sub(&f, &[vec![1, 0, 0, 0, 0], vec![0, 1, 0, 0, 0]])])
                .unwrap();
        assert_eq!(code.code_distance().unwrap(), 4);
        // k = 3, n = 4: min(6, 2) = 2
        let code = SubspaceCode::from_subspaces(
            &f,
            4,
            [sub(&f, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]])],
        )
        .unwrap();
        assert_eq!(code.code_distance().unwrap(), 2);
        let empty = SubspaceCode::new(&f, 4);
        assert!(matches!(empty.code_distance(), Err(Error::EmptyCode)));
    }

    #[test]
    fn code_distance_and_distribution() {
        let f = gf(2);
        // three coordinate lines in F_2^2 plus the zero space
        let code = SubspaceCode::from_subspaces(
            &f,
            2,
            [
                sub(&f, &[vec![1, 0]]),
                sub(&f, &[vec![0, 1]]),
                sub(&f, &[vec![1, 1]]),
                Subspace::zero(&f, 2),
            ],
        )
        .unwrap();
        assert_eq!(code.code_distance().unwrap(), 1);
        let hist = code.distance_distribution(1 << 20).unwrap();
        assert_eq!(hist.get(&1), Some(&3)); // each line vs the zero space
        assert_eq!(hist.get(&2), Some(&3)); // line vs line
        assert_eq!(hist.values().sum::<u64>(), 6);
        assert!(matches!(
            code.min_distance_pair(2),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn rep_set_keeps_matrices_verbatim() {
        let f = gf(2);
        // full-rank but deliberately not in echelon form
        let m1 = Matrix::from_rows(&f, &[vec![1, 1, 1, 0], vec![0, 1, 0, 0]]).unwrap();
        let m2 = Matrix::from_rows(&f, &[vec![0, 1, 0, 0], vec![1, 1, 0, 0]]).unwrap();
        let set = ScRepSet::from_matrices(vec![m1.clone(), m2.clone()]).unwrap();
        assert_eq!(set.get(0), &m1);
        assert_eq!(set.get(1), &m2);
        assert_eq!(set.k(), 2);
        assert_eq!(set.ambient(), 4);
        let code = set.code();
        assert_eq!(code.len(), 2);
        assert_eq!(code.words()[0], Subspace::from_matrix(&m1));
    }

    #[test]
    fn rep_set_rejects_bad_input() {
        let f = gf(2);
        let rank_deficient =
            Matrix::from_rows(&f, &[vec![1, 1, 0], vec![1, 1, 0]]).unwrap();
        assert!(matches!(
            ScRepSet::from_matrices(vec![rank_deficient]),
            Err(Error::RankDeficient { .. })
        ));
        let a = Matrix::from_rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![0, 1, 0], vec![1, 1, 0]]).unwrap(); // same row space
        match ScRepSet::from_matrices(vec![a.clone(), b]) {
            Err(Error::DuplicateRowSpace { first: 0, second: 1 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        assert!(matches!(
            ScRepSet::from_matrices(vec![]),
            Err(Error::EmptyCode)
        ));
        let wrong_shape = Matrix::from_rows(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(ScRepSet::from_matrices(vec![a, wrong_shape]).is_err());
    }

    #[test]
    fn rep_set_from_code_uses_canonical_bases() {
        let f = gf(2);
        let code = SubspaceCode::from_subspaces(
            &f,
            4,
            enumerate_subspaces(&f, 4, 2, 100).unwrap().take(5),
        )
        .unwrap();
        let set = ScRepSet::from_code(&code).unwrap();
        assert_eq!(set.len(), 5);
        for (m, w) in set.iter().zip(code.words()) {
            assert_eq!(m, w.basis());
        }
        // mixed dimension is rejected
        let mixed = SubspaceCode::from_subspaces(
            &f,
            4,
            [sub(&f, &[vec![1, 0, 0, 0]]), Subspace::zero(&f, 4)],
        )
        .unwrap();
        assert!(matches!(
            ScRepSet::from_code(&mixed),
            Err(Error::MixedDimension(0, 1))
        ));
    }

    #[test]
    fn code_file_roundtrip() {
        let f = gf(2);
        let code = SubspaceCode::from_subspaces(
            &f,
            4,
            enumerate_subspaces(&f, 4, 2, 100).unwrap().take(6),
        )
        .unwrap();
        let text = code.to_text();
        assert!(text.starts_with("2 4 2 6\n"));
        let parsed = SubspaceCode::parse_text(&text).unwrap();
        assert_eq!(parsed.words(), code.words());

        // mixed-dimension codes carry k = -1
        let mixed = SubspaceCode::from_subspaces(
            &f,
            4,
            [
                sub(&f, &[vec![1, 0, 0, 0]]),
                sub(&f, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]),
                Subspace::zero(&f, 4),
            ],
        )
        .unwrap();
        let text = mixed.to_text();
        assert!(text.starts_with("2 4 -1 3\n"));
        assert!(text.contains("dim 0\n"));
        let parsed = SubspaceCode::parse_text(&text).unwrap();
        assert_eq!(parsed.words(), mixed.words());
    }

    #[test]
    fn rep_set_file_preserves_bases() {
        let f = gf(2);
        // deliberately non-reduced representatives of distinct planes
        let reps = vec![
            Matrix::from_rows(&f, &[vec![1, 1, 1, 0], vec![0, 1, 0, 0]]).unwrap(),
            Matrix::from_rows(&f, &[vec![0, 1, 0, 0], vec![1, 1, 0, 0]]).unwrap(),
        ];
        let set = ScRepSet::from_matrices(reps.clone()).unwrap();
        let text = set.to_text();
        let parsed = ScRepSet::parse_text(&text).unwrap();
        assert_eq!(parsed.mats(), set.mats());
        assert_eq!(parsed.mats()[0], reps[0]); // verbatim, not canonicalized
        assert_ne!(parsed.mats()[0], *Subspace::from_matrix(&reps[0]).basis());

        // SubspaceCode::parse_text on the same file canonicalizes
        let as_code = SubspaceCode::parse_text(&text).unwrap();
        assert_eq!(as_code.words()[0], Subspace::from_matrix(&reps[0]));
    }

    #[test]
    fn code_file_rejects_bad_input() {
        assert!(SubspaceCode::parse_text("").is_err());
        assert!(SubspaceCode::parse_text("2 4 2\n").is_err());
        assert!(SubspaceCode::parse_text("9000 4 2 0\n").is_err());
        // dimension disagreeing with the constant-k header
        let bad_dim = "2 4 2 1\ndim 1\n1 0 0 0\n";
        assert!(SubspaceCode::parse_text(bad_dim).is_err());
        // row length disagreeing with n
        let bad_row = "2 4 2 1\ndim 2\n1 0 0\n0 1 0\n";
        assert!(SubspaceCode::parse_text(bad_row).is_err());
        // truncated block
        let truncated = "2 4 2 1\ndim 2\n1 0 0 0\n";
        assert!(SubspaceCode::parse_text(truncated).is_err());
        // undeclared extra entry
        let extra = "2 4 1 1\ndim 1\n1 0 0 0\ndim 1\n0 1 0 0\n";
        assert!(SubspaceCode::parse_text(extra).is_err());
    }
}
