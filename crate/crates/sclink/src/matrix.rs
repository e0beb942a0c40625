//! Matrices over a [`FiniteField`] with exact elimination.
//!
//! Storage is row-major. Over `GF(2)` with at most 64 columns a row is packed
//! into a single `u64` (bit `c` holds the entry in column `c`), which makes
//! the rank computations inside brute-force distance loops a handful of XOR
//! and shift instructions; every other case uses a dense `u16` buffer of
//! element encodings. Both representations behave identically through the
//! public API.
//!
//! Reduced row echelon form scans columns left to right and rows top to
//! bottom, so equal row spaces always produce identical canonical forms.

use std::fmt;

use crate::field::{is_primitive_polynomial, FiniteField};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// One `u64` per row; bit `c` is the entry in column `c`. Only for
    /// `GF(2)` with `cols <= 64`.
    Bits(Vec<u64>),
    /// Row-major element encodings.
    Dense(Vec<u16>),
}

/// A `rows x cols` matrix over a finite field.
#[derive(Clone)]
pub struct Matrix {
    field: FiniteField,
    rows: usize,
    cols: usize,
    data: Repr,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && self.field == other.field
    }
}

impl Eq for Matrix {}

impl std::hash::Hash for Matrix {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}x{} over {}>", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "\n  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self.get(r, c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Matrix {
    /// The matrix text format: one line per row, entries as space-separated
    /// integer encodings.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn use_bits(field: &FiniteField, cols: usize) -> bool {
    field.q() == 2 && cols <= 64
}

impl Matrix {
    /// All-zero `rows x cols` matrix.
    pub fn zero(field: &FiniteField, rows: usize, cols: usize) -> Matrix {
        let data = if use_bits(field, cols) {
            Repr::Bits(vec![0; rows])
        } else {
            Repr::Dense(vec![0; rows * cols])
        };
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    /// `n x n` identity.
    pub fn identity(field: &FiniteField, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from explicit row encodings. All rows must have equal
    /// length and entries must be valid encodings; the row count must be
    /// positive (use [`Matrix::zero`] for empty shapes).
    pub fn from_rows(field: &FiniteField, rows: &[Vec<u64>]) -> Result<Matrix> {
        let Some(first) = rows.first() else {
            return Err(Error::ShapeMismatch {
                op: "from_rows",
                need: "at least one row".into(),
                got: "none".into(),
            });
        };
        let cols = first.len();
        let mut m = Matrix::zero(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::ShapeMismatch {
                    op: "from_rows",
                    need: format!("{cols} entries per row"),
                    got: format!("{} in row {r}", row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= field.q() {
                    return Err(Error::BadEncoding {
                        value: v,
                        q: field.q(),
                    });
                }
                m.set(r, c, v as u16);
            }
        }
        Ok(m)
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(
        field: &FiniteField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u16,
    ) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(r, c)` as an encoding.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u16 {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        match &self.data {
            Repr::Bits(b) => ((b[r] >> c) & 1) as u16,
            Repr::Dense(d) => d[r * self.cols + c],
        }
    }

    /// Sets the entry at `(r, c)`.
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u16) {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        debug_assert!((v as u64) < self.field.q(), "encoding out of range");
        match &mut self.data {
            Repr::Bits(b) => {
                if v == 0 {
                    b[r] &= !(1 << c);
                } else {
                    b[r] |= 1 << c;
                }
            }
            Repr::Dense(d) => d[r * self.cols + c] = v,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Repr::Bits(b) => b.iter().all(|&r| r == 0),
            Repr::Dense(d) => d.iter().all(|&v| v == 0),
        }
    }

    /// One row as a vector of encodings.
    pub fn row(&self, r: usize) -> Vec<u16> {
        (0..self.cols).map(|c| self.get(r, c)).collect()
    }

    fn same_field(&self, rhs: &Matrix, op: &'static str) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::MixedFields {
                left: self.field.q(),
                right: rhs.field.q(),
            });
        }
        let _ = op;
        Ok(())
    }

    /// Entry-wise sum.
    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs, "add")?;
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                op: "add",
                need: format!("{}x{}", self.rows, self.cols),
                got: format!("{}x{}", rhs.rows, rhs.cols),
            });
        }
        let mut out = self.clone();
        match (&mut out.data, &rhs.data) {
            (Repr::Bits(a), Repr::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
            (Repr::Dense(a), Repr::Dense(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x = self.field.add(*x, *y);
                }
            }
            _ => unreachable!("representation is determined by field and shape"),
        }
        Ok(out)
    }

    /// Entry-wise difference.
    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.scale(self.field.neg(1)))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: u16) -> Matrix {
        let mut out = self.clone();
        match &mut out.data {
            Repr::Bits(b) => {
                if s == 0 {
                    b.iter_mut().for_each(|r| *r = 0);
                }
            }
            Repr::Dense(d) => {
                for x in d.iter_mut() {
                    *x = self.field.mul(*x, s);
                }
            }
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mat_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs, "mat_mul")?;
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "mat_mul",
                need: format!("left cols = right rows ({})", self.cols),
                got: format!("{}", rhs.rows),
            });
        }
        let mut out = Matrix::zero(&self.field, self.rows, rhs.cols);
        match (&self.data, &rhs.data, &mut out.data) {
            (Repr::Bits(a), Repr::Bits(b), Repr::Bits(o)) => {
                for r in 0..self.rows {
                    let mut acc = 0u64;
                    let mut bits = a[r];
                    while bits != 0 {
                        let j = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        acc ^= b[j];
                    }
                    o[r] = acc;
                }
            }
            _ => {
                for r in 0..self.rows {
                    for j in 0..self.cols {
                        let a = self.get(r, j);
                        if a == 0 {
                            continue;
                        }
                        for c in 0..rhs.cols {
                            let v = self.field.mul(a, rhs.get(j, c));
                            let cur = out.get(r, c);
                            out.set(r, c, self.field.add(cur, v));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Horizontal concatenation `[self | rhs]`.
    pub fn hconcat(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs, "hconcat")?;
        if self.rows != rhs.rows {
            return Err(Error::ShapeMismatch {
                op: "hconcat",
                need: format!("{} rows", self.rows),
                got: format!("{}", rhs.rows),
            });
        }
        Ok(Matrix::from_fn(
            &self.field,
            self.rows,
            self.cols + rhs.cols,
            |r, c| {
                if c < self.cols {
                    self.get(r, c)
                } else {
                    rhs.get(r, c - self.cols)
                }
            },
        ))
    }

    /// Vertical stack of `self` on top of `rhs`.
    pub fn vstack(&self, rhs: &Matrix) -> Result<Matrix> {
        self.same_field(rhs, "vstack")?;
        if self.cols != rhs.cols {
            return Err(Error::ShapeMismatch {
                op: "vstack",
                need: format!("{} cols", self.cols),
                got: format!("{}", rhs.cols),
            });
        }
        Ok(Matrix::from_fn(
            &self.field,
            self.rows + rhs.rows,
            self.cols,
            |r, c| {
                if r < self.rows {
                    self.get(r, c)
                } else {
                    rhs.get(r - self.rows, c)
                }
            },
        ))
    }

    /// The submatrix formed by a contiguous range of columns.
    pub fn col_range(&self, range: std::ops::Range<usize>) -> Matrix {
        assert!(range.end <= self.cols, "column range out of bounds");
        let start = range.start;
        Matrix::from_fn(&self.field, self.rows, range.len(), |r, c| {
            self.get(r, start + c)
        })
    }

    /// Row `r0..r1` as a submatrix.
    pub fn row_range(&self, range: std::ops::Range<usize>) -> Matrix {
        assert!(range.end <= self.rows, "row range out of bounds");
        let start = range.start;
        Matrix::from_fn(&self.field, range.len(), self.cols, |r, c| {
            self.get(start + r, c)
        })
    }

    /// Reduced row echelon form together with its rank and pivot columns.
    /// Pivot search scans columns left to right, rows top to bottom; pivots
    /// are scaled to one and cleared above and below.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let (rank, pivots) = rref_in_place(&mut m, self.cols);
        Rref { mat: m, rank, pivots }
    }

    /// Rank by elimination (no canonical form kept).
    pub fn rank(&self) -> usize {
        match &self.data {
            Repr::Bits(b) => {
                let mut basis = [0u64; 64];
                let mut rank = 0;
                for &row in b {
                    rank += bits_insert(&mut basis, row);
                }
                rank
            }
            Repr::Dense(_) => {
                let mut dense = DenseBasis::new(&self.field, self.cols);
                let mut rank = 0;
                for r in 0..self.rows {
                    rank += dense.insert(self.row(r));
                }
                rank
            }
        }
    }

    /// A matrix whose rows span `{ x : x * self = 0 }`. The kernel of an
    /// `r x c` matrix of rank `k` has `r - k` rows (possibly zero).
    pub fn left_kernel(&self) -> Matrix {
        // Row-reduce [self | I], restricting pivots to the original columns;
        // transform rows aligned with zero rows of the echelon form span the
        // kernel.
        let mut aug = Matrix::zero(&self.field, self.rows, self.cols + self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols + r, 1);
        }
        let (rank, _) = rref_in_place(&mut aug, self.cols);
        let mut out = Matrix::zero(&self.field, self.rows - rank, self.rows);
        for (i, r) in (rank..self.rows).enumerate() {
            for c in 0..self.rows {
                out.set(i, c, aug.get(r, self.cols + c));
            }
        }
        out
    }

    /// Inverse of a square matrix; errors if singular.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch {
                op: "inverse",
                need: "square matrix".into(),
                got: format!("{}x{}", self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zero(&self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let (rank, _) = rref_in_place(&mut aug, n);
        if rank < n {
            return Err(Error::RankDeficient { rank, rows: n });
        }
        Ok(aug.col_range(n..2 * n))
    }

    /// Parses the matrix text format: one row per line of space-separated
    /// encodings, with a given expected column count allowed to be implied by
    /// the first row.
    pub fn parse_text(field: &FiniteField, text: &str) -> Result<Matrix> {
        let rows: Vec<Vec<u64>> = text
            .lines()
            .map(str::trim)
            .take_while(|l| !l.is_empty())
            .map(parse_row)
            .collect::<Result<_>>()?;
        if rows.is_empty() {
            return Err(Error::Parse("empty matrix block".into()));
        }
        Matrix::from_rows(field, &rows)
    }
}

pub(crate) fn parse_row(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))
        })
        .collect()
}

/// Result of [`Matrix::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// In-place reduced row echelon form, with pivots restricted to the first
/// `pivot_cols` columns. Returns the rank and pivot columns.
fn rref_in_place(m: &mut Matrix, pivot_cols: usize) -> (usize, Vec<usize>) {
    let rows = m.rows;
    let mut pivots = Vec::new();
    let mut r = 0;
    match &mut m.data {
        Repr::Bits(b) => {
            for c in 0..pivot_cols {
                let Some(pr) = (r..rows).find(|&i| (b[i] >> c) & 1 == 1) else {
                    continue;
                };
                b.swap(r, pr);
                let row = b[r];
                for (i, other) in b.iter_mut().enumerate() {
                    if i != r && (*other >> c) & 1 == 1 {
                        *other ^= row;
                    }
                }
                pivots.push(c);
                r += 1;
                if r == rows {
                    break;
                }
            }
        }
        Repr::Dense(_) => {
            let field = m.field.clone();
            for c in 0..pivot_cols {
                let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
                    continue;
                };
                swap_rows(m, r, pr);
                let s = field.inv(m.get(r, c));
                if s != 1 {
                    for j in 0..m.cols {
                        let v = field.mul(m.get(r, j), s);
                        m.set(r, j, v);
                    }
                }
                for i in 0..rows {
                    if i == r {
                        continue;
                    }
                    let f = m.get(i, c);
                    if f != 0 {
                        for j in 0..m.cols {
                            let v = field.sub(m.get(i, j), field.mul(f, m.get(r, j)));
                            m.set(i, j, v);
                        }
                    }
                }
                pivots.push(c);
                r += 1;
                if r == rows {
                    break;
                }
            }
        }
    }
    (r, pivots)
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    match &mut m.data {
        Repr::Bits(rows) => rows.swap(a, b),
        Repr::Dense(d) => {
            let cols = m.cols;
            for c in 0..cols {
                d.swap(a * cols + c, b * cols + c);
            }
        }
    }
}

/// Inserts a packed row into an echelon basis indexed by leading-bit
/// position; returns 1 if the row was independent.
#[inline]
fn bits_insert(basis: &mut [u64; 64], mut row: u64) -> usize {
    while row != 0 {
        let l = 63 - row.leading_zeros() as usize;
        if basis[l] == 0 {
            basis[l] = row;
            return 1;
        }
        row ^= basis[l];
    }
    0
}

/// Incremental elimination basis for dense rows.
struct DenseBasis<'f> {
    field: &'f FiniteField,
    cols: usize,
    /// `(pivot column, row normalized to pivot 1)`
    rows: Vec<(usize, Vec<u16>)>,
}

impl<'f> DenseBasis<'f> {
    fn new(field: &'f FiniteField, cols: usize) -> Self {
        DenseBasis {
            field,
            cols,
            rows: Vec::new(),
        }
    }

    /// Reduces `row` against the basis; returns 1 if independent (and keeps
    /// it), 0 otherwise.
    fn insert(&mut self, mut row: Vec<u16>) -> usize {
        debug_assert_eq!(row.len(), self.cols);
        for (p, brow) in &self.rows {
            let f = row[*p];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(brow) {
                    *x = self.field.sub(*x, self.field.mul(f, *y));
                }
            }
        }
        match row.iter().position(|&v| v != 0) {
            Some(p) => {
                let inv = self.field.inv(row[p]);
                if inv != 1 {
                    for x in row.iter_mut() {
                        *x = self.field.mul(*x, inv);
                    }
                }
                self.rows.push((p, row));
                self.rows.sort_by_key(|&(p, _)| p);
                1
            }
            None => 0,
        }
    }
}

/// Rank of the vertical stack of two matrices without materializing it.
/// Both must share field and column count.
pub fn rank_of_vstack(a: &Matrix, b: &Matrix) -> Result<usize> {
    if a.field != b.field {
        return Err(Error::MixedFields {
            left: a.field.q(),
            right: b.field.q(),
        });
    }
    if a.cols != b.cols {
        return Err(Error::ShapeMismatch {
            op: "rank_of_vstack",
            need: format!("{} cols", a.cols),
            got: format!("{}", b.cols),
        });
    }
    match (&a.data, &b.data) {
        (Repr::Bits(x), Repr::Bits(y)) => {
            let mut basis = [0u64; 64];
            let mut rank = 0;
            for &row in x.iter().chain(y) {
                rank += bits_insert(&mut basis, row);
            }
            Ok(rank)
        }
        _ => {
            let mut dense = DenseBasis::new(&a.field, a.cols);
            let mut rank = 0;
            for r in 0..a.rows {
                rank += dense.insert(a.row(r));
            }
            for r in 0..b.rows {
                rank += dense.insert(b.row(r));
            }
            Ok(rank)
        }
    }
}

/// Companion matrix of a monic polynomial `c_0 + c_1 x + ... + x^m` over
/// `field`, laid out so that row vectors act by multiplication on the right:
/// rows `0..m-1` shift the basis up and the last row is `(-c_0, ..., -c_{m-1})`.
/// The polynomial must be primitive, which gives the matrix multiplicative
/// order `q^m - 1`; this is verified and anything else is rejected.
pub fn companion_matrix(field: &FiniteField, poly: &[u16]) -> Result<Matrix> {
    let m = poly.len().saturating_sub(1);
    if m == 0 {
        return Err(Error::BadModulus("polynomial must have positive degree".into()));
    }
    for &c in poly {
        if c as u64 >= field.q() {
            return Err(Error::BadEncoding {
                value: c as u64,
                q: field.q(),
            });
        }
    }
    if !is_primitive_polynomial(field, poly)? {
        return Err(Error::NotPrimitive {
            q: field.q(),
            reason: "companion polynomial must be primitive".into(),
        });
    }
    let mut mat = Matrix::zero(field, m, m);
    for r in 0..m - 1 {
        mat.set(r, r + 1, 1);
    }
    for c in 0..m {
        mat.set(m - 1, c, field.neg(poly[c]));
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> FiniteField {
        let (p, e) = crate::field::factor_prime_power(q).unwrap();
        FiniteField::new(p, e, None).unwrap()
    }

    #[test]
    fn get_set_roundtrip_both_representations() {
        for q in [2u64, 3, 4] {
            let f = gf(q);
            let mut m = Matrix::zero(&f, 3, 5);
            m.set(0, 0, 1);
            m.set(2, 4, (q - 1) as u16);
            m.set(1, 2, 1);
            m.set(1, 2, 0);
            assert_eq!(m.get(0, 0), 1);
            assert_eq!(m.get(2, 4), (q - 1) as u16);
            assert_eq!(m.get(1, 2), 0);
        }
    }

    #[test]
    fn wide_gf2_matrix_falls_back_to_dense() {
        let f = gf(2);
        let mut m = Matrix::zero(&f, 2, 70);
        m.set(1, 69, 1);
        assert_eq!(m.get(1, 69), 1);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.rref().pivots, vec![69]);
    }

    #[test]
    fn from_rows_validates() {
        let f = gf(3);
        assert!(Matrix::from_rows(&f, &[vec![0, 3]]).is_err());
        assert!(Matrix::from_rows(&f, &[vec![0, 1], vec![2]]).is_err());
        assert!(Matrix::from_rows(&f, &[]).is_err());
        let m = Matrix::from_rows(&f, &[vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(m.get(0, 1), 2);
    }

    #[test]
    fn identity_is_multiplicative_unit() {
        for q in [2u64, 3, 4, 5] {
            let f = gf(q);
            let a = Matrix::from_fn(&f, 3, 3, |r, c| ((r * 2 + c) % q as usize) as u16);
            let i = Matrix::identity(&f, 3);
            assert_eq!(a.mat_mul(&i).unwrap(), a);
            assert_eq!(i.mat_mul(&a).unwrap(), a);
        }
    }

    #[test]
    fn add_sub_scale() {
        let f = gf(5);
        let a = Matrix::from_rows(&f, &[vec![1, 2], vec![3, 4]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![4, 3], vec![2, 1]]).unwrap();
        let s = a.add(&b).unwrap();
        assert_eq!(s, Matrix::from_rows(&f, &[vec![0, 0], vec![0, 0]]).unwrap());
        assert_eq!(s.sub(&b).unwrap(), a);
        assert_eq!(a.scale(2).get(1, 1), 3); // 4 * 2 = 8 = 3 mod 5
        assert!(a.add(&Matrix::zero(&f, 1, 2)).is_err());
        assert!(a.add(&Matrix::zero(&gf(3), 2, 2)).is_err());
    }

    #[test]
    fn mat_mul_matches_manual() {
        let f = gf(2);
        let a = Matrix::from_rows(&f, &[vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap();
        let c = a.mat_mul(&b).unwrap();
        assert_eq!(c, Matrix::from_rows(&f, &[vec![0, 1], vec![1, 0]]).unwrap());
        assert!(b.mat_mul(&b).is_err());
    }

    #[test]
    fn transpose_involution() {
        let f = gf(3);
        let a = Matrix::from_rows(&f, &[vec![1, 2, 0], vec![0, 1, 2]]).unwrap();
        assert_eq!(a.transpose().transpose(), a);
        assert_eq!(a.transpose().get(2, 1), 2);
    }

    #[test]
    fn concat_and_slicing() {
        let f = gf(2);
        let a = Matrix::from_rows(&f, &[vec![1, 0], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![1, 1], vec![1, 0]]).unwrap();
        let h = a.hconcat(&b).unwrap();
        assert_eq!(h.cols(), 4);
        assert_eq!(h.col_range(2..4), b);
        assert_eq!(h.col_range(0..2), a);
        let v = a.vstack(&b).unwrap();
        assert_eq!(v.rows(), 4);
        assert_eq!(v.row_range(2..4), b);
    }

    #[test]
    fn rref_canonical_and_idempotent() {
        let f = gf(2);
        let m = Matrix::from_rows(&f, &[vec![1, 1, 0, 1], vec![1, 0, 1, 0], vec![0, 1, 1, 1]])
            .unwrap();
        // the third row is the sum of the first two
        let r = m.rref();
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.mat.rref().mat, r.mat);
        // row space is preserved: the original rows add nothing
        assert_eq!(rank_of_vstack(&m, &r.mat).unwrap(), 2);

        let full = Matrix::from_rows(&f, &[vec![0, 1, 1], vec![1, 1, 0], vec![1, 0, 0]]).unwrap();
        let r = full.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.mat, Matrix::identity(&f, 3));
    }

    #[test]
    fn rref_scales_pivots_over_gf3() {
        let f = gf(3);
        let m = Matrix::from_rows(&f, &[vec![2, 1, 0], vec![0, 0, 2]]).unwrap();
        let r = m.rref();
        assert_eq!(r.mat.get(0, 0), 1);
        assert_eq!(r.mat.get(0, 1), 2); // 2^-1 * (2 1 0) = (1 2 0)
        assert_eq!(r.mat.get(1, 2), 1);
        assert_eq!(r.pivots, vec![0, 2]);
    }

    #[test]
    fn equal_row_spaces_share_rref() {
        // Row operations must not change the canonical form.
        let f = gf(3);
        let m = Matrix::from_rows(&f, &[vec![1, 2, 1, 0], vec![0, 1, 1, 2]]).unwrap();
        let ops = Matrix::from_rows(&f, &[vec![2, 1], vec![1, 1]]).unwrap(); // invertible
        let m2 = ops.mat_mul(&m).unwrap();
        assert_eq!(m.rref().mat, m2.rref().mat);
    }

    #[test]
    fn rank_matches_row_space_enumeration() {
        // Independent oracle: |row space| = q^rank, counted by enumerating
        // all coefficient combinations.
        let f2 = gf(2);
        let f3 = gf(3);
        for (f, q, rows) in [
            (&f2, 2u64, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![1, 1, 0, 1]]),
            (&f2, 2, vec![vec![1, 1, 1, 1], vec![1, 1, 1, 1]]),
            (&f3, 3, vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 1, 1]]),
        ] {
            let m = Matrix::from_rows(f, &rows).unwrap();
            let k = m.rows();
            let mut seen = std::collections::HashSet::new();
            for mask in 0..q.pow(k as u32) {
                let mut combo = vec![0u16; m.cols()];
                let mut idx = mask;
                for r in 0..k {
                    let coef = (idx % q) as u16;
                    idx /= q;
                    if coef != 0 {
                        for c in 0..m.cols() {
                            combo[c] = f.add(combo[c], f.mul(coef, m.get(r, c)));
                        }
                    }
                }
                seen.insert(combo);
            }
            assert_eq!(seen.len() as u64, q.pow(m.rank() as u32));
        }
    }

    #[test]
    fn rank_of_vstack_agrees_with_explicit_stack() {
        let f = gf(3);
        let a = Matrix::from_rows(&f, &[vec![1, 0, 2], vec![0, 1, 1]]).unwrap();
        let b = Matrix::from_rows(&f, &[vec![1, 1, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(
            rank_of_vstack(&a, &b).unwrap(),
            a.vstack(&b).unwrap().rank()
        );
        let f2 = gf(2);
        let c = Matrix::from_rows(&f2, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        let d = Matrix::from_rows(&f2, &[vec![1, 1, 0]]).unwrap();
        assert_eq!(rank_of_vstack(&c, &d).unwrap(), 2);
    }

    #[test]
    fn left_kernel_spans_annihilator() {
        let f = gf(2);
        let m = Matrix::from_rows(&f, &[vec![1, 0], vec![1, 0], vec![0, 1]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row(0), vec![1, 1, 0]);
        assert!(k.mat_mul(&m).unwrap().is_zero());
        assert_eq!(k.rank() + m.rank(), m.rows());

        let f3 = gf(3);
        let m = Matrix::from_rows(&f3, &[vec![1, 2], vec![2, 1], vec![0, 1]]).unwrap();
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        assert!(k.mat_mul(&m).unwrap().is_zero());
        assert_eq!(k.rank(), 1);
    }

    #[test]
    fn inverse_roundtrip() {
        let f = gf(5);
        let a = Matrix::from_rows(&f, &[vec![1, 2, 0], vec![0, 1, 4], vec![3, 0, 2]]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mat_mul(&inv).unwrap(), Matrix::identity(&f, 3));
        assert_eq!(inv.mat_mul(&a).unwrap(), Matrix::identity(&f, 3));
        let singular = Matrix::from_rows(&f, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn companion_of_quadratic() {
        let f = gf(2);
        let m = companion_matrix(&f, &[1, 1, 1]).unwrap();
        assert_eq!(m, Matrix::from_rows(&f, &[vec![0, 1], vec![1, 1]]).unwrap());
        // order 3: m^3 = I, m, m^2 != I
        let m2 = m.mat_mul(&m).unwrap();
        let m3 = m2.mat_mul(&m).unwrap();
        assert_eq!(m3, Matrix::identity(&f, 2));
        assert_ne!(m, Matrix::identity(&f, 2));
        assert_ne!(m2, Matrix::identity(&f, 2));
    }

    #[test]
    fn companion_of_quartic_has_order_fifteen() {
        let f = gf(2);
        let m = companion_matrix(&f, &[1, 1, 0, 0, 1]).unwrap();
        assert_eq!(
            m,
            Matrix::from_rows(
                &f,
                &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 1, 0, 0]]
            )
            .unwrap()
        );
        let mut x = m.clone();
        let mut order = 1;
        while x != Matrix::identity(&f, 4) {
            x = x.mat_mul(&m).unwrap();
            order += 1;
        }
        assert_eq!(order, 15);
    }

    #[test]
    fn companion_rejects_imprimitive() {
        let f = gf(2);
        assert!(companion_matrix(&f, &[1, 0, 1]).is_err()); // x^2 + 1
        let f3 = gf(3);
        assert!(companion_matrix(&f3, &[1, 0, 1]).is_err()); // irreducible, order 4
    }

    #[test]
    fn companion_over_gf3_negates_coefficients() {
        let f = gf(3);
        // x^2 + x + 2 primitive over GF(3); last row = (-2, -1) = (1, 2)
        let m = companion_matrix(&f, &[2, 1, 1]).unwrap();
        assert_eq!(m, Matrix::from_rows(&f, &[vec![0, 1], vec![1, 2]]).unwrap());
    }

    #[test]
    fn text_roundtrip() {
        let f = gf(4);
        let m = Matrix::from_rows(&f, &[vec![0, 1, 2], vec![3, 2, 1]]).unwrap();
        let text = m.to_string();
        assert_eq!(text, "0 1 2\n3 2 1\n");
        assert_eq!(Matrix::parse_text(&f, &text).unwrap(), m);
        assert!(Matrix::parse_text(&f, "0 1 4\n").is_err());
        assert!(Matrix::parse_text(&f, "\n").is_err());
    }
}
