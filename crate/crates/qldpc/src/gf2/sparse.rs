use std::fmt;

use super::dense::{BitMatrix, RowSpace};
use super::Gf2Vector;
use crate::{Error, Result};

/// Sparse binary matrix stored in both compressed-row and compressed-column
/// form.
///
/// Each row support and each column support is strictly increasing, and the
/// two views always describe the same set of nonzeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseGf2Matrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    col_ptr: Vec<usize>,
    col_idx: Vec<usize>,
}

impl SparseGf2Matrix {
    /// Builds a matrix from per-row supports.
    ///
    /// Supports are sorted; a repeated index within a row is rejected rather
    /// than folded away.
    pub fn from_row_supports(rows: usize, cols: usize, supports: Vec<Vec<usize>>) -> Result<Self> {
        if supports.len() != rows {
            return Err(Error::DimensionMismatch {
                context: "row supports",
                expected: rows,
                actual: supports.len(),
            });
        }
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut row_idx = Vec::new();
        row_ptr.push(0);
        for (r, mut support) in supports.into_iter().enumerate() {
            support.sort_unstable();
            for w in support.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::InvalidMatrix(format!(
                        "duplicate entry ({r}, {}) in row support",
                        w[0]
                    )));
                }
            }
            if let Some(&last) = support.last() {
                if last >= cols {
                    return Err(Error::InvalidMatrix(format!(
                        "column index {last} in row {r} out of range for {cols} columns"
                    )));
                }
            }
            row_idx.extend_from_slice(&support);
            row_ptr.push(row_idx.len());
        }
        let (col_ptr, col_idx) = transpose_csr(rows, cols, &row_ptr, &row_idx);
        Ok(Self {
            rows,
            cols,
            row_ptr,
            row_idx,
            col_ptr,
            col_idx,
        })
    }

    /// Builds a matrix from per-column supports.
    pub fn from_col_supports(rows: usize, cols: usize, supports: Vec<Vec<usize>>) -> Result<Self> {
        Ok(Self::from_row_supports(cols, rows, supports)?.transpose())
    }

    /// Builds a matrix from dense 0/1 rows.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut supports = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    context: "dense row length",
                    expected: cols,
                    actual: row.len(),
                });
            }
            let mut support = Vec::new();
            for (c, &bit) in row.iter().enumerate() {
                match bit {
                    0 => {}
                    1 => support.push(c),
                    other => {
                        return Err(Error::InvalidMatrix(format!(
                            "entry ({r}, {c}) is {other}, expected 0 or 1"
                        )))
                    }
                }
            }
            supports.push(support);
        }
        Self::from_row_supports(rows.len(), cols, supports)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_row_supports(n, n, (0..n).map(|i| vec![i]).collect())
            .expect("identity is well formed")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_row_supports(rows, cols, vec![Vec::new(); rows]).expect("zero matrix is well formed")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of nonzero entries.
    #[inline]
    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    /// Sorted column indices of the ones in row `r`.
    #[inline]
    pub fn row(&self, r: usize) -> &[usize] {
        &self.row_idx[self.row_ptr[r]..self.row_ptr[r + 1]]
    }

    /// Sorted row indices of the ones in column `c`.
    #[inline]
    pub fn col(&self, c: usize) -> &[usize] {
        &self.col_idx[self.col_ptr[c]..self.col_ptr[c + 1]]
    }

    pub fn row_supports(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn col_supports(&self) -> impl Iterator<Item = &[usize]> + '_ {
        (0..self.cols).map(move |c| self.col(c))
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.row(r).binary_search(&c).is_ok()
    }

    pub fn row_vector(&self, r: usize) -> Gf2Vector {
        Gf2Vector::from_support(self.cols, self.row(r)).expect("row support in range")
    }

    pub fn col_vector(&self, c: usize) -> Gf2Vector {
        Gf2Vector::from_support(self.rows, self.col(c)).expect("column support in range")
    }

    pub fn transpose(&self) -> Self {
        Self {
            rows: self.cols,
            cols: self.rows,
            row_ptr: self.col_ptr.clone(),
            row_idx: self.col_idx.clone(),
            col_ptr: self.row_ptr.clone(),
            col_idx: self.row_idx.clone(),
        }
    }

    /// `H · v^T` over GF(2).
    pub fn mul_vec(&self, v: &Gf2Vector) -> Result<Gf2Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "matrix-vector product",
                expected: self.cols,
                actual: v.len(),
            });
        }
        let mut out = Gf2Vector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self.row(r).iter().fold(false, |acc, &c| acc ^ v.get(c));
            if parity {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    /// Returns `true` when `self · other^T` is the zero matrix, i.e. every
    /// row of `self` overlaps every row of `other` in an even number of
    /// positions.
    pub fn rows_orthogonal_to(&self, other: &Self) -> Result<bool> {
        Ok(self.first_non_orthogonal_pair(other)?.is_none())
    }

    /// First `(row of self, row of other)` pair with odd overlap, if any.
    pub fn first_non_orthogonal_pair(&self, other: &Self) -> Result<Option<(usize, usize)>> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "row orthogonality",
                expected: self.cols,
                actual: other.cols,
            });
        }
        // Only rows of `other` that share a column with row `a` can
        // contribute, so count overlaps through the column view.
        let mut overlap = vec![0u32; other.rows];
        let mut touched = Vec::new();
        for a in 0..self.rows {
            for &c in self.row(a) {
                for &b in other.col(c) {
                    if overlap[b] == 0 {
                        touched.push(b);
                    }
                    overlap[b] += 1;
                }
            }
            touched.sort_unstable();
            let bad = touched.iter().copied().find(|&b| overlap[b] % 2 == 1);
            for &b in &touched {
                overlap[b] = 0;
            }
            touched.clear();
            if let Some(b) = bad {
                return Ok(Some((a, b)));
            }
        }
        Ok(None)
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "hstack row count",
                expected: self.rows,
                actual: other.rows,
            });
        }
        let supports = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .copied()
                    .chain(other.row(r).iter().map(|&c| c + self.cols))
                    .collect()
            })
            .collect();
        Self::from_row_supports(self.rows, self.cols + other.cols, supports)
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let supports = self
            .row_supports()
            .map(<[usize]>::to_vec)
            .chain(
                other
                    .row_supports()
                    .map(|row| row.iter().map(|&c| c + self.cols).collect()),
            )
            .collect();
        Self::from_row_supports(self.rows + other.rows, self.cols + other.cols, supports)
            .expect("block diagonal of valid matrices is valid")
    }

    /// A copy of `self` with `v` appended as the last row.
    pub fn with_row(&self, v: &Gf2Vector) -> Result<Self> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "appended row",
                expected: self.cols,
                actual: v.len(),
            });
        }
        let mut supports: Vec<Vec<usize>> = self.row_supports().map(<[usize]>::to_vec).collect();
        supports.push(v.iter_ones().collect());
        Self::from_row_supports(self.rows + 1, self.cols, supports)
    }

    pub fn to_dense(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.rows, self.cols);
        for r in 0..self.rows {
            for &c in self.row(r) {
                m.set(r, c, true);
            }
        }
        m
    }

    /// GF(2) rank by Gaussian elimination on a bit-packed dense copy.
    pub fn rank(&self) -> usize {
        self.to_dense().rank()
    }

    /// Whether `v` is a GF(2) combination of the rows of `self`, decided by
    /// comparing `rank(H)` with the rank of `H` extended by `v`.
    ///
    /// For repeated queries against the same matrix use [`RowSpace`].
    pub fn in_row_space(&self, v: &Gf2Vector) -> Result<bool> {
        let extended = self.with_row(v)?;
        Ok(extended.rank() == self.rank())
    }

    pub fn row_space(&self) -> RowSpace {
        RowSpace::new(self)
    }

    /// Checks the internal invariants: in-range, strictly increasing
    /// supports, and agreement between the row and column views.
    pub fn validate(&self) -> Result<()> {
        let check_view = |ptr: &[usize], idx: &[usize], outer: usize, inner: usize, what: &str| -> Result<()> {
            if ptr.len() != outer + 1 || ptr[0] != 0 || ptr[outer] != idx.len() {
                return Err(Error::InvalidMatrix(format!("{what} pointer array malformed")));
            }
            for i in 0..outer {
                let s = &idx[ptr[i]..ptr[i + 1]];
                if s.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidMatrix(format!("{what} {i} not strictly increasing")));
                }
                if s.last().is_some_and(|&x| x >= inner) {
                    return Err(Error::InvalidMatrix(format!("{what} {i} has out-of-range index")));
                }
            }
            Ok(())
        };
        check_view(&self.row_ptr, &self.row_idx, self.rows, self.cols, "row")?;
        check_view(&self.col_ptr, &self.col_idx, self.cols, self.rows, "column")?;
        let (col_ptr, col_idx) = transpose_csr(self.rows, self.cols, &self.row_ptr, &self.row_idx);
        if col_ptr != self.col_ptr || col_idx != self.col_idx {
            return Err(Error::InvalidMatrix("row and column supports disagree".into()));
        }
        Ok(())
    }
}

fn transpose_csr(rows: usize, cols: usize, row_ptr: &[usize], row_idx: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut col_ptr = vec![0usize; cols + 1];
    for &c in row_idx {
        col_ptr[c + 1] += 1;
    }
    for c in 0..cols {
        col_ptr[c + 1] += col_ptr[c];
    }
    let mut fill = col_ptr.clone();
    let mut col_idx = vec![0usize; row_idx.len()];
    // Rows are visited in order, so each column list comes out sorted.
    for r in 0..rows {
        for &c in &row_idx[row_ptr[r]..row_ptr[r + 1]] {
            col_idx[fill[c]] = r;
            fill[c] += 1;
        }
    }
    (col_ptr, col_idx)
}

impl fmt::Debug for SparseGf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseGf2Matrix {}x{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 32 && self.cols <= 64 {
            for r in 0..self.rows {
                let line: String = (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '.' }).collect();
                writeln!(f, "  {line}")?;
            }
        }
        Ok(())
    }
}
