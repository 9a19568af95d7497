//! Sparse matrices with arbitrary-precision integer entries.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Coordinate-format integer matrix. Entries are kept sorted by
/// `(row, col)`, without duplicates and without stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, BigInt::from(1))).collect(),
        }
    }

    /// Builds a matrix from triplets; repeated coordinates are summed and
    /// zero results dropped.
    ///
    /// Panics if a coordinate is out of range.
    pub fn from_triplets<T: Into<BigInt>>(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            *acc.entry((r, c)).or_default() += v.into();
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let cols = columns.len();
        Self::from_triplets(
            rows,
            cols,
            columns
                .into_iter()
                .enumerate()
                .flat_map(|(c, col)| col.into_iter().map(move |(r, v)| (r, c, v))),
        )
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::from_triplets(
            nrows,
            ncols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(r, c, v)| (*r, *c, v))
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries
            .binary_search_by(|(er, ec, _)| (*er, *ec).cmp(&(r, c)))
            .map(|i| self.entries[i].2.clone())
            .unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(
            self.cols,
            self.rows,
            self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())),
        )
    }

    /// Appends the given sparse columns on the right.
    pub fn with_columns(&self, extra: &[Vec<(usize, i64)>]) -> Self {
        let base = self.cols;
        Self::from_triplets(
            self.rows,
            self.cols + extra.len(),
            self.entries
                .iter()
                .map(|(r, c, v)| (*r, *c, v.clone()))
                .chain(extra.iter().enumerate().flat_map(|(j, col)| {
                    col.iter()
                        .map(move |&(r, v)| (r, base + j, BigInt::from(v)))
                })),
        )
    }

    /// Matrix product; panics on a dimension mismatch.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: Vec<Vec<(usize, &BigInt)>> = vec![Vec::new(); other.rows];
        for (r, c, v) in &other.entries {
            by_row[*r].push((*c, v));
        }
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (r, k, a) in &self.entries {
            for &(c, b) in &by_row[*k] {
                *acc.entry((*r, c)).or_default() += a * b;
            }
        }
        Self::from_triplets(
            self.rows,
            other.cols,
            acc.into_iter().map(|((r, c), v)| (r, c, v)),
        )
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    /// Dense copy with `i64` entries; panics if an entry does not fit.
    pub fn to_dense_i64(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.to_i64().expect("entry fits in i64");
        }
        out
    }

    /// Row-major sparse rows over `R`, or `None` if some entry does not fit.
    pub(crate) fn row_lists<R: crate::ring::Ring>(&self) -> Option<Vec<Vec<(usize, R)>>> {
        let mut rows: Vec<Vec<(usize, R)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, R::from_bigint(v)?));
        }
        Some(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplets_are_merged() {
        let m =
            SparseIntMatrix::from_triplets(2, 2, vec![(0, 0, 1), (0, 0, -1), (1, 0, 2), (1, 0, 3)]);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), BigInt::from(5));
        assert_eq!(m.get(0, 0), BigInt::from(0));
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 2], vec![3, 4]]);
        let b = SparseIntMatrix::from_dense(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).to_dense_i64(), vec![vec![2, 1], vec![4, 3]]);
        assert_eq!(a.transpose().to_dense_i64(), vec![vec![1, 3], vec![2, 4]]);
        assert_eq!(a.mul(&SparseIntMatrix::identity(2)), a);
    }

    #[test]
    fn extra_columns() {
        let a = SparseIntMatrix::from_dense(&[vec![1], vec![0]]);
        let b = a.with_columns(&[vec![(1, 7)]]);
        assert_eq!(b.to_dense_i64(), vec![vec![1, 0], vec![0, 7]]);
    }
}
