//! Dense-semantics, sparsely stored exact matrices.
//!
//! A [`Matrix`] behaves like a full rows × cols grid over one field, but only
//! nonzero entries are stored (row-wise, sorted by column, no explicit
//! zeros). Because the stored form is canonical, derived equality coincides
//! with equality of the underlying linear maps, which is what every checker
//! in this crate ultimately relies on.

use crate::field::{FieldDesc, Scalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: left is {0}×{1}, right is {2}×{3}")]
    DimMismatch(usize, usize, usize, usize),
    #[error("matrices over different fields ({0} vs {1})")]
    FieldMismatch(FieldDesc, FieldDesc),
    #[error("entry index ({0},{1}) out of bounds for a {2}×{3} matrix")]
    OutOfBounds(usize, usize, usize, usize),
    #[error("matrix is not idempotent (first difference at ({0},{1}))")]
    NotIdempotent(usize, usize),
    #[error("matrix is not square ({0}×{1})")]
    NotSquare(usize, usize),
}

/// Exact matrix, row-major semantics, canonical sparse storage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldDesc,
    // data[r] is sorted by column and never holds zeros
    data: Vec<Vec<(usize, Scalar)>>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: FieldDesc) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize, field: FieldDesc) -> Matrix {
        let mut data = Vec::with_capacity(n);
        for i in 0..n {
            data.push(vec![(i, Scalar::one(field))]);
        }
        Matrix {
            rows: n,
            cols: n,
            field,
            data,
        }
    }

    /// Builds from (row, col, value) triplets; repeated positions are summed.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: FieldDesc,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Matrix, MatrixError> {
        let mut per_row: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(MatrixError::OutOfBounds(r, c, rows, cols));
            }
            if v.field() != field {
                return Err(MatrixError::FieldMismatch(field, v.field()));
            }
            per_row[r].push((c, v));
        }
        for row in &mut per_row {
            row.sort_by_key(|(c, _)| *c);
            let mut merged: Vec<(usize, Scalar)> = Vec::with_capacity(row.len());
            for (c, v) in row.drain(..) {
                match merged.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv = lv.add(&v),
                    _ => merged.push((c, v)),
                }
            }
            merged.retain(|(_, v)| !v.is_zero());
            *row = merged;
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            data: per_row,
        })
    }

    /// Builds from dense rows (zeros are stripped).
    pub fn from_rows(field: FieldDesc, rows: Vec<Vec<Scalar>>) -> Matrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nrows);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            let mut sparse = Vec::new();
            for (c, v) in row.into_iter().enumerate() {
                assert_eq!(v.field(), field, "entry in the wrong field");
                if !v.is_zero() {
                    sparse.push((c, v));
                }
            }
            data.push(sparse);
        }
        Matrix {
            rows: nrows,
            cols: ncols,
            field,
            data,
        }
    }

    /// Convenience constructor from integer rows.
    pub fn from_int_rows(field: FieldDesc, rows: &[Vec<i64>]) -> Matrix {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&n| Scalar::from_integer(field, n)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(i) => self.data[r][i].1.clone(),
            Err(_) => Scalar::zero(self.field),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.cols];
        for r in 0..self.rows {
            for (c, v) in &self.data[r] {
                data[*c].push((r, v.clone()));
            }
        }
        // column order within each new row follows increasing r already
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            data,
        }
    }

    pub fn scale(&self, k: &Scalar) -> Matrix {
        assert_eq!(k.field(), self.field);
        if k.is_zero() {
            return Matrix::zero(self.rows, self.cols, self.field);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v.mul(k))).collect())
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data,
        }
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch(self.field, other.field));
        }
        if self.cols != other.rows {
            return Err(MatrixError::DimMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut data = Vec::with_capacity(self.rows);
        let mut acc: Vec<Option<Scalar>> = vec![None; other.cols];
        let mut touched: Vec<usize> = Vec::new();
        for r in 0..self.rows {
            for (k, a) in &self.data[r] {
                for (j, b) in &other.data[*k] {
                    let prod = a.mul(b);
                    match &mut acc[*j] {
                        Some(s) => *s = s.add(&prod),
                        slot @ None => {
                            *slot = Some(prod);
                            touched.push(*j);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut row = Vec::with_capacity(touched.len());
            for j in touched.drain(..) {
                let v = acc[j].take().unwrap();
                if !v.is_zero() {
                    row.push((j, v));
                }
            }
            data.push(row);
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            field: self.field,
            data,
        })
    }

    /// Kronecker product with the usual row-major convention: the left
    /// factor indexes the most significant part of row and column indices.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field, "kron across fields");
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for r1 in 0..self.rows {
            for r2 in 0..other.rows {
                let mut row = Vec::with_capacity(self.data[r1].len() * other.data[r2].len());
                for (c1, a) in &self.data[r1] {
                    for (c2, b) in &other.data[r2] {
                        row.push((c1 * other.cols + c2, a.mul(b)));
                    }
                }
                data.push(row);
            }
        }
        Matrix {
            rows,
            cols,
            field: self.field,
            data,
        }
    }

    /// First position where the two matrices differ, with both values.
    pub fn first_difference(&self, other: &Matrix) -> Option<(usize, usize, Scalar, Scalar)> {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        for r in 0..self.rows {
            let (a, b) = (&self.data[r], &other.data[r]);
            let (mut i, mut j) = (0usize, 0usize);
            while i < a.len() || j < b.len() {
                let ca = a.get(i).map(|(c, _)| *c).unwrap_or(usize::MAX);
                let cb = b.get(j).map(|(c, _)| *c).unwrap_or(usize::MAX);
                if ca < cb {
                    return Some((r, ca, a[i].1.clone(), Scalar::zero(self.field)));
                }
                if cb < ca {
                    return Some((r, cb, Scalar::zero(self.field), b[j].1.clone()));
                }
                if a[i].1 != b[j].1 {
                    return Some((r, ca, a[i].1.clone(), b[j].1.clone()));
                }
                i += 1;
                j += 1;
            }
        }
        None
    }

    #[allow(clippy::needless_range_loop)]
    fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![Scalar::zero(self.field); self.cols]; self.rows];
        for r in 0..self.rows {
            for (c, v) in &self.data[r] {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns.
    ///
    /// Pivot choice is deterministic (first row with a nonzero entry in the
    /// current column), so the output is canonical for a given input.
    #[allow(clippy::needless_range_loop)]
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.to_dense();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(sel) = (pivot_row..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(pivot_row, sel);
            let inv = m[pivot_row][col].inv().expect("nonzero pivot");
            for c in col..self.cols {
                m[pivot_row][c] = m[pivot_row][c].mul(&inv);
            }
            for r in 0..self.rows {
                if r != pivot_row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in col..self.cols {
                        let delta = factor.mul(&m[pivot_row][c]);
                        m[r][c] = m[r][c].sub(&delta);
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        (Matrix::from_rows(self.field, m), pivots)
    }

    /// Rank over the matrix's field, by exact Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Splits a (checked) idempotent `e` as `e = iota · pi` with
    /// `pi · iota = identity` of size `rank(e)`.
    ///
    /// The image basis is the set of pivot columns of the reduced row
    /// echelon form of `e`: `iota` collects those columns of `e` and `pi` is
    /// the nonzero rows of the echelon form. The choice is canonical, so the
    /// splitting is reproducible bit for bit.
    pub fn split_idempotent(&self) -> Result<(Matrix, Matrix), MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let square = self.matmul(self).expect("square product");
        if let Some((r, c, _, _)) = square.first_difference(self) {
            return Err(MatrixError::NotIdempotent(r, c));
        }
        let (rref, pivots) = self.rref();
        let rank = pivots.len();
        // iota: the pivot columns of e
        let mut iota_triplets = Vec::new();
        for r in 0..self.rows {
            for (c, v) in &self.data[r] {
                if let Ok(k) = pivots.binary_search(c) {
                    iota_triplets.push((r, k, v.clone()));
                }
            }
        }
        let iota = Matrix::from_triplets(self.rows, rank, self.field, iota_triplets)?;
        // pi: the nonzero rows of rref(e)
        let mut pi_triplets = Vec::new();
        for r in 0..rank {
            for (c, v) in rref.row(r) {
                pi_triplets.push((r, *c, v.clone()));
            }
        }
        let pi = Matrix::from_triplets(rank, self.cols, self.field, pi_triplets)?;
        Ok((iota, pi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldDesc = FieldDesc::Rational;

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(2, Q).rank(), 2);
        assert_eq!(Matrix::zero(2, 2, Q).rank(), 0);
        let ones = Matrix::from_int_rows(Q, &[vec![1, 1], vec![1, 1]]);
        assert_eq!(ones.rank(), 1);
    }

    #[test]
    fn rank_with_fractions() {
        let m = Matrix::from_rows(
            Q,
            vec![
                vec![
                    Scalar::parse(Q, "1/2").unwrap(),
                    Scalar::parse(Q, "1/3").unwrap(),
                ],
                vec![
                    Scalar::parse(Q, "3/2").unwrap(),
                    Scalar::parse(Q, "1").unwrap(),
                ],
            ],
        );
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn split_diag_projection() {
        let e = Matrix::from_int_rows(Q, &[vec![1, 0], vec![0, 0]]);
        let (iota, pi) = e.split_idempotent().unwrap();
        assert_eq!(iota, Matrix::from_int_rows(Q, &[vec![1], vec![0]]));
        assert_eq!(pi, Matrix::from_int_rows(Q, &[vec![1, 0]]));
    }

    #[test]
    fn split_identity() {
        let e = Matrix::identity(3, Q);
        let (iota, pi) = e.split_idempotent().unwrap();
        assert_eq!(iota, Matrix::identity(3, Q));
        assert_eq!(pi, Matrix::identity(3, Q));
    }

    #[test]
    fn split_rank_one_idempotent() {
        // [[1,1],[0,0]] is idempotent; verified by direct multiplication
        let e = Matrix::from_int_rows(Q, &[vec![1, 1], vec![0, 0]]);
        let (iota, pi) = e.split_idempotent().unwrap();
        assert_eq!(pi.matmul(&iota).unwrap(), Matrix::identity(1, Q));
        assert_eq!(iota.matmul(&pi).unwrap(), e);
    }

    #[test]
    fn split_rejects_non_idempotent() {
        let m = Matrix::from_int_rows(Q, &[vec![0, 1], vec![0, 0]]);
        assert_eq!(
            m.split_idempotent().unwrap_err(),
            MatrixError::NotIdempotent(0, 1)
        );
    }

    #[test]
    fn splitting_is_deterministic() {
        let e = Matrix::from_rows(
            Q,
            vec![
                vec![
                    Scalar::parse(Q, "1/2").unwrap(),
                    Scalar::parse(Q, "1/2").unwrap(),
                ],
                vec![
                    Scalar::parse(Q, "1/2").unwrap(),
                    Scalar::parse(Q, "1/2").unwrap(),
                ],
            ],
        );
        let a = e.split_idempotent().unwrap();
        let b = e.split_idempotent().unwrap();
        assert_eq!(a, b);
        let (iota, pi) = a;
        assert_eq!(pi.matmul(&iota).unwrap(), Matrix::identity(1, Q));
        assert_eq!(iota.matmul(&pi).unwrap(), e);
        assert_eq!(iota.matmul(&pi).unwrap().rank(), e.rank());
    }

    #[test]
    fn kron_matches_block_structure() {
        let a = Matrix::from_int_rows(Q, &[vec![1, 2], vec![3, 4]]);
        let b = Matrix::from_int_rows(Q, &[vec![0, 5], vec![6, 0]]);
        let k = a.kron(&b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k.get(0, 1), Scalar::from_integer(Q, 5));
        assert_eq!(k.get(1, 0), Scalar::from_integer(Q, 6));
        assert_eq!(k.get(0, 3), Scalar::from_integer(Q, 10));
        assert_eq!(k.get(3, 2), Scalar::from_integer(Q, 24));
    }

    #[test]
    fn prime_field_rank() {
        // [[1,1],[1,1]] has rank 1 over F_2 as well, but [[1,1],[1,-1]] drops rank
        let f = FieldDesc::Prime(2);
        let m = Matrix::from_int_rows(f, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(), 1);
        let q = Matrix::from_int_rows(Q, &[vec![1, 1], vec![1, -1]]);
        assert_eq!(q.rank(), 2);
    }
}
