use std::fmt;

use super::scalar::{Field, Scalar};
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// Sparse exact matrix stored by columns.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: Vec<SparseVec>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols: vec![SparseVec::new(); cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self {
            field,
            rows: n,
            cols: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn scalar(field: Field, n: usize, c: &Scalar) -> Self {
        Self {
            field,
            rows: n,
            cols: (0..n).map(|i| SparseVec::unit(i, field).scale(c)).collect(),
        }
    }

    /// Builds from columns; entries beyond `rows` are a shape error.
    pub fn from_columns(field: Field, rows: usize, cols: Vec<SparseVec>) -> Result<Self> {
        for (j, c) in cols.iter().enumerate() {
            if let Some(i) = c.max_index() {
                if i >= rows {
                    return Err(Error::Shape(format!(
                        "column {j} has an entry in row {i} of a {rows}-row matrix"
                    )));
                }
            }
        }
        Ok(Self { field, rows, cols })
    }

    pub fn from_triplets(
        field: Field,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            buckets[c].push((r, v));
        }
        Ok(Self {
            field,
            rows,
            cols: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        })
    }

    /// Row-major integer literal, handy in tests and examples.
    pub fn from_rows_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let trip = rows.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(move |(j, &v)| (i, j, field.int(v)))
        });
        Self::from_triplets(field, r, c, trip).expect("literal shape")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.cols[j].get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(SparseVec::nnz).sum()
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, c) in v.iter() {
            acc = acc.axpy(c, &self.cols[*j]);
        }
        acc
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols() != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.mul_vec(c)).collect(),
        })
    }

    pub fn transpose(&self) -> Matrix {
        let mut buckets: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                buckets[*i].push((j, v.clone()));
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols(),
            cols: buckets.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.add(b, self.field))
                .collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| a.sub(b, self.field))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.scale(&self.field.int(-1))
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.rows != other.rows || self.cols() != other.cols() {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(())
    }

    /// Assembles a block matrix from a grid of optional blocks (`None` = zero).
    pub fn block(
        field: Field,
        row_sizes: &[usize],
        col_sizes: &[usize],
        block: impl Fn(usize, usize) -> Option<Matrix>,
    ) -> Result<Matrix> {
        let rows: usize = row_sizes.iter().sum();
        let mut cols = Vec::with_capacity(col_sizes.iter().sum());
        for (bj, &cw) in col_sizes.iter().enumerate() {
            let mut parts: Vec<(usize, Matrix)> = Vec::new();
            let mut offset = 0;
            for (bi, &rh) in row_sizes.iter().enumerate() {
                if let Some(m) = block(bi, bj) {
                    if m.rows != rh || m.cols() != cw {
                        return Err(Error::Shape(format!(
                            "block ({bi}, {bj}) is {}x{}, expected {rh}x{cw}",
                            m.rows,
                            m.cols()
                        )));
                    }
                    parts.push((offset, m));
                }
                offset += rh;
            }
            for j in 0..cw {
                let mut col = SparseVec::new();
                for (off, m) in &parts {
                    // blocks occupy disjoint row ranges, so this is a concatenation
                    col = col.add(&m.cols[j].offset(*off), field);
                }
                cols.push(col);
            }
        }
        Ok(Matrix { field, rows, cols })
    }

    /// Rows `rows` and columns `cols` as a new matrix.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        Matrix {
            field: self.field,
            rows: rows.len(),
            cols: self.cols[cols].iter().map(|c| c.slice(rows.clone())).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut out = vec![vec![self.field.zero(); self.cols()]; self.rows];
        for (i, j, v) in self.triplets() {
            out[i][j] = v.clone();
        }
        out
    }

    pub fn rank(&self) -> usize {
        super::subspace::rank(self)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols(), self.field)?;
        if self.rows * self.cols() <= 400 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|s| s.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}
