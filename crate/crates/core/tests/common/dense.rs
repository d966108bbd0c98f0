//! Dense rational linear algebra kept apart from the library: fraction-free
//! (Bareiss) elimination for ranks, Gauss-Jordan for kernels.

use beilinson::exactlin::Matrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Q>>,
}

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

impl Dense {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            a: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.a[i][i] = Q::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.a[i][j] = q(v);
            }
        }
        m
    }

    /// Copies a library matrix over ℚ.
    pub fn from_matrix(m: &Matrix) -> Self {
        let mut out = Self::zeros(m.rows(), m.cols());
        for (i, j, v) in m.triplets() {
            let (n, d) = v.to_fraction();
            out.a[i][j] = Q::new(n, d);
        }
        out
    }

    /// Row-major `i64` entries, for building library matrices.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.a
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        assert!(x.is_integer(), "non-integral entry");
                        i64::try_from(x.to_integer()).expect("entry fits in i64")
                    })
                    .collect()
            })
            .collect()
    }

    pub fn mul(&self, o: &Dense) -> Dense {
        assert_eq!(self.cols, o.rows);
        let mut out = Dense::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    if !o.a[k][j].is_zero() {
                        out.a[i][j] += &self.a[i][k] * &o.a[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Dense) -> Dense {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.a[i][j] += &o.a[i][j];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    /// Columns `[self | o]`.
    pub fn hcat(&self, o: &Dense) -> Dense {
        assert_eq!(self.rows, o.rows);
        let mut out = Dense::zeros(self.rows, self.cols + o.cols);
        for i in 0..self.rows {
            out.a[i][..self.cols].clone_from_slice(&self.a[i]);
            out.a[i][self.cols..].clone_from_slice(&o.a[i]);
        }
        out
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Dense {
        let mut out = Dense::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().take(rows).enumerate() {
                out.a[i][j] = x.clone();
            }
        }
        out
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.a[i][j].clone()).collect()).collect()
    }

    /// Fraction-free elimination over ℤ after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let mut m: Vec<Vec<BigInt>> = self
            .a
            .iter()
            .map(|row| {
                let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                    m[i][j] = v;
                }
                m[i][c] = BigInt::zero();
            }
            prev = m[r][c].clone();
            r += 1;
            if r == self.rows {
                break;
            }
        }
        r
    }

    /// Basis of the null space by Gauss-Jordan elimination.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut m = self.a.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..self.rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = Q::one() / &m[r][c];
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    let pivot_row = m[r].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Q::zero(); self.cols];
                v[free] = Q::one();
                for (k, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[k][free].clone();
                }
                v
            })
            .collect()
    }
}

/// Dimension of the span of `cols` inside a space of dimension `n`.
pub fn span_dim(n: usize, cols: &[Vec<Q>]) -> usize {
    Dense::from_columns(n, cols).rank()
}

/// Homology dimension of `C_{n+1} → C_n → C_{n-1}` given the two maps.
pub fn homology_dim(dim: usize, d_in: &Dense, d_out: &Dense) -> usize {
    dim - d_out.rank() - d_in.rank()
}
