//! Dense exact-rational matrices and sparse span computations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: Vec<Vec<Rational>>,
    cols: usize,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows: vec![vec![Rational::zero(); cols]; rows], cols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { rows, cols }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix { rows, cols: self.rows.len() }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch");
        let mut out = Matrix::zeros(self.nrows(), other.cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r[..i.min(self.cols)].iter().all(Zero::is_zero))
    }

    pub fn is_unitriangular(&self) -> bool {
        self.is_upper_triangular() && (0..self.nrows().min(self.cols)).all(|i| self.rows[i][i].is_one())
    }

    pub fn rank(&self) -> usize {
        let mut m = self.rows.clone();
        row_reduce(&mut m, self.cols).len()
    }

    /// Exact Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.nrows();
        if n != self.cols {
            return Err(Error::Internal("inverse of a non-square matrix".into()));
        }
        let mut aug: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        let pivots = row_reduce(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::Internal("singular matrix".into()));
        }
        Ok(Matrix::from_rows(aug.into_iter().map(|r| r[n..].to_vec()).collect()))
    }
}

/// Reduced row echelon form over the first `width` columns; returns pivot columns.
fn row_reduce(m: &mut [Vec<Rational>], width: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of a family of sparse vectors.
pub fn sparse_rank<K: Ord + Clone>(vectors: &[BTreeMap<K, Rational>]) -> usize {
    let keys: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let index: BTreeMap<&K, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let dense: Vec<Vec<Rational>> = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); keys.len()];
            for (k, c) in v {
                row[index[k]] = c.clone();
            }
            row
        })
        .collect();
    Matrix::from_rows(dense).rank()
}

/// Coefficients `c` with `Σ c_i v_i = target`, or `None` when the target
/// lies outside the span. The vectors must be linearly independent.
pub fn solve_in_span<K: Ord + Clone>(
    vectors: &[BTreeMap<K, Rational>],
    target: &BTreeMap<K, Rational>,
) -> Option<Vec<Rational>> {
    let keys: Vec<K> = vectors
        .iter()
        .chain(std::iter::once(target))
        .flat_map(|v| v.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let k = vectors.len();
    // one equation per coordinate: Σ_i c_i v_i[key] = target[key]
    let mut system: Vec<Vec<Rational>> = keys
        .iter()
        .map(|key| {
            let mut row: Vec<Rational> =
                vectors.iter().map(|v| v.get(key).cloned().unwrap_or_else(Rational::zero)).collect();
            row.push(target.get(key).cloned().unwrap_or_else(Rational::zero));
            row
        })
        .collect();
    let pivots = row_reduce(&mut system, k + 1);
    if pivots.contains(&k) || pivots.len() < k {
        return None;
    }
    Some((0..k).map(|i| system[i][k].clone()).collect())
}
