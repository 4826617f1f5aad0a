//! Dense exact rational matrices: row reduction, rank, nullspace.
//!
//! This is the shared linear-algebra primitive. It is used both by the
//! Groebner-based homology pipeline (for induced maps on finite-dimensional
//! homology) and by the independent truncated-degree oracle, which must not
//! depend on any Groebner machinery.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A dense matrix over Q, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> QMatrix {
        QMatrix { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> QMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Find a pivot in column j at or below row r.
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, j).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            // Normalize the pivot row.
            let inv = self.at(r, j).recip();
            for k in j..self.cols {
                if !self.at(r, k).is_zero() {
                    let v = self.at(r, k) * &inv;
                    *self.at_mut(r, k) = v;
                }
            }
            // Eliminate the column elsewhere.
            for i in 0..self.rows {
                if i == r || self.at(i, j).is_zero() {
                    continue;
                }
                let factor = self.at(i, j).clone();
                for k in j..self.cols {
                    if !self.at(r, k).is_zero() {
                        let v = self.at(i, k) - &(&factor * self.at(r, k));
                        *self.at_mut(i, k) = v;
                    }
                }
            }
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// A basis of `{ v : self * v = 0 }` (column-vector kernel).
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_rows: Vec<(usize, usize)> =
            pivots.iter().cloned().enumerate().map(|(r, c)| (r, c)).collect();
        let is_pivot = |j: usize| pivots.binary_search(&j).is_ok();
        let mut basis = Vec::new();
        for j in 0..self.cols {
            if is_pivot(j) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[j] = BigRational::one();
            for &(r, c) in &pivot_rows {
                v[c] = -m.at(r, j).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Reduce `v` in place against the rows of an rref matrix with the given
    /// pivot columns; afterwards `v` has zero entries at all pivot columns,
    /// and is unchanged modulo the row space.
    pub fn reduce_vector(&self, pivots: &[usize], v: &mut [BigRational]) {
        assert_eq!(v.len(), self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if v[c].is_zero() {
                continue;
            }
            let factor = v[c].clone();
            for k in c..self.cols {
                if !self.at(r, k).is_zero() {
                    v[k] = &v[k] - &(&factor * self.at(r, k));
                }
            }
        }
    }
}
