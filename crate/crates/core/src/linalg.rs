//! Dense Gaussian elimination over a [`Field`], sized for the small systems
//! that arise in support admissibility checks and code comparisons.

use crate::ffield::{Fe, Field};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    pub fn from_rows(rows: &[Vec<Fe>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fe {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fe) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fe] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fe>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pr) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(rank, pr);
            let inv = f.inv(self.get(rank, col)).expect("pivot is nonzero");
            for c in col..self.cols {
                let v = f.mul(self.get(rank, c), inv);
                self.set(rank, c, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(factor, self.get(rank, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        pivots
    }
}

pub fn rank(f: &Field, m: &Matrix) -> usize {
    m.clone().rref(f).len()
}

/// Basis of `{v : M v = 0}` read off the reduced echelon form: one vector
/// per free column, with a 1 in that column.
pub fn null_space(f: &Field, m: &Matrix) -> Vec<Vec<Fe>> {
    let mut r = m.clone();
    let pivots = r.rref(f);
    let mut is_pivot = vec![false; m.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; m.cols()];
            v[free] = Fe::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            v
        })
        .collect()
}

/// Nonzero rows of the reduced row echelon form: a canonical description of
/// the row space.
pub fn row_space_basis(f: &Field, rows: &[Vec<Fe>], cols: usize) -> Vec<Vec<Fe>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(rows);
    assert_eq!(m.cols(), cols);
    let rank = m.rref(f).len();
    (0..rank).map(|r| m.row(r).to_vec()).collect()
}

pub fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}
