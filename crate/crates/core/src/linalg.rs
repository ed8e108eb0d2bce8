//! Exact linear algebra over the rationals.

use crate::rational::Rational;

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![vec![Rational::zero(); cols]; rows] }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.data[i][j] = v.clone();
            }
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { rows: rows.len(), cols, data: rows }
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else { continue };
            self.data.swap(r, p);
            let inv = self.data[r][c].recip();
            if !inv.is_one() {
                for v in self.data[r].iter_mut() {
                    if !v.is_zero() {
                        *v = &*v * &inv;
                    }
                }
            }
            let pivot_row = self.data[r].clone();
            let nz: Vec<usize> = (c..self.cols).filter(|&j| !pivot_row[j].is_zero()).collect();
            for i in 0..self.rows {
                if i == r || self.data[i][c].is_zero() {
                    continue;
                }
                let f = self.data[i][c].clone();
                for &j in &nz {
                    let d = &f * &pivot_row[j];
                    self.data[i][j] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m.data[r][f];
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.data
            .iter()
            .map(|row| row.iter().zip(v).filter(|(a, b)| !a.is_zero() && !b.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub x: Vec<Rational>,
    /// Number of free columns (dimension of the solution space).
    pub free: usize,
}

/// Solve `A x = b` exactly, assigning `free_value` to every free column.
/// Returns `None` if the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Rational], free_value: &Rational) -> Option<Solution> {
    assert_eq!(a.rows, b.len());
    let mut aug = Matrix::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        aug.data[i][..a.cols].clone_from_slice(&a.data[i]);
        aug.data[i][a.cols] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut x = vec![Rational::zero(); a.cols];
    for &f in &free {
        x[f] = free_value.clone();
    }
    for (r, &p) in pivots.iter().enumerate() {
        let mut v = aug.data[r][a.cols].clone();
        for &f in &free {
            if !aug.data[r][f].is_zero() {
                v -= &aug.data[r][f] * free_value;
            }
        }
        x[p] = v;
    }
    Some(Solution { x, free: free.len() })
}

/// Whether two families of vectors span the same subspace.
pub fn same_span(rows: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = Matrix::from_columns(rows, a).rank();
    let rb = Matrix::from_columns(rows, b).rank();
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && Matrix::from_columns(rows, &both).rank() == ra
}
