//! Exact Gaussian elimination over `Q(ζ_n)`.

use crate::exactnum::CyclotomicNumber;

/// A dense row-major matrix; small enough at the sizes used here (≤ a few hundred).
#[derive(Debug, Clone)]
pub struct Matrix {
    order: u32,
    ncols: usize,
    rows: Vec<Vec<CyclotomicNumber>>,
}

impl Matrix {
    pub fn zeros(order: u32, nrows: usize, ncols: usize) -> Self {
        Matrix {
            order,
            ncols,
            rows: vec![vec![CyclotomicNumber::zero(order); ncols]; nrows],
        }
    }

    /// Builds a matrix from columns, each given sparsely as `(row, value)` pairs.
    pub fn from_columns(order: u32, nrows: usize, columns: &[Vec<(usize, CyclotomicNumber)>]) -> Self {
        let mut m = Self::zeros(order, nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.rows[*i][j] = v.clone();
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CyclotomicNumber) {
        self.rows[i][j] = v;
    }

    /// Reduces in place to reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| !self.rows[i][c].is_zero()) else {
                continue;
            };
            self.rows.swap(r, p);
            let inv = self.rows[r][c].inverse().expect("nonzero pivot");
            for v in self.rows[r].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
            let pivot_row = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    if !p.is_zero() {
                        *v = &*v - &(&f * p);
                    }
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

    /// A basis of the right kernel `{ v | M v = 0 }`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<CyclotomicNumber>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CyclotomicNumber::zero(self.order); self.ncols];
                v[f] = CyclotomicNumber::one(self.order);
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m.rows[r][f];
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_int(3, v)
    }

    #[test]
    fn rank_and_kernel() {
        let mut m = Matrix::zeros(3, 2, 3);
        // [1 2 3; 2 4 6] has rank 1 and a two-dimensional kernel.
        for (j, v) in [1, 2, 3].into_iter().enumerate() {
            m.set(0, j, int(v));
            m.set(1, j, int(2 * v));
        }
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = (0..3).fold(int(0), |acc, j| acc + m.get(0, j) * &v[j]);
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn cyclotomic_pivots() {
        let z = CyclotomicNumber::primitive_root(3);
        // [1 z; z^2 1] is singular because z·z² = 1.
        let mut m = Matrix::zeros(3, 2, 2);
        m.set(0, 0, int(1));
        m.set(0, 1, z.clone());
        m.set(1, 0, z.pow_u(2));
        m.set(1, 1, int(1));
        assert_eq!(m.rank(), 1);
        m.set(1, 1, int(2));
        assert_eq!(m.rank(), 2);
        assert!(m.kernel().is_empty());
    }
}
