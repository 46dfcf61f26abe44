//! Dense linear algebra over `F_p`.

use crate::field::{FieldElement, PrimeField};

/// A dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![FieldElement::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        DenseMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// The submatrix on the given row and column indices, in that order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|x| x.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    /// Pivot columns of the reduced row echelon form, i.e. the columns that
    /// are not combinations of the columns to their left.
    pub fn pivot_columns(&self, field: &PrimeField) -> Vec<usize> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&k| !m.get(k, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
            for k in r + 1..m.rows {
                let factor = field.mul(m.get(k, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = field.sub(m.get(k, j), field.mul(factor, m.get(r, j)));
                    m.set(k, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &PrimeField) -> usize {
        self.pivot_columns(field).len()
    }

    /// True iff the matrix is square of full rank.
    pub fn is_nonsingular(&self, field: &PrimeField) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::seeded_generator;

    fn m(field: &PrimeField, rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect())
    }

    #[test]
    fn identity_is_nonsingular() {
        let f = PrimeField::default();
        assert!(m(&f, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).is_nonsingular(&f));
        assert!(!m(&f, &[&[1, 2], &[2, 4]]).is_nonsingular(&f));
        assert!(!m(&f, &[&[1, 2, 3]]).is_nonsingular(&f));
    }

    #[test]
    fn pivots_are_greedy_from_left() {
        let f = PrimeField::default();
        let a = m(&f, &[&[1, 2, 0, 1], &[2, 4, 1, 0]]);
        assert_eq!(a.pivot_columns(&f), vec![0, 2]);
        let b = m(&f, &[&[0, 0, 3], &[0, 0, 1]]);
        assert_eq!(b.pivot_columns(&f), vec![2]);
    }

    #[test]
    fn rank_of_random_products() {
        // rank(A * B) for A: 5x2, B: 2x5 is at most 2 and generically exactly 2
        let f = PrimeField::default();
        let mut rng = seeded_generator(3);
        let a: Vec<Vec<_>> = (0..5).map(|_| (0..2).map(|_| f.random_nonzero(&mut rng)).collect()).collect();
        let b: Vec<Vec<_>> = (0..2).map(|_| (0..5).map(|_| f.random_nonzero(&mut rng)).collect()).collect();
        let prod: Vec<Vec<_>> = (0..5)
            .map(|i| (0..5).map(|j| (0..2).fold(FieldElement::ZERO, |acc, k| f.add(acc, f.mul(a[i][k], b[k][j])))).collect())
            .collect();
        assert_eq!(DenseMatrix::from_rows(prod).rank(&f), 2);
    }
}
