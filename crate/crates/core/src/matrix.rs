//! Dense exact-rational matrices.
//!
//! Shapes are carried explicitly so that zero-row and zero-column matrices
//! (which occur at the ends of the complex) behave uniformly. Maps act on
//! row vectors: the matrix of an operator has one row per source basis
//! element, and applying the operator is `x * M`. Consequently the kernel
//! of an operator is the left null space of its matrix and the image is
//! the row space.

use crate::rational::Rational;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatMat {
    rows: usize,
    cols: usize,
    data: Vec<Vec<Rational>>,
}

impl RatMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![vec![Rational::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Rational::one();
        }
        m
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<Rational>>) -> Self {
        for row in &data {
            assert_eq!(row.len(), cols, "ragged row");
        }
        RatMat {
            rows: data.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i]
    }

    pub fn to_vecs(&self) -> Vec<Vec<Rational>> {
        self.data.clone()
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn transpose(&self) -> RatMat {
        let mut out = RatMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j][i] = self.data[i][j].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &RatMat) -> RatMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i][j] = &out.data[i][j] + &other.data[i][j];
            }
        }
        out
    }

    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(
            self.cols, other.rows,
            "inner dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = RatMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.data[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.data[k][j].is_zero() {
                        continue;
                    }
                    let delta = &self.data[i][k] * &other.data[k][j];
                    out.data[i][j] = &out.data[i][j] + &delta;
                }
            }
        }
        out
    }

    /// `x * self` for a row coordinate vector.
    pub fn apply_row(&self, x: &[Rational]) -> Vec<Rational> {
        assert_eq!(x.len(), self.rows, "vector length mismatch");
        let mut out = vec![Rational::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                if !self.data[i][j].is_zero() {
                    let delta = xi * &self.data[i][j];
                    out[j] = &out[j] + &delta;
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns. RREF is canonical for
    /// the row space, so equal row spaces give byte-equal results.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, p);
            let lead = m.data[r][c].clone();
            for j in c..m.cols {
                m.data[r][j] = &m.data[r][j] / &lead;
            }
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let factor = m.data[i][c].clone();
                    for j in c..m.cols {
                        let delta = &factor * &m.data[r][j];
                        m.data[i][j] = &m.data[i][j] - &delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rows spanning the left null space {x : x * self = 0}.
    pub fn kernel_rows(&self) -> RatMat {
        let (red, _) = hstack(self, &RatMat::identity(self.rows)).rref();
        let rows: Vec<Vec<Rational>> = red
            .data
            .into_iter()
            .filter(|row| row[..self.cols].iter().all(|c| c.is_zero()))
            .map(|row| row[self.cols..].to_vec())
            .collect();
        RatMat::from_rows(self.rows, rows)
    }

    /// Solve `x * self = rhs`; returns one solution (free variables zero)
    /// or None if inconsistent.
    pub fn solve_row(&self, rhs: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(rhs.len(), self.cols, "target length mismatch");
        // Transposed system: self^T * x^T = rhs^T, solved by reducing the
        // augmented matrix [self^T | rhs^T].
        let t = self.transpose();
        let mut aug = RatMat::zeros(t.rows, t.cols + 1);
        for i in 0..t.rows {
            for j in 0..t.cols {
                aug.data[i][j] = t.data[i][j].clone();
            }
            aug.data[i][t.cols] = rhs[i].clone();
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&t.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.rows];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.data[row][t.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<RatMat> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let aug = hstack(self, &RatMat::identity(self.rows));
        let (red, pivots) = aug.rref();
        if pivots.len() != self.rows || pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let rows: Vec<Vec<Rational>> = red
            .data
            .into_iter()
            .map(|row| row[self.cols..].to_vec())
            .collect();
        Some(RatMat::from_rows(self.rows, rows))
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(c, p);
                det = -det;
            }
            det *= &m[c][c];
            let lead = m[c][c].clone();
            for i in (c + 1)..n {
                if !m[i][c].is_zero() {
                    let factor = &m[i][c] / &lead;
                    for j in c..n {
                        let delta = &factor * &m[c][j];
                        m[i][j] = &m[i][j] - &delta;
                    }
                }
            }
        }
        det
    }

    pub fn submatrix(&self, row_ix: &[usize], col_ix: &[usize]) -> RatMat {
        let data: Vec<Vec<Rational>> = row_ix
            .iter()
            .map(|&i| col_ix.iter().map(|&j| self.data[i][j].clone()).collect())
            .collect();
        RatMat::from_rows(col_ix.len(), data)
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.data[i][j] == self.data[j][i]))
    }

    /// Sylvester criterion: symmetric with all leading principal minors
    /// positive.
    pub fn is_positive_definite(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        (1..=self.rows).all(|k| {
            let ix: Vec<usize> = (0..k).collect();
            self.submatrix(&ix, &ix).det() > Rational::zero()
        })
    }

    pub fn scale(&self, c: &Rational) -> RatMat {
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row {
                *v = &*v * c;
            }
        }
        out
    }
}

/// Stack side by side: [a | b].
pub fn hstack(a: &RatMat, b: &RatMat) -> RatMat {
    assert_eq!(a.rows, b.rows, "row count mismatch");
    let data: Vec<Vec<Rational>> = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(x, y)| {
            let mut row = x.clone();
            row.extend(y.iter().cloned());
            row
        })
        .collect();
    RatMat::from_rows(a.cols + b.cols, data)
}

/// Stack on top of each other: [a ; b].
pub fn vstack(a: &RatMat, b: &RatMat) -> RatMat {
    assert_eq!(a.cols, b.cols, "column count mismatch");
    let mut data = a.data.clone();
    data.extend(b.data.iter().cloned());
    RatMat::from_rows(a.cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn m(cols: usize, entries: &[&[i64]]) -> RatMat {
        RatMat::from_rows(
            cols,
            entries
                .iter()
                .map(|row| row.iter().map(|&v| rat(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_rank_kernel() {
        let a = m(3, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_rows();
        assert_eq!(k.rows(), 1);
        assert!(k.mul(&a).is_zero_matrix());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(2, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), RatMat::identity(2));
        assert_eq!(inv.at(0, 0), &rat(1));
        assert_eq!(inv.at(0, 1), &rat(-1));
        let singular = m(2, &[&[1, 2], &[2, 4]]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn solve_row_systems() {
        let a = m(2, &[&[1, 0], &[1, 1], &[0, 2]]);
        let x = a.solve_row(&[rat(3), rat(4)]).unwrap();
        assert_eq!(a.apply_row(&x), vec![rat(3), rat(4)]);
        // inconsistent: ask for a vector outside the row space
        let b = m(2, &[&[1, 1]]);
        assert!(b.solve_row(&[rat(1), rat(2)]).is_none());
    }

    #[test]
    fn determinants_and_definiteness() {
        let a = m(3, &[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]);
        assert_eq!(a.det(), rat(4));
        assert!(a.is_positive_definite());
        let b = m(2, &[&[1, 2], &[2, 1]]);
        assert_eq!(b.det(), rat(-3));
        assert!(!b.is_positive_definite());
        let half = RatMat::identity(2).scale(&frac(1, 2));
        assert_eq!(half.det(), frac(1, 4));
    }

    #[test]
    fn empty_shapes_compose() {
        let tail = RatMat::zeros(1, 0); // top degree to one past the end
        let prod = RatMat::zeros(4, 1).mul(&tail);
        assert_eq!((prod.rows(), prod.cols()), (4, 0));
        assert_eq!(tail.rank(), 0);
        assert_eq!(tail.kernel_rows().rows(), 1);
    }
}
