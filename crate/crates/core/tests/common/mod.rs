//! Naive dense Gauss-Jordan oracle used by the acceptance suite.
//!
//! Everything here is deliberately independent of the library's own
//! row-reduction, kernel, and image routines: matrices are plain
//! `Vec<Vec<Rational>>`, pivoting is the first nonzero entry, and no code
//! is shared beyond the rational number type itself. The acceptance tests
//! take operator matrices from the library and recompute every rank,
//! kernel dimension, and image dimension with these functions.
//!
//! Conventions match the library's coordinate layout: a matrix M sends a
//! row vector x to x*M, so the kernel of the map is the left null space
//! of M and the image is its row space.

#![allow(dead_code)]

use nilsym::rational::Rational;
use num_traits::Zero;

pub type Mat = Vec<Vec<Rational>>;

/// Shape helper: (rows, cols); an empty matrix has 0 columns.
pub fn shape(m: &Mat) -> (usize, usize) {
    (m.len(), m.first().map_or(0, |r| r.len()))
}

/// Gauss-Jordan elimination over the rationals. Returns the fully reduced
/// matrix together with the pivot column list.
pub fn reduce(mut m: Mat) -> (Mat, Vec<usize>) {
    let (rows, cols) = shape(&m);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut pivot_row = None;
        for i in r..rows {
            if !m[i][c].is_zero() {
                pivot_row = Some(i);
                break;
            }
        }
        let Some(p) = pivot_row else { continue };
        m.swap(r, p);
        let lead = m[r][c].clone();
        for j in 0..cols {
            m[r][j] = &m[r][j] / &lead;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone();
                for j in 0..cols {
                    let delta = &factor * &m[r][j];
                    m[i][j] = &m[i][j] - &delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(m: &Mat) -> usize {
    reduce(m.clone()).1.len()
}

fn is_zero_prefix(row: &[Rational], upto: usize) -> bool {
    row[..upto].iter().all(|c| c.is_zero())
}

/// Basis of the left null space {x : x*M = 0}, one row per basis vector.
/// Computed by reducing [M | I] and keeping the right halves of the rows
/// whose M-half vanished.
pub fn left_kernel(m: &Mat) -> Mat {
    let (rows, cols) = shape(m);
    let mut aug: Mat = Vec::with_capacity(rows);
    for (i, row) in m.iter().enumerate() {
        let mut a = row.clone();
        for j in 0..rows {
            a.push(if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            });
        }
        aug.push(a);
    }
    let (red, _) = reduce(aug);
    red.into_iter()
        .filter(|row| is_zero_prefix(row, cols))
        .map(|row| row[cols..].to_vec())
        .collect()
}

/// Row-convention composition: applying `a` then `b` is the product a*b.
pub fn mul(a: &Mat, b: &Mat) -> Mat {
    let (ar, ac) = shape(a);
    let (br, bc) = shape(b);
    assert_eq!(ac, br, "inner dimension mismatch");
    let mut out = vec![vec![Rational::zero(); bc]; ar];
    for i in 0..ar {
        for k in 0..ac {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..bc {
                let delta = &a[i][k] * &b[k][j];
                out[i][j] = &out[i][j] + &delta;
            }
        }
    }
    out
}

/// Side-by-side concatenation. The left kernel of hcat(A, B) is the
/// intersection of the left kernels of A and B.
pub fn hcat(a: &Mat, b: &Mat) -> Mat {
    let (ar, _) = shape(a);
    let (br, _) = shape(b);
    assert_eq!(ar, br, "row count mismatch");
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let mut row = x.clone();
            row.extend_from_slice(y);
            row
        })
        .collect()
}

/// Stacked concatenation. The row space of vcat(A, B) is the sum of the
/// row spaces, so rank(vcat) gives the dimension of a sum of images.
pub fn vcat(a: &Mat, b: &Mat) -> Mat {
    let mut out = a.clone();
    out.extend_from_slice(b);
    out
}

/// Dimension of the intersection of the left kernels of the given maps,
/// all defined on the same source of dimension `src`.
pub fn kernel_intersection_dim(src: usize, mats: &[&Mat]) -> usize {
    let mut acc: Mat = vec![Vec::new(); src];
    for m in mats {
        assert_eq!(m.len(), src, "source dimension mismatch");
        acc = hcat(&acc, m);
    }
    src - rank(&acc)
}

/// Dimension of the sum of the row spaces of the given matrices.
pub fn row_space_sum_dim(mats: &[&Mat]) -> usize {
    let mut acc: Mat = Vec::new();
    for m in mats {
        acc = vcat(&acc, m);
    }
    rank(&acc)
}

#[cfg(test)]
mod sanity {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn rank_and_left_kernel_agree() {
        // rows: (1,2,3), (2,4,6), (0,1,1) -- rank 2, left kernel spanned by (2,-1,0)
        let m = vec![
            vec![r(1), r(2), r(3)],
            vec![r(2), r(4), r(6)],
            vec![r(0), r(1), r(1)],
        ];
        assert_eq!(rank(&m), 2);
        let k = left_kernel(&m);
        assert_eq!(k.len(), 1);
        for row in &k {
            let prod = mul(&vec![row.clone()], &m);
            assert!(prod[0].iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn concatenation_dimensions() {
        let a = vec![vec![r(1), r(0)], vec![r(0), r(0)]];
        let b = vec![vec![r(0), r(0)], vec![r(0), r(1)]];
        assert_eq!(kernel_intersection_dim(2, &[&a, &b]), 0);
        assert_eq!(row_space_sum_dim(&[&a, &b]), 2);
    }
}
