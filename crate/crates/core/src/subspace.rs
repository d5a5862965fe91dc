//! Subspaces of coordinate space, stored as reduced-row-echelon bases.
//!
//! RREF is canonical for a given span, so two `Subspace` values are equal
//! exactly when they describe the same subspace, and printing a basis is
//! deterministic. Ambient dimension is tracked so degree-0 and empty
//! spaces compose without special cases.

use crate::matrix::{hstack, vstack, RatMat};
use crate::rational::Rational;
use num_traits::Zero;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMat,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMat::zeros(0, ambient),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: RatMat::identity(ambient),
        }
    }

    pub fn from_rows(ambient: usize, rows: RatMat) -> Self {
        assert_eq!(rows.cols(), ambient, "ambient dimension mismatch");
        let (red, pivots) = rows.rref();
        let data: Vec<Vec<Rational>> = (0..pivots.len()).map(|i| red.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis: RatMat::from_rows(ambient, data),
        }
    }

    /// Kernel of the operator with matrix `m` (row-vector convention).
    pub fn kernel_of(m: &RatMat) -> Self {
        Subspace::from_rows(m.rows(), m.kernel_rows())
    }

    /// Image of the operator with matrix `m` (its row space).
    pub fn image_of(m: &RatMat) -> Self {
        Subspace::from_rows(m.cols(), m.clone())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis_rows(&self) -> &RatMat {
        &self.basis
    }

    /// Residual of `v` after reduction against the basis; zero exactly
    /// when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        let mut r = v.to_vec();
        for i in 0..self.basis.rows() {
            let pivot = (0..self.ambient)
                .find(|&j| !self.basis.at(i, j).is_zero())
                .expect("zero row in a reduced basis");
            if !r[pivot].is_zero() {
                let factor = r[pivot].clone();
                for j in 0..self.ambient {
                    let delta = &factor * self.basis.at(i, j);
                    r[j] = &r[j] - &delta;
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        (0..self.basis.rows()).all(|i| other.contains(self.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        Subspace::from_rows(self.ambient, vstack(&self.basis, &other.basis))
    }

    /// Zassenhaus intersection: reduce [A | A; B | 0] and collect the
    /// right halves of rows whose left half vanished.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let n = self.ambient;
        let top = hstack(&self.basis, &self.basis);
        let bottom = hstack(other.basis_rows(), &RatMat::zeros(other.dim(), n));
        let (red, _) = vstack(&top, &bottom).rref();
        let rows: Vec<Vec<Rational>> = (0..red.rows())
            .filter(|&i| (0..n).all(|j| red.at(i, j).is_zero()))
            .map(|i| (n..2 * n).map(|j| red.at(i, j).clone()).collect())
            .collect();
        Subspace::from_rows(n, RatMat::from_rows(n, rows))
    }

    /// A square matrix R with `x * R = 0` exactly on this subspace; the
    /// residual of any vector is `x * R`. Useful for pulling the subspace
    /// back through another operator.
    pub fn residual_map(&self) -> RatMat {
        let n = self.ambient;
        let mut r = RatMat::identity(n);
        for i in 0..self.basis.rows() {
            let pivot = (0..n)
                .find(|&j| !self.basis.at(i, j).is_zero())
                .expect("zero row in a reduced basis");
            for j in 0..n {
                let delta = self.basis.at(i, j);
                let cur = r.at(pivot, j).clone();
                r.set(pivot, j, &cur - delta);
            }
        }
        r
    }
}

/// Representatives for the quotient `numerator / denominator`: each row of
/// the numerator basis is reduced against the denominator plus the
/// representatives found so far, and kept (normalized to leading
/// coefficient one) if nonzero. Rows stay inside the numerator, so each
/// one is an actual cocycle representing its class.
pub fn quotient_representatives(numerator: &Subspace, denominator: &Subspace) -> RatMat {
    assert_eq!(numerator.ambient(), denominator.ambient());
    let n = numerator.ambient();
    let mut acc = denominator.clone();
    let mut reps: Vec<Vec<Rational>> = Vec::new();
    for i in 0..numerator.dim() {
        let r = acc.reduce(numerator.basis_rows().row(i));
        if r.iter().any(|c| !c.is_zero()) {
            let lead = r.iter().find(|c| !c.is_zero()).unwrap().clone();
            let normalized: Vec<Rational> = r.iter().map(|c| c / &lead).collect();
            acc = acc.sum(&Subspace::from_rows(
                n,
                RatMat::from_rows(n, vec![normalized.clone()]),
            ));
            reps.push(normalized);
        }
    }
    RatMat::from_rows(n, reps)
}

/// Coordinates of a cocycle's class with respect to quotient
/// representatives: solves x * [reps; denominator] = v and returns the
/// representative part. None if `v` is not in span(reps) + denominator.
pub fn class_coordinates(
    v: &[Rational],
    reps: &RatMat,
    denominator: &Subspace,
) -> Option<Vec<Rational>> {
    let stacked = vstack(reps, denominator.basis_rows());
    let x = stacked.solve_row(v)?;
    Some(x[..reps.rows()].to_vec())
}
