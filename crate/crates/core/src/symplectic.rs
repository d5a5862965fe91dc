//! Symplectic structure, compatible almost-complex structure, and the
//! induced metric data on the coframe.
//!
//! Matrix conventions (all row-vector based, matching `matrix`):
//! - `Omega[i][j] = omega(e_i, e_j)`, antisymmetric and invertible;
//! - `poisson = Omega^{-1}`, the bivector used for contractions;
//! - `Jmat` acts on covectors: J(e^i) = sum_j Jmat[i][j] e^j, squares to -1;
//! - compatibility is the matrix identity J^T Omega J = Omega together with
//!   positivity of G = Omega * Jmat, whose inverse is the coframe Gram
//!   matrix gram1[i][j] = <e^i, e^j>.
//!
//! The volume form is always omega^n / n!, and a user-supplied metric must
//! reproduce it: det(gram1) * c^2 = 1 where c is the top coefficient of
//! omega^n / n!. Metrics built from a compatible J satisfy this
//! automatically (there G = C^T C for a Darboux coframe matrix C, and
//! det(Omega) = det(C)^2 = c^2 det(G)).

use thiserror::Error;

use crate::algebra::LieAlgebra;
use crate::basis::Basis;
use crate::form::Form;
use crate::matrix::RatMat;
use crate::rational::{format_rational, Rational};
use num_traits::{One, Zero};

#[derive(Error, Debug)]
pub enum SymplecticError {
    #[error("symplectic form must have degree 2, got {got}")]
    WrongDegree { got: usize },
    #[error("symplectic structures need an even-dimensional coframe, got {dim}")]
    OddDimension { dim: usize },
    #[error("symplectic form is not closed: d(omega) = {residue}")]
    NotClosed { residue: String },
    #[error("symplectic form is degenerate (top power vanishes)")]
    Degenerate,
    #[error("almost-complex matrix must be {dim}x{dim}")]
    JWrongShape { dim: usize },
    #[error("almost-complex matrix does not square to minus the identity")]
    NotAlmostComplex,
    #[error("pairing must list each coframe index 1..={dim} exactly once, in {pairs} pairs")]
    BadPairing { dim: usize, pairs: usize },
    #[error("coframe entry {index} must be a 1-form")]
    CoframeWrongDegree { index: usize },
    #[error("coframe is singular (entries are linearly dependent)")]
    SingularCoframe,
    #[error("almost-complex structure is not compatible: J^T Omega J != Omega")]
    NotCompatible,
    #[error("omega(., J.) is not symmetric positive definite")]
    NotTamed,
    #[error("metric matrix must be symmetric positive definite")]
    MetricNotPositive,
    #[error(
        "metric determinant {det} does not match the symplectic volume normalization (need {need})"
    )]
    MetricVolumeMismatch { det: String, need: String },
}

#[derive(Clone, Debug)]
pub struct SymplecticStructure {
    omega: Form,
    mat: RatMat,
    poisson: RatMat,
    volume: Form,
    volume_coefficient: Rational,
    n: usize,
}

impl SymplecticStructure {
    pub fn new(algebra: &LieAlgebra, omega: Form) -> Result<Self, SymplecticError> {
        let dim = algebra.dim();
        if omega.degree() != 2 {
            return Err(SymplecticError::WrongDegree {
                got: omega.degree(),
            });
        }
        assert_eq!(omega.dim(), dim, "symplectic form in the wrong coframe");
        if dim % 2 != 0 {
            return Err(SymplecticError::OddDimension { dim });
        }
        let n = dim / 2;
        let residue = algebra.d(&omega);
        if !residue.is_zero() {
            return Err(SymplecticError::NotClosed {
                residue: residue.to_string(),
            });
        }
        let mut mat = RatMat::zeros(dim, dim);
        for (set, c) in omega.terms() {
            let ix = set.indices();
            let (i, j) = (ix[0] as usize - 1, ix[1] as usize - 1);
            mat.set(i, j, c.clone());
            mat.set(j, i, -c);
        }
        let Some(poisson) = mat.inverse() else {
            return Err(SymplecticError::Degenerate);
        };
        let mut factorial = Rational::one();
        for i in 1..=n {
            factorial *= Rational::from_integer((i as i64).into());
        }
        let volume = omega.power(n).scale(&(Rational::one() / factorial));
        let top: Vec<u8> = (1..=dim as u8).collect();
        let volume_coefficient = volume.coeff(&crate::index_set::IndexSet::new(top));
        debug_assert!(!volume_coefficient.is_zero());
        Ok(SymplecticStructure {
            omega,
            mat,
            poisson,
            volume,
            volume_coefficient,
            n,
        })
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    pub fn matrix(&self) -> &RatMat {
        &self.mat
    }

    pub fn poisson(&self) -> &RatMat {
        &self.poisson
    }

    pub fn volume(&self) -> &Form {
        &self.volume
    }

    pub fn volume_coefficient(&self) -> &Rational {
        &self.volume_coefficient
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    /// A coframe f^1, ..., f^{2n} (rows of the returned matrix, in e^j
    /// coordinates) with omega = f^{12} + f^{34} + ... Deterministic:
    /// symplectic Gram-Schmidt seeded with the standard coframe in order.
    pub fn darboux_coframe(&self) -> RatMat {
        let dim = 2 * self.n;
        let mut pool: Vec<Vec<Rational>> = RatMat::identity(dim).to_vecs();
        let mut vectors: Vec<Vec<Rational>> = Vec::with_capacity(dim);
        let pairing = |x: &[Rational], y: &[Rational]| -> Rational {
            let mut acc = Rational::zero();
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if !yj.is_zero() && !self.mat.at(i, j).is_zero() {
                        acc += xi * self.mat.at(i, j) * yj;
                    }
                }
            }
            acc
        };
        while vectors.len() < dim {
            let vi = pool
                .iter()
                .position(|v| v.iter().any(|c| !c.is_zero()))
                .expect("pool exhausted before spanning");
            let v = pool.remove(vi);
            let wi = pool
                .iter()
                .position(|w| !pairing(&v, w).is_zero())
                .expect("nondegenerate form must pair v with something");
            let mut w = pool.remove(wi);
            let scale = pairing(&v, &w);
            for c in &mut w {
                *c = &*c / &scale;
            }
            for u in &mut pool {
                let a = pairing(&w, u);
                let b = pairing(&v, u);
                for k in 0..dim {
                    // u' = u + omega(w,u) v - omega(v,u) w
                    let delta = &a * &v[k] - &b * &w[k];
                    u[k] = &u[k] + &delta;
                }
            }
            vectors.push(v);
            vectors.push(w);
        }
        // vectors form a symplectic vector frame; the matching coframe is
        // the inverse transpose.
        RatMat::from_rows(dim, vectors)
            .transpose()
            .inverse()
            .expect("symplectic frame is invertible")
    }
}

#[derive(Clone, Debug)]
pub struct AlmostComplexStructure {
    mat: RatMat,
}

/// Block matrix of the standard structure for a pairing: within each pair
/// (a, b), J(e^a) = -e^b and J(e^b) = e^a.
fn pairing_matrix(dim: usize, pairs: &[[u8; 2]]) -> Result<RatMat, SymplecticError> {
    let bad = || SymplecticError::BadPairing {
        dim,
        pairs: dim / 2,
    };
    if pairs.len() != dim / 2 {
        return Err(bad());
    }
    let mut seen = vec![false; dim];
    let mut mat = RatMat::zeros(dim, dim);
    for pair in pairs {
        let (a, b) = (pair[0] as usize, pair[1] as usize);
        if a == 0 || b == 0 || a > dim || b > dim || a == b || seen[a - 1] || seen[b - 1] {
            return Err(bad());
        }
        seen[a - 1] = true;
        seen[b - 1] = true;
        mat.set(a - 1, b - 1, -Rational::one());
        mat.set(b - 1, a - 1, Rational::one());
    }
    Ok(mat)
}

impl AlmostComplexStructure {
    pub fn from_matrix(mat: RatMat, dim: usize) -> Result<Self, SymplecticError> {
        if mat.rows() != dim || mat.cols() != dim {
            return Err(SymplecticError::JWrongShape { dim });
        }
        let square = mat.mul(&mat);
        let minus_one = RatMat::identity(dim).scale(&-Rational::one());
        if square != minus_one {
            return Err(SymplecticError::NotAlmostComplex);
        }
        Ok(AlmostComplexStructure { mat })
    }

    pub fn from_pairing(dim: usize, pairs: &[[u8; 2]]) -> Result<Self, SymplecticError> {
        AlmostComplexStructure::from_matrix(pairing_matrix(dim, pairs)?, dim)
    }

    /// J expressed in a coframe given by 1-forms: if C stacks the coframe
    /// rows, the matrix on the standard coframe is C^{-1} P C.
    pub fn from_coframe(coframe: &[Form], pairs: &[[u8; 2]]) -> Result<Self, SymplecticError> {
        let dim = coframe.len();
        let mut rows = Vec::with_capacity(dim);
        for (i, f) in coframe.iter().enumerate() {
            if f.degree() != 1 {
                return Err(SymplecticError::CoframeWrongDegree { index: i + 1 });
            }
            let mut row = vec![Rational::zero(); dim];
            for (set, c) in f.terms() {
                row[set.indices()[0] as usize - 1] = c.clone();
            }
            rows.push(row);
        }
        let c = RatMat::from_rows(dim, rows);
        let Some(c_inv) = c.inverse() else {
            return Err(SymplecticError::SingularCoframe);
        };
        let p = pairing_matrix(dim, pairs)?;
        AlmostComplexStructure::from_matrix(c_inv.mul(&p).mul(&c), dim)
    }

    pub fn matrix(&self) -> &RatMat {
        &self.mat
    }

    fn act_on_index(&self, dim: usize, i: u8) -> Form {
        let mut out = Form::zero(dim, 1);
        for j in 0..dim {
            let c = self.mat.at(i as usize - 1, j);
            if !c.is_zero() {
                out = out.add(&Form::term(dim, &[j as u8 + 1], c.clone()));
            }
        }
        out
    }

    /// Extension to all degrees: J(e^{i1...ik}) = J(e^{i1}) ^ ... ^ J(e^{ik}).
    pub fn act(&self, f: &Form) -> Form {
        let dim = f.dim();
        let mut out = Form::zero(dim, f.degree());
        for (set, c) in f.terms() {
            let mut term = Form::scalar(dim, c.clone());
            for &i in set.indices() {
                term = term.wedge(&self.act_on_index(dim, i));
            }
            out = out.add(&term);
        }
        out
    }

    pub fn check_compatible(&self, sym: &SymplecticStructure) -> Result<(), SymplecticError> {
        let omega = sym.matrix();
        if self.mat.transpose().mul(omega).mul(&self.mat) != *omega {
            return Err(SymplecticError::NotCompatible);
        }
        if !omega.mul(&self.mat).is_positive_definite() {
            return Err(SymplecticError::NotTamed);
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct MetricData {
    gram1: RatMat,
}

impl MetricData {
    /// Metric of a compatible pair: G = Omega * Jmat on vectors, so the
    /// coframe Gram matrix is its inverse.
    pub fn from_triple(
        sym: &SymplecticStructure,
        j: &AlmostComplexStructure,
    ) -> Result<Self, SymplecticError> {
        j.check_compatible(sym)?;
        let g_vec = sym.matrix().mul(j.matrix());
        let gram1 = g_vec.inverse().expect("positive definite matrices invert");
        Ok(MetricData { gram1 })
    }

    /// User-supplied coframe Gram matrix; must be symmetric positive
    /// definite and give the same Riemannian volume as omega^n / n!.
    pub fn from_gram(sym: &SymplecticStructure, gram1: RatMat) -> Result<Self, SymplecticError> {
        let dim = sym.dim();
        if gram1.rows() != dim || gram1.cols() != dim || !gram1.is_positive_definite() {
            return Err(SymplecticError::MetricNotPositive);
        }
        let det = gram1.det();
        let c = sym.volume_coefficient();
        if &det * c * c != Rational::one() {
            return Err(SymplecticError::MetricVolumeMismatch {
                det: format_rational(&det),
                need: format_rational(&(Rational::one() / (c * c))),
            });
        }
        Ok(MetricData { gram1 })
    }

    pub fn gram1(&self) -> &RatMat {
        &self.gram1
    }

    /// Gram matrix on degree-k monomials: determinants of the k x k
    /// minors of gram1.
    pub fn gram_degree(&self, basis: &Basis, k: usize) -> RatMat {
        let monomials = basis.monomials(k);
        let mut out = RatMat::zeros(monomials.len(), monomials.len());
        for (a, set_i) in monomials.iter().enumerate() {
            let rows: Vec<usize> = set_i.indices().iter().map(|&i| i as usize - 1).collect();
            for (b, set_j) in monomials.iter().enumerate() {
                let cols: Vec<usize> = set_j.indices().iter().map(|&j| j as usize - 1).collect();
                out.set(a, b, self.gram1.submatrix(&rows, &cols).det());
            }
        }
        out
    }
}
