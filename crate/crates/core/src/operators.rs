//! The operator package of a model: exterior differential, wedge with
//! omega and its dual contraction, the two stars, the codifferential
//! built from the contraction, metric adjoints, and Laplacians.
//!
//! Degree bookkeeping uses `isize` so that every operator has a matrix of
//! the correct (possibly empty) shape at the ends of the complex. All
//! matrices are in the monomial bases of `Basis`, row convention.
//!
//! Sign conventions, fixed once here and relied on everywhere else:
//! - contraction: iota_i(e^{i...}) removes i with sign (-1)^{position-1};
//! - dual of the wedge operator: Lambda = sum_{i<j} pi^{ij} iota_i iota_j
//!   (iota_j first), which gives Lambda(omega) = n;
//! - codifferential: d^Lambda = d Lambda - Lambda d, and on degree k this
//!   equals (-1)^{k+1} (star d star) for the omega-star;
//! - both stars send e^J to sum_I eps(I) det(M[I, J]) c e^{complement of I},
//!   where M is the pairing on 1-forms (Poisson for the omega-star, the
//!   coframe Gram matrix for the metric star), eps(I) is the sign of
//!   e^I ^ e^{I^c} against the top monomial, and c is the coefficient of
//!   omega^n / n!.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::str::FromStr;

use crate::algebra::LieAlgebra;
use crate::basis::Basis;
use crate::form::Form;
use crate::matrix::RatMat;
use crate::symplectic::{AlmostComplexStructure, MetricData, SymplecticError, SymplecticStructure};
use num_traits::Zero;

/// The four cohomology flavors computed by this crate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Theory {
    DeRham,
    DLambda,
    BottChern,
    Aeppli,
}

impl Theory {
    pub fn all() -> [Theory; 4] {
        [
            Theory::DeRham,
            Theory::DLambda,
            Theory::BottChern,
            Theory::Aeppli,
        ]
    }

    /// Stable key used in JSON reports.
    pub fn key(self) -> &'static str {
        match self {
            Theory::DeRham => "de_rham",
            Theory::DLambda => "d_lambda",
            Theory::BottChern => "bott_chern",
            Theory::Aeppli => "aeppli",
        }
    }
}

impl FromStr for Theory {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dr" | "de_rham" | "derham" => Ok(Theory::DeRham),
            "dlambda" | "dlam" | "d_lambda" => Ok(Theory::DLambda),
            "bc" | "bott_chern" => Ok(Theory::BottChern),
            "aeppli" | "ae" => Ok(Theory::Aeppli),
            other => Err(format!(
                "unknown theory '{other}' (expected dr, dlambda, bc, or aeppli)"
            )),
        }
    }
}

impl std::fmt::Display for Theory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Op {
    D,
    Lef,
    DualLef,
    SymStar,
    DLam,
    DDLam,
    Gram,
    GramInv,
    HodgeStar,
    DAdj,
    DLamAdj,
    DDLamAdj,
}

pub struct Context {
    algebra: LieAlgebra,
    symplectic: SymplecticStructure,
    j: Option<AlmostComplexStructure>,
    metric: Option<MetricData>,
    basis: Basis,
    cache: RefCell<BTreeMap<(Op, isize), RatMat>>,
}

impl Context {
    pub fn new(
        algebra: LieAlgebra,
        symplectic: SymplecticStructure,
        j: Option<AlmostComplexStructure>,
        metric: Option<MetricData>,
    ) -> Result<Self, SymplecticError> {
        if let Some(j) = &j {
            j.check_compatible(&symplectic)?;
        }
        let basis = Basis::new(algebra.dim());
        Ok(Context {
            algebra,
            symplectic,
            j,
            metric,
            basis,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn symplectic(&self) -> &SymplecticStructure {
        &self.symplectic
    }

    pub fn j(&self) -> Option<&AlmostComplexStructure> {
        self.j.as_ref()
    }

    pub fn metric(&self) -> Option<&MetricData> {
        self.metric.as_ref()
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn half_dim(&self) -> usize {
        self.symplectic.half_dim()
    }

    pub fn size(&self, k: isize) -> usize {
        self.basis.size(k)
    }

    // ----- form-level operators ---------------------------------------

    pub fn d(&self, f: &Form) -> Form {
        self.algebra.d(f)
    }

    /// Wedge with omega.
    pub fn lefschetz(&self, f: &Form) -> Form {
        self.symplectic.omega().wedge(f)
    }

    /// Contraction with the Poisson bivector.
    pub fn dual_lefschetz(&self, f: &Form) -> Form {
        let dim = self.dim();
        let pi = self.symplectic.poisson();
        let mut out = Form::zero(dim, f.degree().saturating_sub(2));
        if f.degree() < 2 {
            return out;
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                let c = pi.at(i, j);
                if c.is_zero() {
                    continue;
                }
                let term = f.interior(j as u8 + 1).interior(i as u8 + 1);
                out = out.add(&term.scale(c));
            }
        }
        out
    }

    fn star_with(&self, pairing: &RatMat, f: &Form) -> Form {
        let dim = self.dim();
        let k = f.degree();
        let c_vol = self.symplectic.volume_coefficient();
        let mut out = Form::zero(dim, dim - k);
        for (set_j, coeff) in f.terms() {
            let cols: Vec<usize> = set_j.indices().iter().map(|&j| j as usize - 1).collect();
            for set_i in self.basis.monomials(k) {
                let rows: Vec<usize> = set_i.indices().iter().map(|&i| i as usize - 1).collect();
                let minor = pairing.submatrix(&rows, &cols).det();
                if minor.is_zero() {
                    continue;
                }
                let eps = set_i.complement_sign(dim);
                let comp = set_i.complement(dim);
                let value = coeff * &minor * c_vol * crate::rational::rat(eps.into());
                out = out.add(&Form::term(dim, comp.indices(), value));
            }
        }
        out
    }

    /// Star built from the symplectic pairing; an involution.
    pub fn symplectic_star(&self, f: &Form) -> Form {
        assert!(f.degree() <= self.dim());
        self.star_with(self.symplectic.poisson(), f)
    }

    /// Star built from the metric; requires metric data.
    pub fn hodge_star(&self, f: &Form) -> Form {
        assert!(f.degree() <= self.dim());
        let gram1 = self
            .metric
            .as_ref()
            .expect("metric data required for the metric star")
            .gram1();
        self.star_with(gram1, f)
    }

    /// The codifferential d^Lambda = d Lambda - Lambda d. On scalars it
    /// is zero, returned as a degree-0 zero form.
    pub fn d_lambda(&self, f: &Form) -> Form {
        let k = f.degree();
        if k == 0 {
            return Form::zero(self.dim(), 0);
        }
        let b = self.dual_lefschetz(&self.d(f));
        if k == 1 {
            // the contraction already kills 1-forms, only -Lambda d remains
            return b.neg();
        }
        let a = self.d(&self.dual_lefschetz(f));
        a.sub(&b)
    }

    /// Same operator through the star route: (-1)^{k+1} star d star.
    pub fn d_lambda_via_star(&self, f: &Form) -> Form {
        let k = f.degree();
        if k == 0 {
            return Form::zero(self.dim(), 0);
        }
        let s = self.symplectic_star(&self.d(&self.symplectic_star(f)));
        if k % 2 == 0 { s.neg() } else { s }
    }

    pub fn j_act(&self, f: &Form) -> Form {
        self.j
            .as_ref()
            .expect("almost-complex structure required")
            .act(f)
    }

    // ----- cached matrices --------------------------------------------

    fn cached(&self, op: Op, k: isize, build: impl FnOnce() -> RatMat) -> RatMat {
        if let Some(m) = self.cache.borrow().get(&(op, k)) {
            return m.clone();
        }
        let m = build();
        self.cache.borrow_mut().insert((op, k), m.clone());
        m
    }

    /// Matrix of a degree-homogeneous form operator, rows indexed by the
    /// source monomials.
    fn matrix_of(&self, src: isize, tgt: isize, op: impl Fn(&Form) -> Form) -> RatMat {
        let rows = self.size(src);
        let cols = self.size(tgt);
        if rows == 0 {
            return RatMat::zeros(0, cols);
        }
        let data: Vec<_> = self
            .basis
            .monomials(src as usize)
            .iter()
            .map(|set| {
                let image = op(&Form::basis(self.dim(), set.indices()));
                debug_assert!(image.is_zero() || image.degree() as isize == tgt);
                let coords = self.basis.to_coords(&image);
                debug_assert_eq!(coords.len(), cols);
                coords
            })
            .collect();
        RatMat::from_rows(cols, data)
    }

    /// d: k -> k+1.
    pub fn d_mat(&self, k: isize) -> RatMat {
        self.cached(Op::D, k, || self.algebra.d_matrix(&self.basis, k))
    }

    /// Wedge with omega: k -> k+2.
    pub fn lef_mat(&self, k: isize) -> RatMat {
        self.cached(Op::Lef, k, || {
            if k < 0 || self.size(k) == 0 {
                return RatMat::zeros(self.size(k), self.size(k + 2));
            }
            self.matrix_of(k, k + 2, |f| self.lefschetz(f))
        })
    }

    /// Contraction: k -> k-2.
    pub fn dual_lef_mat(&self, k: isize) -> RatMat {
        self.cached(Op::DualLef, k, || {
            if k < 2 || self.size(k) == 0 {
                return RatMat::zeros(self.size(k), self.size(k - 2));
            }
            self.matrix_of(k, k - 2, |f| self.dual_lefschetz(f))
        })
    }

    /// Symplectic star: k -> 2n-k.
    pub fn sym_star_mat(&self, k: isize) -> RatMat {
        self.cached(Op::SymStar, k, || {
            let tgt = self.dim() as isize - k;
            if k < 0 || self.size(k) == 0 {
                return RatMat::zeros(self.size(k), self.size(tgt));
            }
            self.matrix_of(k, tgt, |f| self.symplectic_star(f))
        })
    }

    /// Metric star: k -> 2n-k.
    pub fn hodge_star_mat(&self, k: isize) -> RatMat {
        self.cached(Op::HodgeStar, k, || {
            let tgt = self.dim() as isize - k;
            if k < 0 || self.size(k) == 0 {
                return RatMat::zeros(self.size(k), self.size(tgt));
            }
            self.matrix_of(k, tgt, |f| self.hodge_star(f))
        })
    }

    /// d^Lambda: k -> k-1.
    pub fn d_lambda_mat(&self, k: isize) -> RatMat {
        self.cached(Op::DLam, k, || {
            let a = self.dual_lef_mat(k).mul(&self.d_mat(k - 2));
            let b = self.d_mat(k).mul(&self.dual_lef_mat(k + 1));
            a.add(&b.scale(&crate::rational::rat(-1)))
        })
    }

    /// The degree-preserving composition d after d^Lambda: k -> k.
    pub fn dd_lambda_mat(&self, k: isize) -> RatMat {
        self.cached(Op::DDLam, k, || self.d_lambda_mat(k).mul(&self.d_mat(k - 1)))
    }

    /// Gram matrix of the monomial basis in degree k.
    pub fn gram_mat(&self, k: isize) -> RatMat {
        self.cached(Op::Gram, k, || {
            let metric = self
                .metric
                .as_ref()
                .expect("metric data required for Gram matrices");
            if k < 0 || k as usize > self.dim() {
                return RatMat::zeros(0, 0);
            }
            metric.gram_degree(&self.basis, k as usize)
        })
    }

    fn gram_inv_mat(&self, k: isize) -> RatMat {
        self.cached(Op::GramInv, k, || {
            self.gram_mat(k)
                .inverse()
                .expect("Gram matrices are positive definite")
        })
    }

    /// Metric adjoint of an operator matrix from degree `src` to `tgt`.
    /// The result maps `tgt` back to `src`.
    pub fn adjoint_of(&self, m: &RatMat, src: isize, tgt: isize) -> RatMat {
        self.gram_mat(tgt)
            .mul(&m.transpose())
            .mul(&self.gram_inv_mat(src))
    }

    /// Adjoint of d: k -> k-1.
    pub fn d_adj_mat(&self, k: isize) -> RatMat {
        self.cached(Op::DAdj, k, || self.adjoint_of(&self.d_mat(k - 1), k - 1, k))
    }

    /// Adjoint of d^Lambda: k -> k+1.
    pub fn d_lambda_adj_mat(&self, k: isize) -> RatMat {
        self.cached(Op::DLamAdj, k, || {
            self.adjoint_of(&self.d_lambda_mat(k + 1), k + 1, k)
        })
    }

    /// Adjoint of the composition d d^Lambda: k -> k.
    pub fn dd_lambda_adj_mat(&self, k: isize) -> RatMat {
        self.cached(Op::DDLamAdj, k, || {
            self.adjoint_of(&self.dd_lambda_mat(k), k, k)
        })
    }

    pub fn has_metric(&self) -> bool {
        self.metric.is_some()
    }

    /// Laplacian of the given flavor on degree k. The second-order pieces
    /// use the metric adjoints; the fourth-order flavors follow the usual
    /// elliptic combinations for the double-complex quotients.
    pub fn laplacian(&self, theory: Theory, k: isize) -> RatMat {
        match theory {
            Theory::DeRham => {
                let down = self.d_adj_mat(k).mul(&self.d_mat(k - 1));
                let up = self.d_mat(k).mul(&self.d_adj_mat(k + 1));
                down.add(&up)
            }
            Theory::DLambda => {
                let up = self.d_lambda_adj_mat(k).mul(&self.d_lambda_mat(k + 1));
                let down = self.d_lambda_mat(k).mul(&self.d_lambda_adj_mat(k - 1));
                up.add(&down)
            }
            Theory::BottChern => {
                let t1 = self.dd_lambda_adj_mat(k).mul(&self.dd_lambda_mat(k));
                let t2 = self.dd_lambda_mat(k).mul(&self.dd_lambda_adj_mat(k));
                let t3 = self
                    .d_mat(k)
                    .mul(&self.d_lambda_adj_mat(k + 1))
                    .mul(&self.d_lambda_mat(k + 2))
                    .mul(&self.d_adj_mat(k + 1));
                let t4 = self
                    .d_lambda_mat(k)
                    .mul(&self.d_adj_mat(k - 1))
                    .mul(&self.d_mat(k - 2))
                    .mul(&self.d_lambda_adj_mat(k - 1));
                let t5 = self.d_mat(k).mul(&self.d_adj_mat(k + 1));
                let t6 = self.d_lambda_mat(k).mul(&self.d_lambda_adj_mat(k - 1));
                t1.add(&t2).add(&t3).add(&t4).add(&t5).add(&t6)
            }
            Theory::Aeppli => {
                let t1 = self.dd_lambda_adj_mat(k).mul(&self.dd_lambda_mat(k));
                let t2 = self.dd_lambda_mat(k).mul(&self.dd_lambda_adj_mat(k));
                let t3 = self
                    .d_adj_mat(k)
                    .mul(&self.d_lambda_mat(k - 1))
                    .mul(&self.d_lambda_adj_mat(k - 2))
                    .mul(&self.d_mat(k - 1));
                let t4 = self
                    .d_lambda_adj_mat(k)
                    .mul(&self.d_mat(k + 1))
                    .mul(&self.d_adj_mat(k + 2))
                    .mul(&self.d_lambda_mat(k + 1));
                let t5 = self.d_adj_mat(k).mul(&self.d_mat(k - 1));
                let t6 = self.d_lambda_adj_mat(k).mul(&self.d_lambda_mat(k + 1));
                t1.add(&t2).add(&t3).add(&t4).add(&t5).add(&t6)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn f(dim: usize, ix: &[u8]) -> Form {
        Form::basis(dim, ix)
    }

    fn iwasawa_like() -> Context {
        // d e^2 = e^{16} + e^{35}, d e^4 = e^{15} - e^{36}
        let dim = 6;
        let de = vec![
            Form::zero(dim, 2),
            f(dim, &[1, 6]).add(&f(dim, &[3, 5])),
            Form::zero(dim, 2),
            f(dim, &[1, 5]).sub(&f(dim, &[3, 6])),
            Form::zero(dim, 2),
            Form::zero(dim, 2),
        ];
        let g = LieAlgebra::new(dim, de).unwrap();
        let omega = f(6, &[1, 2]).add(&f(6, &[3, 4])).add(&f(6, &[5, 6]));
        let s = SymplecticStructure::new(&g, omega).unwrap();
        let j = AlmostComplexStructure::from_pairing(6, &[[1, 2], [3, 4], [5, 6]]).unwrap();
        let m = MetricData::from_triple(&s, &j).unwrap();
        Context::new(g, s, Some(j), Some(m)).unwrap()
    }

    #[test]
    fn contraction_of_omega_is_half_dim() {
        let ctx = iwasawa_like();
        let lam = ctx.dual_lefschetz(ctx.symplectic().omega());
        assert_eq!(lam, Form::scalar(6, rat(3)));
    }

    #[test]
    fn star_values_on_monomials() {
        let ctx = iwasawa_like();
        assert_eq!(ctx.dual_lefschetz(&f(6, &[2, 5, 6])), f(6, &[2]));
        assert_eq!(ctx.symplectic_star(&f(6, &[2, 5, 6])), f(6, &[2, 3, 4]).neg());
        assert_eq!(ctx.hodge_star(&f(6, &[2, 5, 6])), f(6, &[1, 3, 4]).neg());
    }

    #[test]
    fn codifferential_routes_agree() {
        let ctx = iwasawa_like();
        let expected = f(6, &[1, 6]).add(&f(6, &[3, 5]));
        let direct = ctx.d_lambda(&f(6, &[2, 5, 6]));
        assert_eq!(direct, expected);
        for k in 0..=6usize {
            for set in ctx.basis().monomials(k) {
                let g = Form::basis(6, set.indices());
                assert_eq!(ctx.d_lambda(&g), ctx.d_lambda_via_star(&g), "mismatch at {set}");
            }
        }
    }

    #[test]
    fn stars_square_correctly() {
        let ctx = iwasawa_like();
        for k in 0..=6usize {
            for set in ctx.basis().monomials(k) {
                let g = Form::basis(6, set.indices());
                assert_eq!(ctx.symplectic_star(&ctx.symplectic_star(&g)), g);
                let hh = ctx.hodge_star(&ctx.hodge_star(&g));
                let expected = if k % 2 == 0 { g.clone() } else { g.neg() };
                assert_eq!(hh, expected);
            }
        }
    }

    #[test]
    fn contraction_is_the_metric_adjoint_of_the_wedge() {
        let ctx = iwasawa_like();
        for k in 2..=6isize {
            let adj = ctx.adjoint_of(&ctx.lef_mat(k - 2), k - 2, k);
            assert_eq!(ctx.dual_lef_mat(k), adj, "degree {k}");
        }
    }

    #[test]
    fn squares_vanish_and_anticommute() {
        let ctx = iwasawa_like();
        for k in 0..=6isize {
            assert!(ctx.d_mat(k).mul(&ctx.d_mat(k + 1)).is_zero_matrix());
            assert!(ctx
                .d_lambda_mat(k)
                .mul(&ctx.d_lambda_mat(k - 1))
                .is_zero_matrix());
            // d d^Lambda = - d^Lambda d as maps k -> k-1 -> k etc.
            let a = ctx.d_lambda_mat(k).mul(&ctx.d_mat(k - 1));
            let b = ctx.d_mat(k).mul(&ctx.d_lambda_mat(k + 1));
            assert!(a.add(&b).is_zero_matrix(), "degree {k}");
        }
    }

    #[test]
    fn laplacian_shapes_and_symmetry_of_kernels() {
        let ctx = iwasawa_like();
        for k in 0..=6isize {
            for theory in Theory::all() {
                let lap = ctx.laplacian(theory, k);
                assert_eq!(lap.rows(), ctx.size(k));
                assert_eq!(lap.cols(), ctx.size(k));
            }
        }
    }

    #[test]
    fn theory_parsing() {
        assert_eq!("dr".parse::<Theory>().unwrap(), Theory::DeRham);
        assert_eq!("bc".parse::<Theory>().unwrap(), Theory::BottChern);
        assert_eq!("dlambda".parse::<Theory>().unwrap(), Theory::DLambda);
        assert_eq!("aeppli".parse::<Theory>().unwrap(), Theory::Aeppli);
        assert!("x".parse::<Theory>().is_err());
    }
}
