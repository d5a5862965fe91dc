//! Structure equations d(e^i) and the induced exterior differential.
//!
//! A model is given by one 2-form per coframe element; the differential
//! extends by the Leibniz rule to all degrees. Construction verifies
//! d(d(e^i)) = 0 for every generator, which by the derivation property
//! makes d square to zero everywhere.

use thiserror::Error;

use crate::basis::Basis;
use crate::form::{Form, PolyForm};
use crate::index_set::IndexSet;
use crate::matrix::RatMat;

#[derive(Error, Debug)]
pub enum AlgebraError {
    #[error("expected {dim} structure forms for dimension {dim}, got {got}")]
    WrongLength { dim: usize, got: usize },
    #[error("structure form for e^{index} has degree {got}, expected 2")]
    WrongDegree { index: usize, got: usize },
    #[error(
        "d^2(e^{index}) = {residue} is nonzero; the structure equations do not define a differential"
    )]
    NotADifferential { index: usize, residue: String },
}

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    dim: usize,
    de: Vec<Form>,
}

impl LieAlgebra {
    pub fn new(dim: usize, de: Vec<Form>) -> Result<Self, AlgebraError> {
        if de.len() != dim {
            return Err(AlgebraError::WrongLength {
                dim,
                got: de.len(),
            });
        }
        for (i, f) in de.iter().enumerate() {
            if f.degree() != 2 {
                return Err(AlgebraError::WrongDegree {
                    index: i + 1,
                    got: f.degree(),
                });
            }
            assert_eq!(f.dim(), dim, "structure form in the wrong coframe");
        }
        let algebra = LieAlgebra { dim, de };
        for i in 0..dim {
            let residue = algebra.d(&algebra.de[i]);
            if !residue.is_zero() {
                return Err(AlgebraError::NotADifferential {
                    index: i + 1,
                    residue: residue.to_string(),
                });
            }
        }
        Ok(algebra)
    }

    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            de: (0..dim).map(|_| Form::zero(dim, 2)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_form(&self, i: u8) -> &Form {
        &self.de[(i - 1) as usize]
    }

    /// d of a basis monomial by the Leibniz rule.
    pub fn d_basis(&self, set: &IndexSet) -> Form {
        let ix = set.indices();
        let mut out = Form::zero(self.dim, set.degree() + 1);
        for (a, &i) in ix.iter().enumerate() {
            let de_i = &self.de[(i - 1) as usize];
            if de_i.is_zero() {
                continue;
            }
            let prefix = Form::basis(self.dim, &ix[..a]);
            let suffix = Form::basis(self.dim, &ix[a + 1..]);
            let term = prefix.wedge(de_i).wedge(&suffix);
            out = if a % 2 == 0 { out.add(&term) } else { out.sub(&term) };
        }
        out
    }

    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::zero(self.dim, f.degree() + 1);
        for (set, c) in f.terms() {
            out = out.add(&self.d_basis(set).scale(c));
        }
        out
    }

    pub fn d_poly(&self, f: &PolyForm) -> PolyForm {
        let mut out = PolyForm::zero(f.dim(), f.degree() + 1);
        for (set, p) in f.terms() {
            out = out.add(&PolyForm::from_form(&self.d_basis(set)).scale_poly(p));
        }
        out
    }

    /// Matrix of d from degree k to k+1 in the monomial bases; empty
    /// shapes outside 0..=dim.
    pub fn d_matrix(&self, basis: &Basis, k: isize) -> RatMat {
        let rows = basis.size(k);
        let cols = basis.size(k + 1);
        if rows == 0 || k < 0 {
            return RatMat::zeros(rows, cols);
        }
        let data: Vec<_> = basis
            .monomials(k as usize)
            .iter()
            .map(|set| basis.to_coords(&self.d_basis(set)))
            .collect();
        RatMat::from_rows(cols, data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(dim: usize, ix: &[u8]) -> Form {
        Form::basis(dim, ix)
    }

    fn heisenberg_like() -> LieAlgebra {
        // d e^4 = e^{12}, d e^5 = e^{14}, d e^6 = e^{15} + e^{23} + e^{24}
        let dim = 6;
        let de = vec![
            Form::zero(dim, 2),
            Form::zero(dim, 2),
            Form::zero(dim, 2),
            f(dim, &[1, 2]),
            f(dim, &[1, 4]),
            f(dim, &[1, 5]).add(&f(dim, &[2, 3])).add(&f(dim, &[2, 4])),
        ];
        LieAlgebra::new(dim, de).unwrap()
    }

    #[test]
    fn leibniz_on_monomials() {
        let g = heisenberg_like();
        // d(e^{45}) = de^4 ^ e^5 - e^4 ^ de^5; the second wedge repeats e^4
        let d45 = g.d_basis(&IndexSet::new(vec![4, 5]));
        assert_eq!(d45, f(6, &[1, 2, 5]));
        // d(e^{56}) = de^5 ^ e^6 - e^5 ^ de^6 = e^{146} - e^{235} - e^{245}
        let d56 = g.d_basis(&IndexSet::new(vec![5, 6]));
        let expected = f(6, &[1, 4, 6]).sub(&f(6, &[2, 3, 5])).sub(&f(6, &[2, 4, 5]));
        assert_eq!(d56, expected);
    }

    #[test]
    fn d_squares_to_zero_on_all_degrees() {
        let g = heisenberg_like();
        let basis = Basis::new(6);
        for k in 0..=6isize {
            let a = g.d_matrix(&basis, k);
            let b = g.d_matrix(&basis, k + 1);
            assert!(a.mul(&b).is_zero_matrix(), "d^2 != 0 from degree {k}");
        }
    }

    #[test]
    fn rejects_non_differential() {
        // d e^3 = e^{12}, d e^4 = e^{34}: then d^2 e^4 = e^{12} ^ e^4 = e^{124} != 0
        let dim = 4;
        let de = vec![
            Form::zero(dim, 2),
            Form::zero(dim, 2),
            f(dim, &[1, 2]),
            f(dim, &[3, 4]),
        ];
        let err = LieAlgebra::new(dim, de).unwrap_err();
        match err {
            AlgebraError::NotADifferential { index, residue } => {
                assert_eq!(index, 4);
                assert_eq!(residue, "124");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn closed_forms_of_abelian_algebra() {
        let g = LieAlgebra::abelian(4);
        let basis = Basis::new(4);
        for k in 0..=4isize {
            assert!(g.d_matrix(&basis, k).is_zero_matrix());
        }
    }
}
