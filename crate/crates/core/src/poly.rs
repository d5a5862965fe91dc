//! Univariate polynomials over the rationals, used for one-parameter
//! families of forms.

use crate::rational::Rational;
use num_traits::Zero;

/// Polynomial in `t` with rational coefficients, stored by ascending power
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs }
    }

    pub fn variable() -> Self {
        Poly::monomial(Rational::from_integer(1.into()), 1)
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, power: usize) -> Rational {
        self.coeffs.get(power).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero monomials as (power, coefficient), ascending power.
    pub fn monomials(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `t`.
    pub fn mul_t(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Evaluate at `t` by Horner's rule.
    pub fn eval(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    #[test]
    fn arithmetic_and_eval() {
        // (1 + t)(1 - t) = 1 - t^2
        let a = Poly::constant(rat(1)).add(&Poly::variable());
        let b = Poly::constant(rat(1)).sub(&Poly::variable());
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), rat(1));
        assert_eq!(p.coeff(1), rat(0));
        assert_eq!(p.coeff(2), rat(-1));
        assert_eq!(p.eval(&frac(1, 2)), frac(3, 4));
    }

    #[test]
    fn trim_and_zero() {
        let p = Poly::variable().sub(&Poly::variable());
        assert!(p.is_zero());
        assert_eq!(p.degree(), 0);
        assert_eq!(Poly::monomial(rat(0), 5), Poly::zero());
    }

    #[test]
    fn mul_t_shifts() {
        let p = Poly::constant(rat(3)).mul_t();
        assert_eq!(p.coeff(0), rat(0));
        assert_eq!(p.coeff(1), rat(3));
    }
}
