//! Sparse exterior forms over a fixed coframe e^1, ..., e^{2n}.
//!
//! A `Form` of degree k is a finite map from strictly increasing
//! multi-indices to nonzero rational coefficients; `e^{ij}` abbreviates
//! e^i wedge e^j. All operations keep the representation canonical: keys of
//! the right degree and within range, no zero coefficients. A `PolyForm`
//! is the same thing with polynomial coefficients, for one-parameter
//! families.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::index_set::IndexSet;
use crate::poly::Poly;
use crate::rational::{format_rational, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    dim: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl Form {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The constant function 1.
    pub fn one(dim: usize) -> Self {
        Form::scalar(dim, Rational::from_integer(1.into()))
    }

    pub fn scalar(dim: usize, c: Rational) -> Self {
        let mut f = Form::zero(dim, 0);
        f.insert(IndexSet::empty(), c);
        f
    }

    /// Basis monomial e^{i1...ik} from an arbitrary tuple: the tuple is
    /// canonicalized, so `basis(4, &[2, 1])` is -e^{12} and a repeated
    /// index gives the zero form of that degree.
    pub fn basis(dim: usize, indices: &[u8]) -> Self {
        Form::term(dim, indices, Rational::from_integer(1.into()))
    }

    /// `c` times the basis monomial on `indices` (canonicalized).
    pub fn term(dim: usize, indices: &[u8], c: Rational) -> Self {
        for &i in indices {
            assert!(
                (1..=dim as u8).contains(&i),
                "index {i} out of range 1..={dim}"
            );
        }
        let (set, sign) = IndexSet::canonicalize(indices);
        let mut f = Form::zero(dim, indices.len());
        if sign != 0 {
            f.insert(set, c * Rational::from_integer(sign.into()));
        }
        f
    }

    fn insert(&mut self, set: IndexSet, c: Rational) {
        debug_assert_eq!(set.degree(), self.degree);
        debug_assert!(set.max_index().map_or(true, |m| m as usize <= self.dim));
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(set) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, set: &IndexSet) -> Rational {
        self.terms.get(set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "coframe dimension mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch in addition");
        let mut out = self.clone();
        for (set, c) in &other.terms {
            out.insert(set.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (set, c) in &self.terms {
            out.terms.insert(set.clone(), -c);
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        if c.is_zero() {
            return out;
        }
        for (set, a) in &self.terms {
            out.terms.insert(set.clone(), a * c);
        }
        out
    }

    /// Exterior product. Degrees add; if the sum exceeds the coframe
    /// dimension every term dies on a repeated index and the result is the
    /// zero form of that degree.
    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.dim, other.dim, "coframe dimension mismatch");
        let mut out = Form::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let (set, sign) = i.merge(j);
                if sign != 0 {
                    out.insert(set, a * b * Rational::from_integer(sign.into()));
                }
            }
        }
        out
    }

    /// Contraction with the frame vector dual to e^i: the antiderivation
    /// with iota_i(e^j) = delta_{ij}.
    pub fn interior(&self, i: u8) -> Form {
        assert!(
            (1..=self.dim as u8).contains(&i),
            "index {i} out of range 1..={}",
            self.dim
        );
        let mut out = Form::zero(self.dim, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (set, c) in &self.terms {
            if let Some(pos) = set.position(i) {
                let sign = if pos % 2 == 0 { c.clone() } else { -c };
                out.insert(set.remove_at(pos), sign);
            }
        }
        out
    }

    /// Wedge self with itself `k` times; `power(0)` is the constant 1.
    pub fn power(&self, k: usize) -> Form {
        let mut acc = Form::one(self.dim);
        for _ in 0..k {
            acc = acc.wedge(self);
        }
        acc
    }
}

fn write_term(
    out: &mut String,
    first: bool,
    negative: bool,
    magnitude_factors: &[String],
    index_part: Option<&str>,
) {
    if first {
        if negative {
            out.push('-');
        }
    } else if negative {
        out.push('-');
    } else {
        out.push('+');
    }
    let mut factors: Vec<&str> = magnitude_factors.iter().map(|s| s.as_str()).collect();
    if let Some(ix) = index_part {
        factors.push(ix);
    }
    out.push_str(&factors.join("*"));
}

impl fmt::Display for Form {
    /// Canonical expression: terms in basis order, coefficients `1` and
    /// `-1` folded into the sign, e.g. `16+25-34` or `3/2*12`. Degree-0
    /// forms print as the bare rational. The zero form prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.degree == 0 {
            let c = self.terms.values().next().unwrap();
            return write!(f, "{}", format_rational(c));
        }
        let mut out = String::new();
        let mut first = true;
        let one = Rational::from_integer(1.into());
        for (set, c) in &self.terms {
            let negative = c < &Rational::zero();
            let mag = if negative { -c } else { c.clone() };
            let mut factors = Vec::new();
            if mag != one {
                factors.push(format_rational(&mag));
            }
            let ix = set.to_string();
            write_term(&mut out, first, negative, &factors, Some(&ix));
            first = false;
        }
        write!(f, "{out}")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<IndexSet, Poly>,
}

impl PolyForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        PolyForm {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_form(f: &Form) -> Self {
        let mut out = PolyForm::zero(f.dim(), f.degree());
        for (set, c) in f.terms() {
            out.terms.insert(set.clone(), Poly::constant(c.clone()));
        }
        out
    }

    /// `p` times the basis monomial on `indices` (canonicalized).
    pub fn term(dim: usize, indices: &[u8], p: Poly) -> Self {
        for &i in indices {
            assert!(
                (1..=dim as u8).contains(&i),
                "index {i} out of range 1..={dim}"
            );
        }
        let (set, sign) = IndexSet::canonicalize(indices);
        let mut f = PolyForm::zero(dim, indices.len());
        if sign != 0 {
            let q = if sign < 0 { p.neg() } else { p };
            f.insert(set, q);
        }
        f
    }

    fn insert(&mut self, set: IndexSet, p: Poly) {
        debug_assert_eq!(set.degree(), self.degree);
        if p.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(set) {
            Entry::Vacant(e) => {
                e.insert(p);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&p);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Poly)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.dim, other.dim, "coframe dimension mismatch");
        assert_eq!(self.degree, other.degree, "degree mismatch in addition");
        let mut out = self.clone();
        for (set, p) in &other.terms {
            out.insert(set.clone(), p.clone());
        }
        out
    }

    pub fn neg(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.dim, self.degree);
        for (set, p) in &self.terms {
            out.terms.insert(set.clone(), p.neg());
        }
        out
    }

    pub fn sub(&self, other: &PolyForm) -> PolyForm {
        self.add(&other.neg())
    }

    pub fn scale_poly(&self, p: &Poly) -> PolyForm {
        let mut out = PolyForm::zero(self.dim, self.degree);
        if p.is_zero() {
            return out;
        }
        for (set, a) in &self.terms {
            out.insert(set.clone(), a.mul(p));
        }
        out
    }

    /// Multiply every coefficient by `t`.
    pub fn mul_t(&self) -> PolyForm {
        let mut out = PolyForm::zero(self.dim, self.degree);
        for (set, a) in &self.terms {
            out.terms.insert(set.clone(), a.mul_t());
        }
        out
    }

    pub fn wedge(&self, other: &PolyForm) -> PolyForm {
        assert_eq!(self.dim, other.dim, "coframe dimension mismatch");
        let mut out = PolyForm::zero(self.dim, self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let (set, sign) = i.merge(j);
                if sign != 0 {
                    let p = a.mul(b);
                    out.insert(set, if sign < 0 { p.neg() } else { p });
                }
            }
        }
        out
    }

    /// Evaluate the family at a rational parameter value.
    pub fn eval(&self, t: &Rational) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (set, p) in &self.terms {
            out.insert(set.clone(), p.eval(t));
        }
        out
    }

    /// The form of coefficients of `t^power`.
    pub fn coefficient_form(&self, power: usize) -> Form {
        let mut out = Form::zero(self.dim, self.degree);
        for (set, p) in &self.terms {
            out.insert(set.clone(), p.coeff(power));
        }
        out
    }

    /// Largest power of `t` appearing with nonzero coefficient.
    pub fn max_power(&self) -> usize {
        self.terms.values().map(|p| p.degree()).max().unwrap_or(0)
    }
}

impl fmt::Display for PolyForm {
    /// Canonical expansion into monomial terms: by basis order, then by
    /// ascending power, e.g. `1+t*2` or `-t^2*16`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = Rational::from_integer(1.into());
        let mut out = String::new();
        let mut first = true;
        for (set, p) in &self.terms {
            for (power, c) in p.monomials() {
                let negative = c < &Rational::zero();
                let mag = if negative { -c } else { c.clone() };
                let mut factors = Vec::new();
                if mag != one || (power == 0 && self.degree == 0) {
                    factors.push(format_rational(&mag));
                }
                match power {
                    0 => {}
                    1 => factors.push("t".to_string()),
                    p => factors.push(format!("t^{p}")),
                }
                let ix = set.to_string();
                let index_part = if self.degree == 0 { None } else { Some(ix.as_str()) };
                if factors.is_empty() && index_part.is_none() {
                    factors.push("1".to_string());
                }
                write_term(&mut out, first, negative, &factors, index_part);
                first = false;
            }
        }
        write!(f, "{out}")
    }
}
