//! Ordered monomial bases for each exterior degree.
//!
//! Degree k gets all strictly increasing k-tuples from {1, ..., dim} in
//! lexicographic order. Every matrix representation of an operator in this
//! crate is taken with respect to these bases, so the ordering here fixes
//! coordinates globally.

use crate::form::Form;
use crate::index_set::IndexSet;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Basis {
    dim: usize,
    by_degree: Vec<Vec<IndexSet>>,
}

fn combinations(dim: usize, k: usize) -> Vec<IndexSet> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::with_capacity(k);
    fn go(dim: usize, k: usize, start: u8, cur: &mut Vec<u8>, out: &mut Vec<IndexSet>) {
        if cur.len() == k {
            out.push(IndexSet::new(cur.clone()));
            return;
        }
        for i in start..=dim as u8 {
            cur.push(i);
            go(dim, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(dim, k, 1, &mut cur, &mut out);
    out
}

impl Basis {
    pub fn new(dim: usize) -> Self {
        let by_degree = (0..=dim).map(|k| combinations(dim, k)).collect();
        Basis { dim, by_degree }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis monomials in degree `k`; 0 outside 0..=dim, which
    /// lets operator shapes be computed uniformly near the ends of the
    /// complex.
    pub fn size(&self, k: isize) -> usize {
        if k < 0 || k as usize > self.dim {
            0
        } else {
            self.by_degree[k as usize].len()
        }
    }

    pub fn monomials(&self, k: usize) -> &[IndexSet] {
        &self.by_degree[k]
    }

    /// Position of `set` within its degree's basis.
    pub fn position(&self, set: &IndexSet) -> usize {
        let row = &self.by_degree[set.degree()];
        row.binary_search(set).expect("monomial outside basis range")
    }

    /// Coordinate vector of a form in its degree's basis.
    pub fn to_coords(&self, f: &Form) -> Vec<Rational> {
        use num_traits::Zero;
        let mut v = vec![Rational::zero(); self.size(f.degree() as isize)];
        for (set, c) in f.terms() {
            v[self.position(set)] = c.clone();
        }
        v
    }

    /// Rebuild a form of degree `k` from coordinates.
    pub fn from_coords(&self, k: usize, coords: &[Rational]) -> Form {
        use num_traits::Zero;
        assert_eq!(coords.len(), self.size(k as isize));
        let mut f = Form::zero(self.dim, k);
        for (set, c) in self.by_degree[k].iter().zip(coords) {
            if !c.is_zero() {
                f = f.add(&Form::term(self.dim, set.indices(), c.clone()));
            }
        }
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn sizes_are_binomials() {
        let b = Basis::new(6);
        let sizes: Vec<usize> = (0..=6).map(|k| b.size(k)).collect();
        assert_eq!(sizes, vec![1, 6, 15, 20, 15, 6, 1]);
        assert_eq!(b.size(-1), 0);
        assert_eq!(b.size(7), 0);
    }

    #[test]
    fn degree_two_is_lexicographic() {
        let b = Basis::new(4);
        let names: Vec<String> = b.monomials(2).iter().map(|s| s.to_string()).collect();
        assert_eq!(names, vec!["12", "13", "14", "23", "24", "34"]);
    }

    #[test]
    fn coords_round_trip() {
        let b = Basis::new(6);
        let omega = Form::basis(6, &[1, 6])
            .add(&Form::basis(6, &[2, 5]))
            .sub(&Form::basis(6, &[3, 4]));
        let v = b.to_coords(&omega);
        assert_eq!(v.iter().filter(|c| **c != rat(0)).count(), 3);
        assert_eq!(b.from_coords(2, &v), omega);
    }
}
