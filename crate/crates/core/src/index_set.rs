//! Multi-indices for the exterior algebra basis.

use std::fmt;

/// Strictly increasing tuple of coframe indices (1-based). The empty tuple
/// is the scalar slot. `Ord` is lexicographic, which on a fixed degree is
/// exactly the basis order used by every matrix in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct IndexSet(Vec<u8>);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// Build from strictly increasing indices. Panics otherwise; use
    /// [`IndexSet::canonicalize`] for arbitrary tuples.
    pub fn new(indices: Vec<u8>) -> Self {
        assert!(
            indices.windows(2).all(|w| w[0] < w[1]),
            "indices must be strictly increasing: {indices:?}"
        );
        IndexSet(indices)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn max_index(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn contains(&self, i: u8) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    /// Position of `i` in the tuple, if present (0-based).
    pub fn position(&self, i: u8) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    /// Sort an arbitrary tuple into an `IndexSet` with the sign of the
    /// sorting permutation; sign 0 (and the empty set) when an index repeats.
    pub fn canonicalize(tuple: &[u8]) -> (IndexSet, i32) {
        let mut v = tuple.to_vec();
        let mut sign = 1i32;
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return (IndexSet::empty(), 0);
        }
        (IndexSet(v), sign)
    }

    /// Shuffle-merge with a disjoint set: the merged set together with the
    /// sign of the permutation sorting `self ++ other`; sign 0 on overlap.
    pub fn merge(&self, other: &IndexSet) -> (IndexSet, i32) {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0usize, 0usize);
        let mut inversions = 0usize;
        while i < a.len() && j < b.len() {
            if a[i] < b[j] {
                out.push(a[i]);
                i += 1;
            } else if a[i] > b[j] {
                // b[j] moves past every remaining entry of a
                inversions += a.len() - i;
                out.push(b[j]);
                j += 1;
            } else {
                return (IndexSet::empty(), 0);
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        (IndexSet(out), if inversions % 2 == 0 { 1 } else { -1 })
    }

    /// Remove the entry at position `pos`.
    pub fn remove_at(&self, pos: usize) -> IndexSet {
        let mut v = self.0.clone();
        v.remove(pos);
        IndexSet(v)
    }

    /// Complementary indices within `1..=dim`.
    pub fn complement(&self, dim: usize) -> IndexSet {
        let mut v = Vec::with_capacity(dim.saturating_sub(self.0.len()));
        for i in 1..=dim as u8 {
            if !self.contains(i) {
                v.push(i);
            }
        }
        IndexSet(v)
    }

    /// Orientation sign eps(I) with e^I wedge e^{I^c} = eps(I) e^{1..dim}.
    pub fn complement_sign(&self, dim: usize) -> i32 {
        let (_, s) = self.merge(&self.complement(dim));
        s
    }
}

impl fmt::Display for IndexSet {
    /// Bare digit string when every index is a single digit, dotted groups
    /// otherwise (`e^{1,12}` prints as `1.12`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&i| i <= 9) {
            for i in &self.0 {
                write!(f, "{i}")?;
            }
        } else {
            let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", parts.join("."))?;
        }
        Ok(())
    }
}
