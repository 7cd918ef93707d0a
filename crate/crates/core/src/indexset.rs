//! Compact sets of hyperplane indices.
//!
//! Closed sets of flats are manipulated millions of times while building a
//! lattice (subset tests for the Möbius recursion, unions for closures), so
//! they are stored as bit vectors rather than as trees of integers.

use std::cmp::Ordering;
use std::fmt;

const BITS: usize = 64;

/// A set of `usize` indices backed by a bit vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexSet {
    words: Vec<u64>,
}

impl IndexSet {
    pub fn new() -> Self {
        IndexSet { words: Vec::new() }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = IndexSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }

    /// The full set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        IndexSet::from_indices(0..n)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / BITS;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (i % BITS);
    }

    pub fn remove(&mut self, i: usize) {
        let w = i / BITS;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (i % BITS));
            self.trim();
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        let w = i / BITS;
        w < self.words.len() && self.words[w] & (1u64 << (i % BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        for (i, &w) in self.words.iter().enumerate() {
            let o = other.words.get(i).copied().unwrap_or(0);
            if w & !o != 0 {
                return false;
            }
        }
        true
    }

    pub fn is_superset(&self, other: &IndexSet) -> bool {
        other.is_subset(self)
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let n = self.words.len().max(other.words.len());
        let mut words = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            words.push(a | b);
        }
        let mut s = IndexSet { words };
        s.trim();
        s
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        let n = self.words.len().min(other.words.len());
        let mut words = Vec::with_capacity(n);
        for i in 0..n {
            words.push(self.words[i] & other.words[i]);
        }
        let mut s = IndexSet { words };
        s.trim();
        s
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        let mut words = self.words.clone();
        for (i, w) in words.iter_mut().enumerate() {
            *w &= !other.words.get(i).copied().unwrap_or(0);
        }
        let mut s = IndexSet { words };
        s.trim();
        s
    }

    pub fn union_with(&mut self, other: &IndexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (i, &w) in other.words.iter().enumerate() {
            self.words[i] |= w;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(wi * BITS + b)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        IndexSet::from_indices(iter)
    }
}

// Order sets as their ascending index sequences, so sorting flats by
// (rank, closed set) gives the documented deterministic layout.
impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = IndexSet::new();
        assert!(s.is_empty());
        s.insert(3);
        s.insert(70);
        s.insert(3);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && s.contains(70) && !s.contains(4));
        assert_eq!(s.to_vec(), vec![3, 70]);
        s.remove(70);
        assert_eq!(s.to_vec(), vec![3]);
    }

    #[test]
    fn subset_union_intersection() {
        let a = IndexSet::from_indices([0, 2, 65]);
        let b = IndexSet::from_indices([0, 1, 2, 65, 100]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.union(&b), b);
        assert_eq!(a.intersection(&b), a);
        assert_eq!(b.difference(&a).to_vec(), vec![1, 100]);
    }

    #[test]
    fn order_is_lexicographic_on_sequences() {
        let a = IndexSet::from_indices([0, 3]);
        let b = IndexSet::from_indices([1, 2]);
        let c = IndexSet::from_indices([0]);
        assert!(a < b);
        assert!(c < a);
    }
}
