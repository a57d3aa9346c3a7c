use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of `0..domain`, stored as packed bits.
///
/// Ordering is lexicographic on the ascending member sequences, so `{0,2,4}`
/// sorts before `{0,3}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    domain: usize,
    words: Vec<u64>,
}

impl ElementSet {
    pub fn empty(domain: usize) -> Self {
        Self {
            domain,
            words: vec![0; domain.div_ceil(64)],
        }
    }

    pub fn full(domain: usize) -> Self {
        let mut s = Self::empty(domain);
        for i in 0..domain {
            s.insert(i);
        }
        s
    }

    pub fn from_iter_in(domain: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(domain);
        for i in items {
            s.insert(i);
        }
        s
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    /// Returns `true` if `i` was newly inserted.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.domain, "element {i} outside domain {}", self.domain);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.domain {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.domain && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    /// Least member of `self` not in `other`.
    pub fn first_outside(&self, other: &Self) -> Option<usize> {
        self.iter().find(|&i| !other.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter()
            .cmp(other.iter())
            .then(self.domain.cmp(&other.domain))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_iterate_across_words() {
        let s = ElementSet::from_iter_in(200, [0, 63, 64, 130, 199]);
        assert_eq!(s.to_vec(), vec![0, 63, 64, 130, 199]);
        assert_eq!(s.len(), 5);
        assert!(s.contains(130));
        assert!(!s.contains(131));
    }

    #[test]
    fn ordering_is_lexicographic_on_members() {
        let a = ElementSet::from_iter_in(6, [0, 2, 4]);
        let b = ElementSet::from_iter_in(6, [0, 3]);
        assert!(a < b);
        let c = ElementSet::from_iter_in(6, [0]);
        assert!(c < a);
    }

    #[test]
    fn subset_and_outside() {
        let a = ElementSet::from_iter_in(6, [0, 3]);
        let b = ElementSet::from_iter_in(6, [0, 2, 3, 4]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(b.first_outside(&a), Some(2));
    }
}
