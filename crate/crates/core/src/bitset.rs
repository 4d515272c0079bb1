//! Fixed-width bit sets over element indices.
//!
//! Every set carries the size of its universe; operations combining two sets
//! require equal universes. Words beyond the last valid bit are kept zero so
//! that derived equality, hashing and ordering are structural.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberSet {
    nbits: usize,
    words: Vec<u64>,
}

impl MemberSet {
    pub fn new(nbits: usize) -> Self {
        MemberSet {
            nbits,
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn full(nbits: usize) -> Self {
        let mut s = MemberSet {
            nbits,
            words: vec![u64::MAX; nbits.div_ceil(64)],
        };
        s.mask_tail();
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(nbits: usize, indices: I) -> Self {
        let mut s = MemberSet::new(nbits);
        for i in indices {
            s.insert(i);
        }
        s
    }

    fn mask_tail(&mut self) {
        let used = self.nbits % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.nbits
    }

    /// Inserts `i`, returning true when it was not already present.
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.nbits, "index {} outside universe {}", i, self.nbits);
        let (w, b) = (i / 64, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.nbits && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &MemberSet) {
        assert_eq!(self.nbits, other.nbits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersection(&self, other: &MemberSet) -> MemberSet {
        assert_eq!(self.nbits, other.nbits);
        MemberSet {
            nbits: self.nbits,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &MemberSet) -> bool {
        assert_eq!(self.nbits, other.nbits);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

impl fmt::Debug for MemberSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_and_query() {
        let mut s = MemberSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(129));
        assert!(!s.insert(129));
        assert!(s.contains(0));
        assert!(s.contains(129));
        assert!(!s.contains(64));
        assert_eq!(s.count(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 129]);
    }

    #[test]
    fn full_masks_tail_bits() {
        let s = MemberSet::full(70);
        assert_eq!(s.count(), 70);
        let mut t = MemberSet::new(70);
        for i in 0..70 {
            t.insert(i);
        }
        assert_eq!(s, t);
    }

    #[test]
    fn subset_and_intersection() {
        let a = MemberSet::from_indices(16, [1, 3, 5]);
        let b = MemberSet::from_indices(16, [1, 3, 5, 7]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert_eq!(a.intersection(&b), a);
        let mut c = a.clone();
        c.union_with(&b);
        assert_eq!(c, b);
    }

    #[test]
    fn empty_universe() {
        let s = MemberSet::new(0);
        assert!(s.is_empty());
        assert_eq!(s.count(), 0);
    }
}
