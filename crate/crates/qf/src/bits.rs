//! Compact fixed-width bitsets.
//!
//! Order relations, downsets, and subset searches all reduce to word
//! operations on these.

use std::fmt;

/// Bitset over the domain `0..domain`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits {
    domain: usize,
    words: Vec<u64>,
}

impl Bits {
    /// Empty set over `0..domain`.
    pub fn new(domain: usize) -> Self {
        Bits {
            domain,
            words: vec![0; domain.div_ceil(64)],
        }
    }

    /// Full set over `0..domain`.
    pub fn full(domain: usize) -> Self {
        let mut b = Bits::new(domain);
        for i in 0..domain {
            b.set(i);
        }
        b
    }

    /// Set containing exactly the given members.
    pub fn of(domain: usize, members: &[usize]) -> Self {
        let mut b = Bits::new(domain);
        for &i in members {
            b.set(i);
        }
        b
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.domain);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.domain);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn unset(&mut self, i: usize) {
        debug_assert!(i < self.domain);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    /// Sets bit `i`; returns true if it was previously clear.
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.get(i);
        self.set(i);
        fresh
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.domain, other.domain);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.domain, other.domain);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn and(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.intersect_with(other);
        r
    }

    pub fn or(&self, other: &Bits) -> Bits {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        debug_assert_eq!(self.domain, other.domain);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| w & !o == 0)
    }

    /// Iterates set bits in ascending order.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.ones().next()
    }
}

impl fmt::Debug for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut b = Bits::new(130);
        assert!(b.is_empty());
        b.set(0);
        b.set(64);
        b.set(129);
        assert_eq!(b.count(), 3);
        assert_eq!(b.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(b.get(64));
        b.unset(64);
        assert!(!b.get(64));
        assert!(!b.insert(0));
        assert!(b.insert(5));
    }

    #[test]
    fn set_algebra() {
        let a = Bits::of(10, &[1, 3, 5]);
        let b = Bits::of(10, &[3, 5, 7]);
        assert_eq!(a.and(&b), Bits::of(10, &[3, 5]));
        assert_eq!(a.or(&b), Bits::of(10, &[1, 3, 5, 7]));
        assert!(Bits::of(10, &[3]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(Bits::full(10).count(), 10);
    }
}
