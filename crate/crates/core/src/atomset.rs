//! Fixed-width bit sets over atom indices.
//!
//! An [`AtomSet`] is a subset of a ground set `{0, .., n-1}`. Ground sets of
//! up to 64 atoms live inline in a single word; larger ones spill to the heap.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

const WORD: usize = 64;

type Words = SmallVec<[u64; 1]>;

/// A subset of the atoms `0..n`.
///
/// No bit at an index `>= n` is ever set. Ordering is the canonical order used
/// for closed-set ids: by cardinality first, then lexicographic on the words
/// (word 0 holds atoms 0..64).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AtomSet {
    n: usize,
    words: Words,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(WORD).max(1)
}

impl AtomSet {
    pub fn empty(n: usize) -> Self {
        AtomSet {
            n,
            words: SmallVec::from_elem(0, word_count(n)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for (i, w) in s.words.iter_mut().enumerate() {
            let lo = i * WORD;
            let hi = (lo + WORD).min(n);
            if hi > lo {
                let k = hi - lo;
                *w = if k == WORD { !0 } else { (1u64 << k) - 1 };
            }
        }
        s
    }

    pub fn singleton(n: usize, atom: usize) -> Self {
        let mut s = Self::empty(n);
        s.insert(atom);
        s
    }

    /// Builds a set from atom indices. Panics if an index is out of range.
    pub fn from_atoms<I: IntoIterator<Item = usize>>(n: usize, atoms: I) -> Self {
        let mut s = Self::empty(n);
        for a in atoms {
            s.insert(a);
        }
        s
    }

    /// Ground-set size.
    #[inline]
    pub fn ground(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn contains(&self, atom: usize) -> bool {
        atom < self.n && self.words[atom / WORD] >> (atom % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, atom: usize) {
        assert!(
            atom < self.n,
            "atom {atom} outside ground set of size {}",
            self.n
        );
        self.words[atom / WORD] |= 1 << (atom % WORD);
    }

    #[inline]
    pub fn remove(&mut self, atom: usize) {
        if atom < self.n {
            self.words[atom / WORD] &= !(1 << (atom % WORD));
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.n
    }

    #[inline]
    pub fn is_subset(&self, other: &AtomSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// `self ⊊ other`.
    pub fn is_proper_subset(&self, other: &AtomSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &AtomSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn intersection(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn union(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn difference(&self, other: &AtomSet) -> AtomSet {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        out
    }

    /// Complement within the ground set.
    pub fn complement(&self) -> AtomSet {
        let full = AtomSet::full(self.n);
        full.difference(self)
    }

    #[inline]
    pub fn intersect_with(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
    }

    #[inline]
    pub fn union_with(&mut self, other: &AtomSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    /// Smallest atom in the set.
    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    /// Largest atom in the set.
    pub fn last(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(i * WORD + (WORD - 1 - w.leading_zeros() as usize));
            }
        }
        None
    }

    /// Atoms in ascending order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words[0],
        }
    }

    /// Image of the set under an atom map `perm` (pointwise).
    pub fn map(&self, perm: &[usize]) -> AtomSet {
        let mut out = AtomSet::empty(self.n);
        for a in self.iter() {
            out.insert(perm[a]);
        }
        out
    }
}

/// Ascending iterator over the atoms of an [`AtomSet`].
pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

impl<'a> IntoIterator for &'a AtomSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.words.as_slice().cmp(other.words.as_slice()))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}
