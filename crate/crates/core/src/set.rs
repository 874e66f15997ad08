//! Subsets of a ground set `[n] = {1, ..., n}` as multi-word bit vectors.
//!
//! Elements are 1-based externally; element `i` lives at bit position `i - 1`.
//! The universe size `n` is a runtime value with no fixed upper bound, so a
//! set is backed by however many 64-bit words `n` needs. All bit positions at
//! or beyond `n` stay zero.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

fn words_for(universe: usize) -> usize {
    universe.div_ceil(WORD_BITS)
}

/// A subset of the universe `[n]`, immutable in spirit: the universe size is
/// fixed at creation and every set operation yields a new value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: usize,
    words: Vec<u64>,
}

impl ElementSet {
    /// The empty subset of `[n]`.
    ///
    /// Panics if `universe == 0`; the model has no empty ground set.
    pub fn empty(universe: usize) -> Self {
        assert!(universe >= 1, "universe size must be at least 1");
        ElementSet {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    /// The full set `[n]`.
    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for word in &mut set.words {
            *word = u64::MAX;
        }
        set.mask_tail();
        set
    }

    /// Builds a set from 1-based elements. Panics on elements outside `[n]`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(universe: usize, elements: I) -> Self {
        let mut set = Self::empty(universe);
        for element in elements {
            set.insert(element);
        }
        set
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    /// Number of elements (popcount).
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    fn check_element(&self, element: usize) {
        assert!(
            element >= 1 && element <= self.universe,
            "element {element} outside universe [{}]",
            self.universe
        );
    }

    pub fn insert(&mut self, element: usize) {
        self.check_element(element);
        self.words[(element - 1) / WORD_BITS] |= 1 << ((element - 1) % WORD_BITS);
    }

    pub fn remove(&mut self, element: usize) {
        self.check_element(element);
        self.words[(element - 1) / WORD_BITS] &= !(1 << ((element - 1) % WORD_BITS));
    }

    /// Inserts every element of `lo..=hi`. An inverted range (`lo > hi`) is
    /// empty and inserts nothing.
    pub fn insert_range(&mut self, lo: usize, hi: usize) {
        if lo > hi {
            return;
        }
        for element in lo..=hi {
            self.insert(element);
        }
    }

    pub fn contains(&self, element: usize) -> bool {
        if element < 1 || element > self.universe {
            return false;
        }
        self.words[(element - 1) / WORD_BITS] & (1 << ((element - 1) % WORD_BITS)) != 0
    }

    fn check_universe(&self, other: &Self) -> Result<()> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch {
                left: self.universe,
                right: other.universe,
            });
        }
        Ok(())
    }

    /// Set union. Both operands must share a universe.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let mut out = self.clone();
        out.union_in_place(other);
        Ok(out)
    }

    /// Set intersection. Both operands must share a universe.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_universe(other)?;
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        Ok(ElementSet {
            universe: self.universe,
            words,
        })
    }

    /// True iff every element of `self` is in `other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_universe(other)?;
        Ok(self.subset_unchecked(other))
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        let mut out = ElementSet {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.mask_tail();
        out
    }

    /// Ascending iterator over 1-based elements.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            words: &self.words,
            word_index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Collects the elements into a vector, ascending.
    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    fn mask_tail(&mut self) {
        let tail_bits = self.universe % WORD_BITS;
        if tail_bits != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail_bits) - 1;
            }
        }
    }

    pub(crate) fn union_in_place(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub(crate) fn copy_from(&mut self, other: &Self) {
        debug_assert_eq!(self.universe, other.universe);
        self.words.copy_from_slice(&other.words);
    }

    pub(crate) fn subset_unchecked(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// Canonical order: universe size, then set size, then by the lowest element
/// where the two sets differ (the set containing it sorts first). For equal
/// sizes this matches lexicographic comparison of the ascending element lists.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.len().cmp(&other.len()))
            .then_with(|| {
                for (a, b) in self.words.iter().zip(&other.words) {
                    if a != b {
                        let lowest = (a ^ b).trailing_zeros();
                        return if a & (1 << lowest) != 0 {
                            Ordering::Less
                        } else {
                            Ordering::Greater
                        };
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, element) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{element}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over [{}]", self.universe)
    }
}

pub struct Elements<'a> {
    words: &'a [u64],
    word_index: usize,
    current: u64,
}

impl Iterator for Elements<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.current == 0 {
            self.word_index += 1;
            if self.word_index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_index];
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(self.word_index * WORD_BITS + bit + 1)
    }
}
