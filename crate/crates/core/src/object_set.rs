//! Fixed-universe bitsets over object indices.

use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A subset of the universe `{0, .., universe - 1}`.
///
/// Subset and intersection tests run word-at-a-time, which is what the
/// approximation routines lean on inside the search loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ObjectSet {
    universe: usize,
    words: SmallVec<[u64; 1]>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(WORD)
}

impl ObjectSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: SmallVec::from_elem(0, word_count(universe)),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for w in set.words.iter_mut() {
            *w = u64::MAX;
        }
        set.trim();
        set
    }

    pub fn from_indices<I>(universe: usize, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = Self::empty(universe);
        for index in indices {
            if index >= universe {
                return Err(Error::IndexOutOfRange {
                    index,
                    size: universe,
                });
            }
            set.insert(index);
        }
        Ok(set)
    }

    /// Builds a set from the low `universe` bits of `mask`. Requires `universe <= 64`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= WORD, "mask sets are limited to 64 objects");
        let mut set = Self::empty(universe);
        if let Some(w) = set.words.first_mut() {
            *w = mask;
        }
        set.trim();
        set
    }

    /// Low word of the set; only meaningful for universes of at most 64 objects.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        let rem = self.universe % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.universe, "index {index} outside universe");
        self.words[index / WORD] |= 1 << (index % WORD);
    }

    pub fn remove(&mut self, index: usize) {
        assert!(index < self.universe, "index {index} outside universe");
        self.words[index / WORD] &= !(1 << (index % WORD));
    }

    pub fn contains(&self, index: usize) -> bool {
        index < self.universe && self.words[index / WORD] & (1 << (index % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ObjectSet) -> bool {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &ObjectSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &ObjectSet) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ObjectSet) -> ObjectSet {
        self.check_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        out
    }

    pub fn difference(&self, other: &ObjectSet) -> ObjectSet {
        self.check_universe(other);
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        out
    }

    pub fn complement(&self) -> ObjectSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + bit)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares the ascending member sequences lexicographically.
    pub fn cmp_lex(&self, other: &ObjectSet) -> Ordering {
        self.iter().cmp(other.iter())
    }

    fn check_universe(&self, other: &ObjectSet) {
        debug_assert_eq!(
            self.universe, other.universe,
            "object sets drawn from different universes"
        );
    }
}

impl fmt::Debug for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for ObjectSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
