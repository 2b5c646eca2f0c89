use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A set of symbol indices, stored as a bitmask.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SymbolSet {
    words: Vec<u64>,
}

impl SymbolSet {
    pub fn new() -> Self {
        SymbolSet::default()
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    /// The set whose members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = SymbolSet { words: vec![mask] };
        s.trim();
        s
    }

    /// The low 64 members as a mask, or `None` if some index is `>= 64`.
    pub fn to_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn contains(&self, index: usize) -> bool {
        self.words
            .get(index / 64)
            .is_some_and(|w| w & (1 << (index % 64)) != 0)
    }

    pub fn insert(&mut self, index: usize) -> bool {
        let word = index / 64;
        if self.words.len() <= word {
            self.words.resize(word + 1, 0);
        }
        let bit = 1u64 << (index % 64);
        let fresh = self.words[word] & bit == 0;
        self.words[word] |= bit;
        fresh
    }

    pub fn remove(&mut self, index: usize) -> bool {
        let word = index / 64;
        let Some(w) = self.words.get_mut(word) else {
            return false;
        };
        let bit = 1u64 << (index % 64);
        let present = *w & bit != 0;
        *w &= !bit;
        self.trim();
        present
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i * 64 + bit)
            })
        })
    }

    /// One past the largest member, or 0 for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * 64 + 64 - w.leading_zeros() as usize,
        }
    }

    pub fn union(&self, other: &SymbolSet) -> SymbolSet {
        let len = self.words.len().max(other.words.len());
        let words = (0..len).map(|i| self.word(i) | other.word(i)).collect();
        SymbolSet { words }
    }

    pub fn intersection(&self, other: &SymbolSet) -> SymbolSet {
        let len = self.words.len().min(other.words.len());
        let mut s = SymbolSet {
            words: (0..len).map(|i| self.word(i) & other.word(i)).collect(),
        };
        s.trim();
        s
    }

    pub fn difference(&self, other: &SymbolSet) -> SymbolSet {
        let mut s = SymbolSet {
            words: (0..self.words.len())
                .map(|i| self.word(i) & !other.word(i))
                .collect(),
        };
        s.trim();
        s
    }

    /// Complement relative to `0..n`.
    pub fn complement(&self, n: usize) -> SymbolSet {
        SymbolSet::full(n).difference(self)
    }

    pub fn is_disjoint(&self, other: &SymbolSet) -> bool {
        self.intersection(other).is_empty()
    }

    pub fn is_subset(&self, other: &SymbolSet) -> bool {
        self.difference(other).is_empty()
    }

    fn word(&self, i: usize) -> u64 {
        self.words.get(i).copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }
}

impl FromIterator<usize> for SymbolSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = SymbolSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for SymbolSet {
    fn from(indices: [usize; N]) -> Self {
        indices.into_iter().collect()
    }
}

impl fmt::Debug for SymbolSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for SymbolSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SymbolSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        Ok(indices.into_iter().collect())
    }
}
