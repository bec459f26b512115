use alloc::vec;
use alloc::vec::Vec;

use crate::graph::NodeIndex;

const WORD: usize = 64;

/// Fixed-universe bitset over node indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet {
    universe: usize,
    words: Vec<u64>,
}

impl NodeSet {
    pub fn new(universe: usize) -> Self {
        NodeSet {
            universe,
            words: vec![0; universe.div_ceil(WORD)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = NodeSet::new(universe);
        for i in 0..universe {
            set.insert(i);
        }
        set
    }

    /// Builds a set from the low `universe` bits of `mask` (`universe <= 64`).
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= WORD);
        let mut set = NodeSet::new(universe);
        if universe > 0 {
            let keep = if universe == WORD {
                u64::MAX
            } else {
                (1u64 << universe) - 1
            };
            set.words[0] = mask & keep;
        }
        set
    }

    pub fn from_indices<I: IntoIterator<Item = NodeIndex>>(universe: usize, nodes: I) -> Self {
        let mut set = NodeSet::new(universe);
        for node in nodes {
            set.insert(node.0);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "node {i} outside universe {}", self.universe);
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        assert!(i < self.universe, "node {i} outside universe {}", self.universe);
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        let present = self.words[w] & b != 0;
        self.words[w] &= !b;
        present
    }

    pub fn toggle(&mut self, i: usize) {
        assert!(i < self.universe, "node {i} outside universe {}", self.universe);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD] & (1u64 << (i % WORD)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn union_with(&mut self, other: &NodeSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Members in ascending index order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            next_word: 0,
            current: 0,
            base: 0,
        }
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    next_word: usize,
    current: u64,
    base: usize,
}

impl Iterator for Iter<'_> {
    type Item = NodeIndex;

    fn next(&mut self) -> Option<NodeIndex> {
        while self.current == 0 {
            let &word = self.words.get(self.next_word)?;
            self.current = word;
            self.base = self.next_word * WORD;
            self.next_word += 1;
        }
        let bit = self.current.trailing_zeros() as usize;
        self.current &= self.current - 1;
        Some(NodeIndex(self.base + bit))
    }
}
