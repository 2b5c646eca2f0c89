use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{LengthProfile, Scalar, Source, SymbolSet, Weight};

/// How ties in the merge queue are resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    /// Merge the two smallest by (probability, creation order); leaves are
    /// created before internal nodes, in symbol order.
    Canonical,
    /// Follow every tie and collect the distinct resulting profiles.
    EnumerateAll,
}

/// Largest source size accepted by [`TieBreak::EnumerateAll`].
pub const ENUMERATE_ALL_GUARD: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Leaf { symbol: usize },
    Internal { left: usize, right: usize },
}

#[derive(Debug, Clone)]
pub struct Node<T> {
    pub probability: T,
    /// Smallest leaf probability in the subtree.
    pub min_leaf: T,
    pub depth: u32,
    pub parent: Option<usize>,
    pub kind: NodeKind,
}

/// A Huffman code tree. Node `i < n` is the leaf of symbol `i`; internal
/// nodes follow in creation order and the root is the last node.
#[derive(Debug, Clone)]
pub struct HuffmanTree<T> {
    nodes: Vec<Node<T>>,
    symbols: usize,
}

impl<T: Scalar> HuffmanTree<T> {
    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn nodes(&self) -> &[Node<T>] {
        &self.nodes
    }

    pub fn node(&self, id: usize) -> &Node<T> {
        &self.nodes[id]
    }

    pub fn root(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn profile(&self) -> LengthProfile {
        LengthProfile::from_vec_unchecked(
            self.nodes[..self.symbols].iter().map(|n| n.depth).collect(),
        )
    }

    pub fn sibling(&self, id: usize) -> Option<usize> {
        let parent = self.nodes[id].parent?;
        match self.nodes[parent].kind {
            NodeKind::Internal { left, right } => Some(if left == id { right } else { left }),
            NodeKind::Leaf { .. } => None,
        }
    }

    /// Symbols of the leaves below `id`.
    pub fn leaves_under(&self, id: usize) -> SymbolSet {
        let mut out = SymbolSet::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            match self.nodes[x].kind {
                NodeKind::Leaf { symbol } => {
                    out.insert(symbol);
                }
                NodeKind::Internal { left, right } => {
                    stack.push(left);
                    stack.push(right);
                }
            }
        }
        out
    }

    /// Whether `symbol`'s leaf lies in the subtree rooted at `id`.
    pub fn is_descendant(&self, symbol: usize, id: usize) -> bool {
        let mut x = Some(symbol);
        while let Some(cur) = x {
            if cur == id {
                return true;
            }
            x = self.nodes[cur].parent;
        }
        false
    }
}

struct QueueEntry<T> {
    probability: T,
    id: usize,
}

impl<T: Weight> PartialEq for QueueEntry<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Weight> Eq for QueueEntry<T> {}

impl<T: Weight> PartialOrd for QueueEntry<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Weight> Ord for QueueEntry<T> {
    // Reversed: BinaryHeap is a max-heap and we pop the smallest.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .probability
            .total_cmp(&self.probability)
            .then_with(|| other.id.cmp(&self.id))
    }
}

/// Canonical Huffman tree of `source`.
pub fn huffman<T: Scalar>(source: &Source<T>) -> HuffmanTree<T> {
    let n = source.len();
    let mut nodes: Vec<Node<T>> = source
        .probabilities()
        .iter()
        .enumerate()
        .map(|(symbol, p)| Node {
            probability: p.clone(),
            min_leaf: p.clone(),
            depth: 0,
            parent: None,
            kind: NodeKind::Leaf { symbol },
        })
        .collect();
    let mut heap: BinaryHeap<QueueEntry<T>> = nodes
        .iter()
        .enumerate()
        .map(|(id, node)| QueueEntry {
            probability: node.probability.clone(),
            id,
        })
        .collect();
    while heap.len() > 1 {
        let a = heap.pop().expect("heap has two entries").id;
        let b = heap.pop().expect("heap has two entries").id;
        let id = nodes.len();
        let probability = nodes[a].probability.clone() + nodes[b].probability.clone();
        let min_leaf = if nodes[a].min_leaf.total_cmp(&nodes[b].min_leaf) == Ordering::Greater {
            nodes[b].min_leaf.clone()
        } else {
            nodes[a].min_leaf.clone()
        };
        nodes[a].parent = Some(id);
        nodes[b].parent = Some(id);
        nodes.push(Node {
            probability: probability.clone(),
            min_leaf,
            depth: 0,
            parent: None,
            kind: NodeKind::Internal { left: a, right: b },
        });
        heap.push(QueueEntry { probability, id });
    }
    // Parents are created after their children, so one reverse sweep sets
    // every depth.
    for id in (0..nodes.len()).rev() {
        if let NodeKind::Internal { left, right } = nodes[id].kind {
            let d = nodes[id].depth + 1;
            nodes[left].depth = d;
            nodes[right].depth = d;
        }
    }
    HuffmanTree { nodes, symbols: n }
}

/// Huffman length profiles under the given tie-break policy.
pub fn huffman_profiles<T: Scalar>(
    source: &Source<T>,
    tie: TieBreak,
) -> Result<Vec<LengthProfile>> {
    match tie {
        TieBreak::Canonical => Ok(vec![huffman(source).profile()]),
        TieBreak::EnumerateAll => Ok(huffman_all(source)?.into_iter().collect()),
    }
}

/// Partial tree during tie enumeration: its leaves with their depths so far.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Subtree {
    leaves: Vec<(usize, u32)>,
}

/// Every distinct profile some Huffman tie-breaking produces.
pub fn huffman_all<T: Scalar>(source: &Source<T>) -> Result<BTreeSet<LengthProfile>> {
    let n = source.len();
    if n > ENUMERATE_ALL_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: ENUMERATE_ALL_GUARD,
        });
    }
    let probs = source.probabilities();
    let start: Vec<Subtree> = (0..n)
        .map(|i| Subtree {
            leaves: vec![(i, 0)],
        })
        .collect();
    let mut seen = HashSet::new();
    let mut out = BTreeSet::new();
    explore(probs, start, &mut seen, &mut out);
    Ok(out)
}

fn subtree_probability<T: Scalar>(probs: &[T], t: &Subtree) -> T {
    t.leaves
        .iter()
        .fold(<T as Weight>::zero(), |acc, &(i, _)| acc + probs[i].clone())
}

fn explore<T: Scalar>(
    probs: &[T],
    mut active: Vec<Subtree>,
    seen: &mut HashSet<Vec<Subtree>>,
    out: &mut BTreeSet<LengthProfile>,
) {
    active.sort();
    if !seen.insert(active.clone()) {
        return;
    }
    if active.len() == 1 {
        let mut lengths = vec![0; probs.len()];
        for &(i, d) in &active[0].leaves {
            lengths[i] = d;
        }
        out.insert(LengthProfile::from_vec_unchecked(lengths));
        return;
    }
    let weights: Vec<T> = active
        .iter()
        .map(|t| subtree_probability(probs, t))
        .collect();
    let mut order: Vec<usize> = (0..active.len()).collect();
    order.sort_by(|&a, &b| weights[a].total_cmp(&weights[b]));
    let smallest = &weights[order[0]];
    let ties: Vec<usize> = order
        .iter()
        .copied()
        .filter(|&i| weights[i].total_cmp(smallest) == Ordering::Equal)
        .collect();
    let mut pairs = Vec::new();
    if ties.len() >= 2 {
        for (x, &a) in ties.iter().enumerate() {
            for &b in &ties[x + 1..] {
                pairs.push((a, b));
            }
        }
    } else {
        let first = order[0];
        let second = &weights[order[1]];
        for &b in &order[1..] {
            if weights[b].total_cmp(second) == Ordering::Equal {
                pairs.push((first, b));
            }
        }
    }
    for (a, b) in pairs {
        let mut merged: Vec<(usize, u32)> = active[a]
            .leaves
            .iter()
            .chain(&active[b].leaves)
            .map(|&(i, d)| (i, d + 1))
            .collect();
        merged.sort_unstable();
        let next: Vec<Subtree> = active
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a && i != b)
            .map(|(_, t)| t.clone())
            .chain(std::iter::once(Subtree { leaves: merged }))
            .collect();
        explore(probs, next, seen, out);
    }
}
