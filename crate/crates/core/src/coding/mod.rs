//! Huffman and Shannon-Fano construction and the structural predicates on
//! length profiles: completeness, monotonicity, strong monotonicity and
//! expected-length optimality.

mod huffman;
mod predicates;

pub use huffman::{
    huffman, huffman_all, huffman_profiles, HuffmanTree, Node, NodeKind, TieBreak,
    ENUMERATE_ALL_GUARD,
};
pub use predicates::{
    all_optimal_profiles, expected_length, is_complete, is_expected_length_optimal, is_monotone,
    is_strongly_monotone, shannon_fano, strong_monotonicity_violation, OPTIMAL_PROFILES_GUARD,
    STRONG_MONOTONE_GUARD,
};

pub(crate) use predicates::{check_sizes, next_permutation};
