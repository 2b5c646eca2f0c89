//! Prefix-code competitions.
//!
//! Builds Huffman and Shannon-Fano length profiles, plays one code against
//! another symbol by symbol, and decides whether a code is competitively
//! optimal: it never loses, in probability, a head-to-head competition
//! against any other prefix code for the same source.
//!
//! * [`model`]: exact rationals, sources, length profiles and symbol sets.
//! * [`coding`]: Huffman trees, Shannon-Fano lengths and structural predicates.
//! * [`competition`]: wins, losses, ties and competitive advantage.
//! * [`kraft`]: Kraft-sum partitions and completions, dominating-code
//!   construction and optimality certificates.
//! * [`oracle`]: exhaustive enumeration of complete prefix codes.
//! * [`families`]: extremal source families, fixtures and small-size classifiers.
//! * [`simulate`]: Monte Carlo experiments over flat-Dirichlet sources.

pub mod coding;
pub mod competition;
pub mod error;
pub mod families;
pub mod kraft;
pub mod model;
pub mod oracle;
pub mod simulate;

pub use coding::{huffman, shannon_fano, HuffmanTree, TieBreak};
pub use competition::{compete, CompetitionResult, Dominance};
pub use error::{Error, Result};
pub use kraft::{Certificate, Method, OptimalityVerdict, Status};
pub use model::{q, AnySource, LengthProfile, NumericMode, Rational, Scalar, Source, SymbolSet};
