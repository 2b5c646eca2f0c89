//! One-on-one competitions between length profiles.
//!
//! Code `a` wins on a symbol when its codeword is strictly shorter than `b`'s,
//! loses when strictly longer and ties otherwise. Its competitive advantage
//! is `P(wins) - P(losses)`.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coding::check_sizes;
use crate::error::{Error, Result};
use crate::model::{LengthProfile, Scalar, Source, SymbolSet};

#[derive(Debug, Clone, PartialEq)]
pub struct CompetitionResult<T> {
    pub wins: SymbolSet,
    pub losses: SymbolSet,
    pub ties: SymbolSet,
    pub p_win: T,
    pub p_loss: T,
    pub advantage: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dominance {
    /// Positive advantage.
    Strict,
    /// Zero advantage (within tolerance in float mode).
    Weak,
    /// Negative advantage.
    Dominated,
}

pub fn compete<T: Scalar>(
    source: &Source<T>,
    a: &LengthProfile,
    b: &LengthProfile,
) -> Result<CompetitionResult<T>> {
    check_sizes(source, a)?;
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut wins = SymbolSet::new();
    let mut losses = SymbolSet::new();
    let mut ties = SymbolSet::new();
    for (i, (la, lb)) in a.lengths().iter().zip(b.lengths()).enumerate() {
        match la.cmp(lb) {
            Ordering::Less => wins.insert(i),
            Ordering::Greater => losses.insert(i),
            Ordering::Equal => ties.insert(i),
        };
    }
    let p_win = source.probability(&wins);
    let p_loss = source.probability(&losses);
    let advantage = p_win.clone() - p_loss.clone();
    Ok(CompetitionResult {
        wins,
        losses,
        ties,
        p_win,
        p_loss,
        advantage,
    })
}

/// Classifies a result by the sign of its advantage. `eps` is the source's
/// tolerance (zero in exact mode).
pub fn dominates<T: Scalar>(result: &CompetitionResult<T>, eps: f64) -> Dominance {
    match result.advantage.sign(eps) {
        Some(Ordering::Greater) => Dominance::Strict,
        Some(Ordering::Less) => Dominance::Dominated,
        _ => Dominance::Weak,
    }
}

impl<T: Scalar> CompetitionResult<T> {
    pub fn dominance(&self, eps: f64) -> Dominance {
        dominates(self, eps)
    }
}

impl<T: Scalar> Serialize for CompetitionResult<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CompetitionResult", 6)?;
        st.serialize_field("wins", &self.wins)?;
        st.serialize_field("losses", &self.losses)?;
        st.serialize_field("ties", &self.ties)?;
        st.serialize_field("p_win", &self.p_win.to_string())?;
        st.serialize_field("p_loss", &self.p_loss.to_string())?;
        st.serialize_field("advantage", &self.advantage.to_string())?;
        st.end()
    }
}
