use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use super::symbols::SymbolSet;
use crate::error::{Error, Result};

/// Codeword lengths, one per source symbol, aligned with source order.
///
/// A prefix code is represented by its length profile throughout: wins,
/// losses, Kraft sums and expected length all depend on lengths only.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LengthProfile(Vec<u32>);

impl LengthProfile {
    /// Validates the Kraft inequality and the length-0 rule.
    pub fn new(lengths: Vec<u32>) -> Result<Self> {
        if lengths.is_empty() {
            return Err(Error::EmptySource);
        }
        if lengths.len() > 1 && lengths.contains(&0) {
            return Err(Error::ZeroLength);
        }
        let profile = LengthProfile(lengths);
        let sum = profile.kraft_total();
        if sum > Rational::one() {
            return Err(Error::KraftViolation {
                sum: sum.to_string(),
            });
        }
        Ok(profile)
    }

    /// Skips validation; for enumerators that only produce valid profiles.
    pub(crate) fn from_vec_unchecked(lengths: Vec<u32>) -> Self {
        LengthProfile(lengths)
    }

    pub fn lengths(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_length(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    /// Kraft sum of the members of `set`.
    pub fn kraft_sum(&self, set: &SymbolSet) -> Rational {
        let bits = self.max_length();
        let numer: BigInt = set
            .iter()
            .filter(|&i| i < self.len())
            .map(|i| BigInt::one() << (bits - self.0[i]))
            .sum();
        Rational::new(numer, BigInt::one() << bits)
    }

    /// Kraft sum over the whole alphabet.
    pub fn kraft_total(&self) -> Rational {
        self.kraft_sum(&SymbolSet::full(self.len()))
    }

    /// Kraft sum equals one.
    pub fn is_complete(&self) -> bool {
        self.kraft_total() == Rational::one()
    }

    /// Per-symbol Kraft weights as integers over `2^max_length`, when that
    /// denominator fits in a `u128`.
    pub(crate) fn kraft_units(&self) -> Option<(Vec<u128>, u32)> {
        let bits = self.max_length();
        if bits > 126 {
            return None;
        }
        Some((self.0.iter().map(|&l| 1u128 << (bits - l)).collect(), bits))
    }
}

/// `kraft_sum(p, a)`.
pub fn kraft_sum(profile: &LengthProfile, set: &SymbolSet) -> Rational {
    profile.kraft_sum(set)
}

impl fmt::Display for LengthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LengthProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for LengthProfile {
    type Err = Error;

    /// Comma-separated lengths, e.g. `1,2,3,3`.
    fn from_str(s: &str) -> Result<Self> {
        let lengths = s
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|_| Error::Parse {
                    what: "length profile",
                    input: s.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        LengthProfile::new(lengths)
    }
}

impl Serialize for LengthProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LengthProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        LengthProfile::new(v).map_err(serde::de::Error::custom)
    }
}
