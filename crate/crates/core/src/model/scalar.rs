//! Numeric modes.
//!
//! Exact mode uses [`Rational`]; float mode uses `f64` together with a
//! tolerance. Algorithms that only add, subtract and compare are written
//! against [`Weight`], which is also implemented for scaled `i128` integers so
//! that exact searches can run without big-number arithmetic when the
//! source's common denominator is small.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::rational::{common_denominator, Rational};

/// Default comparison tolerance in float mode.
pub const DEFAULT_EPSILON: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum NumericMode {
    Exact,
    Float { epsilon: f64 },
}

impl NumericMode {
    pub fn float() -> Self {
        NumericMode::Float {
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn epsilon(&self) -> f64 {
        match self {
            NumericMode::Exact => 0.0,
            NumericMode::Float { epsilon } => *epsilon,
        }
    }
}

/// Additive values that searches accumulate and compare.
pub trait Weight: Clone + Send + Sync + Add<Output = Self> + Sub<Output = Self> {
    fn zero() -> Self;

    /// `self * k`.
    fn scale(&self, k: u64) -> Self;

    /// Sign of `self`, or `None` when it is too close to zero to call under
    /// tolerance `eps`. Exact types never return `None`.
    fn sign(&self, eps: f64) -> Option<Ordering>;

    /// Total order used for maximization. Not tolerance aware.
    fn total_cmp(&self, other: &Self) -> Ordering;
}

impl Weight for i128 {
    fn zero() -> Self {
        0
    }

    fn scale(&self, k: u64) -> Self {
        self * k as i128
    }

    fn sign(&self, _eps: f64) -> Option<Ordering> {
        Some(self.cmp(&0))
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }

    fn scale(&self, k: u64) -> Self {
        self * k as f64
    }

    fn sign(&self, eps: f64) -> Option<Ordering> {
        if self.abs() <= eps {
            None
        } else if *self > 0.0 {
            Some(Ordering::Greater)
        } else {
            Some(Ordering::Less)
        }
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
}

impl Weight for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn scale(&self, k: u64) -> Self {
        self * &Rational::from_integer(k)
    }

    fn sign(&self, _eps: f64) -> Option<Ordering> {
        Some(if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        })
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
}

/// Probabilities prepared for an inner-loop search.
#[derive(Debug, Clone)]
pub enum Weights {
    /// Exact probabilities scaled to integers over a common denominator.
    Scaled {
        numerators: Vec<i128>,
        denominator: BigInt,
    },
    /// Exact probabilities that did not fit the scaled representation.
    Exact(Vec<Rational>),
    Float {
        values: Vec<f64>,
        epsilon: f64,
    },
}

/// Scaled numerators stay below this so that sums over any subset and
/// differences of two such sums cannot overflow.
const SCALED_LIMIT: i128 = 1 << 100;

impl Weights {
    pub fn len(&self) -> usize {
        match self {
            Weights::Scaled { numerators, .. } => numerators.len(),
            Weights::Exact(v) => v.len(),
            Weights::Float { values, .. } => values.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn from_exact(probs: &[Rational]) -> Weights {
        let denom = common_denominator(probs);
        let mut numerators = Vec::with_capacity(probs.len());
        for p in probs {
            let scaled = p.numer() * (&denom / p.denom());
            match scaled.to_i128() {
                Some(v) if v.abs() < SCALED_LIMIT / (probs.len() as i128 + 1) => numerators.push(v),
                _ => return Weights::Exact(probs.to_vec()),
            }
        }
        Weights::Scaled {
            numerators,
            denominator: denom,
        }
    }
}

/// Probability values of a source: exact rationals or floats.
pub trait Scalar:
    Weight + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Serialize + 'static
{
    /// Whether values of this type are exact.
    const EXACT: bool;

    fn one() -> Self;

    /// `2^-k`.
    fn pow2_neg(k: u32) -> Self;

    fn to_f64(&self) -> f64;

    fn is_positive(&self) -> bool;

    /// `2^-k` for an integer `k >= 0`, within `eps` in float mode.
    fn is_power_of_half(&self, eps: f64) -> bool;

    /// Smallest `m >= 0` with `2^-m <= self` for `0 < self <= 1`.
    fn ceil_log2_recip(&self) -> u32;

    fn to_weights(values: &[Self], eps: f64) -> Weights;

    /// Parse from the textual form used in JSON (`"p/q"` or a decimal).
    fn parse_value(s: &str) -> Option<Self>;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn one() -> Self {
        Rational::one()
    }

    fn pow2_neg(k: u32) -> Self {
        Rational::pow2_neg(k)
    }

    fn to_f64(&self) -> f64 {
        Rational::to_f64(self)
    }

    fn is_positive(&self) -> bool {
        Rational::is_positive(self)
    }

    fn is_power_of_half(&self, _eps: f64) -> bool {
        Rational::is_power_of_half(self)
    }

    fn ceil_log2_recip(&self) -> u32 {
        Rational::ceil_log2_recip(self)
    }

    fn to_weights(values: &[Self], _eps: f64) -> Weights {
        Weights::from_exact(values)
    }

    fn parse_value(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn one() -> Self {
        1.0
    }

    fn pow2_neg(k: u32) -> Self {
        (-(k as f64)).exp2()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_positive(&self) -> bool {
        *self > 0.0
    }

    fn is_power_of_half(&self, eps: f64) -> bool {
        if *self <= 0.0 || *self > 1.0 + eps {
            return false;
        }
        let k = (-self.log2()).round().max(0.0);
        (self - (-k).exp2()).abs() <= eps
    }

    fn ceil_log2_recip(&self) -> u32 {
        assert!(*self > 0.0, "ceil_log2_recip of a non-positive value");
        // Doubling is exact in binary floating point.
        let mut m = 0;
        let mut x = *self;
        while x < 1.0 {
            x *= 2.0;
            m += 1;
        }
        m
    }

    fn to_weights(values: &[Self], eps: f64) -> Weights {
        Weights::Float {
            values: values.to_vec(),
            epsilon: eps,
        }
    }

    fn parse_value(s: &str) -> Option<Self> {
        if let Ok(v) = s.trim().parse::<f64>() {
            return Some(v);
        }
        s.parse::<Rational>().ok().map(|r| r.to_f64())
    }
}
