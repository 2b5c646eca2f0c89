//! Exact rational numbers.
//!
//! A thin newtype over [`BigRational`] that always stays in lowest terms with
//! a positive denominator, formats as `p/q` (or `p` for integers) and parses
//! fractions, integers and finite decimals without loss.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `2^-k`.
    pub fn pow2_neg(k: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    /// `2^k`.
    pub fn pow2(k: u32) -> Self {
        Rational::from_integer(BigInt::one() << k)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact conversion of a finite float.
    pub fn from_f64(value: f64) -> Option<Self> {
        BigRational::from_float(value).map(Rational)
    }

    /// Multiply by `2^k` (k may be negative).
    pub fn mul_pow2(&self, k: i32) -> Self {
        if k >= 0 {
            Rational(BigRational::new(
                self.0.numer() << k as u32,
                self.0.denom().clone(),
            ))
        } else {
            Rational(BigRational::new(
                self.0.numer().clone(),
                self.0.denom() << k.unsigned_abs(),
            ))
        }
    }

    /// True when the value is `2^-k` for some integer `k >= 0`.
    pub fn is_power_of_half(&self) -> bool {
        self.0.numer().is_one() && is_power_of_two(self.0.denom())
    }

    /// Smallest `m >= 0` with `2^-m <= self`, i.e. `ceil(log2(1/self))` for
    /// `0 < self <= 1`. Exact; no floating logarithm involved.
    pub fn ceil_log2_recip(&self) -> u32 {
        assert!(
            self.is_positive(),
            "ceil_log2_recip of a non-positive value"
        );
        // Need the smallest m with numer * 2^m >= denom.
        let numer = self.0.numer().magnitude();
        let denom = self.0.denom().magnitude();
        if numer >= denom {
            return 0;
        }
        let nb = numer.bits();
        let db = denom.bits();
        let mut m = (db - nb).saturating_sub(1) as u32;
        while (numer << m) < *denom {
            m += 1;
        }
        m
    }

    /// Numerator after scaling to the given power-of-two denominator, if the
    /// value is an integer multiple of `2^-bits`.
    pub fn dyadic_numerator(&self, bits: u32) -> Option<BigInt> {
        let scaled = self.mul_pow2(bits as i32);
        scaled.is_integer().then(|| scaled.0.to_integer())
    }
}

fn is_power_of_two(value: &BigInt) -> bool {
    value.is_positive() && {
        let m: &BigUint = value.magnitude();
        m.count_ones() == 1
    }
}

/// Least common multiple of the denominators.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

impl From<i64> for Rational {
    fn from(value: i64) -> Self {
        Rational::from_integer(value)
    }
}

impl From<BigRational> for Rational {
    fn from(value: BigRational) -> Self {
        Rational(value)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || Error::Parse {
            what: "rational",
            input: s.to_string(),
        };
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            return Ok(Rational::new(p, q));
        }
        if let Some((int, frac)) = t.split_once('.') {
            let negative = int.starts_with('-');
            let int_digits = int.trim_start_matches(['-', '+']);
            if !frac.chars().all(|c| c.is_ascii_digit())
                || !int_digits.chars().all(|c| c.is_ascii_digit())
                || (int_digits.is_empty() && frac.is_empty())
            {
                return Err(err());
            }
            let digits = format!("{int_digits}{frac}");
            let mut numer: BigInt = if digits.is_empty() {
                BigInt::zero()
            } else {
                digits.parse().map_err(|_| err())?
            };
            if negative {
                numer = -numer;
            }
            let denom = num_traits::pow(BigInt::from(10u32), frac.len());
            return Ok(Rational::new(numer, denom));
        }
        let n: BigInt = t.parse().map_err(|_| err())?;
        Ok(Rational::from_integer(n))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0
            .partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

/// Shorthand for building a rational in code and tests: `q(1, 3)`.
pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(numer, denom)
}
