//! Named sources, extremal families and closed-form classifiers for small
//! alphabets.

use std::cmp::Ordering;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::coding::{expected_length, huffman, shannon_fano};
use crate::competition::compete;
use crate::error::{Error, Result};
use crate::kraft::{Method, OptimalityVerdict};
use crate::model::{q, LengthProfile, Rational, Scalar, Source};

/// A source together with a reference code and a challenger whose advantage
/// over it is known in closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyInstance {
    pub source: Source,
    pub huffman_profile: LengthProfile,
    /// The code the challenger competes against.
    pub reference_profile: LengthProfile,
    pub challenger_profile: LengthProfile,
    /// Advantage of the challenger over the reference.
    pub predicted_advantage: Rational,
    /// Absolute difference of the two expected lengths.
    pub predicted_avg_length_gap: Rational,
}

impl FamilyInstance {
    /// Advantage of the challenger over the reference, computed.
    pub fn advantage(&self) -> Rational {
        compete(
            &self.source,
            &self.challenger_profile,
            &self.reference_profile,
        )
        .expect("family profiles match the source size")
        .advantage
    }

    /// `|E[challenger] - E[reference]|`, computed.
    pub fn avg_length_gap(&self) -> Rational {
        let c = expected_length(&self.source, &self.challenger_profile).expect("sizes match");
        let r = expected_length(&self.source, &self.reference_profile).expect("sizes match");
        (c - r).abs()
    }
}

impl Serialize for FamilyInstance {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FamilyInstance", 6)?;
        st.serialize_field("source", &self.source)?;
        st.serialize_field("huffman_profile", &self.huffman_profile)?;
        st.serialize_field("reference_profile", &self.reference_profile)?;
        st.serialize_field("challenger_profile", &self.challenger_profile)?;
        st.serialize_field("predicted_advantage", &self.predicted_advantage)?;
        st.serialize_field("predicted_avg_length_gap", &self.predicted_avg_length_gap)?;
        st.end()
    }
}

fn check_eps_positive(eps: &Rational) -> Result<()> {
    if !eps.is_positive() {
        return Err(Error::BadEpsilon(format!("{eps} is not positive")));
    }
    Ok(())
}

/// Sources whose Huffman code loses by nearly 1/3 to a code that is barely
/// longer on average.
///
/// `p = (1/3 + e, 1/3, 1/3 - 2e, a 2^0, a 2^-1, ..., a 2^(4-n))` with
/// `a = (e/2) / (1 - 2^(3-n))`. The Huffman lengths are `1, 2, ..., n-1, n-1`;
/// the challenger gives the first three symbols lengths 3, 1, 2 instead and
/// wins with advantage `1/3 - 3e`. It is `4e` longer on average.
pub fn family_one_third(n: usize, eps: &Rational) -> Result<FamilyInstance> {
    if n < 4 {
        return Err(Error::WrongSize {
            expected: "at least 4".into(),
            found: n,
        });
    }
    check_eps_positive(eps)?;
    let third = q(1, 3);
    let alpha = (eps / &q(2, 1)) / (Rational::one() - Rational::pow2_neg(n as u32 - 3));
    let mut probs = vec![&third + eps, third.clone(), &third - &(eps * &q(2, 1))];
    probs.extend((4..=n).map(|k| alpha.mul_pow2(4 - k as i32)));
    let strictly_decreasing = probs.windows(2).all(|w| w[0] > w[1]);
    if !strictly_decreasing || !probs[2].is_positive() {
        return Err(Error::BadEpsilon(format!(
            "{eps} does not give strictly decreasing positive probabilities"
        )));
    }
    let source = Source::new(probs).map_err(|e| Error::BadEpsilon(e.to_string()))?;
    let mut lengths: Vec<u32> = (1..n as u32).collect();
    lengths.push(n as u32 - 1);
    let huffman_profile = LengthProfile::new(lengths.clone())?;
    if huffman(&source).profile() != huffman_profile {
        return Err(Error::BadEpsilon(format!(
            "{eps} changes the Huffman code of the family"
        )));
    }
    lengths[..3].copy_from_slice(&[3, 1, 2]);
    Ok(FamilyInstance {
        source,
        reference_profile: huffman_profile.clone(),
        huffman_profile,
        challenger_profile: LengthProfile::new(lengths)?,
        predicted_advantage: &third - &(eps * &q(3, 1)),
        predicted_avg_length_gap: eps * &q(4, 1),
    })
}

/// Sources where a code beats Shannon-Fano by at least `1 - 2^(2-n)` in
/// both advantage and expected length.
///
/// `p_k = 2^-k - e` for `k < n` and `p_n = 2^(1-n) + (n-1) e`, with
/// `0 < e < 4^-n`. Shannon-Fano lengths are `2, 3, ..., n, n-1`; the
/// challenger uses `1, 2, ..., n-1, n-1` and wins everywhere but the last
/// symbol, with advantage and length saving both `1 - p_n`.
pub fn family_sf_gap(n: usize, eps: &Rational) -> Result<FamilyInstance> {
    if n < 1 {
        return Err(Error::WrongSize {
            expected: "at least 1".into(),
            found: n,
        });
    }
    check_eps_positive(eps)?;
    let bound = Rational::pow2_neg(2 * n as u32);
    if *eps >= bound {
        return Err(Error::BadEpsilon(format!(
            "{eps} is not below 4^-{n} = {bound}"
        )));
    }
    let mut probs: Vec<Rational> = (1..n as u32)
        .map(|k| Rational::pow2_neg(k) - eps.clone())
        .collect();
    probs.push(Rational::pow2_neg(n as u32 - 1) + eps * &Rational::from_integer(n as u64 - 1));
    let source = Source::new(probs)?;
    let reference_profile = shannon_fano(&source);
    let mut challenger: Vec<u32> = (1..n as u32).collect();
    challenger.push(n as u32 - 1);
    let p_n = source.p(n - 1).clone();
    Ok(FamilyInstance {
        huffman_profile: huffman(&source).profile(),
        reference_profile,
        challenger_profile: LengthProfile::new(challenger)?,
        predicted_advantage: Rational::one() - p_n.clone(),
        predicted_avg_length_gap: Rational::one() - p_n,
        source,
    })
}

/// Every source of size at most 3 has a competitively optimal Huffman code.
pub fn classify_small<T: Scalar>(source: &Source<T>) -> Result<OptimalityVerdict> {
    if source.len() > 3 {
        return Err(Error::WrongSize {
            expected: "at most 3".into(),
            found: source.len(),
        });
    }
    Ok(OptimalityVerdict::optimal(Method::SmallN))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum N4Class {
    Optimal,
    NotOptimal,
    Boundary,
}

/// Closed-form verdict for a sorted source of size 4.
///
/// With `p1 >= p2 >= p3 >= p4` the Huffman code fails exactly when its
/// lengths are forced to 1, 2, 3, 3 (`p3 + p4 < p1`) and the challenger
/// 3, 1, 2, 3 gains (`p2 + p3 > p1`). Equality in either deciding
/// inequality is reported as `Boundary`; in float mode so is anything within
/// the source's tolerance.
pub fn classify_n4<T: Scalar>(source: &Source<T>) -> Result<N4Class> {
    if source.len() != 4 {
        return Err(Error::WrongSize {
            expected: "4".into(),
            found: source.len(),
        });
    }
    if !source.is_sorted_descending() {
        return Err(Error::NotSorted);
    }
    let p = source.probabilities();
    let eps = source.epsilon();
    let balanced = (p[2].clone() + p[3].clone() - p[0].clone()).sign(eps);
    let challenger = (p[1].clone() + p[2].clone() - p[0].clone()).sign(eps);
    Ok(match (balanced, challenger) {
        (Some(Ordering::Greater), _) | (_, Some(Ordering::Less)) => N4Class::Optimal,
        (Some(Ordering::Less), Some(Ordering::Greater)) => N4Class::NotOptimal,
        _ => N4Class::Boundary,
    })
}

/// Volumes behind the size-4 result, in the `(p1, p2, p3)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N4Volumes {
    pub first_tetrahedron: Rational,
    pub second_tetrahedron: Rational,
    /// The region `p1 >= p2 >= p3 >= p4 > 0` of the simplex.
    pub cell: Rational,
    pub fraction: Rational,
}

fn det(m: &[Vec<Rational>]) -> Rational {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut total = Rational::zero();
    for (col, lead) in m[0].iter().enumerate() {
        if lead.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = lead * &det(&minor);
        if col % 2 == 0 {
            total += &term;
        } else {
            total -= &term;
        }
    }
    total
}

/// Volume of the tetrahedron with the given vertices: `|det| / 6` of the
/// vertex matrix with a column of ones appended.
fn tetrahedron_volume(vertices: [[(i64, i64); 3]; 4]) -> Rational {
    let m: Vec<Vec<Rational>> = vertices
        .iter()
        .map(|v| {
            let mut row: Vec<Rational> = v.iter().map(|&(a, b)| q(a, b)).collect();
            row.push(Rational::one());
            row
        })
        .collect();
    det(&m).abs() / q(6, 1)
}

pub fn n4_volumes() -> N4Volumes {
    let top = [(1, 2), (1, 2), (0, 1)];
    let mid = [(2, 5), (1, 5), (1, 5)];
    let center = [(1, 3), (1, 3), (1, 3)];
    let first_tetrahedron = tetrahedron_volume([top, mid, center, [(1, 3), (1, 3), (1, 6)]]);
    let second_tetrahedron = tetrahedron_volume([top, mid, center, [(1, 2), (1, 4), (1, 4)]]);
    let cell = tetrahedron_volume([
        [(1, 1), (0, 1), (0, 1)],
        top,
        center,
        [(1, 4), (1, 4), (1, 4)],
    ]);
    let fraction = (&first_tetrahedron + &second_tetrahedron) / cell.clone();
    N4Volumes {
        first_tetrahedron,
        second_tetrahedron,
        cell,
        fraction,
    }
}

/// Probability that a flat-Dirichlet source of size 4 has no competitively
/// optimal Huffman code.
pub fn n4_nonoptimal_fraction() -> Rational {
    n4_volumes().fraction
}

fn labels(n: usize) -> Vec<String> {
    (b'a'..).take(n).map(|c| (c as char).to_string()).collect()
}

/// `(1/3, 1/3, 1/6, 1/6)` over `a..d`: Huffman lengths 2, 2, 2, 2 are
/// competitively optimal and 1, 2, 3, 3 are not.
pub fn fixture_two_huffman() -> Source {
    Source::new(vec![q(1, 3), q(1, 3), q(1, 6), q(1, 6)])
        .and_then(|s| s.with_labels(labels(4)))
        .expect("fixture is valid")
}

/// `(1/3, 1/3, 1/9, 1/9, 1/18, 1/18)` over `a..f` with four codes that beat
/// each other in a cycle: `C1 > H1 > H2 > C1`, each by 1/9.
#[derive(Debug, Clone, PartialEq)]
pub struct FourCodes {
    pub source: Source,
    pub h1: LengthProfile,
    pub h2: LengthProfile,
    pub c1: LengthProfile,
    /// Same lengths as `h2` but from a tree that pairs `d` with `e` rather
    /// than merging `e` and `f`; still expected-length optimal.
    pub c2: LengthProfile,
}

impl FourCodes {
    pub fn named(&self) -> [(&'static str, &LengthProfile); 4] {
        [
            ("H1", &self.h1),
            ("H2", &self.h2),
            ("C1", &self.c1),
            ("C2", &self.c2),
        ]
    }
}

/// Lengths per symbol `a..f` as read off the code trees.
const FOUR_CODES: [(&str, [u32; 6]); 4] = [
    ("H1", [1, 2, 3, 4, 5, 5]),
    ("H2", [2, 2, 3, 3, 3, 3]),
    ("C1", [3, 1, 2, 4, 5, 5]),
    ("C2", [2, 2, 3, 3, 3, 3]),
];

pub fn fixture_four_codes() -> FourCodes {
    let source = Source::new(vec![q(1, 3), q(1, 3), q(1, 9), q(1, 9), q(1, 18), q(1, 18)])
        .and_then(|s| s.with_labels(labels(6)))
        .expect("fixture is valid");
    let get = |name: &str| {
        let (_, l) = FOUR_CODES
            .iter()
            .find(|(n, _)| *n == name)
            .expect("known code");
        LengthProfile::new(l.to_vec()).expect("fixture profile is valid")
    };
    FourCodes {
        source,
        h1: get("H1"),
        h2: get("H2"),
        c1: get("C1"),
        c2: get("C2"),
    }
}
