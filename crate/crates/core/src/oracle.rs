//! Brute-force ground truth: every complete length profile of a given size,
//! and competitive optimality decided straight from the definition.
//!
//! Incomplete challengers never need checking. Any incomplete code has a
//! codeword that can be shortened, and shortening only turns losses into ties
//! or ties into wins.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::coding::{check_sizes, next_permutation};
use crate::competition::compete;
use crate::error::{Error, Result};
use crate::kraft::{Certificate, Method, OptimalityVerdict, Status};
use crate::model::{with_weights, LengthProfile, Scalar, Source, Weight};

/// Largest alphabet accepted by the full enumeration.
pub const ORACLE_GUARD: usize = 10;

/// Complete length multisets for `n` leaves with depth at most `max_len`,
/// each listed in ascending order.
///
/// Built top-down: at every depth some of the available nodes become leaves
/// and the rest split into two children one level deeper.
pub fn complete_length_multisets(n: usize, max_len: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut current = Vec::with_capacity(n);
    split(1, 0, n, max_len, &mut current, &mut out);
    out
}

fn split(
    available: usize,
    depth: u32,
    remaining: usize,
    max_len: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    for leaves in (0..=available.min(remaining)).rev() {
        let internal = available - leaves;
        let left = remaining - leaves;
        if internal == 0 {
            if left != 0 {
                continue;
            }
        } else if depth >= max_len || left < 2 * internal {
            continue;
        }
        current.extend(std::iter::repeat_n(depth, leaves));
        if internal == 0 {
            out.push(current.clone());
        } else {
            split(2 * internal, depth + 1, left, max_len, current, out);
        }
        current.truncate(current.len() - leaves);
    }
}

/// Iterator over every complete profile: each multiset's distinct
/// assignments in lexicographic order.
#[derive(Debug, Clone)]
pub struct ProfileEnumeration {
    multisets: std::vec::IntoIter<Vec<u32>>,
    current: Option<Vec<u32>>,
}

impl Iterator for ProfileEnumeration {
    type Item = LengthProfile;

    fn next(&mut self) -> Option<LengthProfile> {
        loop {
            if let Some(cur) = &mut self.current {
                let out = LengthProfile::from_vec_unchecked(cur.clone());
                if !next_permutation(cur) {
                    self.current = None;
                }
                return Some(out);
            }
            self.current = Some(self.multisets.next()?);
        }
    }
}

/// All complete profiles of size `n` with lengths at most `max_len`.
/// A complete tree on `n` leaves never needs more than `n - 1` levels.
pub fn enumerate_complete_profiles(n: usize, max_len: u32) -> Result<ProfileEnumeration> {
    if n == 0 {
        return Err(Error::EmptySource);
    }
    if n > ORACLE_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_GUARD,
        });
    }
    Ok(ProfileEnumeration {
        multisets: complete_length_multisets(n, max_len).into_iter(),
        current: None,
    })
}

fn default_depth(n: usize) -> u32 {
    n.saturating_sub(1) as u32
}

/// Best challenger among the permutations of one multiset, with ties going
/// to the lexicographically smallest profile.
fn best_in_multiset<W: Weight>(probs: &[W], reference: &[u32], multiset: &[u32]) -> (W, Vec<u32>) {
    let mut perm = multiset.to_vec();
    let mut best: Option<(W, Vec<u32>)> = None;
    loop {
        let mut value = W::zero();
        for ((p, &c), &r) in probs.iter().zip(&perm).zip(reference) {
            match c.cmp(&r) {
                Ordering::Less => value = value + p.clone(),
                Ordering::Greater => value = value - p.clone(),
                Ordering::Equal => {}
            }
        }
        // Permutations come in increasing order, so only a strictly larger
        // value replaces the incumbent.
        if best
            .as_ref()
            .is_none_or(|(b, _)| value.total_cmp(b) == Ordering::Greater)
        {
            best = Some((value, perm.clone()));
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("a multiset has at least one permutation")
}

fn maximize<W: Weight>(probs: &[W], reference: &[u32], multisets: &[Vec<u32>]) -> Vec<u32> {
    multisets
        .par_iter()
        .map(|m| best_in_multiset(probs, reference, m))
        .reduce_with(|a, b| match a.0.total_cmp(&b.0) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        })
        .expect("at least one complete multiset")
        .1
}

/// Largest competitive advantage any complete prefix code has over `profile`,
/// with the lexicographically smallest profile attaining it.
pub fn max_advantage_over<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
) -> Result<(T, LengthProfile)> {
    check_sizes(source, profile)?;
    let n = source.len();
    if n > ORACLE_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_GUARD,
        });
    }
    let multisets = complete_length_multisets(n, default_depth(n));
    let weights = source.weights();
    let best = with_weights!(&weights, |w, _eps| maximize(
        w,
        profile.lengths(),
        &multisets
    ));
    let best = LengthProfile::from_vec_unchecked(best);
    let advantage = compete(source, &best, profile)?.advantage;
    Ok((advantage, best))
}

/// Competitive optimality by definition: `profile` is optimal iff no complete
/// profile has positive advantage over it.
pub fn brute_force_is_optimal<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
) -> Result<OptimalityVerdict> {
    let (advantage, challenger) = max_advantage_over(source, profile)?;
    let sign = match advantage.sign(source.epsilon()) {
        // Within tolerance of zero: optimal only when the best challenger
        // wins nowhere, so the value is a structural zero.
        None if compete(source, &challenger, profile)?.wins.is_empty() => Some(Ordering::Equal),
        other => other,
    };
    Ok(match sign {
        Some(Ordering::Greater) => OptimalityVerdict::not_optimal(
            Certificate::DominatingProfile {
                profile: challenger,
            },
            Method::BruteForce,
        ),
        Some(_) => OptimalityVerdict::optimal(Method::BruteForce),
        None => OptimalityVerdict {
            status: Status::Unknown,
            certificate: None,
            method: Method::BruteForce,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::q;

    fn src(v: &[(i64, i64)]) -> Source {
        Source::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    fn lp(v: &[u32]) -> LengthProfile {
        LengthProfile::new(v.to_vec()).unwrap()
    }

    /// Independent count: nondecreasing length sequences with Kraft sum one,
    /// by plain brute force over bounded sequences.
    fn brute_multiset_count(n: usize) -> usize {
        fn go(
            n: usize,
            min: u32,
            max: u32,
            left: u128,
            unit_bits: u32,
            acc: &mut Vec<u32>,
        ) -> usize {
            if acc.len() == n {
                return usize::from(left == 0);
            }
            let mut count = 0;
            for l in min..=max {
                let w = 1u128 << (unit_bits - l);
                if w <= left {
                    acc.push(l);
                    count += go(n, l, max, left - w, unit_bits, acc);
                    acc.pop();
                }
            }
            count
        }
        let max = default_depth(n);
        go(n, 0, max, 1u128 << max, max, &mut Vec::new())
    }

    #[test]
    fn multiset_counts_match_independent_count() {
        // Also the known sequence 1, 1, 1, 2, 3, 5, 9, 16.
        let expected = [1, 1, 1, 2, 3, 5, 9, 16];
        for n in 1..=8 {
            let got = complete_length_multisets(n, default_depth(n)).len();
            assert_eq!(got, brute_multiset_count(n), "n = {n}");
            assert_eq!(got, expected[n - 1], "n = {n}");
        }
    }

    #[test]
    fn multisets_are_complete_and_ascending() {
        for n in 1..=9 {
            for m in complete_length_multisets(n, default_depth(n)) {
                assert_eq!(m.len(), n);
                assert!(m.windows(2).all(|w| w[0] <= w[1]));
                assert!(LengthProfile::new(m).unwrap().is_complete());
            }
        }
    }

    #[test]
    fn small_enumerations() {
        let two: Vec<_> = enumerate_complete_profiles(2, 1).unwrap().collect();
        assert_eq!(two, vec![lp(&[1, 1])]);
        let three: Vec<_> = enumerate_complete_profiles(3, 2).unwrap().collect();
        assert_eq!(three, vec![lp(&[1, 2, 2]), lp(&[2, 1, 2]), lp(&[2, 2, 1])]);
        let four: Vec<_> = enumerate_complete_profiles(4, 3).unwrap().collect();
        assert_eq!(four.len(), 13);
        let distinct: std::collections::BTreeSet<_> = four.iter().cloned().collect();
        assert_eq!(distinct.len(), 13);
        assert!(four.contains(&lp(&[2, 2, 2, 2])));
        let one: Vec<_> = enumerate_complete_profiles(1, 0).unwrap().collect();
        assert_eq!(one, vec![LengthProfile::new(vec![0]).unwrap()]);
    }

    #[test]
    fn depth_cap_limits_enumeration() {
        // With depth 2 only the balanced tree remains at n = 4.
        let capped: Vec<_> = enumerate_complete_profiles(4, 2).unwrap().collect();
        assert_eq!(capped, vec![lp(&[2, 2, 2, 2])]);
    }

    #[test]
    fn guard() {
        assert!(matches!(
            enumerate_complete_profiles(11, 10),
            Err(Error::TooLarge { n: 11, limit: 10 })
        ));
        let s = Source::new(vec![q(1, 11); 11]).unwrap();
        let p = LengthProfile::new(vec![4; 11]).unwrap();
        assert!(matches!(
            max_advantage_over(&s, &p),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn brute_force_examples() {
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        assert_eq!(
            brute_force_is_optimal(&s, &lp(&[2, 2, 2, 2]))
                .unwrap()
                .status,
            Status::Optimal
        );
        assert_eq!(
            brute_force_is_optimal(&s, &lp(&[1, 2, 3, 3]))
                .unwrap()
                .status,
            Status::NotOptimal
        );
        let t = src(&[(2, 5), (3, 10), (1, 5), (1, 10)]);
        let v = brute_force_is_optimal(&t, &lp(&[1, 2, 3, 3])).unwrap();
        assert_eq!(v.status, Status::NotOptimal);
        assert_eq!(
            v.certificate,
            Some(Certificate::DominatingProfile {
                profile: lp(&[3, 1, 2, 3])
            })
        );
        let (adv, _) = max_advantage_over(&t, &lp(&[1, 2, 3, 3])).unwrap();
        assert_eq!(adv, q(1, 10));
    }

    #[test]
    fn max_advantage_examples() {
        let s = src(&[(11, 30), (10, 30), (8, 30), (1, 30)]);
        assert_eq!(
            max_advantage_over(&s, &lp(&[1, 2, 3, 3])).unwrap(),
            (q(7, 30), lp(&[3, 1, 2, 3]))
        );
        let u = src(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        let (adv, best) = max_advantage_over(&u, &lp(&[2, 2, 2, 2])).unwrap();
        assert_eq!(adv, q(0, 1));
        assert_eq!(best, lp(&[2, 2, 2, 2]));
    }

    #[test]
    fn float_ties_are_unknown() {
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]).to_float();
        let v = brute_force_is_optimal(&s, &lp(&[2, 2, 2, 2])).unwrap();
        assert_eq!(v.status, Status::Unknown);
        let u = Source::new(vec![0.25; 4]).unwrap();
        let v = brute_force_is_optimal(&u, &lp(&[2, 2, 2, 2])).unwrap();
        assert_eq!(v.status, Status::Optimal);
    }
}
