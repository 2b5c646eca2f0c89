use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{with_weights, LengthProfile, Scalar, Source, SymbolSet, Weight};
use crate::oracle::complete_length_multisets;

use super::huffman::huffman;

/// Largest source size for which strong monotonicity is checked by subset
/// enumeration.
pub const STRONG_MONOTONE_GUARD: usize = 20;

/// Default guard for [`all_optimal_profiles`].
pub const OPTIMAL_PROFILES_GUARD: usize = 12;

pub(crate) fn check_sizes<T: Scalar>(source: &Source<T>, profile: &LengthProfile) -> Result<()> {
    if source.len() != profile.len() {
        return Err(Error::SizeMismatch {
            expected: source.len(),
            found: profile.len(),
        });
    }
    Ok(())
}

/// Shannon-Fano lengths `ceil(log2(1/p))`, computed without logarithms.
pub fn shannon_fano<T: Scalar>(source: &Source<T>) -> LengthProfile {
    LengthProfile::from_vec_unchecked(
        source
            .probabilities()
            .iter()
            .map(Scalar::ceil_log2_recip)
            .collect(),
    )
}

/// Expected codeword length `sum(l(y) P(y))`.
pub fn expected_length<T: Scalar>(source: &Source<T>, profile: &LengthProfile) -> Result<T> {
    check_sizes(source, profile)?;
    Ok(source
        .probabilities()
        .iter()
        .zip(profile.lengths())
        .fold(<T as Weight>::zero(), |acc, (p, &l)| {
            acc + p.scale(l as u64)
        }))
}

pub fn is_complete(profile: &LengthProfile) -> bool {
    profile.is_complete()
}

/// Complete and of minimum expected length.
pub fn is_expected_length_optimal<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
) -> Result<bool> {
    check_sizes(source, profile)?;
    if !profile.is_complete() {
        return Ok(false);
    }
    let best = expected_length(source, &huffman(source).profile())?;
    let here = expected_length(source, profile)?;
    Ok(!matches!(
        (here - best).sign(source.epsilon()),
        Some(Ordering::Greater)
    ))
}

/// Monotonicity on the sorted-sibling realization of the profile.
///
/// The realization is built bottom-up: at each depth the nodes (leaves of
/// that length plus parents formed one level below) are sorted by
/// non-increasing probability and adjacent nodes become siblings; an odd
/// node out gets a single-child parent. The profile is monotone when every
/// node at a smaller depth has probability at least that of every node at a
/// greater depth.
pub fn is_monotone<T: Scalar>(source: &Source<T>, profile: &LengthProfile) -> Result<bool> {
    check_sizes(source, profile)?;
    let max = profile.max_length() as usize;
    if max == 0 {
        return Ok(true);
    }
    let eps = source.epsilon();
    let mut by_depth: Vec<Vec<T>> = vec![Vec::new(); max + 1];
    for (p, &l) in source.probabilities().iter().zip(profile.lengths()) {
        by_depth[l as usize].push(p.clone());
    }
    // Walk upward, carrying parents; track the maximum probability below.
    let mut carried: Vec<T> = Vec::new();
    let mut deeper_max: Option<T> = None;
    for depth in (1..=max).rev() {
        let mut level = std::mem::take(&mut by_depth[depth]);
        level.append(&mut carried);
        level.sort_by(|a, b| b.total_cmp(a));
        if let (Some(min), Some(dmax)) = (level.last(), &deeper_max) {
            if (dmax.clone() - min.clone()).sign(eps) == Some(Ordering::Greater) {
                return Ok(false);
            }
        }
        if let Some(top) = level.first() {
            if deeper_max
                .as_ref()
                .is_none_or(|m| top.total_cmp(m) == Ordering::Greater)
            {
                deeper_max = Some(top.clone());
            }
        }
        carried = level
            .chunks(2)
            .map(|pair| {
                pair.iter()
                    .cloned()
                    .fold(<T as Weight>::zero(), |acc, p| acc + p)
            })
            .collect();
    }
    Ok(true)
}

/// Strong monotonicity: whenever `K(A) = 2^-i > 2^-j = K(B)` then
/// `P(A) >= P(B)`. Returns a violating pair `(A, B)` if there is one.
pub fn strong_monotonicity_violation<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
) -> Result<Option<(SymbolSet, SymbolSet)>> {
    check_sizes(source, profile)?;
    let n = source.len();
    if n > STRONG_MONOTONE_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: STRONG_MONOTONE_GUARD,
        });
    }
    let (units, bits) = profile
        .kraft_units()
        .ok_or_else(|| Error::PreconditionViolated("codeword lengths above 126 bits".into()))?;
    let weights = source.weights();
    let found = with_weights!(&weights, |w, eps| violation_search(w, &units, bits, eps));
    Ok(found.map(|(a, b)| (SymbolSet::from_mask(a), SymbolSet::from_mask(b))))
}

pub fn is_strongly_monotone<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
) -> Result<bool> {
    Ok(strong_monotonicity_violation(source, profile)?.is_none())
}

fn violation_search<W: Weight>(
    probs: &[W],
    units: &[u128],
    bits: u32,
    eps: f64,
) -> Option<(u64, u64)> {
    let n = probs.len();
    let count = 1usize << n;
    let mut kraft = vec![0u128; count];
    let mut prob = vec![W::zero(); count];
    // For each exponent i: (min P, mask) and (max P, mask) over subsets with
    // K = 2^-i.
    let levels = bits as usize + 1;
    let mut lo: Vec<Option<(W, u64)>> = vec![None; levels];
    let mut hi: Vec<Option<(W, u64)>> = vec![None; levels];
    for mask in 1..count {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        kraft[mask] = kraft[rest] + units[low];
        prob[mask] = prob[rest].clone() + probs[low].clone();
        let k = kraft[mask];
        if !k.is_power_of_two() || k > 1u128 << bits {
            continue;
        }
        let i = bits as usize - k.trailing_zeros() as usize;
        let p = &prob[mask];
        if lo[i]
            .as_ref()
            .is_none_or(|(v, _)| p.total_cmp(v) == Ordering::Less)
        {
            lo[i] = Some((p.clone(), mask as u64));
        }
        if hi[i]
            .as_ref()
            .is_none_or(|(v, _)| p.total_cmp(v) == Ordering::Greater)
        {
            hi[i] = Some((p.clone(), mask as u64));
        }
    }
    // Largest P among strictly smaller power-of-two Kraft sums.
    let mut deeper: Option<(W, u64)> = None;
    for i in (0..levels).rev() {
        if let (Some((a, am)), Some((b, bm))) = (&lo[i], &deeper) {
            if (b.clone() - a.clone()).sign(eps) == Some(Ordering::Greater) {
                return Some((*am, *bm));
            }
        }
        if let Some((v, m)) = &hi[i] {
            if deeper
                .as_ref()
                .is_none_or(|(d, _)| v.total_cmp(d) == Ordering::Greater)
            {
                deeper = Some((v.clone(), *m));
            }
        }
    }
    None
}

/// Every complete profile of minimum expected length.
///
/// Uses the complete length multisets; within a multiset an assignment is
/// optimal exactly when no more probable symbol gets a longer codeword, so
/// the optimal assignments are the sorted one with lengths permuted inside
/// blocks of equal probability.
pub fn all_optimal_profiles<T: Scalar>(
    source: &Source<T>,
    max_n: usize,
) -> Result<BTreeSet<LengthProfile>> {
    let n = source.len();
    if n > max_n {
        return Err(Error::TooLarge { n, limit: max_n });
    }
    let eps = source.epsilon();
    let probs = source.probabilities();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| probs[b].total_cmp(&probs[a]).then(a.cmp(&b)));
    let sorted: Vec<&T> = order.iter().map(|&i| &probs[i]).collect();

    let multisets = complete_length_multisets(n, n.saturating_sub(1) as u32);
    let costs: Vec<T> = multisets
        .iter()
        .map(|m| {
            sorted
                .iter()
                .zip(m)
                .fold(<T as Weight>::zero(), |acc, (p, &l)| {
                    acc + p.scale(l as u64)
                })
        })
        .collect();
    let best = costs
        .iter()
        .min_by(|a, b| a.total_cmp(b))
        .expect("at least one complete multiset")
        .clone();

    // Blocks of equal probability in sorted order.
    let mut blocks: Vec<std::ops::Range<usize>> = Vec::new();
    let mut start = 0;
    for k in 1..=n {
        let boundary = k == n
            || matches!(
                (sorted[k - 1].clone() - sorted[k].clone()).sign(eps),
                Some(Ordering::Greater | Ordering::Less)
            );
        if boundary {
            blocks.push(start..k);
            start = k;
        }
    }

    let mut out = BTreeSet::new();
    for (m, cost) in multisets.iter().zip(&costs) {
        if (cost.clone() - best.clone()).sign(eps) == Some(Ordering::Greater) {
            continue;
        }
        let mut lengths = vec![0u32; n];
        assign_blocks(&blocks, &order, m, 0, &mut lengths, &mut out);
    }
    Ok(out)
}

fn assign_blocks(
    blocks: &[std::ops::Range<usize>],
    order: &[usize],
    multiset: &[u32],
    block: usize,
    lengths: &mut Vec<u32>,
    out: &mut BTreeSet<LengthProfile>,
) {
    let Some(range) = blocks.get(block) else {
        out.insert(LengthProfile::from_vec_unchecked(lengths.clone()));
        return;
    };
    let symbols = &order[range.clone()];
    let mut perm: Vec<u32> = multiset[range.clone()].to_vec();
    // multiset slices are ascending, i.e. the first permutation.
    loop {
        for (&s, &l) in symbols.iter().zip(&perm) {
            lengths[s] = l;
        }
        assign_blocks(blocks, order, multiset, block + 1, lengths, out);
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

/// Advances to the next lexicographic permutation; false after the last.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
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

    fn set(v: &[&[u32]]) -> BTreeSet<LengthProfile> {
        v.iter().map(|l| lp(l)).collect()
    }

    #[test]
    fn shannon_fano_examples() {
        assert_eq!(
            shannon_fano(&src(&[(1, 2), (1, 4), (1, 8), (1, 8)])),
            lp(&[1, 2, 3, 3])
        );
        assert_eq!(
            shannon_fano(&src(&[(1, 3), (1, 3), (1, 6), (1, 6)])),
            lp(&[2, 2, 3, 3])
        );
        assert_eq!(
            shannon_fano(&src(&[(1, 1)])),
            LengthProfile::new(vec![0]).unwrap()
        );
    }

    #[test]
    fn expected_length_examples() {
        let s = src(&[(1, 3), (1, 3), (1, 9), (1, 9), (1, 18), (1, 18)]);
        assert_eq!(
            expected_length(&s, &lp(&[1, 2, 3, 4, 5, 5])).unwrap(),
            q(7, 3)
        );
        assert_eq!(
            expected_length(&s, &lp(&[3, 3, 3, 3, 3, 3])).unwrap(),
            q(3, 1)
        );
        let u = src(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        assert_eq!(expected_length(&u, &lp(&[1, 2, 3, 3])).unwrap(), q(9, 4));
        assert!(matches!(
            expected_length(&u, &lp(&[1, 1])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn completeness_examples() {
        assert!(is_complete(&lp(&[1, 2, 3, 3])));
        assert!(!is_complete(&lp(&[2, 2, 3, 3])));
        assert!(is_complete(&LengthProfile::new(vec![0]).unwrap()));
    }

    #[test]
    fn monotone_examples() {
        let u = src(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        assert!(!is_monotone(&u, &lp(&[1, 2, 3, 3])).unwrap());
        assert!(is_monotone(&u, &lp(&[2, 2, 2, 2])).unwrap());
        assert!(is_monotone(&src(&[(1, 1)]), &LengthProfile::new(vec![0]).unwrap()).unwrap());
        let s = src(&[(2, 5), (3, 10), (1, 5), (1, 10)]);
        assert!(is_monotone(&s, &huffman(&s).profile()).unwrap());
        // Leaf order violated outright.
        assert!(!is_monotone(&s, &lp(&[3, 3, 2, 1])).unwrap());
    }

    #[test]
    fn strongly_monotone_examples() {
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        assert!(is_strongly_monotone(&s, &lp(&[1, 2, 3, 3])).unwrap());
        let u = src(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        let (a, b) = strong_monotonicity_violation(&u, &lp(&[1, 2, 3, 3]))
            .unwrap()
            .expect("violation");
        // A has K = 2^-i > K(B) = 2^-j but smaller probability.
        let p = lp(&[1, 2, 3, 3]);
        assert!(p.kraft_sum(&a) > p.kraft_sum(&b));
        assert!(u.probability(&a) < u.probability(&b));
        let d = src(&[(1, 2), (1, 4), (1, 8), (1, 8)]);
        assert!(is_strongly_monotone(&d, &lp(&[1, 2, 3, 3])).unwrap());
    }

    #[test]
    fn strongly_monotone_named_witness_is_a_violation() {
        // A = {0} (K = 1/2, P = 1/4), B = {2, 3} (K = 1/4, P = 1/2).
        let u = src(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        let p = lp(&[1, 2, 3, 3]);
        let a = SymbolSet::from([0]);
        let b = SymbolSet::from([2, 3]);
        assert_eq!(p.kraft_sum(&a), q(1, 2));
        assert_eq!(p.kraft_sum(&b), q(1, 4));
        assert!(u.probability(&a) < u.probability(&b));
    }

    #[test]
    fn optimal_profiles_examples() {
        assert_eq!(
            all_optimal_profiles(&src(&[(1, 3), (1, 3), (1, 6), (1, 6)]), 12).unwrap(),
            set(&[&[2, 2, 2, 2], &[1, 2, 3, 3], &[2, 1, 3, 3]])
        );
        assert_eq!(
            all_optimal_profiles(&src(&[(1, 2), (1, 4), (1, 8), (1, 8)]), 12).unwrap(),
            set(&[&[1, 2, 3, 3]])
        );
        assert_eq!(
            all_optimal_profiles(&src(&[(11, 30), (10, 30), (8, 30), (1, 30)]), 12).unwrap(),
            set(&[&[1, 2, 3, 3]])
        );
        let s = src(&[(1, 2), (1, 2)]);
        assert!(matches!(
            all_optimal_profiles(&s, 1),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn next_permutation_walks_distinct_orders() {
        let mut v = vec![1, 2, 2];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![1, 2, 2], vec![2, 1, 2], vec![2, 2, 1]]);
    }

    #[test]
    fn float_expected_length_optimality() {
        let s = Source::new(vec![0.4, 0.3, 0.2, 0.1]).unwrap();
        assert!(is_expected_length_optimal(&s, &lp(&[1, 2, 3, 3])).unwrap());
        assert!(!is_expected_length_optimal(&s, &lp(&[2, 2, 2, 2])).unwrap());
    }
}
