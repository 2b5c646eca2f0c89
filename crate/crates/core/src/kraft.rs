//! Kraft-sum machinery and optimality certificates.
//!
//! Under a fixed profile `K(A)` is the Kraft sum of the codeword lengths of
//! the symbols in `A`. A profile that is expected-length optimal fails to be
//! competitively optimal exactly when some disjoint pair `(U, V)` has
//! `K(U) < K(V)` and `P(U) > P(V)`. Such a pair turns into a dominating code
//! by shortening every codeword in `U` by one bit and lengthening every
//! codeword in `V` by `k` bits.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coding::{all_optimal_profiles, check_sizes, huffman, is_expected_length_optimal};
use crate::coding::{HuffmanTree, NodeKind, OPTIMAL_PROFILES_GUARD};
use crate::error::{Error, Result};
use crate::families::{classify_n4, classify_small, N4Class};
use crate::model::{with_weights, LengthProfile, Rational, Scalar, Source, SymbolSet, Weight};
use crate::oracle::brute_force_is_optimal;

/// Largest alphabet accepted by [`subset_certificate`].
pub const SUBSET_GUARD: usize = 16;

/// Parts `A_1, A_2, ...` of a subset whose Kraft sums are the bits of the
/// subset's binary Kraft expansion: `K(A_i) = b_i 2^-i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KraftPartition {
    /// `parts[i - 1]` is `A_i`; empty where the bit is zero.
    pub parts: Vec<SymbolSet>,
    pub base_set: SymbolSet,
}

impl KraftPartition {
    /// `A_i` for a bit position `i >= 1`.
    pub fn part(&self, i: usize) -> Option<&SymbolSet> {
        i.checked_sub(1).and_then(|k| self.parts.get(k))
    }

    /// The expansion bits `b_1, b_2, ...`.
    pub fn bits(&self) -> Vec<bool> {
        self.parts.iter().map(|p| !p.is_empty()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// Disjoint `u`, `v` with `K(u) < K(v)` and `P(u) > P(v)`.
    SubsetPair { u: SymbolSet, v: SymbolSet },
    /// A profile with positive advantage over the one being tested.
    DominatingProfile { profile: LengthProfile },
    /// Huffman-tree nodes `y`, `y_sib` (siblings) and a leaf symbol `z` under
    /// `y` with `P(z) < P(y) - P(y_sib)`.
    LeafTriple { y: usize, y_sib: usize, z: usize },
}

impl Certificate {
    /// The subset pair a leaf triple stands for: `U = leaves(y) - {z}`,
    /// `V = leaves(y_sib)`. Other kinds are returned unchanged.
    pub fn to_subset_pair<T: Scalar>(&self, tree: &HuffmanTree<T>) -> Certificate {
        match *self {
            Certificate::LeafTriple { y, y_sib, z } => {
                let mut u = tree.leaves_under(y);
                u.remove(z);
                Certificate::SubsetPair {
                    u,
                    v: tree.leaves_under(y_sib),
                }
            }
            ref other => other.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Optimal,
    NotOptimal,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    SubsetExact,
    LeafCondition,
    BruteForce,
    Hexahedron,
    SmallN,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SubsetExact => "subset",
            Method::LeafCondition => "leaf",
            Method::BruteForce => "brute",
            Method::Hexahedron => "hexahedron",
            Method::SmallN => "small-n",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "subset" | "subset_exact" => Method::SubsetExact,
            "leaf" | "leaf_condition" => Method::LeafCondition,
            "brute" | "brute_force" => Method::BruteForce,
            "hexahedron" => Method::Hexahedron,
            "small-n" | "small_n" => Method::SmallN,
            _ => {
                return Err(Error::Parse {
                    what: "method",
                    input: s.to_string(),
                })
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimalityVerdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub method: Method,
}

impl OptimalityVerdict {
    pub fn optimal(method: Method) -> Self {
        OptimalityVerdict {
            status: Status::Optimal,
            certificate: None,
            method,
        }
    }

    pub fn not_optimal(certificate: Certificate, method: Method) -> Self {
        OptimalityVerdict {
            status: Status::NotOptimal,
            certificate: Some(certificate),
            method,
        }
    }

    pub fn unknown(method: Method) -> Self {
        OptimalityVerdict {
            status: Status::Unknown,
            certificate: None,
            method,
        }
    }
}

fn units_of(profile: &LengthProfile) -> Result<(Vec<u128>, u32)> {
    profile
        .kraft_units()
        .ok_or_else(|| Error::PreconditionViolated("codeword lengths above 126 bits".into()))
}

fn check_indices(set: &SymbolSet, n: usize) -> Result<()> {
    match set.iter().find(|&i| i >= n) {
        Some(index) => Err(Error::IndexOutOfRange { index, n }),
        None => Ok(()),
    }
}

fn partition_units(units: &[u128], bits: u32, base: &SymbolSet) -> KraftPartition {
    let mut parts: Vec<SymbolSet> = Vec::new();
    let mut rest: Vec<usize> = base.iter().collect();
    let mut total: u128 = rest.iter().map(|&i| units[i]).sum();
    while total > 0 {
        // Lowest set bit of K(rest) is 2^-e.
        let target = 1u128 << total.trailing_zeros();
        let e = (bits - total.trailing_zeros()) as usize;
        // Smallest weights first (longer codewords, then lower index). The
        // running sum at each change of weight is a multiple of the next
        // weight, so it lands on the target exactly.
        let mut candidates: Vec<usize> = rest
            .iter()
            .copied()
            .filter(|&i| units[i] <= target)
            .collect();
        candidates.sort_by(|&a, &b| units[a].cmp(&units[b]).then(a.cmp(&b)));
        let mut part = SymbolSet::new();
        let mut acc = 0u128;
        for i in candidates {
            if acc >= target {
                break;
            }
            acc += units[i];
            part.insert(i);
        }
        debug_assert_eq!(acc, target);
        rest.retain(|&i| !part.contains(i));
        total -= target;
        if parts.len() < e {
            parts.resize(e, SymbolSet::new());
        }
        parts[e - 1] = part;
    }
    KraftPartition {
        parts,
        base_set: base.clone(),
    }
}

/// Splits `a` into parts realizing the binary expansion of `K(a)`.
///
/// Repeatedly takes the lowest set bit `2^-k` of the remaining Kraft sum,
/// collects symbols of Kraft weight at most `2^-k` in ascending weight order
/// until they add up to exactly `2^-k`, and removes them.
pub fn huffman_kraft_partition(profile: &LengthProfile, a: &SymbolSet) -> Result<KraftPartition> {
    let n = profile.len();
    check_indices(a, n)?;
    if a.is_empty() || a.len() == n {
        return Err(Error::BadSubset);
    }
    if !profile.is_complete() {
        return Err(Error::NotComplete);
    }
    let (units, bits) = units_of(profile)?;
    Ok(partition_units(&units, bits, a))
}

/// A subset `B` of `universe - a` with `K(a ∪ B) = 2^-j`.
///
/// Requires `K(universe) 2^j` to be an integer and `0 < K(a) < 2^-j`. Then
/// the parts of `universe - a` beyond bit `j` sum to `2^-j - K(a)`.
pub fn kraft_completion(
    profile: &LengthProfile,
    universe: &SymbolSet,
    a: &SymbolSet,
    j: u32,
) -> Result<SymbolSet> {
    let n = profile.len();
    check_indices(universe, n)?;
    if !a.is_subset(universe) {
        return Err(Error::PreconditionViolated(
            "a is not contained in the universe".into(),
        ));
    }
    let (units, bits) = units_of(profile)?;
    let k_universe: u128 = universe.iter().map(|i| units[i]).sum();
    let k_a: u128 = a.iter().map(|i| units[i]).sum();
    let grain = if j >= bits { 1 } else { 1u128 << (bits - j) };
    if j > bits {
        // 2^-j is finer than any codeword, so K(a) < 2^-j is impossible
        // for nonempty a.
        return Err(Error::PreconditionViolated(format!(
            "K(a) must lie strictly between 0 and 2^-{j}"
        )));
    }
    if !k_universe.is_multiple_of(grain) {
        return Err(Error::PreconditionViolated(format!(
            "K(universe) is not a multiple of 2^-{j}"
        )));
    }
    if k_a == 0 || k_a >= grain {
        return Err(Error::PreconditionViolated(format!(
            "K(a) must lie strictly between 0 and 2^-{j}"
        )));
    }
    let partition = partition_units(&units, bits, &universe.difference(a));
    let mut b = SymbolSet::new();
    for part in partition.parts.iter().skip(j as usize) {
        b = b.union(part);
    }
    Ok(b)
}

/// The code that wins exactly on `u` and loses exactly on `v` against
/// `profile`: lengths drop by one on `u` and grow by `k` on `v`, with `k` the
/// smallest integer `>= 1` such that `K(u) <= (1 - 2^-k) K(v)`.
pub fn construct_dominating_profile(
    profile: &LengthProfile,
    u: &SymbolSet,
    v: &SymbolSet,
) -> Result<LengthProfile> {
    let n = profile.len();
    check_indices(u, n)?;
    check_indices(v, n)?;
    if !u.is_disjoint(v) {
        return Err(Error::BadSubset);
    }
    let ku = profile.kraft_sum(u);
    let kv = profile.kraft_sum(v);
    if ku >= kv {
        return Err(Error::KraftOrderViolated {
            ku: ku.to_string(),
            kv: kv.to_string(),
        });
    }
    let mut k = 1u32;
    while ku > (Rational::one() - Rational::pow2_neg(k)) * kv.clone() {
        k += 1;
    }
    let lengths = profile
        .lengths()
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if u.contains(i) {
                l - 1
            } else if v.contains(i) {
                l + k
            } else {
                l
            }
        })
        .collect();
    LengthProfile::new(lengths)
}

/// Maximizes `P(U) - P(V)` over disjoint pairs with `K(U) < K(V)`.
///
/// Dynamic program over symbols whose state is `K(U) - K(V)` in units of
/// `2^-bits`; each symbol goes to `U`, to `V` or to neither.
fn best_pair<W: Weight>(probs: &[W], units: &[u128], bits: u32) -> Option<(W, u64, u64)> {
    let n = probs.len();
    let offset = 1usize << bits;
    let width = 2 * offset + 1;
    let mut value: Vec<Option<W>> = vec![None; width];
    value[offset] = Some(W::zero());
    // choice[i][state]: 0 neither, 1 into U, 2 into V.
    let mut choice: Vec<Vec<u8>> = Vec::with_capacity(n);
    for i in 0..n {
        let w = units[i] as usize;
        let mut next: Vec<Option<W>> = vec![None; width];
        let mut picks = vec![0u8; width];
        for (state, cur) in value.iter().enumerate() {
            let Some(cur) = cur else { continue };
            let candidates = [
                (state, cur.clone(), 0u8),
                (state + w, cur.clone() + probs[i].clone(), 1),
                (state.wrapping_sub(w), cur.clone() - probs[i].clone(), 2),
            ];
            for (to, val, tag) in candidates {
                if to >= width {
                    continue;
                }
                let better = match &next[to] {
                    None => true,
                    Some(old) => match val.total_cmp(old) {
                        Ordering::Greater => true,
                        Ordering::Equal => tag < picks[to],
                        Ordering::Less => false,
                    },
                };
                if better {
                    next[to] = Some(val);
                    picks[to] = tag;
                }
            }
        }
        value = next;
        choice.push(picks);
    }
    let (mut state, best) = (0..offset)
        .filter_map(|s| value[s].clone().map(|v| (s, v)))
        .reduce(|a, b| {
            if b.1.total_cmp(&a.1) == Ordering::Greater {
                b
            } else {
                a
            }
        })?;
    let (mut um, mut vm) = (0u64, 0u64);
    for i in (0..n).rev() {
        let w = units[i] as usize;
        match choice[i][state] {
            1 => {
                um |= 1 << i;
                state -= w;
            }
            2 => {
                vm |= 1 << i;
                state += w;
            }
            _ => {}
        }
    }
    Some((best, um, vm))
}

/// Exact decision for an expected-length-optimal profile: `NotOptimal` with
/// a subset pair when one exists, `Optimal` otherwise.
///
/// The pair returned is one of largest `P(U) - P(V)`; that value is also the
/// largest advantage any prefix code has over `profile`.
pub fn subset_certificate<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
) -> Result<OptimalityVerdict> {
    check_sizes(source, profile)?;
    let n = source.len();
    if n > SUBSET_GUARD {
        return Err(Error::TooLarge {
            n,
            limit: SUBSET_GUARD,
        });
    }
    if !is_expected_length_optimal(source, profile)? {
        return Err(Error::NotOptimalProfile);
    }
    let (units, bits) = units_of(profile)?;
    let weights = source.weights();
    let found = with_weights!(&weights, |w, eps| {
        best_pair(w, &units, bits).map(|(v, um, vm)| (v.sign(eps), um, vm))
    });
    Ok(match found {
        Some((Some(Ordering::Greater), um, vm)) => OptimalityVerdict::not_optimal(
            Certificate::SubsetPair {
                u: SymbolSet::from_mask(um),
                v: SymbolSet::from_mask(vm),
            },
            Method::SubsetExact,
        ),
        Some((None, um, _)) if um != 0 => OptimalityVerdict::unknown(Method::SubsetExact),
        _ => OptimalityVerdict::optimal(Method::SubsetExact),
    })
}

/// The sufficient condition on a Huffman tree: some sibling pair `(y, y')`
/// and leaf `z` under `y` with `P(z) < P(y) - P(y')`. Never reports
/// `Optimal`.
pub fn leaf_condition<T: Scalar>(source: &Source<T>, tree: &HuffmanTree<T>) -> OptimalityVerdict {
    let eps = source.epsilon();
    let root = tree.root();
    for (y, node) in tree.nodes().iter().enumerate() {
        if y == root || matches!(node.kind, NodeKind::Leaf { .. }) {
            continue;
        }
        let Some(y_sib) = tree.sibling(y) else {
            continue;
        };
        let slack =
            node.probability.clone() - tree.node(y_sib).probability.clone() - node.min_leaf.clone();
        if slack.sign(eps) == Some(Ordering::Greater) {
            let z = tree
                .leaves_under(y)
                .iter()
                .min_by(|&a, &b| source.p(a).total_cmp(source.p(b)).then(a.cmp(&b)))
                .expect("internal nodes have leaves");
            return OptimalityVerdict::not_optimal(
                Certificate::LeafTriple { y, y_sib, z },
                Method::LeafCondition,
            );
        }
    }
    OptimalityVerdict::unknown(Method::LeafCondition)
}

/// Index order by non-increasing probability, ties by index.
fn sorted_order<T: Scalar>(source: &Source<T>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..source.len()).collect();
    order.sort_by(|&a, &b| source.p(b).total_cmp(source.p(a)).then(a.cmp(&b)));
    order
}

fn hexahedron<T: Scalar>(source: &Source<T>, profile: &LengthProfile) -> Result<OptimalityVerdict> {
    if source.len() != 4 {
        return Err(Error::WrongSize {
            expected: "4".into(),
            found: source.len(),
        });
    }
    if !is_expected_length_optimal(source, profile)? {
        return Err(Error::NotOptimalProfile);
    }
    let order = sorted_order(source);
    let sorted = Source::with_epsilon(
        order.iter().map(|&i| source.p(i).clone()).collect(),
        source.epsilon(),
    )?;
    Ok(match classify_n4(&sorted)? {
        N4Class::Optimal => OptimalityVerdict::optimal(Method::Hexahedron),
        N4Class::Boundary => OptimalityVerdict::unknown(Method::Hexahedron),
        N4Class::NotOptimal => {
            // Inside the hexahedron the optimal lengths are 1, 2, 3, 3. The
            // challenger wins on the length-2 symbol and the likelier
            // length-3 symbol and loses on the length-1 symbol.
            let by_len = |l: u32| {
                order
                    .iter()
                    .copied()
                    .filter(move |&i| profile.lengths()[i] == l)
            };
            let one: Vec<usize> = by_len(1).collect();
            let two: Vec<usize> = by_len(2).collect();
            let three: Vec<usize> = by_len(3).collect();
            if one.len() != 1 || two.len() != 1 || three.len() != 2 {
                return Err(Error::NotOptimalProfile);
            }
            let u = SymbolSet::from([two[0], three[0]]);
            let v = SymbolSet::from([one[0]]);
            let challenger = construct_dominating_profile(profile, &u, &v)?;
            OptimalityVerdict::not_optimal(
                Certificate::DominatingProfile {
                    profile: challenger,
                },
                Method::Hexahedron,
            )
        }
    })
}

/// Decides competitive optimality of `profile` with the chosen method.
pub fn is_competitively_optimal<T: Scalar>(
    source: &Source<T>,
    profile: &LengthProfile,
    method: Method,
) -> Result<OptimalityVerdict> {
    check_sizes(source, profile)?;
    match method {
        Method::SubsetExact => subset_certificate(source, profile),
        Method::LeafCondition => {
            let tree = huffman(source);
            if tree.profile() != *profile {
                return Err(Error::NotHuffmanProfile);
            }
            Ok(leaf_condition(source, &tree))
        }
        Method::BruteForce => brute_force_is_optimal(source, profile),
        Method::Hexahedron => hexahedron(source, profile),
        Method::SmallN => {
            let verdict = classify_small(source)?;
            if !is_expected_length_optimal(source, profile)? {
                return Err(Error::NotOptimalProfile);
            }
            Ok(verdict)
        }
    }
}

/// Whether any prefix code for `source` is competitively optimal. Only the
/// expected-length-optimal profiles need testing; the first one that passes
/// the subset test is returned as a witness.
pub fn exists_competitively_optimal_code<T: Scalar>(
    source: &Source<T>,
) -> Result<(bool, Option<LengthProfile>)> {
    for profile in all_optimal_profiles(source, OPTIMAL_PROFILES_GUARD)? {
        if subset_certificate(source, &profile)?.status == Status::Optimal {
            return Ok((true, Some(profile)));
        }
    }
    Ok((false, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::competition::compete;
    use crate::model::q;

    fn src(v: &[(i64, i64)]) -> Source {
        Source::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    fn lp(v: &[u32]) -> LengthProfile {
        LengthProfile::new(v.to_vec()).unwrap()
    }

    fn set<const N: usize>(v: [usize; N]) -> SymbolSet {
        SymbolSet::from(v)
    }

    #[test]
    fn partition_examples() {
        let p = lp(&[1, 2, 3, 3]);
        let part = huffman_kraft_partition(&p, &set([0])).unwrap();
        assert_eq!(part.parts, vec![set([0])]);
        let part = huffman_kraft_partition(&p, &set([1, 2])).unwrap();
        assert_eq!(part.part(1), Some(&SymbolSet::new()));
        assert_eq!(part.part(2), Some(&set([1])));
        assert_eq!(part.part(3), Some(&set([2])));
        assert_eq!(part.bits(), vec![false, true, true]);

        let b = lp(&[2, 2, 2, 2]);
        let part = huffman_kraft_partition(&b, &set([0, 1, 2])).unwrap();
        assert_eq!(part.parts.len(), 2);
        assert_eq!(part.parts[0].len(), 2);
        assert_eq!(part.parts[1].len(), 1);
        assert_eq!(b.kraft_sum(&part.parts[0]), q(1, 2));
        assert_eq!(b.kraft_sum(&part.parts[1]), q(1, 4));
    }

    #[test]
    fn partition_rejects_bad_input() {
        let p = lp(&[1, 2, 3, 3]);
        assert!(matches!(
            huffman_kraft_partition(&p, &SymbolSet::new()),
            Err(Error::BadSubset)
        ));
        assert!(matches!(
            huffman_kraft_partition(&p, &SymbolSet::full(4)),
            Err(Error::BadSubset)
        ));
        assert!(matches!(
            huffman_kraft_partition(&lp(&[2, 2, 3, 3]), &set([0])),
            Err(Error::NotComplete)
        ));
    }

    #[test]
    fn partition_of_mixed_lengths() {
        let p = lp(&[2, 3, 3, 3, 3, 2]);
        let a = set([0, 1, 2, 3]);
        let part = huffman_kraft_partition(&p, &a).unwrap();
        assert_eq!(p.kraft_sum(&a), q(5, 8));
        assert_eq!(part.part(1), Some(&set([0, 2, 3])));
        assert_eq!(part.part(2), Some(&SymbolSet::new()));
        assert_eq!(part.part(3), Some(&set([1])));
    }

    #[test]
    fn completion_examples() {
        let b = lp(&[2, 2, 2, 2]);
        let full = SymbolSet::full(4);
        let got = kraft_completion(&b, &full, &set([0]), 1).unwrap();
        assert_eq!(got.len(), 1);
        assert!(!got.contains(0));
        let p = lp(&[1, 2, 3, 3]);
        assert_eq!(kraft_completion(&p, &full, &set([2]), 2).unwrap(), set([3]));
        assert!(matches!(
            kraft_completion(&p, &full, &set([2, 3]), 2),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            kraft_completion(&p, &set([1]), &set([2]), 2),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn dominating_profile_examples() {
        let p = lp(&[1, 2, 3, 3]);
        let c = construct_dominating_profile(&p, &set([1, 2]), &set([0])).unwrap();
        assert_eq!(c, lp(&[3, 1, 2, 3]));
        assert!(c.is_complete());
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        let r = compete(&s, &c, &p).unwrap();
        assert_eq!(r.wins, set([1, 2]));
        assert_eq!(r.losses, set([0]));
        assert_eq!(r.advantage, q(1, 6));
        assert!(matches!(
            construct_dominating_profile(&p, &set([0]), &set([1])),
            Err(Error::KraftOrderViolated { .. })
        ));
        assert!(matches!(
            construct_dominating_profile(&p, &set([1, 2]), &set([2])),
            Err(Error::BadSubset)
        ));
    }

    #[test]
    fn subset_certificate_examples() {
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        let v = subset_certificate(&s, &lp(&[1, 2, 3, 3])).unwrap();
        assert_eq!(v.status, Status::NotOptimal);
        let Some(Certificate::SubsetPair { u, v: vv }) = v.certificate else {
            panic!("expected a subset pair")
        };
        let p = lp(&[1, 2, 3, 3]);
        assert!(p.kraft_sum(&u) < p.kraft_sum(&vv));
        assert!(s.probability(&u) > s.probability(&vv));
        assert_eq!(s.probability(&u) - s.probability(&vv), q(1, 6));

        assert_eq!(
            subset_certificate(&s, &lp(&[2, 2, 2, 2])).unwrap().status,
            Status::Optimal
        );
        let d = src(&[(1, 2), (1, 4), (1, 8), (1, 8)]);
        assert_eq!(
            subset_certificate(&d, &lp(&[1, 2, 3, 3])).unwrap().status,
            Status::Optimal
        );
        assert!(matches!(
            subset_certificate(&d, &lp(&[2, 2, 2, 2])),
            Err(Error::NotOptimalProfile)
        ));
    }

    #[test]
    fn subset_certificate_named_pair_is_valid() {
        // U = {1, 2}, V = {0}: K(U) = 3/8 < 1/2, P(U) = 1/2 > 1/3.
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        let p = lp(&[1, 2, 3, 3]);
        assert_eq!(p.kraft_sum(&set([1, 2])), q(3, 8));
        assert_eq!(s.probability(&set([1, 2])), q(1, 2));
    }

    #[test]
    fn leaf_condition_examples() {
        let s = src(&[(2, 5), (3, 10), (1, 5), (1, 10)]);
        let tree = huffman(&s);
        let v = leaf_condition(&s, &tree);
        assert_eq!(v.status, Status::NotOptimal);
        assert_eq!(
            v.certificate,
            Some(Certificate::LeafTriple {
                y: 5,
                y_sib: 0,
                z: 3
            })
        );
        let pair = v.certificate.unwrap().to_subset_pair(&tree);
        assert_eq!(
            pair,
            Certificate::SubsetPair {
                u: set([1, 2]),
                v: set([0])
            }
        );

        let u = src(&[(1, 4), (1, 4), (1, 4), (1, 4)]);
        assert_eq!(leaf_condition(&u, &huffman(&u)).status, Status::Unknown);
        let t = src(&[(7, 10), (1, 10), (1, 10), (1, 10)]);
        assert_eq!(leaf_condition(&t, &huffman(&t)).status, Status::Unknown);
    }

    #[test]
    fn dispatcher_examples() {
        let s = src(&[(1, 3), (1, 3), (1, 6), (1, 6)]);
        assert_eq!(
            is_competitively_optimal(&s, &lp(&[2, 2, 2, 2]), Method::SubsetExact)
                .unwrap()
                .status,
            Status::Optimal
        );
        let f = src(&[(11, 30), (10, 30), (8, 30), (1, 30)]);
        let h = huffman(&f).profile();
        for m in [
            Method::SubsetExact,
            Method::BruteForce,
            Method::Hexahedron,
            Method::LeafCondition,
        ] {
            let v = is_competitively_optimal(&f, &h, m).unwrap();
            assert_eq!(v.status, Status::NotOptimal, "{m}");
            assert_eq!(v.method, m);
        }
        let three = src(&[(1, 2), (1, 3), (1, 6)]);
        let v =
            is_competitively_optimal(&three, &huffman(&three).profile(), Method::SmallN).unwrap();
        assert_eq!(v.status, Status::Optimal);
        assert!(matches!(
            is_competitively_optimal(&f, &lp(&[2, 2, 2, 2]), Method::LeafCondition),
            Err(Error::NotHuffmanProfile)
        ));
        assert!(matches!(
            is_competitively_optimal(&three, &lp(&[1, 2, 2]), Method::Hexahedron),
            Err(Error::WrongSize { .. })
        ));
    }

    #[test]
    fn hexahedron_certificate_handles_permuted_sources() {
        let s = src(&[(1, 10), (1, 5), (3, 10), (2, 5)]);
        let p = huffman(&s).profile();
        let v = is_competitively_optimal(&s, &p, Method::Hexahedron).unwrap();
        let Some(Certificate::DominatingProfile { profile }) = v.certificate else {
            panic!("expected a dominating profile")
        };
        assert_eq!(compete(&s, &profile, &p).unwrap().advantage, q(1, 10));
    }

    #[test]
    fn existence_examples() {
        assert_eq!(
            exists_competitively_optimal_code(&src(&[(1, 3), (1, 3), (1, 6), (1, 6)])).unwrap(),
            (true, Some(lp(&[2, 2, 2, 2])))
        );
        assert_eq!(
            exists_competitively_optimal_code(&src(&[(11, 30), (10, 30), (8, 30), (1, 30)]))
                .unwrap(),
            (false, None)
        );
        assert_eq!(
            exists_competitively_optimal_code(&src(&[(1, 2), (1, 4), (1, 8), (1, 8)])).unwrap(),
            (true, Some(lp(&[1, 2, 3, 3])))
        );
    }

    #[test]
    fn verdict_json() {
        let v = OptimalityVerdict::not_optimal(
            Certificate::SubsetPair {
                u: set([1, 2]),
                v: set([0]),
            },
            Method::SubsetExact,
        );
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(
            j,
            serde_json::json!({
                "status": "not_optimal",
                "certificate": {"kind": "subset_pair", "u": [1, 2], "v": [0]},
                "method": "subset_exact"
            })
        );
        let o = serde_json::to_value(OptimalityVerdict::optimal(Method::SmallN)).unwrap();
        assert_eq!(
            o,
            serde_json::json!({"status": "optimal", "method": "small_n"})
        );
    }
}
