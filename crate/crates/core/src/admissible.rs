//! Admissible sequences, 1-admissibility, and the diagonal bijection with
//! partitions.
//!
//! An admissible sequence is a run of positive integers `s_{-j}, ..., s_k`
//! indexed around `0`. It is 1-admissible when every step away from index 0
//! (including the step off the end, onto the implicit zero) drops by 0 or 1.
//! Reading the diagonal lengths of a Young diagram gives a bijection between
//! partitions of `a` and 1-admissible sequences of weight `a`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AdmissibleError {
    #[error("admissible sequence must have at least one entry")]
    EmptySequence,
    #[error("entry at index {index} is {value}; every entry must be a positive integer")]
    NonPositiveEntry { index: i64, value: u64 },
    #[error("left offset {left} leaves index 0 outside a sequence of length {len}")]
    OffsetOutOfRange { left: usize, len: usize },
    #[error("partition parts must be positive and non-increasing: {0:?}")]
    InvalidPartition(Vec<u64>),
    #[error("the empty partition has no diagonal sequence")]
    EmptyPartition,
    #[error("sequence {0} is not 1-admissible")]
    NotOneAdmissible(AdmissibleSeq),
    #[error("fixed fiber count needs r >= 1")]
    FiberIndexTooSmall,
}

/// Values `s_{-left}, ..., s_0, ..., s_{len-1-left}`.
///
/// The offset is part of the identity: `(1,1)` at `-1..=0` and at `0..=1` are
/// different sequences.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSeq")]
pub struct AdmissibleSeq {
    left: usize,
    values: Vec<u64>,
}

#[derive(Deserialize)]
struct RawSeq {
    left: usize,
    values: Vec<u64>,
}

impl TryFrom<RawSeq> for AdmissibleSeq {
    type Error = AdmissibleError;

    fn try_from(raw: RawSeq) -> Result<Self, Self::Error> {
        AdmissibleSeq::new(raw.left, raw.values)
    }
}

impl AdmissibleSeq {
    pub fn new(left: usize, values: Vec<u64>) -> Result<Self, AdmissibleError> {
        if values.is_empty() {
            return Err(AdmissibleError::EmptySequence);
        }
        if left >= values.len() {
            return Err(AdmissibleError::OffsetOutOfRange {
                left,
                len: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|&v| v == 0) {
            return Err(AdmissibleError::NonPositiveEntry {
                index: pos as i64 - left as i64,
                value: 0,
            });
        }
        Ok(AdmissibleSeq { left, values })
    }

    /// `j` in the index range `-j..=k`.
    pub fn left(&self) -> usize {
        self.left
    }

    /// `k` in the index range `-j..=k`.
    pub fn right(&self) -> usize {
        self.values.len() - 1 - self.left
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn first_index(&self) -> i64 {
        -(self.left as i64)
    }

    pub fn last_index(&self) -> i64 {
        self.right() as i64
    }

    /// `s_n`, zero outside the support.
    pub fn get(&self, n: i64) -> u64 {
        let pos = n + self.left as i64;
        if pos < 0 {
            return 0;
        }
        self.values.get(pos as usize).copied().unwrap_or(0)
    }

    /// `|s|`, the sum of all entries.
    pub fn weight(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn is_one_admissible(&self) -> bool {
        let steps_ok = |from: u64, to: u64| to == from || to + 1 == from;
        (0..=self.last_index()).all(|n| steps_ok(self.get(n), self.get(n + 1)))
            && (0..=self.left as i64).all(|n| steps_ok(self.get(-n), self.get(-n - 1)))
    }

    /// Contribution of the stratum labelled by `self`: 1 exactly when 1-admissible.
    pub fn virtual_count(&self) -> u8 {
        u8::from(self.is_one_admissible())
    }

    /// Inverse of [`Partition::to_sequence`].
    pub fn to_partition(&self) -> Result<Partition, AdmissibleError> {
        if !self.is_one_admissible() {
            return Err(AdmissibleError::NotOneAdmissible(self.clone()));
        }
        // Diagonal n holds the cells (i, i + n) for i from max(0, -n).
        let rows = (self.first_index()..=self.last_index())
            .map(|n| (-n).max(0) + self.get(n) as i64)
            .max()
            .unwrap_or(0);
        let mut row_lengths = vec![0u64; rows as usize];
        for n in self.first_index()..=self.last_index() {
            let start = (-n).max(0);
            for i in start..start + self.get(n) as i64 {
                row_lengths[i as usize] += 1;
            }
        }
        row_lengths.retain(|&l| l > 0);
        Partition::new(row_lengths)
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.left
            .cmp(&other.left)
            .then_with(|| self.values.cmp(&other.values))
    }
}

impl fmt::Debug for AdmissibleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AdmissibleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}@{}..{}",
            self.values,
            self.first_index(),
            self.last_index()
        )
    }
}

/// `weight(s)` as a free function.
pub fn weight(s: &AdmissibleSeq) -> u64 {
    s.weight()
}

pub fn is_one_admissible(s: &AdmissibleSeq) -> bool {
    s.is_one_admissible()
}

pub fn virtual_count(s: &AdmissibleSeq) -> u8 {
    s.virtual_count()
}

/// All 1-admissible sequences of weight `a`, sorted by offset then values.
///
/// A 1-admissible sequence is a peak value `h = s_0` with two tails that each
/// step down by 0 or 1 and end at 1. Each tail is a non-increasing run of
/// values in `1..=h` hitting every value below its start.
pub fn enumerate_one_admissible(a: u64) -> Vec<AdmissibleSeq> {
    let mut out = Vec::new();
    if a == 0 {
        return out;
    }
    for peak in 1..=a {
        // Tails as sequences read outward from index 0 (exclusive).
        let mut right_tails: Vec<Vec<u64>> = Vec::new();
        tails(peak, a - peak, &mut Vec::new(), &mut right_tails);
        for right in &right_tails {
            let right_weight: u64 = right.iter().sum();
            let mut left_tails = Vec::new();
            let remaining = a - peak - right_weight;
            tails(peak, remaining, &mut Vec::new(), &mut left_tails);
            for left in left_tails {
                if left.iter().sum::<u64>() != remaining {
                    continue;
                }
                let mut values: Vec<u64> = left.iter().rev().copied().collect();
                let offset = values.len();
                values.push(peak);
                values.extend_from_slice(right);
                out.push(AdmissibleSeq {
                    left: offset,
                    values,
                });
            }
        }
    }
    out.sort_by(AdmissibleSeq::canonical_cmp);
    out
}

/// Collect every valid outward tail starting after a value `prev`, with total
/// weight at most `budget`. A tail is valid when its last value (or `prev`,
/// for the empty tail) is 1.
fn tails(prev: u64, budget: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prev == 1 {
        out.push(cur.clone());
    }
    for next in [prev, prev - 1] {
        if next == 0 || next > budget {
            continue;
        }
        cur.push(next);
        tails(next, budget - next, cur, out);
        cur.pop();
    }
}

/// Non-increasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct Partition {
    parts: Vec<u64>,
}

impl TryFrom<Vec<u64>> for Partition {
    type Error = AdmissibleError;

    fn try_from(parts: Vec<u64>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u64> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<u64>) -> Result<Self, AdmissibleError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(AdmissibleError::InvalidPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Diagonal lengths of the Young diagram: `s_n = #{(i, j) : j - i = n}`.
    pub fn to_sequence(&self) -> Result<AdmissibleSeq, AdmissibleError> {
        if self.parts.is_empty() {
            return Err(AdmissibleError::EmptyPartition);
        }
        let rows = self.parts.len();
        let cols = self.parts[0] as usize;
        // Contents run from -(rows-1) to cols-1.
        let mut values = vec![0u64; rows + cols - 1];
        for (i, &len) in self.parts.iter().enumerate() {
            for j in 0..len as usize {
                values[j + rows - 1 - i] += 1;
            }
        }
        AdmissibleSeq::new(rows - 1, values)
    }

    /// Every partition of `n`, parts in non-increasing order, listed in
    /// reverse lexicographic order.
    pub fn enumerate(n: u64) -> Vec<Partition> {
        fn go(rem: u64, max_part: u64, cur: &mut Vec<u64>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=max_part.min(rem)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

pub fn partition_to_sequence(p: &Partition) -> Result<AdmissibleSeq, AdmissibleError> {
    p.to_sequence()
}

pub fn sequence_to_partition(s: &AdmissibleSeq) -> Result<Partition, AdmissibleError> {
    s.to_partition()
}

/// `p(0)..=p(max_n)` by the standard parts-bounded recurrence. Independent of
/// the eta-product code in [`crate::qseries`].
pub fn partition_counts(max_n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); max_n + 1];
    p[0] = BigInt::one();
    for part in 1..=max_n {
        for n in part..=max_n {
            let (lo, hi) = p.split_at_mut(n);
            hi[0] += &lo[n - part];
        }
    }
    p
}

/// Number of fibers in the fixed-fiber decomposition.
pub const NODAL_FIBERS: usize = 48;

/// `sum_{a_1 + ... + a_48 = r - 1} prod p(a_i)`, by 48 successive
/// convolutions of the partition counts.
pub fn fixed_fiber_count(r: usize) -> Result<BigInt, AdmissibleError> {
    if r == 0 {
        return Err(AdmissibleError::FiberIndexTooSmall);
    }
    let p = partition_counts(r - 1);
    let mut acc = vec![BigInt::zero(); r];
    acc[0] = BigInt::one();
    for _ in 0..NODAL_FIBERS {
        let mut next = vec![BigInt::zero(); r];
        for (i, ai) in acc.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, pj) in p.iter().enumerate().take(r - i) {
                next[i + j] += ai * pj;
            }
        }
        acc = next;
    }
    Ok(acc.pop().expect("r >= 1"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn seq(left: usize, values: &[u64]) -> AdmissibleSeq {
        AdmissibleSeq::new(left, values.to_vec()).unwrap()
    }

    fn part(parts: &[u64]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    /// Every positive-integer sequence of weight `a` at every offset,
    /// filtered by the 1-admissibility predicate.
    fn brute_one_admissible(a: u64) -> BTreeSet<(usize, Vec<u64>)> {
        fn compositions(rem: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            for v in 1..=rem {
                cur.push(v);
                compositions(rem - v, cur, out);
                cur.pop();
            }
        }
        let mut comps = Vec::new();
        compositions(a, &mut Vec::new(), &mut comps);
        let mut found = BTreeSet::new();
        for c in comps {
            for left in 0..c.len() {
                let s = seq(left, &c);
                if s.is_one_admissible() {
                    found.insert((left, c.clone()));
                }
            }
        }
        found
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(
            AdmissibleSeq::new(0, vec![]),
            Err(AdmissibleError::EmptySequence)
        );
        assert!(matches!(
            AdmissibleSeq::new(2, vec![1, 1]),
            Err(AdmissibleError::OffsetOutOfRange { .. })
        ));
        assert_eq!(
            AdmissibleSeq::new(1, vec![1, 0, 1]),
            Err(AdmissibleError::NonPositiveEntry { index: 0, value: 0 })
        );
    }

    #[test]
    fn weight_examples() {
        assert_eq!(seq(0, &[1]).weight(), 1);
        assert_eq!(weight(&seq(1, &[1, 2, 1])), 4);
    }

    #[test]
    fn one_admissible_examples() {
        assert!(seq(1, &[1, 2, 1]).is_one_admissible());
        assert!(!seq(0, &[2]).is_one_admissible());
        assert!(seq(0, &[1, 1]).is_one_admissible());
        assert!(!seq(1, &[1, 3, 1]).is_one_admissible());
        // increasing away from 0
        assert!(!seq(0, &[1, 2, 1]).is_one_admissible());
    }

    #[test]
    fn virtual_count_examples() {
        assert_eq!(virtual_count(&seq(1, &[1, 2, 1])), 1);
        assert_eq!(virtual_count(&seq(0, &[2])), 0);
        assert_eq!(virtual_count(&seq(1, &[1, 3, 1])), 0);
    }

    #[test]
    fn enumerate_small_weights() {
        assert_eq!(enumerate_one_admissible(1), vec![seq(0, &[1])]);
        assert_eq!(
            enumerate_one_admissible(2),
            vec![seq(0, &[1, 1]), seq(1, &[1, 1])]
        );
        let four = enumerate_one_admissible(4);
        assert_eq!(four.len(), 5);
        assert!(four.contains(&seq(1, &[1, 2, 1])));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for a in 1..=11 {
            let got: BTreeSet<_> = enumerate_one_admissible(a)
                .into_iter()
                .map(|s| (s.left(), s.values().to_vec()))
                .collect();
            assert_eq!(got, brute_one_admissible(a), "a = {a}");
        }
    }

    #[test]
    fn enumeration_counts_equal_partition_counts() {
        let p = partition_counts(25);
        for a in 1..=25u64 {
            let list = enumerate_one_admissible(a);
            assert_eq!(BigInt::from(list.len()), p[a as usize], "a = {a}");
            let total: u64 = list.iter().map(|s| u64::from(s.virtual_count())).sum();
            assert_eq!(BigInt::from(total), p[a as usize]);
            assert!(list.iter().all(|s| s.weight() == a));
        }
    }

    #[test]
    fn enumeration_is_canonically_sorted_without_duplicates() {
        let list = enumerate_one_admissible(9);
        for w in list.windows(2) {
            assert_eq!(w[0].canonical_cmp(&w[1]), Ordering::Less);
        }
    }

    #[test]
    fn partition_diagonals() {
        assert_eq!(part(&[1]).to_sequence().unwrap(), seq(0, &[1]));
        assert_eq!(part(&[2, 1, 1]).to_sequence().unwrap(), seq(2, &[1, 1, 1, 1]));
        assert_eq!(part(&[2, 2]).to_sequence().unwrap(), seq(1, &[1, 2, 1]));
        assert_eq!(
            Partition::new(vec![]).unwrap().to_sequence(),
            Err(AdmissibleError::EmptyPartition)
        );
    }

    #[test]
    fn sequence_back_to_partition() {
        assert_eq!(seq(0, &[1]).to_partition().unwrap(), part(&[1]));
        assert_eq!(seq(1, &[1, 2, 1]).to_partition().unwrap(), part(&[2, 2]));
        assert!(matches!(
            seq(0, &[2]).to_partition(),
            Err(AdmissibleError::NotOneAdmissible(_))
        ));
    }

    #[test]
    fn bijection_up_to_fifteen() {
        for a in 1..=15 {
            let image: BTreeSet<_> = Partition::enumerate(a)
                .iter()
                .map(|p| {
                    let s = p.to_sequence().unwrap();
                    assert_eq!(&s.to_partition().unwrap(), p);
                    (s.left(), s.values().to_vec())
                })
                .collect();
            let listed: Vec<_> = enumerate_one_admissible(a);
            assert_eq!(image.len(), listed.len());
            for s in listed {
                assert_eq!(s.to_partition().unwrap().to_sequence().unwrap(), s);
                assert!(image.contains(&(s.left(), s.values().to_vec())));
            }
        }
    }

    #[test]
    fn shape_of_one_admissible_sequences() {
        for a in 1..=14 {
            for s in enumerate_one_admissible(a) {
                let v = s.values();
                assert_eq!(v[0], 1);
                assert_eq!(*v.last().unwrap(), 1);
                assert!(v.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1));
                let peak = *v.iter().max().unwrap();
                assert_eq!(s.get(0), peak);
                let at_peak: Vec<usize> = (0..v.len()).filter(|&i| v[i] == peak).collect();
                assert_eq!(at_peak.last().unwrap() - at_peak[0] + 1, at_peak.len());
                assert!(s.values().len() as u64 <= 2 * a + 1);
            }
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(part(&[3, 1]).weight(), 4);
        assert_eq!(Partition::enumerate(0), vec![Partition::new(vec![]).unwrap()]);
        assert_eq!(Partition::enumerate(5).len(), 7);
    }

    #[test]
    fn partition_counts_small() {
        let p: Vec<u64> = partition_counts(10)
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn fixed_fiber_small() {
        assert_eq!(fixed_fiber_count(1).unwrap(), BigInt::from(1));
        assert_eq!(fixed_fiber_count(2).unwrap(), BigInt::from(48));
        assert_eq!(fixed_fiber_count(3).unwrap(), BigInt::from(1224));
        assert_eq!(
            fixed_fiber_count(0),
            Err(AdmissibleError::FiberIndexTooSmall)
        );
    }

    #[test]
    fn json_shape() {
        let s = seq(1, &[1, 2, 1]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"left":1,"values":[1,2,1]}"#);
        let back: AdmissibleSeq = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<AdmissibleSeq>(r#"{"left":0,"values":[0]}"#).is_err());
    }
}
