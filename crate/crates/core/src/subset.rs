//! Finite sets of naturals and the colexicographic enumeration of `[m]^n`.
//!
//! Every module that needs to name "the δ-th n-subset of m" goes through
//! [`colex_rank`] / [`colex_unrank`], so colorings, partition codes and the
//! counterexample tree all agree on the same enumeration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ParamError;

/// A finite set of naturals, stored as a strictly increasing vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FiniteSet(Vec<u32>);

impl FiniteSet {
    pub fn empty() -> Self {
        FiniteSet(Vec::new())
    }

    /// Builds a set from elements that must already be strictly increasing.
    pub fn from_sorted(elements: Vec<u32>) -> Result<Self, ParamError> {
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ParamError::NotStrictlyIncreasing(elements));
        }
        Ok(FiniteSet(elements))
    }

    /// Sorts and deduplicates arbitrary input.
    pub fn from_unsorted(mut elements: Vec<u32>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        FiniteSet(elements)
    }

    /// `{0, 1, ..., m-1}`.
    pub fn initial_segment(m: u32) -> Self {
        FiniteSet((0..m).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn minimum(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn maximum(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn elements(&self) -> &[u32] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// `card(Y) >= min(Y)`; the empty set is not relatively large.
    pub fn is_relatively_large(&self) -> bool {
        match self.minimum() {
            Some(min) => self.len() as u64 >= u64::from(min),
            None => false,
        }
    }
}

impl<'de> Deserialize<'de> for FiniteSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<u32>::deserialize(d)?;
        FiniteSet::from_sorted(raw).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for FiniteSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// `C(a, b)` in `u128`, saturating at `u128::MAX`.
pub fn binomial(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: u128 = 1;
    for i in 0..b {
        // acc * (a - i) / (i + 1) stays exact because acc = C(a, i) here.
        let num = u128::from(a - i);
        acc = match acc.checked_mul(num) {
            Some(v) => v / u128::from(i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Pascal table `C(a, b)` for `a <= rows`, `b <= cols`, used on hot paths.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    cols: usize,
    table: Vec<u64>,
}

impl BinomialTable {
    pub fn new(rows: usize, cols: usize) -> Self {
        let width = cols + 1;
        let mut table = vec![0u64; (rows + 1) * width];
        for a in 0..=rows {
            table[a * width] = 1;
            for b in 1..=cols.min(a) {
                let up = table[(a - 1) * width + b - 1];
                let left = if b < a { table[(a - 1) * width + b] } else { 0 };
                table[a * width + b] = up.saturating_add(left);
            }
        }
        BinomialTable { cols, table }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u64 {
        if b > self.cols || b > a {
            return 0;
        }
        self.table[a * (self.cols + 1) + b]
    }
}

/// Colex rank `Σ_i C(s_i, i+1)` of an `n`-subset.
pub fn colex_rank(s: &FiniteSet, n: usize) -> Result<u64, ParamError> {
    if s.len() != n {
        return Err(ParamError::SizeMismatch {
            expected: n,
            found: s.len(),
        });
    }
    Ok(rank_slice(s.elements()))
}

/// Rank of an already-sorted slice; no size check.
pub fn rank_slice(sorted: &[u32]) -> u64 {
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| binomial(u64::from(x), i as u64 + 1) as u64)
        .sum()
}

/// Inverse of [`colex_rank`]: the `rank`-th `n`-subset of the naturals.
pub fn colex_unrank(mut rank: u64, n: usize) -> FiniteSet {
    let mut out = vec![0u32; n];
    for i in (0..n).rev() {
        // largest x with C(x, i+1) <= rank
        let k = i as u64 + 1;
        let mut x = i as u64;
        while binomial(x + 1, k) <= u128::from(rank) {
            x += 1;
        }
        rank -= binomial(x, k) as u64;
        out[i] = x as u32;
    }
    FiniteSet(out)
}

/// All `n`-subsets of `{0..m-1}` in colex order.
pub fn colex_subsets(m: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    if n as u64 > u64::from(m) {
        return out;
    }
    let mut cur: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(cur.clone());
        // colex successor: bump the lowest element that can move up
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            let limit = if i + 1 < n { cur[i + 1] } else { m };
            if cur[i] + 1 < limit {
                cur[i] += 1;
                for (j, slot) in cur.iter_mut().enumerate().take(i) {
                    *slot = j as u32;
                }
                break;
            }
            i += 1;
        }
    }
}

/// Calls `f` on every `k`-combination of `items` (lexicographic by position).
pub(crate) fn for_each_combination<F>(items: &[u32], k: usize, mut f: F) -> bool
where
    F: FnMut(&[u32]) -> bool,
{
    if k > items.len() {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut buf = vec![0u32; k];
    loop {
        for (slot, &i) in buf.iter_mut().zip(&idx) {
            *slot = items[i];
        }
        if !f(&buf) {
            return false;
        }
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] < items.len() - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let s = FiniteSet::from_sorted(vec![0, 1]).unwrap();
        assert_eq!(colex_rank(&s, 2).unwrap(), 0);
        let s = FiniteSet::from_sorted(vec![1, 2]).unwrap();
        assert_eq!(colex_rank(&s, 2).unwrap(), 2);
        assert!(matches!(
            colex_rank(&s, 3),
            Err(ParamError::SizeMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_matches_rank_and_unrank() {
        for m in 0..8u32 {
            for n in 0..5usize {
                let subsets = colex_subsets(m, n);
                assert_eq!(subsets.len() as u128, binomial(u64::from(m), n as u64));
                for (i, s) in subsets.iter().enumerate() {
                    assert_eq!(rank_slice(s), i as u64);
                    assert_eq!(colex_unrank(i as u64, n).elements(), &s[..]);
                }
            }
        }
    }

    #[test]
    fn three_subsets_of_seven_round_trip() {
        for a in 0..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let s = FiniteSet::from_sorted(vec![a, b, c]).unwrap();
                    let r = colex_rank(&s, 3).unwrap();
                    assert!(r < 35);
                    assert_eq!(colex_unrank(r, 3), s);
                }
            }
        }
    }

    #[test]
    fn table_agrees_with_direct() {
        let t = BinomialTable::new(30, 6);
        for a in 0..=30 {
            for b in 0..=6 {
                assert_eq!(u128::from(t.get(a, b)), binomial(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn rejects_unsorted() {
        assert!(FiniteSet::from_sorted(vec![2, 1]).is_err());
        assert!(FiniteSet::from_sorted(vec![1, 1]).is_err());
        assert_eq!(FiniteSet::from_unsorted(vec![3, 1, 3]).elements(), &[1, 3]);
    }

    #[test]
    fn relatively_large() {
        assert!(FiniteSet::from_sorted(vec![0]).unwrap().is_relatively_large());
        assert!(!FiniteSet::from_sorted(vec![2]).unwrap().is_relatively_large());
        assert!(FiniteSet::from_sorted(vec![2, 5]).unwrap().is_relatively_large());
        assert!(!FiniteSet::empty().is_relatively_large());
    }

    #[test]
    fn combinations() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 4, 6, 9], 2, |c| {
            seen.push(c.to_vec());
            true
        });
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![1, 4]);
        let mut count = 0;
        for_each_combination(&[1, 2], 0, |c| {
            assert!(c.is_empty());
            count += 1;
            true
        });
        assert_eq!(count, 1);
    }
}
