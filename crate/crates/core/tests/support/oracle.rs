//! Brute-force reference implementations, independent of the
//! library's enumeration and search code: subsets are bitmasks, colorings
//! are enumerated exhaustively.

#![allow(dead_code)]

use std::collections::HashMap;

/// All n-subsets of {0..m-1} in colex order (compare largest elements first).
pub fn colex_subsets(m: u32, n: usize) -> Vec<Vec<u32>> {
    let mut subsets: Vec<Vec<u32>> = (0u64..1 << m)
        .filter(|mask| mask.count_ones() as usize == n)
        .map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    subsets.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    subsets
}

pub struct NaiveColoring {
    pub m: u32,
    pub n: usize,
    pub colors: HashMap<Vec<u32>, u32>,
}

impl NaiveColoring {
    pub fn new(m: u32, n: usize, colors: &[u32]) -> Self {
        let subsets = colex_subsets(m, n);
        assert_eq!(subsets.len(), colors.len());
        NaiveColoring {
            m,
            n,
            colors: subsets.into_iter().zip(colors.iter().copied()).collect(),
        }
    }

    fn homogeneous(&self, y: &[u32]) -> bool {
        let mut seen = None;
        for mask in 0u64..1 << y.len() {
            if mask.count_ones() as usize != self.n {
                continue;
            }
            let s: Vec<u32> = (0..y.len()).filter(|i| mask >> i & 1 == 1).map(|i| y[i]).collect();
            let c = self.colors[&s];
            match seen {
                None => seen = Some(c),
                Some(prev) if prev != c => return false,
                _ => {}
            }
        }
        true
    }

    /// Every qualifying set, in no particular order.
    pub fn qualifying_sets(&self, k: usize, starred: bool) -> Vec<Vec<u32>> {
        (0u64..1 << self.m)
            .map(|mask| (0..self.m).filter(|i| mask >> i & 1 == 1).collect::<Vec<u32>>())
            .filter(|y| y.len() >= k)
            .filter(|y| !starred || y.len() as u32 >= y[0])
            .filter(|y| self.homogeneous(y))
            .collect()
    }

    pub fn has_qualifying(&self, k: usize, starred: bool) -> bool {
        !self.qualifying_sets(k, starred).is_empty()
    }
}

pub fn is_canonical(colors: &[u32]) -> bool {
    let mut next = 0;
    for &c in colors {
        if c > next {
            return false;
        }
        if c == next {
            next += 1;
        }
    }
    true
}

/// Every coloring of C slots into r colors, in lexicographic order.
pub fn all_colorings(slots: usize, r: u32) -> impl Iterator<Item = Vec<u32>> {
    let total = (r as u64).pow(slots as u32);
    (0..total).map(move |mut x| {
        let mut v = vec![0u32; slots];
        for slot in v.iter_mut().rev() {
            *slot = (x % r as u64) as u32;
            x /= r as u64;
        }
        v
    })
}

/// Canonical colorings of [m]^n with no qualifying set, lexicographic order.
pub fn canonical_counterexamples(m: u32, n: usize, r: u32, k: usize, starred: bool) -> Vec<Vec<u32>> {
    let slots = colex_subsets(m, n).len();
    all_colorings(slots, r)
        .filter(|c| is_canonical(c))
        .filter(|c| !NaiveColoring::new(m, n, c).has_qualifying(k, starred))
        .collect()
}

/// (holds, least canonical counterexample)
pub fn naive_arrow(m: u32, n: usize, r: u32, k: usize, starred: bool) -> (bool, Option<Vec<u32>>) {
    let slots = colex_subsets(m, n).len();
    let first = all_colorings(slots, r)
        .filter(|c| is_canonical(c))
        .find(|c| !NaiveColoring::new(m, n, c).has_qualifying(k, starred));
    (first.is_none(), first)
}

pub fn naive_least_arrow(n: usize, r: u32, k: usize, starred: bool, cap: u32) -> Option<u32> {
    (0..=cap).find(|&m| naive_arrow(m, n, r, k, starred).0)
}
