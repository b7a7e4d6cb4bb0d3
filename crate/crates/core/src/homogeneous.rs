//! Homogeneous and relatively large sets for a fixed coloring.

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::ParamError;
use crate::subset::{for_each_combination, FiniteSet};

/// A set on whose n-subsets the coloring is constant with value `color`.
///
/// When the set has fewer than `n` elements it is vacuously homogeneous and
/// carries color 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityWitness {
    pub set: FiniteSet,
    pub color: u32,
}

impl HomogeneityWitness {
    /// Re-checks the witness against `p` by direct enumeration.
    pub fn is_valid_for(&self, p: &Coloring) -> bool {
        if self.set.maximum().is_some_and(|x| x >= p.m()) {
            return false;
        }
        if self.set.len() < p.n() {
            return self.color == 0;
        }
        for_each_combination(self.set.elements(), p.n(), |s| p.color_of(s) == self.color)
    }
}

/// Outcome of a certificate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyAudit {
    /// No qualifying homogeneous set exists.
    pub counterexample: bool,
    /// Number of candidate sets (homogeneous prefixes) inspected.
    pub candidates_inspected: u64,
    pub witness: Option<HomogeneityWitness>,
}

/// Finds the lexicographically least set of size `>= k` that is homogeneous
/// for `p` (and relatively large when `starred`).
pub fn find_homogeneous(
    p: &Coloring,
    k: usize,
    starred: bool,
) -> Result<Option<HomogeneityWitness>, ParamError> {
    Ok(search(p, k, starred)?.0)
}

/// Certificate check: true iff `p` admits no qualifying homogeneous set.
pub fn verify_counterexample(p: &Coloring, k: usize, starred: bool) -> Result<VerifyAudit, ParamError> {
    let (witness, inspected) = search(p, k, starred)?;
    Ok(VerifyAudit {
        counterexample: witness.is_none(),
        candidates_inspected: inspected,
        witness,
    })
}

fn search(p: &Coloring, k: usize, starred: bool) -> Result<(Option<HomogeneityWitness>, u64), ParamError> {
    if k == 0 {
        return Err(ParamError::Invalid("target size k must be at least 1".into()));
    }
    let mut st = Lex {
        p,
        k,
        starred,
        members: Vec::with_capacity(k),
        inspected: 0,
    };
    let found = st.extend(None);
    let witness = found.map(|color| HomogeneityWitness {
        set: FiniteSet::from_sorted(st.members.clone()).expect("built increasing"),
        color,
    });
    Ok((witness, st.inspected))
}

struct Lex<'a> {
    p: &'a Coloring,
    k: usize,
    starred: bool,
    members: Vec<u32>,
    inspected: u64,
}

impl Lex<'_> {
    /// Preorder DFS over homogeneous prefixes; preorder is lexicographic order.
    /// Returns the witness color, leaving the witness in `members`.
    fn extend(&mut self, color: Option<u32>) -> Option<u32> {
        let m = self.p.m();
        let n = self.p.n();
        let start = self.members.last().map_or(0, |&x| x + 1);
        for x in start..m {
            let reachable = self.members.len() + (m - x) as usize;
            if reachable < self.k {
                break;
            }
            if self.starred && (reachable as u64) < u64::from(self.members.first().copied().unwrap_or(x)) {
                break;
            }
            let Some(color) = self.admits(x, color) else {
                continue;
            };
            self.members.push(x);
            self.inspected += 1;
            let size = self.members.len();
            let large_enough =
                size >= self.k && (!self.starred || size as u64 >= u64::from(self.members[0]));
            if large_enough {
                return Some(if size < n { 0 } else { color.unwrap_or(0) });
            }
            if let Some(found) = self.extend(color) {
                return Some(found);
            }
            self.members.pop();
        }
        None
    }

    /// Color of `members ∪ {x}` if it is still homogeneous.
    fn admits(&self, x: u32, color: Option<u32>) -> Option<Option<u32>> {
        let n = self.p.n();
        if n == 0 {
            return Some(Some(self.p.colors()[0]));
        }
        let mut color = color;
        let mut buf = Vec::with_capacity(n);
        let ok = for_each_combination(&self.members, n - 1, |rest| {
            buf.clear();
            buf.extend_from_slice(rest);
            buf.push(x);
            let got = self.p.color_of(&buf);
            match color {
                None => {
                    color = Some(got);
                    true
                }
                Some(c) => c == got,
            }
        });
        ok.then_some(color)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn five_cycle() -> Coloring {
        Coloring::from_fn(5, 2, 2, |s| u32::from(s[1] - s[0] == 1 || (s[0] == 0 && s[1] == 4))).unwrap()
    }

    #[test]
    fn constant_coloring_gives_least_triple() {
        let p = Coloring::constant(5, 2, 2, 0).unwrap();
        let w = find_homogeneous(&p, 3, false).unwrap().unwrap();
        assert_eq!(w.set.elements(), &[0, 1, 2]);
        assert_eq!(w.color, 0);
    }

    #[test]
    fn five_cycle_has_no_monochromatic_triangle() {
        let p = five_cycle();
        assert_eq!(find_homogeneous(&p, 3, false).unwrap(), None);
        let audit = verify_counterexample(&p, 3, false).unwrap();
        assert!(audit.counterexample);
        assert!(audit.candidates_inspected > 0);
    }

    #[test]
    fn singleton_zero_is_relatively_large() {
        for m in 1..6 {
            let p = Coloring::from_fn(m, 1, 3, |s| (s[0] * 7 + 1) % 3).unwrap();
            let w = find_homogeneous(&p, 1, true).unwrap().unwrap();
            assert_eq!(w.set.elements(), &[0]);
            assert_eq!(w.color, p.color_of(&[0]));
        }
    }

    #[test]
    fn starred_skips_small_sets_with_large_minimum() {
        // [6]^1, colors: 0 only on {3} and {4}; {3,4} is homogeneous but 2 < 3
        let p = Coloring::new(6, 1, 2, vec![1, 1, 0, 0, 0, 1]).unwrap();
        let w = find_homogeneous(&p, 2, true).unwrap().unwrap();
        assert_eq!(w.set.elements(), &[0, 1]);
        let p = Coloring::new(6, 1, 2, vec![1, 0, 1, 0, 0, 0]).unwrap();
        // {0,2} color 1 is least; plain and starred agree here
        assert_eq!(find_homogeneous(&p, 2, true).unwrap().unwrap().set.elements(), &[0, 2]);
        let p = Coloring::new(6, 1, 6, vec![0, 1, 2, 3, 3, 3]).unwrap();
        // {3,4,5} has color 3 and size 3 >= min 3
        let w = find_homogeneous(&p, 2, true).unwrap().unwrap();
        assert_eq!(w.set.elements(), &[3, 4, 5]);
        assert_eq!(w.color, 3);
        assert_eq!(find_homogeneous(&p, 2, false).unwrap().unwrap().set.elements(), &[3, 4]);
    }

    #[test]
    fn vacuous_sets_take_color_zero() {
        let p = Coloring::constant(4, 3, 2, 1).unwrap();
        let w = find_homogeneous(&p, 2, false).unwrap().unwrap();
        assert_eq!(w.set.elements(), &[0, 1]);
        assert_eq!(w.color, 0);
        assert!(w.is_valid_for(&p));
    }

    #[test]
    fn zero_subsets() {
        let p = Coloring::new(3, 0, 2, vec![1]).unwrap();
        let w = find_homogeneous(&p, 3, true).unwrap().unwrap();
        assert_eq!(w.set.elements(), &[0, 1, 2]);
        assert_eq!(w.color, 1);
        assert_eq!(find_homogeneous(&p, 4, false).unwrap(), None);
    }

    #[test]
    fn constant_six_is_not_a_counterexample() {
        let p = Coloring::constant(6, 2, 2, 0).unwrap();
        assert!(!verify_counterexample(&p, 3, false).unwrap().counterexample);
    }

    #[test]
    fn k_zero_is_rejected() {
        let p = Coloring::constant(3, 2, 2, 0).unwrap();
        assert!(find_homogeneous(&p, 0, false).is_err());
    }
}
