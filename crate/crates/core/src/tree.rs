//! Trees of counterexample colorings ordered by restriction.
//!
//! Level `l` holds every canonical coloring of `[l]^n` into `r` colors that
//! has no qualifying homogeneous set of size `k`. Restricting a level-`l+1`
//! node to `[l]^n` drops a colex suffix, so each node has exactly one parent,
//! and canonical form is preserved under that restriction.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrow::{Engine, SearchConfig};
use crate::coloring::{subset_count, Coloring};
use crate::error::{ParamError, SearchError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeParams {
    pub n: usize,
    pub r: u32,
    pub k: usize,
    pub starred: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeLevel {
    pub level: u32,
    pub nodes: Vec<Coloring>,
    /// Index of each node's parent in the previous level; `None` at level 0.
    pub parents: Vec<Option<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CtxTree {
    pub params: TreeParams,
    pub levels: Vec<TreeLevel>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TreeError {
    #[error("tree dies at level {level}")]
    Dies { level: u32 },
    #[error(transparent)]
    Search(#[from] SearchError),
}

impl CtxTree {
    /// First level with no nodes, if one was materialized.
    pub fn first_empty_level(&self) -> Option<u32> {
        self.levels.iter().find(|l| l.nodes.is_empty()).map(|l| l.level)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.nodes.len()).collect()
    }

    pub fn children(&self, level: usize, index: usize) -> impl Iterator<Item = usize> + '_ {
        self.levels
            .get(level + 1)
            .into_iter()
            .flat_map(move |next| {
                next.parents
                    .iter()
                    .enumerate()
                    .filter(move |(_, p)| **p == Some(index))
                    .map(|(i, _)| i)
            })
    }
}

/// Materializes levels `0..=max_level`, stopping after the first empty level.
pub fn build_levels(
    n: usize,
    r: u32,
    k: usize,
    starred: bool,
    max_level: u32,
    cfg: &SearchConfig,
) -> Result<CtxTree, SearchError> {
    if r == 0 || k == 0 {
        return Err(ParamError::Invalid("r and k must be at least 1".into()).into());
    }
    let params = TreeParams { n, r, k, starred };
    let root = {
        let len = subset_count(0, n)? as usize;
        Coloring::new(0, n, r, vec![0; len])?
    };
    let mut levels = vec![TreeLevel {
        level: 0,
        nodes: vec![root],
        parents: vec![None],
    }];
    for l in 1..=max_level {
        let prev = levels.last().expect("root level");
        if prev.nodes.is_empty() {
            break;
        }
        cfg.check(l, n, r)?;
        let engine = Engine::new(l, n, r, k, starred);
        let vacuous = n > 0 && k < n && k as u64 <= u64::from(l);
        let per_parent = |parent: &Coloring| -> Vec<Vec<u32>> {
            if vacuous {
                return Vec::new();
            }
            let mut out = Vec::new();
            let mut colors = vec![0u32; engine.total()];
            colors[..parent.colors().len()].copy_from_slice(parent.colors());
            let max_used = parent.colors().iter().copied().max();
            extend_all(&engine, parent.colors().len(), &mut colors, max_used, &mut out);
            if n == 0 {
                // [l]^0 gains no subsets, but the ground set grew
                out.retain(|c| !engine.closes(c, 0));
            }
            out
        };
        let children = map_ordered(&prev.nodes, cfg.threads, per_parent);
        let mut nodes = Vec::new();
        let mut parents = Vec::new();
        for (pi, kids) in children.into_iter().enumerate() {
            for colors in kids {
                nodes.push(Coloring::from_parts_unchecked(l, n, r, colors));
                parents.push(Some(pi));
            }
        }
        levels.push(TreeLevel {
            level: l,
            nodes,
            parents,
        });
    }
    Ok(CtxTree { params, levels })
}

fn extend_all(engine: &Engine, pos: usize, colors: &mut [u32], max_used: Option<u32>, out: &mut Vec<Vec<u32>>) {
    if pos == engine.total() {
        out.push(colors.to_vec());
        return;
    }
    for c in engine.color_range(max_used) {
        colors[pos] = c;
        if engine.closes(colors, pos) {
            continue;
        }
        extend_all(engine, pos + 1, colors, Some(max_used.map_or(c, |u| u.max(c))), out);
    }
}

/// Applies `f` to every item, in parallel when `threads > 1`, keeping order.
fn map_ordered<T: Sync, U: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> U + Sync) -> Vec<U> {
    if threads <= 1 || items.len() < 2 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    std::thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|part| {
                let f = &f;
                s.spawn(move || part.iter().map(f).collect::<Vec<U>>())
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// True iff `child` agrees with `parent` on every n-subset of `{0..parent.m-1}`.
pub fn is_restriction(child: &Coloring, parent: &Coloring) -> Result<bool, ParamError> {
    if child.n() != parent.n() || child.c() != parent.c() {
        return Err(ParamError::Incompatible(format!(
            "(n, c) = ({}, {}) vs ({}, {})",
            child.n(),
            child.c(),
            parent.n(),
            parent.c()
        )));
    }
    if child.m() < parent.m() {
        return Err(ParamError::Incompatible(format!(
            "child over [{}] is smaller than parent over [{}]",
            child.m(),
            parent.m()
        )));
    }
    Ok(child.colors()[..parent.colors().len()] == *parent.colors())
}

/// A chain through every materialized level, steering toward the deepest
/// subtree at each step (ties to the least node).
pub fn konig_branch(t: &CtxTree) -> Result<Vec<Coloring>, TreeError> {
    if let Some(level) = t.first_empty_level() {
        return Err(TreeError::Dies { level });
    }
    let last = t.levels.len() - 1;
    // deepest[l][i]: deepest level reached below node i of level l
    let mut deepest: Vec<Vec<usize>> = t.levels.iter().map(|l| vec![0; l.nodes.len()]).collect();
    deepest[last].iter_mut().for_each(|d| *d = last);
    for l in (0..last).rev() {
        for i in 0..t.levels[l].nodes.len() {
            deepest[l][i] = l;
        }
        for (j, p) in t.levels[l + 1].parents.iter().enumerate() {
            let p = p.expect("non-root nodes have parents");
            deepest[l][p] = deepest[l][p].max(deepest[l + 1][j]);
        }
    }
    let pick = |candidates: &mut dyn Iterator<Item = usize>, l: usize| {
        candidates
            .max_by(|&a, &b| deepest[l][a].cmp(&deepest[l][b]).then(b.cmp(&a)))
            .expect("nonempty")
    };
    let mut chain = Vec::with_capacity(last + 1);
    let mut cur = pick(&mut (0..t.levels[0].nodes.len()), 0);
    chain.push(t.levels[0].nodes[cur].clone());
    for l in 1..=last {
        cur = pick(&mut t.children(l - 1, cur), l);
        chain.push(t.levels[l].nodes[cur].clone());
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(max_level: u32) -> CtxTree {
        build_levels(2, 2, 3, false, max_level, &SearchConfig::default()).unwrap()
    }

    #[test]
    fn dies_at_six() {
        let t = tree(8);
        assert_eq!(t.first_empty_level(), Some(6));
        assert_eq!(t.levels.len(), 7);
        assert_eq!(t.levels[0].nodes.len(), 1);
        assert!(t.levels[0].nodes[0].colors().is_empty());
        assert!(matches!(konig_branch(&t), Err(TreeError::Dies { level: 6 })));
    }

    #[test]
    fn branch_to_five() {
        let t = tree(5);
        let chain = konig_branch(&t).unwrap();
        assert_eq!(chain.len(), 6);
        for w in chain.windows(2) {
            assert!(is_restriction(&w[1], &w[0]).unwrap());
        }
        assert_eq!(chain[5].m(), 5);
    }

    #[test]
    fn single_level_tree() {
        let t = tree(0);
        assert_eq!(konig_branch(&t).unwrap().len(), 1);
    }

    #[test]
    fn restriction_checks() {
        let p = Coloring::from_fn(5, 2, 2, |s| u32::from(s[1] - s[0] == 1 || (s[0] == 0 && s[1] == 4))).unwrap();
        let empty = Coloring::new(0, 2, 2, vec![]).unwrap();
        assert!(is_restriction(&p, &empty).unwrap());
        let q = p.restrict(4).unwrap();
        assert!(is_restriction(&p, &q).unwrap());
        let mut flipped = q.colors().to_vec();
        flipped[2] ^= 1;
        let q2 = Coloring::new(4, 2, 2, flipped).unwrap();
        assert!(!is_restriction(&p, &q2).unwrap());
        let other = Coloring::new(4, 2, 3, vec![0; 6]).unwrap();
        assert!(is_restriction(&p, &other).is_err());
        assert!(is_restriction(&q, &p).is_err());
    }

    #[test]
    fn zero_tuple_tree_dies_at_k() {
        let t = build_levels(0, 2, 3, false, 10, &SearchConfig::default()).unwrap();
        assert_eq!(t.first_empty_level(), Some(3));
    }

    #[test]
    fn parallel_build_matches_sequential() {
        let a = build_levels(2, 2, 3, true, 8, &SearchConfig::with_threads(1)).unwrap();
        let b = build_levels(2, 2, 3, true, 8, &SearchConfig::with_threads(4)).unwrap();
        assert_eq!(a, b);
    }
}
