//! Deciding `m → (k)^n_r` and its relatively-large variant `m →* (k)^n_r`.
//!
//! The search walks colorings of `[m]^n` in colex order of the subsets,
//! assigning colors `0..r` with canonical color introduction (a color may
//! appear only after all smaller colors have). A partial coloring is
//! abandoned as soon as the subset just colored completes a qualifying
//! homogeneous set; in colex order a set `Y` is fully colored exactly when
//! its top `n` elements are, so checking sets whose top `n`-subset is the
//! one just colored catches every qualifying set the moment it appears.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{Infeasible, ParamError, SearchError};
use crate::subset::{binomial, colex_subsets, for_each_combination, BinomialTable};

/// Depth of the canonical prefix tree that is split into parallel tasks.
/// Fixed so that reports do not depend on the worker count.
const SPLIT_DEPTH: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArrowQuery {
    pub m: u32,
    pub n: usize,
    pub r: u32,
    pub k: usize,
    pub starred: bool,
}

impl ArrowQuery {
    pub fn new(m: u32, n: usize, r: u32, k: usize, starred: bool) -> Result<Self, ParamError> {
        let q = ArrowQuery { m, n, r, k, starred };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.r == 0 {
            return Err(ParamError::Invalid("number of colors r must be at least 1".into()));
        }
        if self.k == 0 {
            return Err(ParamError::Invalid("target size k must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArrowReport {
    pub query: ArrowQuery,
    pub holds: bool,
    pub counterexample: Option<Coloring>,
    /// Partial colorings visited (one per color assignment).
    pub colorings_examined: u64,
    /// Partial colorings abandoned because they completed a qualifying set.
    pub pruned_branches: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Maximum of `C(m,n)·log2(r)`.
    pub bit_budget: f64,
    /// Maximum of `C(m,n)` regardless of `r`.
    pub max_subsets: u64,
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            bit_budget: 64.0,
            max_subsets: 1 << 20,
            threads: 1,
        }
    }
}

impl SearchConfig {
    pub fn with_threads(threads: usize) -> Self {
        SearchConfig {
            threads: threads.max(1),
            ..Default::default()
        }
    }

    pub fn check(&self, m: u32, n: usize, r: u32) -> Result<(), Infeasible> {
        let subsets = binomial(u64::from(m), n as u64);
        let bits = subsets as f64 * f64::from(r.max(1)).log2();
        if bits > self.bit_budget || subsets > u128::from(self.max_subsets) {
            return Err(Infeasible {
                subsets,
                bits,
                budget: self.bit_budget,
            });
        }
        Ok(())
    }
}

pub fn arrow_check(q: &ArrowQuery, cfg: &SearchConfig) -> Result<ArrowReport, SearchError> {
    q.validate()?;
    cfg.check(q.m, q.n, q.r)?;
    let report = |holds, counterexample, examined, pruned| ArrowReport {
        query: *q,
        holds,
        counterexample,
        colorings_examined: examined,
        pruned_branches: pruned,
    };
    // Sets smaller than n are homogeneous for every coloring.
    if q.n > 0 && q.k < q.n && q.k as u64 <= u64::from(q.m) {
        return Ok(report(true, None, 0, 0));
    }
    let engine = Engine::new(q.m, q.n, q.r, q.k, q.starred);
    let outcome = engine.run(cfg.threads);
    let counterexample = outcome
        .counterexample
        .map(|colors| Coloring::from_parts_unchecked(q.m, q.n, q.r, colors));
    Ok(report(
        counterexample.is_none(),
        counterexample,
        outcome.nodes,
        outcome.pruned,
    ))
}

/// Least `m <= cap` with `m → (k)^n_r` (starred if asked); `None` if there is
/// none below the cap.
pub fn least_arrow(
    n: usize,
    r: u32,
    k: usize,
    starred: bool,
    cap: u32,
    cfg: &SearchConfig,
) -> Result<Option<u32>, SearchError> {
    for m in 0..=cap {
        let q = ArrowQuery::new(m, n, r, k, starred)?;
        // the arrow is monotone in m, so the first success is the least
        if arrow_check(&q, cfg)?.holds {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub(crate) struct Engine {
    m: u32,
    n: usize,
    r: u32,
    k: usize,
    starred: bool,
    subsets: Vec<Vec<u32>>,
    table: BinomialTable,
}

#[derive(Default)]
struct Outcome {
    counterexample: Option<Vec<u32>>,
    nodes: u64,
    pruned: u64,
}

enum Event {
    Node { pruned: bool },
    Task { prefix: Vec<u32>, max_used: Option<u32> },
}

impl Engine {
    pub(crate) fn new(m: u32, n: usize, r: u32, k: usize, starred: bool) -> Self {
        Engine {
            m,
            n,
            r,
            k,
            starred,
            subsets: colex_subsets(m, n),
            table: BinomialTable::new(m as usize, n),
        }
    }

    pub(crate) fn total(&self) -> usize {
        self.subsets.len()
    }

    fn rank(&self, sorted: &[u32]) -> usize {
        sorted
            .iter()
            .enumerate()
            .map(|(i, &x)| self.table.get(x as usize, i + 1))
            .sum::<u64>() as usize
    }

    /// Colors the subset at `pos` may take given the largest color used so far.
    pub(crate) fn color_range(&self, max_used: Option<u32>) -> std::ops::RangeInclusive<u32> {
        let hi = max_used.map_or(0, |c| c + 1).min(self.r - 1);
        0..=hi
    }

    /// Does coloring position `pos` (already written into `colors`) complete a
    /// qualifying homogeneous set?
    pub(crate) fn closes(&self, colors: &[u32], pos: usize) -> bool {
        let top = &self.subsets[pos];
        let mut members = top.clone();
        let low = top.first().copied().unwrap_or(self.m);
        self.grow_down(colors, colors[pos], &mut members, low)
    }

    fn grow_down(&self, colors: &[u32], color: u32, members: &mut Vec<u32>, low: u32) -> bool {
        let size = members.len();
        if size >= self.k && (!self.starred || members.first().is_some_and(|&min| size as u64 >= u64::from(min))) {
            return true;
        }
        if size + (low as usize) < self.k {
            return false;
        }
        for x in (0..low).rev() {
            if self.admits_below(colors, color, members, x) {
                members.insert(0, x);
                if self.grow_down(colors, color, members, x) {
                    return true;
                }
                members.remove(0);
            }
        }
        false
    }

    fn admits_below(&self, colors: &[u32], color: u32, members: &[u32], x: u32) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut buf = Vec::with_capacity(self.n);
        for_each_combination(members, self.n - 1, |rest| {
            buf.clear();
            buf.push(x);
            buf.extend_from_slice(rest);
            colors[self.rank(&buf)] == color
        })
    }

    fn run(&self, threads: usize) -> Outcome {
        let depth = self.total().min(SPLIT_DEPTH);
        let mut events = Vec::new();
        let mut colors = vec![0u32; self.total()];
        self.split(0, depth, &mut colors, None, &mut events);

        let tasks: Vec<usize> = events
            .iter()
            .enumerate()
            .filter_map(|(i, e)| matches!(e, Event::Task { .. }).then_some(i))
            .collect();
        let results: Vec<Mutex<Option<Outcome>>> = tasks.iter().map(|_| Mutex::new(None)).collect();
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);

        let worker = || loop {
            let t = next.fetch_add(1, Ordering::Relaxed);
            if t >= tasks.len() {
                break;
            }
            if t > best.load(Ordering::Acquire) {
                continue;
            }
            let Event::Task { prefix, max_used } = &events[tasks[t]] else {
                unreachable!()
            };
            let out = self.solve_task(prefix, *max_used);
            if out.counterexample.is_some() {
                best.fetch_min(t, Ordering::AcqRel);
            }
            *results[t].lock().unwrap() = Some(out);
        };
        if threads <= 1 {
            worker();
        } else {
            std::thread::scope(|s| {
                for _ in 0..threads {
                    s.spawn(worker);
                }
            });
        }

        // Sum events in preorder up to the winning task, as a sequential
        // search would have counted them.
        let winner = best.load(Ordering::Acquire);
        let mut total = Outcome::default();
        let mut task_idx = 0;
        for e in &events {
            match e {
                Event::Node { pruned } => {
                    total.nodes += 1;
                    total.pruned += u64::from(*pruned);
                }
                Event::Task { .. } => {
                    if task_idx > winner {
                        break;
                    }
                    let out = results[task_idx].lock().unwrap().take().expect("task ran");
                    total.nodes += out.nodes;
                    total.pruned += out.pruned;
                    if task_idx == winner {
                        total.counterexample = out.counterexample;
                        break;
                    }
                    task_idx += 1;
                }
            }
        }
        total
    }

    fn split(&self, pos: usize, depth: usize, colors: &mut [u32], max_used: Option<u32>, events: &mut Vec<Event>) {
        if pos == depth {
            events.push(Event::Task {
                prefix: colors[..pos].to_vec(),
                max_used,
            });
            return;
        }
        for c in self.color_range(max_used) {
            colors[pos] = c;
            let pruned = self.closes(colors, pos);
            events.push(Event::Node { pruned });
            if !pruned {
                self.split(pos + 1, depth, colors, Some(max_used.map_or(c, |u| u.max(c))), events);
            }
        }
    }

    fn solve_task(&self, prefix: &[u32], max_used: Option<u32>) -> Outcome {
        let mut colors = vec![0u32; self.total()];
        colors[..prefix.len()].copy_from_slice(prefix);
        let mut out = Outcome::default();
        if self.dfs(prefix.len(), &mut colors, max_used, &mut out) {
            out.counterexample = Some(colors);
        }
        out
    }

    fn dfs(&self, pos: usize, colors: &mut [u32], max_used: Option<u32>, out: &mut Outcome) -> bool {
        if pos == self.total() {
            return true;
        }
        for c in self.color_range(max_used) {
            colors[pos] = c;
            out.nodes += 1;
            if self.closes(colors, pos) {
                out.pruned += 1;
                continue;
            }
            if self.dfs(pos + 1, colors, Some(max_used.map_or(c, |u| u.max(c))), out) {
                return true;
            }
        }
        false
    }
}
