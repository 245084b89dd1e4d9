// SPDX-License-Identifier: Apache-2.0

//! Exact top-k by pruned BFS.
//!
//! Every node carries a bound on its score (a farness lower bound, or a
//! harmonic upper bound). Nodes are taken from a priority queue in order of
//! their bound; each is either settled exactly by a BFS or cut short once
//! the BFS proves it cannot reach the current k-th best. The loop stops as
//! soon as the best bound left in the queue is strictly worse than the k-th
//! exact score, so ties with the k-th node are always reported.
//!
//! Four variants combine an initial bound (`Deg` or `NB`) with an update
//! strategy: `Cut` aborts hopeless searches, `Bound` runs full searches and
//! spreads level bounds to every node they reach.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::baseline::harmonic_from_levels;
use crate::bfscut::{bfs_cut, Bound, CutOutcome, Threshold, HARMONIC_EPS};
use crate::error::{Error, Result};
use crate::farness::Farness;
use crate::graph::{bfs_levels, BfsScratch, Graph};
use crate::level::{bounds_from_scratch, degree_harmonic_bound};
use crate::nb::{nb_lower_bounds, NbBounds};
use crate::reach::ReachInfo;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Measure {
    Closeness,
    Harmonic,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Closeness => "closeness",
            Measure::Harmonic => "harmonic",
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closeness" => Ok(Measure::Closeness),
            "harmonic" => Ok(Measure::Harmonic),
            _ => Err(Error::InvalidParameter(format!("unknown measure `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    DegCut,
    DegBound,
    NbCut,
    NbBound,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::DegCut, Variant::DegBound, Variant::NbCut, Variant::NbBound];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::DegCut => "degcut",
            Variant::DegBound => "degbound",
            Variant::NbCut => "nbcut",
            Variant::NbBound => "nbbound",
        }
    }

    fn uses_nb(self) -> bool {
        matches!(self, Variant::NbCut | Variant::NbBound)
    }

    fn cuts(self) -> bool {
        matches!(self, Variant::DegCut | Variant::NbCut)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Textbook,
    Pruned(Variant),
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Textbook => "textbook",
            Method::Pruned(v) => v.as_str(),
        }
    }
}

/// Orderable score where smaller is better: farness, or negated harmonic.
#[derive(Debug, Clone, Copy)]
pub(crate) enum Cost {
    Far(Farness),
    Harm(f64),
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Far(a), Cost::Far(b)) => a.cmp(b),
            (Cost::Harm(a), Cost::Harm(b)) => b.total_cmp(a),
            _ => panic!("mixed measures"),
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Cost {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Cost {}

impl Cost {
    /// `self` cannot tie with `kth`: farness strictly larger, or harmonic
    /// below by more than the tolerance.
    fn strictly_worse(self, kth: Cost) -> bool {
        match (self, kth) {
            (Cost::Far(a), Cost::Far(b)) => a > b,
            (Cost::Harm(a), Cost::Harm(b)) => a < b - HARMONIC_EPS,
            _ => panic!("mixed measures"),
        }
    }

    fn threshold(self) -> Threshold {
        match self {
            Cost::Far(f) => Threshold::Farness(f),
            Cost::Harm(h) => Threshold::Harmonic(h),
        }
    }

    fn bound(self) -> Bound {
        match self {
            Cost::Far(f) => Bound::Farness(f),
            Cost::Harm(h) => Bound::Harmonic(h),
        }
    }
}

/// An exactly scored node.
#[derive(Debug, Clone, Copy)]
pub struct Finalized {
    pub node: usize,
    pub reached: usize,
    score: Score,
}

#[derive(Debug, Clone, Copy)]
enum Score {
    Closeness { sum: u64, farness: Farness },
    Harmonic(f64),
}

impl Finalized {
    pub fn closeness(node: usize, n: usize, sum: u64, reached: usize) -> Finalized {
        Finalized {
            node,
            reached,
            score: Score::Closeness { sum, farness: Farness::new(n, sum as i128, reached) },
        }
    }

    pub fn harmonic(node: usize, value: f64, reached: usize) -> Finalized {
        Finalized { node, reached, score: Score::Harmonic(value) }
    }

    pub fn value(&self) -> f64 {
        match self.score {
            Score::Closeness { farness, .. } => farness.closeness(),
            Score::Harmonic(h) => h,
        }
    }

    fn cost(&self) -> Cost {
        match self.score {
            Score::Closeness { farness, .. } => Cost::Far(farness),
            Score::Harmonic(h) => Cost::Harm(h),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RankedEntry {
    /// One plus the number of strictly better entries.
    pub rank: usize,
    pub node: usize,
    pub label: String,
    pub value: f64,
    /// `(S, r)` for closeness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub farness_pair: Option<(u64, usize)>,
}

/// Instrumentation collected when [`TopKOptions::trace`] is set.
#[derive(Debug, Clone, Default)]
pub struct RunTrace {
    /// Every bound assignment, in order, including the initial ones.
    pub bound_log: Vec<(usize, Bound)>,
    /// Nodes cut short.
    pub pruned: Vec<usize>,
    /// Nodes never settled when the loop stopped.
    pub remaining: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TopKResult {
    /// Rank order, ties by label.
    pub entries: Vec<RankedEntry>,
    pub kth_value: f64,
    pub m_vis: u64,
    pub n_pruned: usize,
    pub method: Method,
    pub measure: Measure,
    pub k: usize,
    pub trace: Option<RunTrace>,
}

/// Keeps every node at least as good as the k-th best and ranks them.
pub(crate) fn assemble_result(
    g: &Graph,
    k: usize,
    measure: Measure,
    method: Method,
    mut finalized: Vec<Finalized>,
    m_vis: u64,
    n_pruned: usize,
) -> TopKResult {
    assert!(k >= 1, "k must be positive");
    assert!(!finalized.is_empty(), "nothing was scored");
    finalized.sort_by(|a, b| a.cost().cmp(&b.cost()).then(a.node.cmp(&b.node)));
    let kth = finalized[k.min(finalized.len()) - 1];
    let kept: Vec<&Finalized> = finalized
        .iter()
        .filter(|f| !f.cost().strictly_worse(kth.cost()))
        .collect();

    let mut entries: Vec<RankedEntry> = kept
        .iter()
        .map(|f| {
            let better = kept.partition_point(|o| f.cost().strictly_worse(o.cost()));
            RankedEntry {
                rank: better + 1,
                node: f.node,
                label: g.label(f.node).to_owned(),
                value: f.value(),
                farness_pair: match f.score {
                    Score::Closeness { sum, .. } => Some((sum, f.reached)),
                    Score::Harmonic(_) => None,
                },
            }
        })
        .collect();
    entries.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.label.cmp(&b.label)));

    TopKResult {
        entries,
        kth_value: kth.value(),
        m_vis,
        n_pruned,
        method,
        measure,
        k,
        trace: None,
    }
}

/// `2mn / m_vis` (undirected) or `mn / m_vis` (directed); +∞ if nothing was
/// visited.
pub fn improvement_factor(result: &TopKResult, g: &Graph) -> f64 {
    if result.m_vis == 0 {
        return f64::INFINITY;
    }
    let scale = if g.is_directed() { 1.0 } else { 2.0 };
    scale * g.m() as f64 * g.n() as f64 / result.m_vis as f64
}

#[derive(Debug, Clone, Default)]
pub struct TopKOptions {
    /// Worker threads. `None` runs the sequential loop.
    pub threads: Option<usize>,
    pub trace: bool,
}

/// Reusable per-graph state: reachability is computed once, NB bounds on
/// first use.
pub struct TopKSolver<'g> {
    g: &'g Graph,
    reach: ReachInfo,
    nb: std::sync::OnceLock<NbBounds>,
}

impl<'g> TopKSolver<'g> {
    pub fn new(g: &'g Graph) -> TopKSolver<'g> {
        TopKSolver { g, reach: ReachInfo::compute(g), nb: std::sync::OnceLock::new() }
    }

    pub fn reach(&self) -> &ReachInfo {
        &self.reach
    }

    pub fn nb_bounds(&self) -> &NbBounds {
        self.nb.get_or_init(|| nb_lower_bounds(self.g, &self.reach))
    }

    pub fn topk(&self, k: usize, variant: Variant, measure: Measure) -> TopKResult {
        self.topk_with(k, variant, measure, &TopKOptions::default())
    }

    pub fn topk_with(
        &self,
        k: usize,
        variant: Variant,
        measure: Measure,
        opts: &TopKOptions,
    ) -> TopKResult {
        assert!(k >= 1, "k must be positive");
        match opts.threads {
            Some(t) => {
                assert!(t >= 1, "thread count must be positive");
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .expect("failed to build thread pool");
                pool.install(|| self.run(k, variant, measure, t, opts.trace))
            }
            None => self.run(k, variant, measure, 1, opts.trace),
        }
    }

    fn initial_cost(&self, v: usize, variant: Variant, measure: Measure) -> Cost {
        match (measure, variant.uses_nb()) {
            (Measure::Closeness, false) => Cost::Far(Farness::ZERO),
            (Measure::Closeness, true) => Cost::Far(self.nb_bounds().farness[v]),
            (Measure::Harmonic, false) => {
                Cost::Harm(degree_harmonic_bound(self.g.degree(v), self.reach.omega(v)))
            }
            (Measure::Harmonic, true) => Cost::Harm(self.nb_bounds().harmonic[v]),
        }
    }

    fn run(&self, k: usize, variant: Variant, measure: Measure, batch: usize, trace: bool) -> TopKResult {
        let g = self.g;
        let n = g.n();
        let mut st = LoopState {
            k,
            cost: (0..n).map(|v| self.initial_cost(v, variant, measure)).collect(),
            version: vec![0; n],
            done: vec![false; n],
            heap: BinaryHeap::with_capacity(n),
            best: BinaryHeap::with_capacity(k + 1),
            finalized: Vec::new(),
            m_vis: 0,
            n_pruned: 0,
            trace: trace.then(RunTrace::default),
        };
        for v in 0..n {
            st.heap.push(Reverse(QItem { cost: st.cost[v], degree: g.degree(v), node: v, version: 0 }));
            if let Some(t) = st.trace.as_mut() {
                t.bound_log.push((v, st.cost[v].bound()));
            }
        }

        let mut scratches: Vec<BfsScratch> = (0..batch).map(|_| BfsScratch::new(n)).collect();
        let ctx = WorkCtx { g, reach: &self.reach, measure, cuts: variant.cuts() };
        loop {
            let (picked, stop) = st.next_batch(batch);
            if picked.is_empty() {
                break;
            }
            let threshold = match st.kth() {
                Some(c) => c.threshold(),
                None => Threshold::unbounded(measure),
            };
            let results: Vec<Work> = if picked.len() == 1 {
                vec![ctx.work(picked[0], threshold, &mut scratches[0])]
            } else {
                picked
                    .par_iter()
                    .zip(scratches[..picked.len()].par_iter_mut())
                    .map(|(&v, sc)| ctx.work(v, threshold, sc))
                    .collect()
            };
            for (&v, w) in picked.iter().zip(results) {
                st.merge(g, measure, v, w);
            }
            if stop {
                break;
            }
        }

        if let Some(t) = st.trace.as_mut() {
            t.remaining = (0..n).filter(|&v| !st.done[v]).collect();
        }
        let mut result = assemble_result(
            g,
            k,
            measure,
            Method::Pruned(variant),
            st.finalized,
            st.m_vis,
            st.n_pruned,
        );
        result.trace = st.trace;
        result
    }
}

/// Top-k with a fresh solver.
pub fn topk(g: &Graph, k: usize, variant: Variant, measure: Measure) -> TopKResult {
    TopKSolver::new(g).topk(k, variant, measure)
}

pub fn topk_with(
    g: &Graph,
    k: usize,
    variant: Variant,
    measure: Measure,
    opts: &TopKOptions,
) -> TopKResult {
    TopKSolver::new(g).topk_with(k, variant, measure, opts)
}

#[derive(Debug, Clone, Copy)]
struct QItem {
    cost: Cost,
    degree: usize,
    node: usize,
    version: u32,
}

impl QItem {
    fn key(&self) -> (Cost, Reverse<usize>, usize) {
        (self.cost, Reverse(self.degree), self.node)
    }
}

impl Ord for QItem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for QItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for QItem {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for QItem {}

enum Work {
    Cut { exact: Option<(u64, usize, f64)>, arcs: u64 },
    Full { sum: u64, reached: usize, harmonic: f64, arcs: u64, updates: Vec<(usize, Cost)> },
}

struct WorkCtx<'a> {
    g: &'a Graph,
    reach: &'a ReachInfo,
    measure: Measure,
    cuts: bool,
}

impl WorkCtx<'_> {
    fn work(&self, v: usize, threshold: Threshold, scratch: &mut BfsScratch) -> Work {
        if self.cuts {
            let r = bfs_cut(self.g, v, threshold, self.reach, scratch);
            let exact = match r.outcome {
                CutOutcome::Exact { sum, reached, harmonic } => Some((sum, reached, harmonic)),
                CutOutcome::Pruned => None,
            };
            return Work::Cut { exact, arcs: r.visited_arcs };
        }
        let (counts, arcs) = bfs_levels(self.g, v, scratch);
        let sum = counts.iter().enumerate().map(|(d, &c)| (d * c) as u64).sum();
        let harmonic = harmonic_from_levels(&counts);
        let mut updates = Vec::new();
        let measure = self.measure;
        bounds_from_scratch(self.g, v, &counts, scratch, self.reach, |lb| {
            updates.push((
                lb.node,
                match measure {
                    Measure::Closeness => Cost::Far(lb.farness),
                    Measure::Harmonic => Cost::Harm(lb.harmonic),
                },
            ))
        });
        Work::Full { sum, reached: scratch.queue.len(), harmonic, arcs, updates }
    }
}

struct LoopState {
    k: usize,
    cost: Vec<Cost>,
    version: Vec<u32>,
    done: Vec<bool>,
    heap: BinaryHeap<Reverse<QItem>>,
    /// The k best exact costs; the top is the k-th.
    best: BinaryHeap<Cost>,
    finalized: Vec<Finalized>,
    m_vis: u64,
    n_pruned: usize,
    trace: Option<RunTrace>,
}

impl LoopState {
    fn kth(&self) -> Option<Cost> {
        (self.best.len() >= self.k).then(|| *self.best.peek().expect("non-empty"))
    }

    /// Up to `size` live queue heads, and whether the stop rule fired.
    fn next_batch(&mut self, size: usize) -> (Vec<usize>, bool) {
        let mut picked = Vec::with_capacity(size);
        while picked.len() < size {
            let Some(Reverse(item)) = self.heap.pop() else {
                break;
            };
            if self.done[item.node] || item.version != self.version[item.node] {
                continue;
            }
            if let Some(kth) = self.kth() {
                if item.cost.strictly_worse(kth) {
                    return (picked, true);
                }
            }
            picked.push(item.node);
        }
        (picked, false)
    }

    fn settle(&mut self, g: &Graph, measure: Measure, v: usize, sum: u64, reached: usize, h: f64) {
        let f = match measure {
            Measure::Closeness => Finalized::closeness(v, g.n(), sum, reached),
            Measure::Harmonic => Finalized::harmonic(v, h, reached),
        };
        self.best.push(f.cost());
        if self.best.len() > self.k {
            self.best.pop();
        }
        self.finalized.push(f);
        self.done[v] = true;
    }

    fn tighten(&mut self, g: &Graph, v: usize, new: Cost) {
        if self.done[v] || new <= self.cost[v] {
            return;
        }
        self.cost[v] = new;
        self.version[v] += 1;
        self.heap.push(Reverse(QItem { cost: new, degree: g.degree(v), node: v, version: self.version[v] }));
        if let Some(t) = self.trace.as_mut() {
            t.bound_log.push((v, new.bound()));
        }
    }

    fn merge(&mut self, g: &Graph, measure: Measure, v: usize, w: Work) {
        match w {
            Work::Cut { exact, arcs } => {
                self.m_vis += arcs;
                match exact {
                    Some((sum, reached, h)) => self.settle(g, measure, v, sum, reached, h),
                    None => {
                        self.done[v] = true;
                        self.n_pruned += 1;
                        if let Some(t) = self.trace.as_mut() {
                            t.pruned.push(v);
                        }
                    }
                }
            }
            Work::Full { sum, reached, harmonic, arcs, updates } => {
                self.m_vis += arcs;
                self.settle(g, measure, v, sum, reached, harmonic);
                for (u, c) in updates {
                    self.tighten(g, u, c);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::topk_reference;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges, false)
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges, false)
    }

    fn summary(r: &TopKResult) -> Vec<(usize, usize, f64)> {
        r.entries.iter().map(|e| (e.rank, e.node, e.value)).collect()
    }

    #[test]
    fn path4_every_variant() {
        let g = path(4);
        for v in Variant::ALL {
            let r = topk(&g, 1, v, Measure::Closeness);
            assert_eq!(summary(&r), vec![(1, 1, 0.75), (1, 2, 0.75)], "{v}");
            assert!(r.m_vis <= 2 * g.m() as u64 * g.n() as u64);
        }
    }

    #[test]
    fn star_k2_includes_tied_leaves() {
        let g = star(3);
        for v in Variant::ALL {
            let r = topk(&g, 2, v, Measure::Closeness);
            let nodes: Vec<_> = r.entries.iter().map(|e| e.node).collect();
            assert_eq!(nodes, vec![0, 1, 2, 3]);
            assert_eq!(r.entries[0].rank, 1);
            assert!(r.entries[1..].iter().all(|e| e.rank == 2));
        }
    }

    #[test]
    fn k_equal_n_returns_everything() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 3)], true);
        for m in [Measure::Closeness, Measure::Harmonic] {
            let want = summary(&topk_reference(&g, 6, m));
            for v in Variant::ALL {
                assert_eq!(summary(&topk(&g, 6, v, m)), want, "{v} {m}");
            }
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let g = path(30);
        let opts = TopKOptions { threads: Some(4), trace: false };
        for v in Variant::ALL {
            let a = topk(&g, 3, v, Measure::Closeness);
            let b = topk_with(&g, 3, v, Measure::Closeness, &opts);
            assert_eq!(summary(&a), summary(&b));
        }
    }

    #[test]
    fn improvement_factor_definition() {
        let g = path(5);
        let r = topk_reference(&g, 1, Measure::Closeness);
        assert_eq!(improvement_factor(&r, &g), 1.0);
        let mut r = r;
        r.m_vis = 0;
        assert!(improvement_factor(&r, &g).is_infinite());
    }

    #[test]
    fn names_round_trip() {
        assert_eq!("harmonic".parse::<Measure>().unwrap(), Measure::Harmonic);
        assert!("nope".parse::<Measure>().is_err());
        assert_eq!(Method::Pruned(Variant::NbBound).as_str(), "nbbound");
    }
}
