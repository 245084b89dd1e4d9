// SPDX-License-Identifier: Apache-2.0

//! Immutable unweighted graph in compressed sparse row form.
//!
//! Node ids are dense (`0..n`). Arbitrary string tokens from an edge list are
//! interned in first-appearance order and kept for output. Self-loops are
//! dropped and parallel arcs collapsed, so every adjacency list is a sorted
//! set of distinct neighbors.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::BufRead;
use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Distance sentinel for nodes not reached by a BFS.
pub const UNREACHED: u32 = u32::MAX;

#[derive(Debug, Clone)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Csr {
    fn from_sorted_arcs(n: usize, arcs: &[(usize, usize)]) -> Self {
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in arcs {
            offsets[u + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let targets = arcs.iter().map(|&(_, w)| w).collect();
        Csr { offsets, targets }
    }

    #[inline]
    fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }
}

#[derive(Debug)]
pub struct Graph {
    directed: bool,
    m: usize,
    out: Csr,
    inc: OnceLock<Csr>,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Graph {
    /// Builds a graph over nodes `0..n` labelled by their decimal id.
    ///
    /// Panics if an endpoint is out of range.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], directed: bool) -> Graph {
        let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        for &(u, w) in edges {
            assert!(u < n && w < n, "edge ({u}, {w}) out of range for n = {n}");
        }
        Graph::assemble(labels, edges.iter().copied(), directed)
    }

    /// Builds a graph whose node `i` carries `labels[i]`.
    ///
    /// Panics on duplicate labels or out-of-range endpoints.
    pub fn from_labeled_edges(
        labels: Vec<String>,
        edges: &[(usize, usize)],
        directed: bool,
    ) -> Graph {
        let n = labels.len();
        for &(u, w) in edges {
            assert!(u < n && w < n, "edge ({u}, {w}) out of range for n = {n}");
        }
        let g = Graph::assemble(labels, edges.iter().copied(), directed);
        assert_eq!(g.index.len(), n, "duplicate node labels");
        g
    }

    fn assemble(
        labels: Vec<String>,
        edges: impl Iterator<Item = (usize, usize)>,
        directed: bool,
    ) -> Graph {
        let n = labels.len();
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (u, w) in edges {
            if u == w {
                continue;
            }
            arcs.push((u, w));
            if !directed {
                arcs.push((w, u));
            }
        }
        arcs.sort_unstable();
        arcs.dedup();
        let m = if directed { arcs.len() } else { arcs.len() / 2 };
        let out = Csr::from_sorted_arcs(n, &arcs);
        let index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        Graph {
            directed,
            m,
            out,
            inc: OnceLock::new(),
            labels,
            index,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    /// Arcs if directed, undirected edges otherwise.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Out-neighbors (all neighbors when undirected).
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        self.out.neighbors(v)
    }

    /// In-neighbors. Built on first use for directed graphs.
    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        if !self.directed {
            return self.out.neighbors(v);
        }
        self.inc
            .get_or_init(|| {
                let n = self.n();
                let mut arcs: Vec<(usize, usize)> = (0..n)
                    .flat_map(|u| self.neighbors(u).iter().map(move |&w| (w, u)))
                    .collect();
                arcs.sort_unstable();
                Csr::from_sorted_arcs(n, &arcs)
            })
            .neighbors(v)
    }

    /// Degree when undirected, out-degree when directed.
    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.out.offsets[v + 1] - self.out.offsets[v]
    }

    /// Total number of adjacency entries (`2m` undirected, `m` directed).
    #[inline]
    pub fn adjacency_len(&self) -> usize {
        self.out.targets.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Iterates arcs `(u, w)`; undirected edges are yielded once with `u < w`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&w| self.directed || u < w)
                .map(move |w| (u, w))
        })
    }

    /// Serializes to the edge-list text format. Isolated nodes are written as
    /// self-loop lines so they survive a re-parse.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        let mut touched = vec![false; self.n()];
        for (u, w) in self.edges() {
            touched[u] = true;
            touched[w] = true;
            let _ = writeln!(out, "{} {}", self.labels[u], self.labels[w]);
        }
        for (v, t) in touched.iter().enumerate() {
            if !t {
                let _ = writeln!(out, "{0} {0}", self.labels[v]);
            }
        }
        out
    }
}

/// Parses a whitespace-separated edge list. Lines starting with `#` or `%`
/// are comments; tokens past the second on a line are ignored.
pub fn parse_edge_list<R: BufRead>(reader: R, directed: bool) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    let mut intern = |tok: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&id) = index.get(tok) {
            return id;
        }
        let id = labels.len();
        labels.push(tok.to_owned());
        index.insert(tok.to_owned(), id);
        id
    };

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let (Some(a), Some(b)) = (toks.next(), toks.next()) else {
            return Err(Error::MalformedLine { line: lineno + 1 });
        };
        let u = intern(a, &mut labels);
        let w = intern(b, &mut labels);
        edges.push((u, w));
    }

    if labels.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(Graph::assemble(labels, edges.into_iter(), directed))
}

pub fn parse_edge_list_str(text: &str, directed: bool) -> Result<Graph> {
    parse_edge_list(text.as_bytes(), directed)
}

#[derive(Debug, Clone)]
pub struct BfsResult {
    pub source: usize,
    /// Shortest-path distance or [`UNREACHED`].
    pub dist: Vec<u32>,
    /// Visit sequence, source first.
    pub order: Vec<usize>,
    /// `level_counts[d]` is the number of nodes at distance `d`.
    pub level_counts: Vec<usize>,
    pub reached: usize,
    pub visited_arcs: u64,
    /// Set when the level callback stopped the search early.
    pub truncated: bool,
}

impl BfsResult {
    pub fn eccentricity(&self) -> usize {
        self.level_counts.len() - 1
    }

    /// Sum of distances to all reached nodes.
    pub fn distance_sum(&self) -> u64 {
        self.level_counts
            .iter()
            .enumerate()
            .map(|(d, &c)| d as u64 * c as u64)
            .sum()
    }
}

/// Snapshot handed to the level callback of [`bfs_with`].
#[derive(Debug)]
pub struct BfsProgress<'a> {
    pub level: usize,
    pub level_counts: &'a [usize],
    pub reached: usize,
    pub visited_arcs: u64,
}

pub fn bfs(g: &Graph, source: usize) -> BfsResult {
    bfs_with(g, source, |_| ControlFlow::Continue(()))
}

/// Level-synchronous BFS. `on_level` runs once every node at distance `d` has
/// been discovered; breaking stops the search before level `d` is expanded.
pub fn bfs_with<F>(g: &Graph, source: usize, mut on_level: F) -> BfsResult
where
    F: FnMut(&BfsProgress<'_>) -> ControlFlow<()>,
{
    assert!(source < g.n(), "source {source} out of range");
    let mut dist = vec![UNREACHED; g.n()];
    let mut order = Vec::with_capacity(g.n());
    let mut level_counts = vec![1usize];
    let mut visited_arcs = 0u64;
    let mut truncated = false;

    dist[source] = 0;
    order.push(source);
    let mut begin = 0;
    let mut d = 0u32;
    loop {
        let end = order.len();
        let progress = BfsProgress {
            level: d as usize,
            level_counts: &level_counts,
            reached: end,
            visited_arcs,
        };
        if on_level(&progress).is_break() {
            truncated = true;
            break;
        }
        for i in begin..end {
            let u = order[i];
            let adj = g.neighbors(u);
            visited_arcs += adj.len() as u64;
            for &w in adj {
                if dist[w] == UNREACHED {
                    dist[w] = d + 1;
                    order.push(w);
                }
            }
        }
        if order.len() == end {
            break;
        }
        level_counts.push(order.len() - end);
        begin = end;
        d += 1;
    }

    BfsResult {
        source,
        reached: order.len(),
        dist,
        order,
        level_counts,
        visited_arcs,
        truncated,
    }
}

/// Reusable visited-state for repeated searches; only touched entries are
/// reset between runs.
#[derive(Debug, Clone)]
pub struct BfsScratch {
    pub(crate) dist: Vec<u32>,
    pub(crate) queue: Vec<usize>,
}

impl BfsScratch {
    pub fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![UNREACHED; n],
            queue: Vec::with_capacity(n),
        }
    }

    pub(crate) fn reset(&mut self) {
        for &v in &self.queue {
            self.dist[v] = UNREACHED;
        }
        self.queue.clear();
    }
}

/// Full BFS on a scratch buffer. Returns level counts and scanned arcs; the
/// visit order and distances stay in `scratch` until the next reset.
pub(crate) fn bfs_levels(g: &Graph, source: usize, scratch: &mut BfsScratch) -> (Vec<usize>, u64) {
    scratch.reset();
    let BfsScratch { dist, queue } = scratch;
    dist[source] = 0;
    queue.push(source);
    let mut counts = vec![1usize];
    let mut arcs = 0u64;
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u];
        let adj = g.neighbors(u);
        arcs += adj.len() as u64;
        for &w in adj {
            if dist[w] == UNREACHED {
                dist[w] = du + 1;
                queue.push(w);
                let lvl = (du + 1) as usize;
                if counts.len() <= lvl {
                    counts.push(0);
                }
                counts[lvl] += 1;
            }
        }
    }
    (counts, arcs)
}

/// Nodes by decreasing (out-)degree, ties by ascending id. Counting sort.
pub fn degree_descending_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut start = vec![0usize; max_deg + 2];
    for v in 0..n {
        start[max_deg - g.degree(v) + 1] += 1;
    }
    for i in 0..=max_deg {
        start[i + 1] += start[i];
    }
    let mut out = vec![0usize; n];
    for v in 0..n {
        let slot = &mut start[max_deg - g.degree(v)];
        out[*slot] = v;
        *slot += 1;
    }
    out
}
