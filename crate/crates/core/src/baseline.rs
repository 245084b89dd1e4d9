// SPDX-License-Identifier: Apache-2.0

//! Textbook all-pairs BFS: exact closeness (Lin's index) and harmonic
//! centrality for every node, plus the reference top-k built on them.

use rayon::prelude::*;

use crate::farness::Farness;
use crate::graph::{bfs, Graph};
use crate::solver::{assemble_result, Finalized, Measure, Method, TopKResult};

#[derive(Debug, Clone)]
pub struct CentralityTable {
    pub measure: Measure,
    pub value: Vec<f64>,
    /// Distance sums `S(v)`; closeness only.
    pub sum_dist: Option<Vec<u64>>,
    pub reached: Vec<usize>,
    /// Arcs scanned by all searches.
    pub visited_arcs: u64,
}

impl CentralityTable {
    /// Exact farness of `v`. Panics for harmonic tables.
    pub fn farness(&self, n: usize, v: usize) -> Farness {
        let sums = self.sum_dist.as_ref().expect("farness requires a closeness table");
        Farness::new(n, sums[v] as i128, self.reached[v])
    }
}

/// `Σ_d count_d / d` accumulated in increasing `d`. Every code path that
/// reports a harmonic value sums in this order so results are bit-identical.
pub(crate) fn harmonic_from_levels(level_counts: &[usize]) -> f64 {
    let mut h = 0.0;
    for (d, &c) in level_counts.iter().enumerate().skip(1) {
        h += c as f64 / d as f64;
    }
    h
}

struct SourceStats {
    sum: u64,
    reached: usize,
    harmonic: f64,
    arcs: u64,
}

fn per_source(g: &Graph) -> Vec<SourceStats> {
    (0..g.n())
        .into_par_iter()
        .map(|v| {
            let r = bfs(g, v);
            SourceStats {
                sum: r.distance_sum(),
                reached: r.reached,
                harmonic: harmonic_from_levels(&r.level_counts),
                arcs: r.visited_arcs,
            }
        })
        .collect()
}

pub fn closeness_all(g: &Graph) -> CentralityTable {
    let stats = per_source(g);
    let n = g.n();
    CentralityTable {
        measure: Measure::Closeness,
        value: stats
            .iter()
            .map(|s| Farness::new(n, s.sum as i128, s.reached).closeness())
            .collect(),
        sum_dist: Some(stats.iter().map(|s| s.sum).collect()),
        reached: stats.iter().map(|s| s.reached).collect(),
        visited_arcs: stats.iter().map(|s| s.arcs).sum(),
    }
}

pub fn harmonic_all(g: &Graph) -> CentralityTable {
    let stats = per_source(g);
    CentralityTable {
        measure: Measure::Harmonic,
        value: stats.iter().map(|s| s.harmonic).collect(),
        sum_dist: None,
        reached: stats.iter().map(|s| s.reached).collect(),
        visited_arcs: stats.iter().map(|s| s.arcs).sum(),
    }
}

/// Scores every node and returns all nodes at least as central as the k-th.
/// `k > n` yields every node.
pub fn topk_reference(g: &Graph, k: usize, measure: Measure) -> TopKResult {
    assert!(k >= 1, "k must be positive");
    let table = match measure {
        Measure::Closeness => closeness_all(g),
        Measure::Harmonic => harmonic_all(g),
    };
    topk_from_table(g, &table, k)
}

/// Reference top-k from a precomputed table.
pub fn topk_from_table(g: &Graph, table: &CentralityTable, k: usize) -> TopKResult {
    let n = g.n();
    let finalized = (0..n)
        .map(|v| match table.measure {
            Measure::Closeness => {
                let sum = table.sum_dist.as_ref().unwrap()[v];
                Finalized::closeness(v, n, sum, table.reached[v])
            }
            Measure::Harmonic => Finalized::harmonic(v, table.value[v], table.reached[v]),
        })
        .collect();
    assemble_result(
        g,
        k,
        table.measure,
        Method::Textbook,
        finalized,
        table.visited_arcs,
        0,
    )
}
