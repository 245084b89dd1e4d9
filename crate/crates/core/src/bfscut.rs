// SPDX-License-Identifier: Apache-2.0

//! Early-terminating BFS.
//!
//! After level `d` is complete, put `ũ` nodes at distance `d+1` (every arc
//! leaving level `d` could discover one) and the rest at `d+2`. That gives a
//! lower bound on the distance sum, hence on farness, and an upper bound on
//! harmonic centrality. Arcs that hit visited nodes shrink `ũ` on the fly.
//! The search stops once the bound shows the node is worse than the
//! current k-th best.

use crate::farness::Farness;
use crate::graph::{BfsScratch, Graph, UNREACHED};
use crate::reach::ReachInfo;
use crate::solver::Measure;

/// Harmonic slack: a node is cut only if its bound is below the threshold
/// by more than this.
pub const HARMONIC_EPS: f64 = 1e-9;

/// The current k-th best score.
#[derive(Debug, Clone, Copy)]
pub enum Threshold {
    Farness(Farness),
    Harmonic(f64),
}

impl Threshold {
    /// A threshold that never cuts.
    pub fn unbounded(measure: Measure) -> Threshold {
        match measure {
            Measure::Closeness => Threshold::Farness(Farness::INFINITE),
            Measure::Harmonic => Threshold::Harmonic(f64::NEG_INFINITY),
        }
    }
}

/// A bound evaluated during the search.
#[derive(Debug, Clone, Copy)]
pub enum Bound {
    Farness(Farness),
    Harmonic(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutOutcome {
    Exact { sum: u64, reached: usize, harmonic: f64 },
    Pruned,
}

#[derive(Debug, Clone, Copy)]
pub struct CutResult {
    pub outcome: CutOutcome,
    pub visited_arcs: u64,
}

pub fn bfs_cut(
    g: &Graph,
    v: usize,
    threshold: Threshold,
    reach: &ReachInfo,
    scratch: &mut BfsScratch,
) -> CutResult {
    bfs_cut_observed(g, v, threshold, reach, scratch, |_, _| {})
}

/// [`bfs_cut`], reporting every bound it evaluates as `(level, bound)`.
pub fn bfs_cut_observed<F>(
    g: &Graph,
    v: usize,
    threshold: Threshold,
    reach: &ReachInfo,
    scratch: &mut BfsScratch,
    mut observe: F,
) -> CutResult
where
    F: FnMut(usize, Bound),
{
    let n = g.n();
    let (alpha, omega) = (reach.alpha(v), reach.omega(v));
    if omega <= 1 || g.degree(v) == 0 {
        return CutResult {
            outcome: CutOutcome::Exact { sum: 0, reached: 1, harmonic: 0.0 },
            visited_arcs: 0,
        };
    }

    let undirected = !g.is_directed();
    scratch.reset();
    let BfsScratch { dist, queue } = scratch;
    dist[v] = 0;
    queue.push(v);

    let mut sum = 0u64;
    let mut harmonic = 0.0f64;
    let mut arcs = 0u64;
    let mut u_tilde = g.degree(v) as u64;
    let mut begin = 0;
    let mut d = 0usize;

    // Whether the bound with the current ball and ũ rules `v` out.
    let mut cut = |d: usize, n_d: usize, sum: u64, harmonic: f64, u_tilde: u64| -> bool {
        match threshold {
            Threshold::Farness(x) => {
                let base = sum as i128 - u_tilde as i128;
                let lam = |r: usize| {
                    Farness::new(n, base + (d as i128 + 2) * (r as i128 - n_d as i128), r)
                };
                // Linear in r over the distance sum, so the minimum over
                // [α, ω] sits at an endpoint.
                let lo = alpha.max(n_d).min(omega);
                let bound = lam(lo).min(lam(omega));
                observe(d, Bound::Farness(bound));
                bound > x
            }
            Threshold::Harmonic(x) => {
                let rem = omega.saturating_sub(n_d) as u64;
                let near = u_tilde.min(rem);
                let bound =
                    harmonic + near as f64 / (d + 1) as f64 + (rem - near) as f64 / (d + 2) as f64;
                observe(d, Bound::Harmonic(bound));
                bound < x - HARMONIC_EPS
            }
        }
    };

    loop {
        let end = queue.len();
        if cut(d, end, sum, harmonic, u_tilde) {
            return CutResult { outcome: CutOutcome::Pruned, visited_arcs: arcs };
        }
        let mut next_u = 0u64;
        for i in begin..end {
            let u = queue[i];
            // One arc of every non-source node leads back to its parent and
            // is already excluded from ũ.
            let mut skip = undirected && d > 0;
            for &w in g.neighbors(u) {
                arcs += 1;
                if dist[w] == UNREACHED {
                    dist[w] = d as u32 + 1;
                    queue.push(w);
                    next_u += (g.degree(w) - undirected as usize) as u64;
                } else if skip {
                    skip = false;
                } else {
                    u_tilde = u_tilde.saturating_sub(1);
                    if cut(d, end, sum, harmonic, u_tilde) {
                        return CutResult { outcome: CutOutcome::Pruned, visited_arcs: arcs };
                    }
                }
            }
        }
        let found = queue.len() - end;
        if found == 0 {
            break;
        }
        d += 1;
        sum += (d * found) as u64;
        harmonic += found as f64 / d as f64;
        u_tilde = next_u;
        begin = end;
    }

    CutResult {
        outcome: CutOutcome::Exact { sum, reached: queue.len(), harmonic },
        visited_arcs: arcs,
    }
}
