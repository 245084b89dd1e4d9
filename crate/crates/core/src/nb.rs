// SPDX-License-Identifier: Apache-2.0

//! Neighborhood-based bounds.
//!
//! For every node `s`, `γ̃_k(s)` over-counts the nodes at distance `k`:
//! non-backtracking walks for undirected graphs, plain walks along
//! out-arcs for directed ones. Levels are filled greedily with these counts
//! until the reachable set is exhausted, which can only place nodes too
//! close, so the resulting distance sum is a lower bound. On trees the walk
//! counts are exact and so is the sum.

use rayon::prelude::*;

use crate::baseline::CentralityTable;
use crate::error::{Error, Result};
use crate::farness::Farness;
use crate::graph::{bfs, Graph};
use crate::reach::ReachInfo;
use crate::solver::Measure;

/// Saturated walk count; stands for "more than anything we compare against".
const SAT: u64 = u64::MAX;

fn next_gamma(g: &Graph, s: usize, k: usize, prev1: &[u64], prev2: &[u64]) -> u64 {
    let deg = g.degree(s) as u64;
    if k == 1 {
        return deg;
    }
    if deg == 0 {
        return 0;
    }
    let mut sum = 0u64;
    for &w in g.neighbors(s) {
        sum = sum.saturating_add(prev1[w]);
    }
    if sum == SAT || g.is_directed() {
        return sum;
    }
    let back = if k == 2 {
        deg
    } else {
        if prev2[s] == SAT && deg > 1 {
            return SAT;
        }
        prev2[s].saturating_mul(deg - 1)
    };
    sum.saturating_sub(back)
}

/// One sweep of the walk-count recurrence over all nodes.
fn sweep(g: &Graph, k: usize, prev1: &[u64], prev2: &[u64], out: &mut [u64]) {
    out.par_iter_mut()
        .enumerate()
        .for_each(|(s, slot)| *slot = next_gamma(g, s, k, prev1, prev2));
}

/// Exact distance sums on a tree together with the number of level sweeps.
pub fn tree_distance_sums(g: &Graph) -> Result<(Vec<u64>, usize)> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    if g.m() + 1 != n {
        return Err(Error::NotATree("edge count is not n - 1"));
    }
    if bfs(g, 0).reached != n {
        return Err(Error::NotATree("graph is disconnected"));
    }

    let mut sums = vec![0u64; n];
    let mut prev2 = vec![1u64; n];
    let mut prev1 = vec![1u64; n];
    let mut cur = vec![0u64; n];
    let mut k = 1;
    let mut levels = 0;
    loop {
        sweep(g, k, &prev1, &prev2, &mut cur);
        levels += 1;
        let mut any = false;
        for (s, &c) in cur.iter().enumerate() {
            if c > 0 {
                sums[s] += k as u64 * c;
                any = true;
            }
        }
        if !any {
            break;
        }
        std::mem::swap(&mut prev2, &mut prev1);
        std::mem::swap(&mut prev1, &mut cur);
        k += 1;
    }
    Ok((sums, levels))
}

/// Exact closeness of every node of an undirected tree.
pub fn tree_closeness(g: &Graph) -> Result<CentralityTable> {
    let (sums, _) = tree_distance_sums(g)?;
    let n = g.n();
    Ok(CentralityTable {
        measure: Measure::Closeness,
        value: sums
            .iter()
            .map(|&s| Farness::new(n, s as i128, n).closeness())
            .collect(),
        sum_dist: Some(sums),
        reached: vec![n; n],
        visited_arcs: 0,
    })
}

#[derive(Debug, Clone)]
pub struct NbBounds {
    /// Farness lower bounds.
    pub farness: Vec<Farness>,
    /// Harmonic upper bounds.
    pub harmonic: Vec<f64>,
    /// Level sweeps performed.
    pub levels: usize,
}

#[derive(Debug, Clone, Copy)]
struct NodeState {
    visited: u64,
    sum: u64,
    best: Farness,
    harmonic: f64,
    done: bool,
}

impl NodeState {
    /// Accounts level `k` holding (at most) `gamma` nodes. `alpha == omega`
    /// in the exact modes. Farness candidates are `alpha`, `omega` and every
    /// prefix sum strictly between them; elsewhere the bound as a function
    /// of `r` cannot have a local minimum.
    fn absorb(&mut self, n: usize, k: u64, gamma: u64, alpha: u64, omega: u64) {
        let p_prev = self.visited;
        let p_new = p_prev.saturating_add(gamma);
        let eval = |r: u64, sum: u64| Farness::new(n, (sum + k * (r - p_prev)) as i128, r as usize);

        let take = gamma.min(omega.saturating_sub(p_prev));
        self.harmonic += take as f64 / k as f64;

        if alpha > p_prev && alpha <= p_new && alpha < omega {
            self.best = self.best.min(eval(alpha, self.sum));
        }
        if p_new > alpha && p_new < omega {
            self.best = self.best.min(eval(p_new, self.sum));
        }
        if omega <= p_new {
            self.best = self.best.min(eval(omega, self.sum));
            self.done = true;
        } else if gamma == 0 {
            // No walks left, so r(v) ≤ p_prev and every feasible r was seen.
            debug_assert!(alpha <= p_prev);
            self.done = true;
        } else {
            self.sum += k * gamma;
            self.visited = p_new;
        }
    }
}

pub fn nb_lower_bounds(g: &Graph, reach: &ReachInfo) -> NbBounds {
    run(g, reach, None)
}

/// Like [`nb_lower_bounds`] but also returns each node's `γ̃` sequence,
/// starting at `γ̃_1`, up to the level where it finished.
pub fn nb_lower_bounds_traced(g: &Graph, reach: &ReachInfo) -> (NbBounds, Vec<Vec<u64>>) {
    let mut trace = vec![Vec::new(); g.n()];
    let b = run(g, reach, Some(&mut trace));
    (b, trace)
}

fn run(g: &Graph, reach: &ReachInfo, mut trace: Option<&mut Vec<Vec<u64>>>) -> NbBounds {
    let n = g.n();
    assert_eq!(reach.len(), n, "reach info does not match graph");
    let init = NodeState {
        visited: 1,
        sum: 0,
        best: Farness::INFINITE,
        harmonic: 0.0,
        done: false,
    };
    let mut state = vec![init; n];
    let mut prev2 = vec![1u64; n];
    let mut prev1 = vec![1u64; n];
    let mut cur = vec![0u64; n];
    let mut remaining = n;
    let mut k = 1;

    while remaining > 0 {
        sweep(g, k, &prev1, &prev2, &mut cur);
        for v in 0..n {
            let st = &mut state[v];
            if st.done {
                continue;
            }
            if let Some(t) = trace.as_deref_mut() {
                t[v].push(cur[v]);
            }
            let (a, o) = (reach.alpha(v) as u64, reach.omega(v) as u64);
            st.absorb(n, k as u64, cur[v], a, o);
            if st.done {
                remaining -= 1;
            }
        }
        std::mem::swap(&mut prev2, &mut prev1);
        std::mem::swap(&mut prev1, &mut cur);
        k += 1;
    }

    NbBounds {
        farness: state.iter().map(|s| s.best).collect(),
        harmonic: state.iter().map(|s| s.harmonic).collect(),
        levels: k - 1,
    }
}

/// The NB farness bound assuming `r(v) = r`, from a traced `γ̃` sequence.
/// Values of `r` the walk counts rule out map to +∞.
pub fn nb_farness_at(gammas: &[u64], n: usize, r: usize) -> Farness {
    let r = r as u64;
    let mut visited = 1u64;
    let mut sum = 0u64;
    for (i, &gm) in gammas.iter().enumerate() {
        let k = i as u64 + 1;
        let next = visited.saturating_add(gm);
        if next >= r {
            return Farness::new(n, (sum + k * (r - visited)) as i128, r as usize);
        }
        if gm == 0 {
            break;
        }
        sum += k * gm;
        visited = next;
    }
    Farness::INFINITE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::closeness_all;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges, false)
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges, false)
    }

    #[test]
    fn tree_path3() {
        let t = tree_closeness(&path(3)).unwrap();
        assert_eq!(t.sum_dist.as_ref().unwrap(), &vec![3, 2, 3]);
        assert_eq!(t.value, vec![4.0 / 6.0, 1.0, 4.0 / 6.0]);
    }

    #[test]
    fn tree_star_and_edge() {
        let t = tree_closeness(&star(4)).unwrap();
        assert_eq!(t.value[0], 1.0);
        assert_eq!(t.sum_dist.as_ref().unwrap()[1], 7);
        assert_eq!(t.value[1], 4.0 / 7.0);
        let e = tree_closeness(&path(2)).unwrap();
        assert_eq!(e.value, vec![1.0, 1.0]);
        let single = tree_closeness(&path(1)).unwrap();
        assert_eq!(single.value, vec![0.0]);
    }

    #[test]
    fn tree_rejects_non_trees() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], false);
        assert!(matches!(tree_closeness(&c4), Err(Error::NotATree(_))));
        let split = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 0)], false);
        assert!(tree_closeness(&split).is_err());
        let forest = Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)], false);
        assert!(matches!(tree_closeness(&forest), Err(Error::NotATree(_))));
        let d = Graph::from_edges(2, &[(0, 1)], true);
        assert!(matches!(tree_closeness(&d), Err(Error::DirectedInput)));
    }

    #[test]
    fn four_cycle_bound_is_tight() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], false);
        let reach = ReachInfo::compute(&c4);
        let (b, trace) = nb_lower_bounds_traced(&c4, &reach);
        assert_eq!(trace[0], vec![2, 2]);
        assert!(b.farness.iter().all(|&f| f == Farness::new(4, 4, 4)));
    }

    #[test]
    fn directed_path_bound_is_tight() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)], true);
        let reach = ReachInfo::compute(&g);
        let b = nb_lower_bounds(&g, &reach);
        assert_eq!(b.farness[0], Farness::new(3, 3, 3));
        assert_eq!(b.farness[1], Farness::new(3, 1, 2));
        assert!(b.farness[2].is_infinite());
        assert_eq!(b.harmonic[0], 1.5);
    }

    #[test]
    fn trees_are_exact() {
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)], false);
        let reach = ReachInfo::compute(&g);
        let b = nb_lower_bounds(&g, &reach);
        let t = closeness_all(&g);
        for v in 0..7 {
            assert_eq!(b.farness[v], t.farness(7, v));
        }
    }

    #[test]
    fn isolated_nodes_are_infinite() {
        let g = Graph::from_edges(3, &[(0, 1)], false);
        let reach = ReachInfo::compute(&g);
        let b = nb_lower_bounds(&g, &reach);
        assert!(b.farness[2].is_infinite());
        assert_eq!(b.harmonic[2], 0.0);
        assert_eq!(b.farness[0], Farness::new(3, 1, 2));
    }

    #[test]
    fn saturation_does_not_wrap() {
        // Dense graph, many levels of walk growth.
        let mut edges = Vec::new();
        for u in 0..40 {
            for w in (u + 1)..40 {
                edges.push((u, w));
            }
        }
        for i in 40..200 {
            edges.push((i - 1, i));
        }
        let g = Graph::from_edges(200, &edges, false);
        let reach = ReachInfo::compute(&g);
        let b = nb_lower_bounds(&g, &reach);
        let t = closeness_all(&g);
        for v in 0..200 {
            assert!(b.farness[v] <= t.farness(200, v), "node {v}");
        }
    }

    #[test]
    fn farness_at_matches_greedy_fill() {
        // γ̃ = [2, 2], r = 4: S = 2·1 + 1·2 = 4
        assert_eq!(nb_farness_at(&[2, 2], 4, 4), Farness::new(4, 4, 4));
        // r = 3 lies inside level 1.
        assert_eq!(nb_farness_at(&[2, 2], 4, 3), Farness::new(4, 2, 3));
        // walks die out after 3 nodes, so r = 5 is impossible
        assert!(nb_farness_at(&[2, 0], 9, 5).is_infinite());
        assert!(nb_farness_at(&[2, 0], 9, 1).is_infinite());
    }
}
