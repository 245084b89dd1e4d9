// SPDX-License-Identifier: Apache-2.0

//! Level-difference bounds from one full BFS.
//!
//! After a BFS from `s`, two nodes at levels `i` and `j` are at distance at
//! least `|i - j|`, and only `deg(v)` nodes can be adjacent to `v`. Every node
//! at the same level gets the same level bound `L(i)` minus its own degree,
//! so one BFS yields bounds for its whole reachable set in `O(n + m)`.
//!
//! Directed graphs only keep the `j > i` half of the argument: a node on an
//! earlier level may sit one arc away.

use crate::farness::Farness;
use crate::graph::{bfs, BfsScratch, Graph};
use crate::reach::ReachInfo;

/// Levels farther than this are lumped together in harmonic bounds.
const HARMONIC_WINDOW: usize = 32;

#[derive(Debug, Clone)]
pub struct LevelProfile {
    directed: bool,
    /// `gamma[i]` nodes at distance `i`; `gamma[0] = 1`.
    pub gamma: Vec<usize>,
    /// `Σ_{1≤j≤i} Γ_j`. Level 0 (the source) is left out.
    pub cum_leq: Vec<i64>,
    /// `Σ_{j>i} Γ_j`.
    pub cum_gt: Vec<i64>,
    /// `L(i)` for `1 ≤ i ≤ maxD`; index 0 is unused.
    pub level_bound: Vec<i64>,
}

impl LevelProfile {
    /// `gamma` as produced by a BFS: `gamma[0] = 1`, no trailing zeros.
    pub fn undirected(gamma: &[usize]) -> LevelProfile {
        LevelProfile::build(gamma, false)
    }

    pub fn directed(gamma: &[usize]) -> LevelProfile {
        LevelProfile::build(gamma, true)
    }

    fn build(gamma: &[usize], directed: bool) -> LevelProfile {
        assert!(!gamma.is_empty(), "empty level profile");
        let max_d = gamma.len() - 1;
        let mut cum_leq = vec![0i64; max_d + 1];
        for i in 1..=max_d {
            cum_leq[i] = cum_leq[i - 1] + gamma[i] as i64;
        }
        let total = cum_leq[max_d];
        let cum_gt = cum_leq.iter().map(|&c| total - c).collect();
        let mut p = LevelProfile {
            directed,
            gamma: gamma.to_vec(),
            cum_leq,
            cum_gt,
            level_bound: vec![0; max_d + 1],
        };
        if max_d >= 1 {
            p.level_bound[1] = p.level_bound_direct(1);
            for i in 2..=max_d {
                let step = if directed {
                    -p.gt(i + 1)
                } else {
                    p.leq(i as i64 - 3) - p.gt(i + 1)
                };
                p.level_bound[i] = p.level_bound[i - 1] + step;
            }
        }
        p
    }

    pub fn max_d(&self) -> usize {
        self.gamma.len() - 1
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    fn leq(&self, i: i64) -> i64 {
        if i <= 0 {
            0
        } else {
            self.cum_leq[(i as usize).min(self.max_d())]
        }
    }

    fn gt(&self, i: usize) -> i64 {
        if i > self.max_d() {
            0
        } else {
            self.cum_gt[i]
        }
    }

    /// `L(i)` summed straight from its definition.
    ///
    /// Undirected: `2·Σ_{|j-i|≤1} Γ_j + Σ_{|j-i|>1} Γ_j·|j-i| - 2`, with the
    /// source level counted as empty.
    /// Directed: `2·Σ_{j≤i+1} Γ_j + Σ_{j>i+1} Γ_j·(j-i) - 2`, source included.
    pub fn level_bound_direct(&self, i: usize) -> i64 {
        let mut total = -2i64;
        for (j, &c) in self.gamma.iter().enumerate() {
            let c = c as i64;
            if self.directed {
                if j <= i + 1 {
                    total += 2 * c;
                } else {
                    total += c * (j - i) as i64;
                }
            } else if j > 0 {
                let gap = j.abs_diff(i) as i64;
                total += if gap <= 1 { 2 * c } else { c * gap };
            }
        }
        total
    }

    /// Upper bound on `h(v)` for a node at level `i ≥ 1` with degree `deg`.
    /// All reached nodes count here, the source included.
    pub fn harmonic_bound(&self, i: usize, deg: usize) -> f64 {
        let max_d = self.max_d();
        let (lo, hi) = if self.directed {
            (0, (i + 1).min(max_d))
        } else {
            (i - 1, (i + 1).min(max_d))
        };
        let band: usize = self.gamma[lo..=hi].iter().sum();
        let mut h = deg as f64 + band.saturating_sub(1 + deg) as f64 / 2.0;

        let mut far = 0.0;
        let mut beyond = 0usize;
        let mut add = |j: usize, gap: usize| {
            if gap <= HARMONIC_WINDOW {
                far += self.gamma[j] as f64 / gap as f64;
            } else {
                beyond += self.gamma[j];
            }
        };
        for j in hi + 1..=max_d.min(i + HARMONIC_WINDOW) {
            add(j, j - i);
        }
        let below = !self.directed && lo > 0;
        if below {
            for j in i.saturating_sub(HARMONIC_WINDOW)..lo {
                add(j, i - j);
            }
        }
        if i + HARMONIC_WINDOW < max_d {
            beyond += self.gamma[i + HARMONIC_WINDOW + 1..].iter().sum::<usize>();
        }
        if below && i > HARMONIC_WINDOW {
            beyond += self.gamma[..i - HARMONIC_WINDOW].iter().sum::<usize>();
        }
        h += far + beyond as f64 / (HARMONIC_WINDOW + 1) as f64;
        h
    }
}

/// A bound produced for one node.
#[derive(Debug, Clone, Copy)]
pub struct LevelBound {
    pub node: usize,
    pub farness: Farness,
    pub harmonic: f64,
}

/// Bounds for every node of `s`'s reachable set that shares `s`'s
/// (strongly) connected component, from a completed BFS held in `scratch`.
pub(crate) fn bounds_from_scratch<F>(
    g: &Graph,
    s: usize,
    counts: &[usize],
    scratch: &BfsScratch,
    reach: &ReachInfo,
    mut emit: F,
) where
    F: FnMut(LevelBound),
{
    let profile = if g.is_directed() {
        LevelProfile::directed(counts)
    } else {
        LevelProfile::undirected(counts)
    };
    let n = g.n();
    let r = scratch.queue.len();
    for &v in &scratch.queue[1..] {
        if !reach.same_component(s, v) {
            continue;
        }
        let i = scratch.dist[v] as usize;
        let deg = g.degree(v);
        let sum = profile.level_bound[i] - deg as i64;
        emit(LevelBound {
            node: v,
            farness: Farness::new(n, sum as i128, r),
            harmonic: profile.harmonic_bound(i, deg),
        });
    }
}

/// Level bounds induced by a BFS from `s`. Nodes outside the scope get `None`.
pub fn level_lower_bounds(g: &Graph, s: usize, reach: &ReachInfo) -> Vec<Option<LevelBound>> {
    let mut out = vec![None; g.n()];
    let b = bfs(g, s);
    let mut scratch = BfsScratch::new(g.n());
    scratch.queue = b.order.clone();
    scratch.dist = b.dist.clone();
    bounds_from_scratch(g, s, &b.level_counts, &scratch, reach, |lb| out[lb.node] = Some(lb));
    out
}

/// `h(v) ≤ deg + (r - 1 - deg)/2` with `r ≤ omega`.
pub fn degree_harmonic_bound(deg: usize, omega: usize) -> f64 {
    deg as f64 + omega.saturating_sub(1 + deg) as f64 / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baseline::{closeness_all, harmonic_all};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges, false)
    }

    #[test]
    fn path5_levels() {
        let p = LevelProfile::undirected(&[1, 1, 1, 1, 1]);
        assert_eq!(p.level_bound[1], 7);
        assert_eq!(p.level_bound[2], 6);
        assert_eq!(p.level_bound_direct(2), 6);
        for i in 1..=4 {
            assert_eq!(p.level_bound[i], p.level_bound_direct(i));
        }
    }

    #[test]
    fn path5_level_one_node() {
        let g = path(5);
        let reach = ReachInfo::compute(&g);
        let b = level_lower_bounds(&g, 0, &reach);
        let lb = b[1].unwrap();
        assert_eq!(lb.farness, Farness::new(5, 5, 5));
        assert!(lb.farness <= closeness_all(&g).farness(5, 1));
        assert!(b[0].is_none());
    }

    #[test]
    fn star_leaf_bound() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)], false);
        let reach = ReachInfo::compute(&g);
        let p = LevelProfile::undirected(&[1, 2]);
        assert_eq!(p.level_bound[1], 2);
        let b = level_lower_bounds(&g, 0, &reach);
        assert_eq!(b[1].unwrap().farness, Farness::new(3, 1, 3));
        assert_eq!(closeness_all(&g).sum_dist.unwrap()[1], 3);
    }

    #[test]
    fn directed_recurrence_matches_direct() {
        let p = LevelProfile::directed(&[1, 3, 2, 4, 1, 1]);
        for i in 1..=5 {
            assert_eq!(p.level_bound[i], p.level_bound_direct(i), "level {i}");
        }
    }

    #[test]
    fn directed_scope_is_source_scc() {
        // {0,1,2} cycle → 3 → 4
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)], true);
        let reach = ReachInfo::compute(&g);
        let b = level_lower_bounds(&g, 0, &reach);
        assert!(b[1].is_some() && b[2].is_some());
        assert!(b[3].is_none() && b[4].is_none());
        let t = closeness_all(&g);
        for v in 1..3 {
            assert!(b[v].unwrap().farness <= t.farness(5, v));
        }
    }

    #[test]
    fn harmonic_bounds_hold_on_long_path() {
        let g = path(90);
        let reach = ReachInfo::compute(&g);
        let h = harmonic_all(&g);
        for s in [0, 10, 45] {
            let b = level_lower_bounds(&g, s, &reach);
            for v in 0..90 {
                if let Some(lb) = b[v] {
                    assert!(lb.harmonic + 1e-9 >= h.value[v], "s={s} v={v}");
                }
            }
        }
        assert_eq!(degree_harmonic_bound(2, 5), 3.0);
    }
}
