// SPDX-License-Identifier: Apache-2.0

//! Random graph families for tests and benchmarks.

use rand::seq::index::sample;
use rand::Rng;

use crate::gadget::TdsInstance;
use crate::graph::Graph;

/// `G(n, p)`: every pair (ordered pair if directed) is an edge with
/// probability `p`.
pub fn erdos_renyi<R: Rng>(n: usize, p: f64, directed: bool, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        let start = if directed { 0 } else { u + 1 };
        for w in start..n {
            if u != w && rng.gen_bool(p) {
                edges.push((u, w));
            }
        }
    }
    Graph::from_edges(n, &edges, directed)
}

/// Preferential attachment: starts from a clique on `m + 1` nodes, then each
/// new node links to `m` distinct earlier nodes picked proportionally to
/// degree. Directed output orients each new edge at random.
pub fn preferential_attachment<R: Rng>(n: usize, m: usize, directed: bool, rng: &mut R) -> Graph {
    assert!(m >= 1, "m must be positive");
    let seed = (m + 1).min(n);
    let mut edges = Vec::new();
    // Every edge endpoint, so a uniform pick is degree-proportional.
    let mut ends: Vec<usize> = Vec::new();
    for u in 0..seed {
        for w in u + 1..seed {
            edges.push((u, w));
            ends.extend([u, w]);
        }
    }
    let mut picked = Vec::with_capacity(m);
    for v in seed..n {
        picked.clear();
        while picked.len() < m.min(v) {
            let t = if ends.is_empty() { rng.gen_range(0..v) } else { ends[rng.gen_range(0..ends.len())] };
            if !picked.contains(&t) {
                picked.push(t);
            }
        }
        for &t in &picked {
            edges.push((v, t));
            ends.extend([v, t]);
        }
    }
    if directed {
        for e in &mut edges {
            if rng.gen_bool(0.5) {
                *e = (e.1, e.0);
            }
        }
    }
    Graph::from_edges(n, &edges, directed)
}

/// Random recursive tree: node `i` hangs off a uniform earlier node.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    random_windowed_tree(n, n, rng)
}

/// Node `i` hangs off one of the `window` nodes before it; small windows
/// give long diameters.
pub fn random_windowed_tree<R: Rng>(n: usize, window: usize, rng: &mut R) -> Graph {
    assert!(window >= 1, "window must be positive");
    let edges: Vec<_> = (1..n)
        .map(|i| (rng.gen_range(i.saturating_sub(window)..i), i))
        .collect();
    Graph::from_edges(n, &edges, false)
}

/// Random TwoDisjointSet instance with `1 ≤ |X| ≤ max_elems` and
/// `max(2, |X|) ≤ |C| ≤ max_sets`. Sets are non-empty.
pub fn random_tds<R: Rng>(max_sets: usize, max_elems: usize, rng: &mut R) -> TdsInstance {
    assert!(max_elems >= 1 && max_sets >= max_elems.max(2), "parameter regime is empty");
    let x = rng.gen_range(1..=max_elems);
    let c = rng.gen_range(x.max(2)..=max_sets);
    let ground: Vec<usize> = (1..=x).collect();
    let sets = (0..c)
        .map(|_| {
            let size = rng.gen_range(1..=x);
            let mut s: Vec<usize> = sample(rng, x, size).into_iter().map(|i| i + 1).collect();
            s.sort_unstable();
            s
        })
        .collect();
    TdsInstance::new(ground, sets).expect("generated sets lie in the ground set")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bfs;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for window in [1, 3, 1000] {
            let g = random_windowed_tree(300, window, &mut rng);
            assert_eq!(g.m(), 299);
            assert_eq!(bfs(&g, 0).reached, 300);
        }
        assert_eq!(random_windowed_tree(50, 1, &mut rng).m(), 49);
    }

    #[test]
    fn pa_degree_and_size() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = preferential_attachment(500, 3, false, &mut rng);
        assert_eq!(g.n(), 500);
        assert_eq!(g.m(), 6 + 3 * 496);
        assert_eq!(bfs(&g, 0).reached, 500);
        let d = preferential_attachment(200, 2, true, &mut rng);
        assert!(d.is_directed());
    }

    #[test]
    fn er_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(erdos_renyi(10, 0.0, false, &mut rng).m(), 0);
        assert_eq!(erdos_renyi(10, 1.0, false, &mut rng).m(), 45);
        assert_eq!(erdos_renyi(10, 1.0, true, &mut rng).m(), 90);
    }

    #[test]
    fn tds_regime() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let i = random_tds(12, 8, &mut rng);
            assert!(!i.ground.is_empty() && i.ground.len() <= i.sets.len());
            assert!(i.sets.len() >= 2 && i.sets.len() <= 12);
            assert!(i.sets.iter().all(|s| !s.is_empty()));
        }
    }
}
