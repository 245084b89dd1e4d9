// SPDX-License-Identifier: Apache-2.0

//! Seeded graph corpus shared by the integration suites.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use topk_closeness::generators::{erdos_renyi, preferential_attachment};
use topk_closeness::Graph;

pub const CORPUS_SIZE: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    ErdosRenyi,
    PreferentialAttachment,
}

pub struct Case {
    pub seed: u64,
    pub family: Family,
    pub directed: bool,
    /// Built to leave some nodes unreachable from others.
    pub split: bool,
    pub graph: Graph,
}

impl Case {
    pub fn name(&self) -> String {
        format!(
            "seed={} {:?} directed={} split={} n={} m={}",
            self.seed,
            self.family,
            self.directed,
            self.split,
            self.graph.n(),
            self.graph.m()
        )
    }
}

/// Places `b` next to `a` with no edges between them.
pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let off = a.n();
    let edges: Vec<_> = a.edges().chain(b.edges().map(|(u, w)| (u + off, w + off))).collect();
    Graph::from_edges(a.n() + b.n(), &edges, a.is_directed())
}

pub fn case(seed: u64) -> Case {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
    let family = if seed % 2 == 0 { Family::ErdosRenyi } else { Family::PreferentialAttachment };
    let directed = (seed / 2) % 2 == 1;
    let split = (seed / 4) % 2 == 1;
    let n = rng.gen_range(5..=200);
    let graph = match (family, split) {
        (Family::ErdosRenyi, false) => {
            // Comfortably above the connectivity threshold.
            let p = ((n as f64).ln() * 2.5 / n as f64).min(1.0);
            erdos_renyi(n, p, directed, &mut rng)
        }
        (Family::ErdosRenyi, true) => {
            let p = rng.gen_range(0.3..1.2) / n as f64;
            erdos_renyi(n, p, directed, &mut rng)
        }
        (Family::PreferentialAttachment, false) => {
            let m = rng.gen_range(1..=4);
            preferential_attachment(n, m, directed, &mut rng)
        }
        (Family::PreferentialAttachment, true) => {
            let first = rng.gen_range(2..n - 2);
            let a = preferential_attachment(first, rng.gen_range(1..=3), directed, &mut rng);
            let b = preferential_attachment(n - first, rng.gen_range(1..=3), directed, &mut rng);
            disjoint_union(&a, &b)
        }
    };
    Case { seed, family, directed, split, graph }
}

pub fn corpus() -> Vec<Case> {
    (0..CORPUS_SIZE as u64).map(case).collect()
}
