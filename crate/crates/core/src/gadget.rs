// SPDX-License-Identifier: Apache-2.0

//! Reduction gadget from TwoDisjointSet to "find the most closeness-central
//! node".
//!
//! For a collection `C` of subsets of `X`, the built digraph gives each set
//! `S` a node in `C0` whose closeness depends only on `R_S`, the number of
//! sets meeting `S`, and decreases with it. The instance has two disjoint
//! sets iff the top node's closeness differs from the `R = |C|` value.
//!
//! Layout, with `g(p) = (p+1)(p+2)/2 - 1`:
//! `C0 → Y` (all `q`), each `Y` node owns `|C|` private `Z` sinks,
//! `C0 → X1[x] → C1` for `x ∈ S`, `C0 → X2[x]` for `x ∉ S`, and a chain
//! `C1 → C2 → … → Cp` per set.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::farness::compare_farness;
use crate::graph::Graph;
use crate::solver::{topk, Measure, Variant};

pub const DEFAULT_P: usize = 7;
pub const DEFAULT_Q: usize = 36;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TdsInstance {
    pub ground: Vec<usize>,
    pub sets: Vec<Vec<usize>>,
}

impl TdsInstance {
    pub fn new(ground: Vec<usize>, sets: Vec<Vec<usize>>) -> Result<TdsInstance> {
        let mut sorted = ground.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ground.len() {
            return Err(Error::InvalidParameter("ground set has repeated elements".into()));
        }
        for s in &sets {
            if let Some(x) = s.iter().find(|x| sorted.binary_search(x).is_err()) {
                return Err(Error::InvalidParameter(format!("element {x} not in ground set")));
            }
        }
        Ok(TdsInstance { ground, sets })
    }

    /// `R_S` for every set: how many sets (itself included) it meets.
    pub fn intersection_counts(&self) -> Vec<usize> {
        self.sets
            .iter()
            .map(|a| self.sets.iter().filter(|b| a.iter().any(|x| b.contains(x))).count())
            .collect()
    }
}

/// Pairwise intersection test.
pub fn brute_two_disjoint_sets(inst: &TdsInstance) -> bool {
    let s = &inst.sets;
    (0..s.len()).any(|i| (i + 1..s.len()).any(|j| !s[i].iter().any(|x| s[j].contains(x))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Z,
    Y,
    C0,
    X1,
    X2,
    /// `C_i`, `1 ≤ i ≤ p`.
    Chain(usize),
}

impl Role {
    pub fn name(self) -> String {
        match self {
            Role::Z => "Z".into(),
            Role::Y => "Y".into(),
            Role::C0 => "C0".into(),
            Role::X1 => "X1".into(),
            Role::X2 => "X2".into(),
            Role::Chain(i) => format!("C{i}"),
        }
    }
}

#[derive(Debug)]
pub struct GadgetGraph {
    pub graph: Graph,
    pub roles: Vec<Role>,
    /// Node of set `j` in `C0`.
    pub c0: Vec<usize>,
    pub p: usize,
    pub q: usize,
}

impl GadgetGraph {
    /// One `label role` line per node.
    pub fn role_map_text(&self) -> String {
        let mut out = String::new();
        for (v, r) in self.roles.iter().enumerate() {
            let _ = writeln!(out, "{} {}", self.graph.label(v), r.name());
        }
        out
    }

    pub fn edge_list_text(&self) -> String {
        self.graph.to_edge_list()
    }
}

pub fn g_of(p: usize) -> usize {
    (p + 1) * (p + 2) / 2 - 1
}

/// `(S, r)` of a `C0` node meeting `r_c` sets.
pub fn analytic_c0_pair(inst: &TdsInstance, p: usize, q: usize, r_c: usize) -> (u64, usize) {
    let (c, x) = (inst.sets.len(), inst.ground.len());
    let sum = q * (1 + 2 * c) + x + g_of(p) * r_c;
    let reached = 1 + q * (1 + c) + x + p * r_c;
    (sum as u64, reached)
}

pub fn build_gadget(inst: &TdsInstance, p: usize, q: usize) -> Result<GadgetGraph> {
    if inst.sets.is_empty() {
        return Err(Error::InvalidParameter("empty set collection".into()));
    }
    if p == 0 || q == 0 {
        return Err(Error::InvalidParameter("p and q must be positive".into()));
    }
    let c = inst.sets.len();
    let mut labels = Vec::new();
    let mut roles = Vec::new();
    let mut add = |label: String, role: Role| {
        labels.push(label);
        roles.push(role);
        labels.len() - 1
    };

    let z: Vec<usize> = (0..q * c).map(|i| add(format!("z{i}"), Role::Z)).collect();
    let y: Vec<usize> = (0..q).map(|j| add(format!("y{j}"), Role::Y)).collect();
    let c0: Vec<usize> = (0..c).map(|s| add(format!("c0_{s}"), Role::C0)).collect();
    let x1: Vec<usize> = inst.ground.iter().map(|x| add(format!("x1_{x}"), Role::X1)).collect();
    let x2: Vec<usize> = inst.ground.iter().map(|x| add(format!("x2_{x}"), Role::X2)).collect();
    let chain: Vec<Vec<usize>> = (1..=p)
        .map(|i| (0..c).map(|s| add(format!("c{i}_{s}"), Role::Chain(i))).collect())
        .collect();

    let mut edges = Vec::new();
    for (j, &yj) in y.iter().enumerate() {
        for &zi in &z[j * c..(j + 1) * c] {
            edges.push((yj, zi));
        }
    }
    for (s, set) in inst.sets.iter().enumerate() {
        for &yj in &y {
            edges.push((c0[s], yj));
        }
        for (xi, x) in inst.ground.iter().enumerate() {
            if set.contains(x) {
                edges.push((c0[s], x1[xi]));
                edges.push((x1[xi], chain[0][s]));
            } else {
                edges.push((c0[s], x2[xi]));
            }
        }
        for i in 1..p {
            edges.push((chain[i - 1][s], chain[i][s]));
        }
    }

    Ok(GadgetGraph {
        graph: Graph::from_labeled_edges(labels, &edges, true),
        roles,
        c0,
        p,
        q,
    })
}

/// Decides TwoDisjointSet through the most central node of the gadget.
/// Outside `|C| ≥ 2`, `0 < |X| ≤ |C|` the closed form is not guaranteed to
/// order nodes correctly, so the pairwise test answers instead.
pub fn decide_via_centrality(inst: &TdsInstance) -> Result<bool> {
    let (c, x) = (inst.sets.len(), inst.ground.len());
    if c < 2 || x == 0 || x > c {
        return Ok(brute_two_disjoint_sets(inst));
    }
    let gadget = build_gadget(inst, DEFAULT_P, DEFAULT_Q)?;
    let g = &gadget.graph;
    let top = topk(g, 1, Variant::NbCut, Measure::Closeness);
    let winner = top.entries[0].farness_pair.expect("closeness result");
    let all_meet = analytic_c0_pair(inst, DEFAULT_P, DEFAULT_Q, c);
    Ok(compare_farness(winner, all_meet, g.n()).is_ne())
}
