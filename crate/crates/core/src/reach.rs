// SPDX-License-Identifier: Apache-2.0

//! Reachable-set sizes `r(v)`.
//!
//! Undirected and strongly connected graphs get exact counts in linear time.
//! General directed graphs get an interval `[α(v), ω(v)] ∋ r(v)` from a
//! dynamic program over the condensation DAG, with the largest component's
//! reach computed exactly.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Condensation of a directed graph. Component ids are a topological order:
/// every DAG arc goes from a smaller id to a larger one.
#[derive(Debug, Clone)]
pub struct SccDag {
    pub comp_of: Vec<usize>,
    pub weights: Vec<usize>,
    dag_offsets: Vec<usize>,
    dag_targets: Vec<usize>,
    pub topo_order: Vec<usize>,
    /// Heaviest component, smallest id on ties.
    pub biggest: usize,
}

impl SccDag {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn successors(&self, c: usize) -> &[usize] {
        &self.dag_targets[self.dag_offsets[c]..self.dag_offsets[c + 1]]
    }

    pub fn arc_count(&self) -> usize {
        self.dag_targets.len()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for c in 0..self.len() {
            for &d in self.successors(c) {
                pred[d].push(c);
            }
        }
        pred
    }

    /// Components reachable from `start` (inclusive) following `next`.
    fn closure<'a, F>(&self, start: usize, next: F) -> Vec<bool>
    where
        F: Fn(usize) -> &'a [usize],
    {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for &d in next(c) {
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        seen
    }
}

/// Iterative Tarjan. Components are renumbered so ids are topological.
pub fn scc_condensation(g: &Graph) -> SccDag {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut index = vec![NONE; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut raw_comp = vec![NONE; n];
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0usize;
    let mut n_comp = 0usize;

    for root in 0..n {
        if index[root] != NONE {
            continue;
        }
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        call.push((root, 0));

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            let adj = g.neighbors(v);
            if frame.1 < adj.len() {
                let w = adj[frame.1];
                frame.1 += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    raw_comp[w] = n_comp;
                    if w == v {
                        break;
                    }
                }
                n_comp += 1;
            }
        }
    }

    // Tarjan completes sinks first; reverse to get a topological numbering.
    let comp_of: Vec<usize> = raw_comp.iter().map(|&c| n_comp - 1 - c).collect();
    let mut weights = vec![0usize; n_comp];
    for &c in &comp_of {
        weights[c] += 1;
    }
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for &w in g.neighbors(u) {
            let (cu, cw) = (comp_of[u], comp_of[w]);
            if cu != cw {
                arcs.push((cu, cw));
            }
        }
    }
    arcs.sort_unstable();
    arcs.dedup();
    let mut dag_offsets = vec![0usize; n_comp + 1];
    for &(c, _) in &arcs {
        dag_offsets[c + 1] += 1;
    }
    for i in 0..n_comp {
        dag_offsets[i + 1] += dag_offsets[i];
    }
    let dag_targets = arcs.iter().map(|&(_, d)| d).collect();
    let mut biggest = 0;
    for (c, &w) in weights.iter().enumerate() {
        if w > weights[biggest] {
            biggest = c;
        }
    }

    SccDag {
        comp_of,
        weights,
        dag_offsets,
        dag_targets,
        topo_order: (0..n_comp).collect(),
        biggest,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReachMode {
    UndirectedExact,
    StronglyConnectedExact,
    DirectedInterval,
}

/// Per-node reachability bounds.
#[derive(Debug, Clone)]
pub struct ReachInfo {
    mode: ReachMode,
    alpha: Vec<usize>,
    omega: Vec<usize>,
    /// Connected component (undirected) or SCC id (directed).
    component: Vec<usize>,
}

impl ReachInfo {
    /// Picks the cheapest exact mode available for `g`.
    pub fn compute(g: &Graph) -> ReachInfo {
        if !g.is_directed() {
            return exact_reach_undirected(g).expect("graph is undirected");
        }
        let dag = scc_condensation(g);
        if dag.len() == 1 {
            let n = g.n();
            return ReachInfo {
                mode: ReachMode::StronglyConnectedExact,
                alpha: vec![n; n],
                omega: vec![n; n],
                component: vec![0; n],
            };
        }
        alpha_omega(&dag)
    }

    pub fn mode(&self) -> ReachMode {
        self.mode
    }

    pub fn alpha(&self, v: usize) -> usize {
        self.alpha[v]
    }

    pub fn omega(&self, v: usize) -> usize {
        self.omega[v]
    }

    /// `r(v)` when known exactly.
    pub fn exact(&self, v: usize) -> Option<usize> {
        (self.alpha[v] == self.omega[v]).then_some(self.alpha[v])
    }

    /// All exact counts, in the exact modes.
    pub fn exact_all(&self) -> Option<&[usize]> {
        match self.mode {
            ReachMode::DirectedInterval => None,
            _ => Some(&self.alpha),
        }
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn same_component(&self, a: usize, b: usize) -> bool {
        self.component[a] == self.component[b]
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

/// Connected-component sizes.
pub fn exact_reach_undirected(g: &Graph) -> Result<ReachInfo> {
    if g.is_directed() {
        return Err(Error::DirectedInput);
    }
    let n = g.n();
    let mut component = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if component[s] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        component[s] = id;
        stack.push(s);
        while let Some(u) = stack.pop() {
            size += 1;
            for &w in g.neighbors(u) {
                if component[w] == usize::MAX {
                    component[w] = id;
                    stack.push(w);
                }
            }
        }
        sizes.push(size);
    }
    let r: Vec<usize> = component.iter().map(|&c| sizes[c]).collect();
    Ok(ReachInfo {
        mode: ReachMode::UndirectedExact,
        alpha: r.clone(),
        omega: r,
        component,
    })
}

/// Which component's reach is computed exactly before the DP.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pivot {
    Biggest,
    Component(usize),
    /// Plain DP, no exact component.
    None,
}

pub fn alpha_omega(dag: &SccDag) -> ReachInfo {
    alpha_omega_with(dag, Pivot::Biggest)
}

/// α/ω dynamic program in reverse topological order:
/// `α(C) = w(C) + max α(D)`, `ω(C) = w(C) + Σ ω(D)` over successors `D`.
///
/// The pivot's reach is counted exactly. Components that reach the pivot
/// bound their reach as `ω'(C) + reach(pivot)`, where `ω'` runs the same DP
/// on the DAG with everything reachable from the pivot removed.
pub fn alpha_omega_with(dag: &SccDag, pivot: Pivot) -> ReachInfo {
    let c = dag.len();
    let pivot = match pivot {
        Pivot::Biggest => Some(dag.biggest),
        Pivot::Component(p) => {
            assert!(p < c, "pivot component out of range");
            Some(p)
        }
        Pivot::None => None,
    };

    let mut alpha = vec![0usize; c];
    let mut omega = vec![0usize; c];
    let mut omega_sub = vec![0usize; c];
    let (from_pivot, to_pivot) = match pivot {
        Some(p) => {
            let from = dag.closure(p, |x| dag.successors(x));
            let pred = dag.predecessors();
            let to = dag.closure(p, |x| pred[x].as_slice());
            let exact: usize = (0..c).filter(|&x| from[x]).map(|x| dag.weights[x]).sum();
            alpha[p] = exact;
            omega[p] = exact;
            (from, to)
        }
        None => (vec![false; c], vec![false; c]),
    };

    for &x in dag.topo_order.iter().rev() {
        if Some(x) == pivot {
            continue;
        }
        let (mut a, mut o, mut o_sub) = (0usize, 0usize, 0usize);
        for &y in dag.successors(x) {
            a = a.max(alpha[y]);
            o += omega[y];
            if !from_pivot[y] {
                o_sub += omega_sub[y];
            }
        }
        let w = dag.weights[x];
        alpha[x] = a + w;
        omega_sub[x] = o_sub + w;
        omega[x] = match pivot {
            Some(p) if to_pivot[x] => omega_sub[x] + omega[p],
            _ => o + w,
        };
    }

    let n = dag.comp_of.len();
    ReachInfo {
        mode: ReachMode::DirectedInterval,
        alpha: dag.comp_of.iter().map(|&k| alpha[k]).collect(),
        omega: dag.comp_of.iter().map(|&k| omega[k].min(n)).collect(),
        component: dag.comp_of.clone(),
    }
}
