// SPDX-License-Identifier: Apache-2.0

//! Exact top-k closeness (Lin's index) and harmonic centrality on unweighted
//! graphs, by pruned breadth-first search.
//!
//! ```
//! use topk_closeness::{parse_edge_list_str, topk, Measure, Variant};
//!
//! let g = parse_edge_list_str("a b\nb c\nc d\n", false).unwrap();
//! let top = topk(&g, 1, Variant::NbCut, Measure::Closeness);
//! let labels: Vec<_> = top.entries.iter().map(|e| e.label.as_str()).collect();
//! assert_eq!(labels, ["b", "c"]);
//! assert_eq!(top.entries[0].value, 0.75);
//! ```

pub mod baseline;
pub mod bfscut;
pub mod cli;
pub mod error;
pub mod farness;
pub mod gadget;
pub mod generators;
pub mod graph;
pub mod level;
pub mod nb;
pub mod reach;
pub mod solver;

pub use baseline::{closeness_all, harmonic_all, topk_reference, CentralityTable};
pub use error::{Error, Result};
pub use farness::{compare_farness, Farness};
pub use graph::{bfs, bfs_with, degree_descending_order, parse_edge_list, parse_edge_list_str, Graph};
pub use reach::ReachInfo;
pub use solver::{
    improvement_factor, topk, topk_with, Measure, Method, RankedEntry, TopKOptions, TopKResult,
    TopKSolver, Variant,
};
