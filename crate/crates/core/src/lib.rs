//! Maximally diverse collections of minimum s-t cuts.

pub mod disjoint;
pub mod diversity;
pub mod error;
pub mod flow;
pub mod graph;
pub mod lattice;
pub mod oracle;
pub mod poset;
pub mod scc;
pub mod sfm;

pub use disjoint::{build_augmented_path_graph, max_disjoint_mincuts, sweep_max_disjoint, PathGraph};
pub use diversity::{CutCollection, Measure};
pub use error::{Error, Result};
pub use flow::{max_flow_unit, path_decomposition, FlowResult, PathSystem};
pub use graph::{fixture, parse_graph, DirectedGraph, Edge, EdgeId, GraphFormat, VertexId};
pub use lattice::{build_closure_dag, Closure, ClosureDag, MinCut};
pub use poset::{enumerate_ideals, Ideal, Poset};
pub use sfm::{solve_diverse, Backend, Objective};
