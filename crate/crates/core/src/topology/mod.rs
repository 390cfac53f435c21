//! Circulant, mesh and torus graphs, their distance metrics, and the search
//! procedures that pick a "good" circulant for a given node count.

mod export;
mod graph;
mod metrics;
mod search;

pub use export::{to_dot, write_edge_csv, write_metrics_csv, MetricsRecord};
pub use graph::{build_circulant, build_mesh, build_torus, gcd, CirculantSpec, Graph, GraphKind, NodeId};
pub use metrics::{bfs_distances, metrics, metrics_all_pairs, TopologyMetrics};
pub use search::{
    compare_topologies, formula_optimal_circulant, reduction_percent, search_best_circulant2,
    search_best_ring_circulant, ComparisonRow, SelectionRule,
};

pub(crate) use metrics::circulant_distances;
pub(crate) use search::max_proper_s2;
