use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::graph::{Graph, GraphKind, NodeId};
use crate::error::{Error, Result};

/// Distance characteristics of a connected graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyMetrics {
    pub diameter: usize,
    /// Mean hop count over ordered pairs `u != v`.
    pub avg_distance: f64,
    /// Sum of hop counts over ordered pairs `u != v`.
    pub total_distance: u64,
    pub edge_count: usize,
    pub max_degree: usize,
}

/// Hop distances from `src` to every node.
pub fn bfs_distances(graph: &Graph, src: NodeId) -> Result<Vec<usize>> {
    graph.check_node(src)?;
    let n = graph.n();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        for &v in graph.neighbors(u) {
            if dist[v] == usize::MAX {
                dist[v] = du + 1;
                queue.push_back(v);
            }
        }
    }
    if let Some(unreachable) = dist.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected { from: src, unreachable });
    }
    Ok(dist)
}

/// BFS distances from node 0 of C(n; gens) without materializing adjacency.
pub(crate) fn circulant_distances(n: usize, gens: &[usize]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    dist[0] = 0;
    queue.push_back(0usize);
    while let Some(u) = queue.pop_front() {
        let du = dist[u] + 1;
        for &s in gens {
            for v in [(u + s) % n, (u + n - s % n) % n] {
                if dist[v] == u32::MAX {
                    dist[v] = du;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// `(diameter, sum of distances from node 0)` for a connected circulant.
pub(crate) fn circulant_profile(n: usize, gens: &[usize]) -> (usize, u64) {
    let dist = circulant_distances(n, gens);
    let diameter = *dist.iter().max().unwrap() as usize;
    let total = dist.iter().map(|&d| u64::from(d)).sum();
    (diameter, total)
}

fn summarize(graph: &Graph, diameter: usize, total_distance: u64) -> TopologyMetrics {
    let n = graph.n() as u64;
    TopologyMetrics {
        diameter,
        avg_distance: total_distance as f64 / (n * (n - 1)) as f64,
        total_distance,
        edge_count: graph.edge_count(),
        max_degree: graph.max_degree(),
    }
}

/// Diameter, average distance, edge count and maximum degree.
///
/// Circulants are vertex-transitive, so a single BFS from node 0 stands in
/// for all sources there; other graphs run BFS from every node.
pub fn metrics(graph: &Graph) -> Result<TopologyMetrics> {
    if graph.n() < 2 {
        return Err(Error::invalid("metrics need at least two nodes"));
    }
    if let GraphKind::Circulant(spec) = graph.kind() {
        let dist = bfs_distances(graph, 0)?;
        let diameter = *dist.iter().max().unwrap();
        let per_source: u64 = dist.iter().map(|&d| d as u64).sum();
        return Ok(summarize(graph, diameter, per_source * spec.n() as u64));
    }
    let per_source = (0..graph.n())
        .into_par_iter()
        .map(|s| bfs_distances(graph, s).map(|d| (*d.iter().max().unwrap(), d.iter().map(|&x| x as u64).sum::<u64>())))
        .collect::<Result<Vec<_>>>()?;
    let diameter = per_source.iter().map(|p| p.0).max().unwrap();
    let total = per_source.iter().map(|p| p.1).sum();
    Ok(summarize(graph, diameter, total))
}

/// Metrics from all-pairs BFS regardless of graph kind.
pub fn metrics_all_pairs(graph: &Graph) -> Result<TopologyMetrics> {
    let mut diameter = 0;
    let mut total = 0u64;
    for s in 0..graph.n() {
        let d = bfs_distances(graph, s)?;
        diameter = diameter.max(*d.iter().max().unwrap());
        total += d.iter().map(|&x| x as u64).sum::<u64>();
    }
    Ok(summarize(graph, diameter, total))
}
