use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use super::graph::{Graph, GraphKind};
use super::metrics::TopologyMetrics;
use crate::error::Result;

/// Undirected DOT with node ids as labels.
pub fn to_dot(graph: &Graph) -> String {
    let mut out = String::new();
    let name = match graph.kind() {
        GraphKind::Circulant(spec) => format!("{spec}"),
        GraphKind::Mesh { rows, cols } => format!("mesh {rows}x{cols}"),
        GraphKind::Torus { rows, cols } => format!("torus {rows}x{cols}"),
    };
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for v in 0..graph.n() {
        writeln!(out, "  {v} [label=\"{v}\"];").unwrap();
    }
    for (u, v) in graph.edges() {
        writeln!(out, "  {u} -- {v};").unwrap();
    }
    out.push_str("}\n");
    out
}

/// Edge list CSV with header `u,v`, one row per undirected edge (`u < v`).
pub fn write_edge_csv<W: Write>(graph: &Graph, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["u", "v"])?;
    for (u, v) in graph.edges() {
        w.write_record([u.to_string(), v.to_string()])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Row of the metrics CSV (`n,topology,s1,s2,diameter,avg_distance,edges`).
#[derive(Debug, Clone, PartialEq, Serialize, serde::Deserialize)]
pub struct MetricsRecord {
    pub n: usize,
    pub topology: String,
    pub s1: Option<usize>,
    pub s2: Option<usize>,
    pub diameter: usize,
    pub avg_distance: f64,
    pub edges: usize,
}

impl MetricsRecord {
    /// `s1`/`s2` are left empty for mesh, torus and single-generatrix rings.
    pub fn new(graph: &Graph, m: &TopologyMetrics) -> Self {
        let (s1, s2) = match graph.kind() {
            GraphKind::Circulant(spec) => (spec.generatrices().first().copied(), spec.generatrices().get(1).copied()),
            _ => (None, None),
        };
        Self {
            n: graph.n(),
            topology: graph.kind().name().to_string(),
            s1,
            s2,
            diameter: m.diameter,
            avg_distance: m.avg_distance,
            edges: m.edge_count,
        }
    }
}

pub fn write_metrics_csv<W: Write>(records: &[MetricsRecord], writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for r in records {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}
