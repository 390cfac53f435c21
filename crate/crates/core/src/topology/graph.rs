use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Node label, 0-based.
pub type NodeId = usize;

/// Greatest common divisor.
pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Identity of a circulant C(n; s1, ..., sk).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CirculantSpec {
    n: usize,
    generatrices: Vec<usize>,
}

impl CirculantSpec {
    /// Validates and builds a spec. Generatrices must be strictly increasing,
    /// lie in `[1, n/2]` and jointly generate the cyclic group of order `n`.
    pub fn new(n: usize, generatrices: Vec<usize>) -> Result<Self> {
        if n < 3 {
            return Err(Error::invalid(format!("circulant needs n >= 3, got {n}")));
        }
        if generatrices.is_empty() {
            return Err(Error::invalid("circulant needs at least one generatrix"));
        }
        if generatrices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid(format!(
                "generatrices must be strictly increasing, got {generatrices:?}"
            )));
        }
        let first = generatrices[0];
        let last = *generatrices.last().unwrap();
        if first < 1 || last > n / 2 {
            return Err(Error::invalid(format!(
                "generatrices must lie in [1, {}] for n = {n}, got {generatrices:?}",
                n / 2
            )));
        }
        let g = generatrices.iter().fold(n, |acc, &s| gcd(acc, s));
        if g != 1 {
            return Err(Error::invalid(format!(
                "gcd(n, generatrices) = {g} for C({n}; {}); graph is disconnected",
                join(&generatrices)
            )));
        }
        Ok(Self { n, generatrices })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generatrices(&self) -> &[usize] {
        &self.generatrices
    }

    /// Dimension k.
    pub fn k(&self) -> usize {
        self.generatrices.len()
    }

    /// A ring circulant contains the Hamiltonian ring, i.e. s1 = 1.
    pub fn is_ring(&self) -> bool {
        self.generatrices[0] == 1
    }

    /// Largest generatrix is strictly below n/2, so every chord family
    /// contributes two distinct neighbors.
    pub fn is_proper(&self) -> bool {
        2 * self.generatrices.last().unwrap() < self.n
    }

    /// `(s1, s2)` for two-generatrix specs.
    pub fn pair(&self) -> Option<(usize, usize)> {
        match self.generatrices[..] {
            [a, b] => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({}; {})", self.n, join(&self.generatrices))
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum GraphKind {
    Circulant(CirculantSpec),
    Mesh { rows: usize, cols: usize },
    Torus { rows: usize, cols: usize },
}

impl GraphKind {
    pub fn name(&self) -> &'static str {
        match self {
            GraphKind::Circulant(_) => "circulant",
            GraphKind::Mesh { .. } => "mesh",
            GraphKind::Torus { .. } => "torus",
        }
    }
}

/// Immutable undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<NodeId>>,
    kind: GraphKind,
}

impl Graph {
    fn from_edges(n: usize, kind: GraphKind, edges: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let mut neighbors = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                continue;
            }
            neighbors[u].push(v);
            neighbors[v].push(u);
        }
        for list in &mut neighbors {
            list.sort_unstable();
            list.dedup();
        }
        Self { neighbors, kind }
    }

    pub fn n(&self) -> usize {
        self.neighbors.len()
    }

    pub fn kind(&self) -> &GraphKind {
        &self.kind
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.neighbors.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Directed channel count (sum of degrees).
    pub fn channel_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum()
    }

    /// Undirected edge count.
    pub fn edge_count(&self) -> usize {
        self.channel_count() / 2
    }

    pub fn contains_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Undirected edges with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n() })
        }
    }
}

/// Node `v` is joined to `(v ± s) mod n` for every generatrix `s`.
pub fn build_circulant(spec: &CirculantSpec) -> Graph {
    let n = spec.n();
    let edges = (0..n).flat_map(|v| spec.generatrices().iter().map(move |&s| (v, (v + s) % n)));
    Graph::from_edges(n, GraphKind::Circulant(spec.clone()), edges)
}

/// Row-major 4-neighbor grid without wraparound.
pub fn build_mesh(rows: usize, cols: usize) -> Result<Graph> {
    if rows == 0 || cols == 0 || rows * cols < 2 {
        return Err(Error::invalid(format!("mesh needs at least two nodes, got {rows}x{cols}")));
    }
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    Ok(Graph::from_edges(rows * cols, GraphKind::Mesh { rows, cols }, edges))
}

/// Row-major 4-neighbor grid with wraparound in both dimensions.
pub fn build_torus(rows: usize, cols: usize) -> Result<Graph> {
    if rows < 3 || cols < 3 {
        return Err(Error::invalid(format!("torus needs both dimensions >= 3, got {rows}x{cols}")));
    }
    let idx = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((idx(r, c), idx(r, (c + 1) % cols)));
            edges.push((idx(r, c), idx((r + 1) % rows, c)));
        }
    }
    Ok(Graph::from_edges(rows * cols, GraphKind::Torus { rows, cols }, edges))
}
