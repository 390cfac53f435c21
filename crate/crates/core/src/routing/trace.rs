use serde::{Deserialize, Serialize};

use super::adaptive::adaptive_step;
use super::clockwise::clockwise_step;
use super::config::{port_between, AdaptiveMode, Algorithm, PortId, RouterConfig};
use super::table::{build_routing_table, table_next_hop, RoutingTable};
use crate::error::{Error, Result};
use crate::topology::NodeId;

/// Node and port sequence of a routed packet.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteTrace {
    pub algorithm: Algorithm,
    pub n: usize,
    pub s1: usize,
    pub s2: usize,
    pub src: NodeId,
    pub dst: NodeId,
    pub nodes: Vec<NodeId>,
    pub ports: Vec<PortId>,
    pub hops: usize,
}

impl RouteTrace {
    /// Signed generatrix steps, one per hop.
    pub fn steps(&self) -> impl Iterator<Item = i64> + '_ {
        let (s1, s2) = (self.s1 as i64, self.s2 as i64);
        self.ports.iter().map(move |p| match p.value() {
            0 => s1,
            1 => s2,
            2 => -s1,
            _ => -s2,
        })
    }

    /// Sum of signed steps.
    pub fn displacement(&self) -> i64 {
        self.steps().sum()
    }

    /// Rebuilds the node sequence from `src` and the port list.
    pub fn replay(&self) -> Vec<NodeId> {
        let n = self.n as i64;
        let mut at = self.src;
        let mut out = vec![at];
        for step in self.steps() {
            at = (at as i64 + step).rem_euclid(n) as NodeId;
            out.push(at);
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Default livelock tripwire: `2n` hops.
pub fn default_hop_limit(cfg: &RouterConfig) -> usize {
    2 * cfg.n()
}

/// A routing algorithm bound to one network, with any precomputed state.
#[derive(Debug, Clone)]
pub struct Router {
    cfg: RouterConfig,
    mode: AdaptiveMode,
    kind: RouterKind,
}

#[derive(Debug, Clone)]
enum RouterKind {
    Table(RoutingTable),
    Clockwise,
    Adaptive,
}

impl Router {
    pub fn new(algorithm: Algorithm, cfg: RouterConfig, mode: AdaptiveMode) -> Self {
        let kind = match algorithm {
            Algorithm::Table => RouterKind::Table(build_routing_table(&cfg)),
            Algorithm::Clockwise => RouterKind::Clockwise,
            Algorithm::Adaptive => RouterKind::Adaptive,
        };
        Self { cfg, mode, kind }
    }

    pub fn algorithm(&self) -> Algorithm {
        match self.kind {
            RouterKind::Table(_) => Algorithm::Table,
            RouterKind::Clockwise => Algorithm::Clockwise,
            RouterKind::Adaptive => Algorithm::Adaptive,
        }
    }

    pub fn config(&self) -> &RouterConfig {
        &self.cfg
    }

    pub fn table(&self) -> Option<&RoutingTable> {
        match &self.kind {
            RouterKind::Table(t) => Some(t),
            _ => None,
        }
    }

    /// Next node from `current` towards `dest`; `current` itself once there.
    pub fn step(&self, current: NodeId, dest: NodeId) -> NodeId {
        match &self.kind {
            RouterKind::Table(t) => table_next_hop(t, current, dest).map_or(current, |(next, _)| next),
            RouterKind::Clockwise => clockwise_step(current, dest, &self.cfg),
            RouterKind::Adaptive => adaptive_step(current, dest, &self.cfg, &self.mode),
        }
    }

    /// Number of hops from `src` to `dst`, without recording the path.
    pub fn hop_count(&self, src: NodeId, dst: NodeId, hop_limit: usize) -> Result<usize> {
        self.cfg.check_node(src)?;
        self.cfg.check_node(dst)?;
        let mut at = src;
        let mut hops = 0;
        while at != dst {
            if hops == hop_limit {
                return Err(self.livelock(src, dst, hop_limit));
            }
            at = self.step(at, dst);
            hops += 1;
        }
        Ok(hops)
    }

    /// Full route from `src` to `dst`.
    pub fn trace(&self, src: NodeId, dst: NodeId, hop_limit: usize) -> Result<RouteTrace> {
        self.cfg.check_node(src)?;
        self.cfg.check_node(dst)?;
        let mut nodes = vec![src];
        let mut ports = Vec::new();
        let mut at = src;
        while at != dst {
            if ports.len() == hop_limit {
                return Err(self.livelock(src, dst, hop_limit));
            }
            let next = self.step(at, dst);
            let port = port_between(at, next, &self.cfg).expect("routers only move along generatrices");
            ports.push(port);
            nodes.push(next);
            at = next;
        }
        Ok(RouteTrace {
            algorithm: self.algorithm(),
            n: self.cfg.n(),
            s1: self.cfg.s1(),
            s2: self.cfg.s2(),
            src,
            dst,
            hops: ports.len(),
            nodes,
            ports,
        })
    }

    fn livelock(&self, src: NodeId, dst: NodeId, hop_limit: usize) -> Error {
        Error::Livelock {
            algorithm: self.algorithm().to_string(),
            n: self.cfg.n(),
            s2: self.cfg.s2(),
            src,
            dst,
            hop_limit,
        }
    }
}

/// Routes one packet. Builds a routing table first when `algorithm` is
/// [`Algorithm::Table`]; use [`Router`] to amortize that across packets.
pub fn trace_route(
    algorithm: Algorithm,
    src: NodeId,
    dst: NodeId,
    cfg: &RouterConfig,
    mode: &AdaptiveMode,
    hop_limit: usize,
) -> Result<RouteTrace> {
    Router::new(algorithm, *cfg, *mode).trace(src, dst, hop_limit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clockwise_unit_walk() {
        let cfg = RouterConfig::new(16, 7).unwrap();
        let t = trace_route(Algorithm::Clockwise, 0, 6, &cfg, &AdaptiveMode::default(), 32).unwrap();
        assert_eq!(t.nodes, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(t.hops, 6);
        assert!(t.ports.iter().all(|p| p.value() == 0));
    }

    #[test]
    fn table_two_hops() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        let t = trace_route(Algorithm::Table, 0, 4, &cfg, &AdaptiveMode::default(), 16).unwrap();
        assert_eq!(t.hops, 2);
        assert_eq!(t.replay(), t.nodes);
    }

    #[test]
    fn empty_trace_for_same_node() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        for alg in Algorithm::ALL {
            let t = trace_route(alg, 5, 5, &cfg, &AdaptiveMode::default(), 16).unwrap();
            assert_eq!(t.nodes, vec![5]);
            assert!(t.ports.is_empty());
            assert_eq!(t.hops, 0);
        }
    }

    #[test]
    fn hop_limit_trips() {
        let cfg = RouterConfig::new(16, 7).unwrap();
        let err = trace_route(Algorithm::Clockwise, 0, 6, &cfg, &AdaptiveMode::default(), 3).unwrap_err();
        let msg = err.to_string();
        assert!(matches!(err, Error::Livelock { src: 0, dst: 6, .. }));
        assert!(msg.contains("clockwise") && msg.contains("C(16; 1, 7)"), "{msg}");
    }

    #[test]
    fn json_field_names() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        let t = trace_route(Algorithm::Adaptive, 0, 4, &cfg, &AdaptiveMode::default(), 16).unwrap();
        let v: serde_json::Value = serde_json::from_str(&t.to_json().unwrap()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        for k in ["algorithm", "n", "s1", "s2", "src", "dst", "nodes", "ports", "hops"] {
            assert!(keys.iter().any(|x| x == k), "missing {k}");
        }
        assert_eq!(v["algorithm"], "adaptive");
        let back: RouteTrace = serde_json::from_value(v).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn bad_nodes_rejected() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        assert!(matches!(
            trace_route(Algorithm::Table, 0, 9, &cfg, &AdaptiveMode::default(), 16),
            Err(Error::NodeOutOfRange { node: 9, n: 8 })
        ));
    }
}
