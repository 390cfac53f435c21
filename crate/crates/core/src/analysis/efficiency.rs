use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::routing::{default_hop_limit, AdaptiveMode, Algorithm, Router, RouterConfig};
use crate::topology::{bfs_distances, NodeId};

/// Total hops of an algorithm from one source against the shortest-path
/// total from the same source.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyReport {
    pub algorithm: Algorithm,
    pub source: NodeId,
    pub hops_algorithm: u64,
    pub hops_oracle: u64,
    /// `hops_algorithm / hops_oracle`; 1.0 is optimal.
    pub k: f64,
}

/// Efficiency of a prepared router from `source` to every other node.
pub fn efficiency_with(router: &Router, source: NodeId) -> Result<EfficiencyReport> {
    let cfg = router.config();
    let oracle = bfs_distances(&cfg.graph(), source)?;
    let limit = default_hop_limit(cfg);
    let mut hops_algorithm = 0u64;
    for dst in (0..cfg.n()).filter(|&d| d != source) {
        hops_algorithm += router.hop_count(source, dst, limit)? as u64;
    }
    let hops_oracle: u64 = oracle.iter().map(|&d| d as u64).sum();
    Ok(EfficiencyReport {
        algorithm: router.algorithm(),
        source,
        hops_algorithm,
        hops_oracle,
        k: hops_algorithm as f64 / hops_oracle as f64,
    })
}

pub fn efficiency_k(cfg: &RouterConfig, algorithm: Algorithm, mode: &AdaptiveMode, source: NodeId) -> Result<EfficiencyReport> {
    cfg.check_node(source)?;
    efficiency_with(&Router::new(algorithm, *cfg, *mode), source)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clockwise_c16() {
        let cfg = RouterConfig::new(16, 7).unwrap();
        let r = efficiency_k(&cfg, Algorithm::Clockwise, &AdaptiveMode::default(), 0).unwrap();
        assert_eq!((r.hops_algorithm, r.hops_oracle), (46, 34));
        assert!((r.k - 46.0 / 34.0).abs() < 1e-12);
    }

    #[test]
    fn table_is_optimal() {
        let cfg = RouterConfig::new(29, 12).unwrap();
        let r = efficiency_k(&cfg, Algorithm::Table, &AdaptiveMode::default(), 3).unwrap();
        assert_eq!(r.k, 1.0);
    }

    #[test]
    fn bad_source() {
        let cfg = RouterConfig::new(16, 7).unwrap();
        assert!(efficiency_k(&cfg, Algorithm::Table, &AdaptiveMode::default(), 16).is_err());
    }
}
