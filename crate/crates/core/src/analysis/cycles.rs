use serde::{Deserialize, Serialize};

use crate::routing::{route_lengths, RouteTrace, RouterConfig};

/// Full ring wraps in the net displacement of a route.
pub fn route_cycle_count(trace: &RouteTrace, n: usize) -> usize {
    (trace.displacement().unsigned_abs() / n as u64) as usize
}

/// Wrap counts of shortest routes from node 0 to every destination.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleReport {
    pub n: usize,
    pub s2: usize,
    /// Indexed by destination offset; entry 0 is the trivial route.
    pub per_destination: Vec<usize>,
    pub max_cycles: usize,
}

/// `(shortest length, smallest wrap count achieving it)` for offset `s`.
///
/// Candidates are displacements `s + m·n` (forward) and `n − s + m·n`
/// (backward). Every candidate of wrap `m` costs at least `m·n / s2` hops,
/// which bounds the enumeration.
pub(crate) fn shortest_wrap(s: usize, cfg: &RouterConfig) -> (usize, usize) {
    let (n, s2) = (cfg.n(), cfg.s2());
    let mut best = (usize::MAX, 0);
    let mut m = 0;
    while best.0 == usize::MAX || m * n <= best.0 * s2 {
        for t in [s + m * n, n - s + m * n] {
            let (under, over) = route_lengths(t, s2);
            let len = under.min(over);
            if len < best.0 {
                best = (len, m);
            }
        }
        m += 1;
    }
    best
}

pub fn cycle_report(cfg: &RouterConfig) -> CycleReport {
    let mut per_destination = vec![0; cfg.n()];
    for (s, slot) in per_destination.iter_mut().enumerate().skip(1) {
        *slot = shortest_wrap(s, cfg).1;
    }
    CycleReport {
        n: cfg.n(),
        s2: cfg.s2(),
        max_cycles: per_destination.iter().copied().max().unwrap_or(0),
        per_destination,
    }
}

/// Largest wrap count any shortest route needs in this network.
pub fn max_cycle_count(cfg: &RouterConfig) -> usize {
    cycle_report(cfg).max_cycles
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::{trace_route, AdaptiveMode, Algorithm};

    #[test]
    fn published_two_cycle_route() {
        let cfg = RouterConfig::new(100, 44).unwrap();
        let t = trace_route(Algorithm::Adaptive, 0, 37, &cfg, &AdaptiveMode::default(), 200).unwrap();
        assert_eq!(t.displacement(), -263);
        assert_eq!(route_cycle_count(&t, 100), 2);
        assert_eq!(max_cycle_count(&cfg), 2);
        assert_eq!(shortest_wrap(37, &cfg), (7, 2));
    }

    #[test]
    fn small_network_has_no_wraps() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        assert_eq!(max_cycle_count(&cfg), 0);
        let t = trace_route(Algorithm::Table, 0, 4, &cfg, &AdaptiveMode::default(), 16).unwrap();
        assert_eq!(route_cycle_count(&t, 8), 0);
        let t = trace_route(Algorithm::Table, 0, 3, &cfg, &AdaptiveMode::default(), 16).unwrap();
        assert_eq!(route_cycle_count(&t, 8), 0);
    }
}
