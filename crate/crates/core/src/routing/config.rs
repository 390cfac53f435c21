use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::topology::{build_circulant, CirculantSpec, Graph, NodeId};

/// `⌈log2 n⌉` for `n >= 1`.
pub(crate) fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        u64::BITS - (n - 1).leading_zeros()
    }
}

/// Address field width of a head flit, `⌈log2 n⌉` bits.
pub fn payload_bits(n: usize) -> Result<u32> {
    if n < 2 {
        return Err(Error::invalid(format!("payload needs n >= 2, got {n}")));
    }
    Ok(ceil_log2(n as u64))
}

/// Router output port. Numbered clockwise: 0 → +s1, 1 → +s2, 2 → −s1, 3 → −s2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PortId(u8);

impl PortId {
    pub const ALL: [PortId; 4] = [PortId(0), PortId(1), PortId(2), PortId(3)];

    pub fn new(value: u8) -> Result<Self> {
        if value < 4 {
            Ok(PortId(value))
        } else {
            Err(Error::invalid(format!("port must be in [0, 3], got {value}")))
        }
    }

    pub fn value(self) -> u8 {
        self.0
    }

    /// Signed generatrix step taken through this port.
    pub fn step(self, cfg: &RouterConfig) -> i64 {
        let (s1, s2) = (cfg.s1() as i64, cfg.s2() as i64);
        match self.0 {
            0 => s1,
            1 => s2,
            2 => -s1,
            _ => -s2,
        }
    }

    /// Node reached from `from` through this port.
    pub fn neighbor(self, from: NodeId, cfg: &RouterConfig) -> NodeId {
        cfg.shift(from, self.step(cfg))
    }
}

impl fmt::Display for PortId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parameters of a ring circulant C(n; 1, s2) router with `2 <= s2 < n/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RouterConfig {
    n: usize,
    s2: usize,
}

impl RouterConfig {
    pub fn new(n: usize, s2: usize) -> Result<Self> {
        if s2 < 2 || 2 * s2 >= n {
            return Err(Error::invalid(format!(
                "router needs 2 <= s2 < n/2, got C({n}; 1, {s2})"
            )));
        }
        Ok(Self { n, s2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s1(&self) -> usize {
        1
    }

    pub fn s2(&self) -> usize {
        self.s2
    }

    pub fn spec(&self) -> CirculantSpec {
        CirculantSpec::new(self.n, vec![1, self.s2]).expect("router config is a valid circulant")
    }

    pub fn graph(&self) -> Graph {
        build_circulant(&self.spec())
    }

    /// `(v + delta) mod n`.
    pub fn shift(&self, v: NodeId, delta: i64) -> NodeId {
        (v as i64 + delta).rem_euclid(self.n as i64) as NodeId
    }

    /// `(to - from) mod n`.
    pub fn offset(&self, from: NodeId, to: NodeId) -> usize {
        (to + self.n - from) % self.n
    }

    pub(crate) fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: v, n: self.n })
        }
    }
}

impl TryFrom<&CirculantSpec> for RouterConfig {
    type Error = Error;

    fn try_from(spec: &CirculantSpec) -> Result<Self> {
        match spec.pair() {
            Some((1, s2)) => RouterConfig::new(spec.n(), s2),
            _ => Err(Error::invalid(format!("{spec} is not a ring circulant C(n; 1, s2)"))),
        }
    }
}

impl fmt::Display for RouterConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({}; 1, {})", self.n, self.s2)
    }
}

/// Port that carries a signed generatrix step.
pub fn port_for_step(delta: i64, cfg: &RouterConfig) -> Result<PortId> {
    PortId::ALL
        .into_iter()
        .find(|p| p.step(cfg) == delta)
        .ok_or(Error::InvalidStep { delta, n: cfg.n(), s2: cfg.s2() })
}

/// Port joining two adjacent nodes. The four steps are distinct modulo n
/// because `2 <= s2 < n/2`.
pub(crate) fn port_between(from: NodeId, to: NodeId, cfg: &RouterConfig) -> Option<PortId> {
    PortId::ALL.into_iter().find(|p| p.neighbor(from, cfg) == to)
}

/// Routing strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Table,
    Clockwise,
    Adaptive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Table, Algorithm::Clockwise, Algorithm::Adaptive];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Table => "table",
            Algorithm::Clockwise => "clockwise",
            Algorithm::Adaptive => "adaptive",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown algorithm {s:?}")))
    }
}

/// Which left-direction seed `Step_Cycles` uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeftSeed {
    /// `end - start + n`, exactly as the published listing reads.
    AsPrinted,
    /// `n - (end - start)`, the backward distance.
    Corrected,
}

/// Adaptive routing variant plus the number of ring wraps it considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdaptiveMode {
    seed: LeftSeed,
    max_cycles: usize,
}

impl AdaptiveMode {
    pub const MIN_CYCLES: usize = 2;
    pub const MAX_CYCLES: usize = 64;

    pub fn new(seed: LeftSeed, max_cycles: usize) -> Result<Self> {
        if !(Self::MIN_CYCLES..=Self::MAX_CYCLES).contains(&max_cycles) {
            return Err(Error::invalid(format!(
                "adaptive max_cycles must be in [{}, {}], got {max_cycles}",
                Self::MIN_CYCLES,
                Self::MAX_CYCLES
            )));
        }
        Ok(Self { seed, max_cycles })
    }

    pub fn corrected(max_cycles: usize) -> Result<Self> {
        Self::new(LeftSeed::Corrected, max_cycles)
    }

    pub fn as_printed() -> Self {
        Self { seed: LeftSeed::AsPrinted, max_cycles: 2 }
    }

    pub fn seed(&self) -> LeftSeed {
        self.seed
    }

    pub fn max_cycles(&self) -> usize {
        self.max_cycles
    }
}

impl Default for AdaptiveMode {
    fn default() -> Self {
        Self { seed: LeftSeed::Corrected, max_cycles: 2 }
    }
}

impl FromStr for LeftSeed {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" | "as_printed" => Ok(LeftSeed::AsPrinted),
            "corrected" => Ok(LeftSeed::Corrected),
            _ => Err(Error::invalid(format!("unknown adaptive mode {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn payload_bits_examples() {
        assert_eq!(payload_bits(8).unwrap(), 3);
        assert_eq!(payload_bits(100).unwrap(), 7);
        assert_eq!(payload_bits(529).unwrap(), 10);
        assert_eq!(payload_bits(2).unwrap(), 1);
        assert!(payload_bits(1).is_err());
    }

    #[test]
    fn ceil_log2_matches_float() {
        for n in 2..5000u64 {
            assert_eq!(ceil_log2(n), (n as f64).log2().ceil() as u32, "n={n}");
        }
    }

    #[test]
    fn ports_follow_clockwise_numbering() {
        let cfg = RouterConfig::new(8, 3).unwrap();
        assert_eq!(port_for_step(1, &cfg).unwrap().value(), 0);
        assert_eq!(port_for_step(3, &cfg).unwrap().value(), 1);
        assert_eq!(port_for_step(-1, &cfg).unwrap().value(), 2);
        assert_eq!(port_for_step(-3, &cfg).unwrap().value(), 3);
        assert!(matches!(port_for_step(2, &cfg), Err(Error::InvalidStep { delta: 2, .. })));
    }

    #[test]
    fn config_validation() {
        assert!(RouterConfig::new(8, 3).is_ok());
        assert!(RouterConfig::new(8, 4).is_err());
        assert!(RouterConfig::new(8, 1).is_err());
        assert!(RouterConfig::new(4, 2).is_err());
        let spec = CirculantSpec::new(9, vec![2, 3]).unwrap();
        assert!(RouterConfig::try_from(&spec).is_err());
    }

    #[test]
    fn port_between_inverts_neighbor() {
        let cfg = RouterConfig::new(11, 4).unwrap();
        for v in 0..11 {
            for p in PortId::ALL {
                assert_eq!(port_between(v, p.neighbor(v, &cfg), &cfg), Some(p));
            }
        }
    }

    #[test]
    fn adaptive_mode_bounds() {
        assert!(AdaptiveMode::corrected(1).is_err());
        assert!(AdaptiveMode::corrected(9).is_ok());
        assert!(AdaptiveMode::corrected(65).is_err());
        assert_eq!(AdaptiveMode::default(), AdaptiveMode::corrected(2).unwrap());
    }
}
