use std::io::Write;

use serde::{Deserialize, Serialize};

use super::config::{PortId, RouterConfig};
use crate::error::Result;
use crate::topology::{circulant_distances, NodeId};

/// Precomputed next-hop ports for every (source, destination) pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutingTable {
    cfg: RouterConfig,
    entries: Vec<Option<PortId>>,
}

/// One row of the routing table CSV.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub from: NodeId,
    pub to: NodeId,
    pub port: PortId,
}

impl RoutingTable {
    pub fn config(&self) -> &RouterConfig {
        &self.cfg
    }

    pub fn n(&self) -> usize {
        self.cfg.n()
    }

    /// Port for `from -> to`; `None` on the diagonal.
    pub fn entry(&self, from: NodeId, to: NodeId) -> Option<PortId> {
        self.entries[from * self.n() + to]
    }

    /// Row of router `from`, i.e. the part stored in that router.
    pub fn row(&self, from: NodeId) -> &[Option<PortId>] {
        let n = self.n();
        &self.entries[from * n..(from + 1) * n]
    }

    /// Defined entries sorted by `(from, to)`.
    pub fn records(&self) -> impl Iterator<Item = TableRecord> + '_ {
        let n = self.n();
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(i, p)| p.map(|port| TableRecord { from: i / n, to: i % n, port }))
    }

    /// CSV with header `from,to,port`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for rec in self.records() {
            w.serialize(rec)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}

/// Each entry names the lowest-numbered port whose neighbor is one hop
/// closer to the destination.
///
/// Circulant distances depend only on `(to - from) mod n`, so one BFS from
/// node 0 yields every row.
pub fn build_routing_table(cfg: &RouterConfig) -> RoutingTable {
    let n = cfg.n();
    let dist = circulant_distances(n, &[cfg.s1(), cfg.s2()]);
    let by_offset: Vec<Option<PortId>> = (0..n)
        .map(|off| {
            if off == 0 {
                return None;
            }
            PortId::ALL
                .into_iter()
                .find(|p| dist[cfg.shift(off, -p.step(cfg))] + 1 == dist[off])
        })
        .collect();
    let mut entries = Vec::with_capacity(n * n);
    for from in 0..n {
        entries.extend((0..n).map(|to| by_offset[cfg.offset(from, to)]));
    }
    RoutingTable { cfg: *cfg, entries }
}

/// Next node and port under table routing; `None` once `current == dest`.
pub fn table_next_hop(table: &RoutingTable, current: NodeId, dest: NodeId) -> Option<(NodeId, PortId)> {
    let port = table.entry(current, dest)?;
    Some((port.neighbor(current, table.config()), port))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn next_hop_examples() {
        let table = build_routing_table(&RouterConfig::new(8, 3).unwrap());
        let hop = |u, v| table_next_hop(&table, u, v).map(|(n, p)| (n, p.value()));
        assert_eq!(hop(0, 3), Some((3, 1)));
        assert_eq!(hop(7, 0), Some((0, 0)));
        assert_eq!(hop(5, 5), None);
        assert_eq!(hop(0, 6), Some((1, 0)));
    }

    #[test]
    fn direct_neighbors_use_s2_ports() {
        let cfg = RouterConfig::new(20, 7).unwrap();
        let table = build_routing_table(&cfg);
        for u in 0..20 {
            assert_eq!(table.entry(u, (u + 7) % 20).unwrap().value(), 1);
            assert_eq!(table.entry(u, (u + 13) % 20).unwrap().value(), 3);
        }
    }

    #[test]
    fn csv_rows_sorted() {
        let table = build_routing_table(&RouterConfig::new(8, 3).unwrap());
        let mut buf = Vec::new();
        table.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 57);
        assert_eq!(lines[0], "from,to,port");
        assert_eq!(lines[1], "0,1,0");
        assert_eq!(lines[56], "7,6,2");
    }
}
