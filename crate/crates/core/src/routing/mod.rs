//! Routing on ring circulants C(n; 1, s2): table, clockwise and adaptive
//! strategies, the four-port router model, and a route tracer.

mod adaptive;
mod clockwise;
mod config;
mod table;
mod trace;

pub use adaptive::{adaptive_step, step_candidates, step_cycles, CandidateSet};
pub use clockwise::{clockwise_hops, clockwise_step};
pub use config::{payload_bits, port_for_step, AdaptiveMode, Algorithm, LeftSeed, PortId, RouterConfig};
pub use table::{build_routing_table, table_next_hop, RoutingTable, TableRecord};
pub use trace::{default_hop_limit, trace_route, RouteTrace, Router};

pub(crate) use adaptive::route_lengths;
pub(crate) use config::ceil_log2;
