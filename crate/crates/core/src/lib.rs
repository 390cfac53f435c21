//! Ring circulant topologies for networks-on-chip.
//!
//! * [`topology`] builds circulant, mesh and torus graphs and measures them.
//! * [`routing`] implements table, clockwise and adaptive routing on
//!   C(n; 1, s2).
//! * [`analysis`] holds the efficiency criterion, wrap counting, memory
//!   models and FPGA resource estimates.
//! * [`harness`] regenerates the comparison datasets and runs seeded
//!   termination fuzzing.

pub mod analysis;
pub mod error;
pub mod harness;
pub mod routing;
pub mod topology;

pub use error::{Error, Result};
