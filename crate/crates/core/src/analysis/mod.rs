//! Quantitative models: routing efficiency, route wrap counts, router
//! memory, FPGA resource curves and chip capacity.

mod cycles;
mod efficiency;
mod memory;
mod resources;

pub use cycles::{cycle_report, max_cycle_count, route_cycle_count, CycleReport};
pub use efficiency::{efficiency_k, efficiency_with, EfficiencyReport};
pub use memory::{adaptive_memory_bits, clockwise_memory_bits, memory_report, table_memory_bits, MemoryReport};
pub use resources::{
    chip_capacity, resource_usage, CapacityReport, ChipProfile, Quadratic, Resource, ResourceModel,
};
