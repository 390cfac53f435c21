//! Dataset regeneration and seeded termination fuzzing.

mod experiment;
mod fuzz;

pub use experiment::{
    cycle_threshold, run_experiment, CycleRecord, Dataset, EfficiencyRecord, ExperimentConfig, ExperimentOutput,
    Figure, OutputFormat, ResourceRecord, TopologyRecord, PUBLISHED_CYCLE_THRESHOLD,
};
pub use fuzz::{fuzz_termination, FuzzConfig, FuzzFailure, FuzzReport, HopLimit};
