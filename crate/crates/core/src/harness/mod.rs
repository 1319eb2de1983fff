//! Experiment configuration, replication runner and verification suites.

mod config;
mod runner;
pub mod verify;

pub use config::{AdaptationMode, ExperimentConfig, ScheduleSpec};
pub use runner::{
    csv_path, nearest_rank, CheckpointStat, CheckpointSummary, Experiment, ReplicationResult, RunOptions, RunReport,
};
