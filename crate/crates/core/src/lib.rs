//! Bounded-confidence opinion dynamics on signed networks.
//!
//! Agents hold scalar opinions and update them synchronously. Attractive
//! edges (+1) pull connected opinions together by the usual
//! Hegselmann-Krause averaging; repulsive edges (-1) push them apart with a
//! force that fades as the pair approaches the confidence bound, so paired
//! opinions settle a distance of exactly `c` apart instead of fleeing to
//! infinity. The crate ships the signed-graph data model with seeded random
//! generators, the update rule and its variants, post-hoc metrics, an
//! executable oracle suite for the model's analytical properties, and a
//! deterministic parameter-sweep harness.

pub mod dynamics;
pub mod error;
pub mod graph;
pub mod metrics;
pub mod rng;
pub mod sweep;
pub mod verify;

pub use dynamics::{
    run, run_summary, run_with, signed_offset, step, step_hk, step_naive, ModelParams,
    OpinionState, RunOutcome, Trajectory, TrajectoryMeta, Variant,
};
pub use error::{Error, Result};
pub use graph::{GroupAssignment, SignedGraph, Storage};
pub use metrics::{
    classify_regime, cluster_opinions, group_distances, metrics_report, opinion_spread, Cluster,
    MetricsReport, Regime,
};
pub use sweep::{run_sweep, SweepConfig, SweepResult, Topology, TrialRecord};
pub use verify::{CheckReport, NeighborhoodPartition, Violation};

/// Formats a float with 17 significant digits so that parsing the text back
/// recovers the identical `f64`.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}
