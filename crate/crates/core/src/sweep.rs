//! Parameter-sweep harness (stub).
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Topology { Er, Sbm }

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig { pub master_seed: u64 }

#[derive(Clone, Debug)]
pub struct SweepResult {}

#[derive(Clone, Debug)]
pub struct TrialRecord {}

pub fn run_sweep(_config: &SweepConfig, _workers: usize) -> crate::Result<SweepResult> {
    unimplemented!()
}
