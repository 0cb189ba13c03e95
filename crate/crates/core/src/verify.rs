//! Executable oracle suite (stub).
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub seed: u64,
    pub n: usize,
    pub c: f64,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub proven: bool,
    pub instances: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct NeighborhoodPartition {
    pub node: usize,
    pub attractive: Vec<usize>,
    pub repulsive_above: Vec<usize>,
    pub repulsive_below: Vec<usize>,
}
