//! Post-hoc measurements on simulation outcomes: opinion spread, in- and
//! out-group distances, proportional spread, opinion clustering and
//! steady-state regime classification.

use serde::{Deserialize, Serialize};

use crate::dynamics::OpinionState;
use crate::error::{Error, Result};
use crate::fmt_float;
use crate::graph::GroupAssignment;

/// Fraction of nodes a single cluster must hold to count as consensus, and
/// that 2-3 dominant clusters must hold jointly to count as polarization.
pub const DOMINANT_SHARE: f64 = 0.9;
/// Minimum share for a cluster to count as dominant.
pub const CLUSTER_SHARE: f64 = 0.1;

/// Steady-state regime taxonomy by cluster structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Consensus,
    Polarization,
    Fragmentation,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Consensus => "consensus",
            Regime::Polarization => "polarization",
            Regime::Fragmentation => "fragmentation",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "consensus" => Ok(Regime::Consensus),
            "polarization" => Ok(Regime::Polarization),
            "fragmentation" => Ok(Regime::Fragmentation),
            other => Err(Error::InvalidParameter(format!("unknown regime {other:?}"))),
        }
    }
}

/// A contiguous run of sorted opinions.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    /// Member nodes in ascending node order.
    pub members: Vec<usize>,
    /// Mean opinion of the members.
    pub mean: f64,
}

impl Cluster {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Flat report of every metric for one run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MetricsReport {
    pub initial_width: f64,
    pub final_width: f64,
    /// `final_width / initial_width`.
    pub opinion_spread: f64,
    pub in_group_distance: Option<f64>,
    pub out_group_distance: Option<f64>,
    pub proportional_spread: Option<f64>,
    pub cluster_count: usize,
    pub regime: Regime,
}

impl MetricsReport {
    pub const CSV_HEADER: &'static str = "initial_width,final_width,opinion_spread,in_group_distance,out_group_distance,proportional_spread,cluster_count,regime";

    /// One CSV row in [`MetricsReport::CSV_HEADER`] order; absent group
    /// metrics serialize as empty fields.
    pub fn csv_row(&self) -> String {
        let opt = |v: Option<f64>| v.map(fmt_float).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            fmt_float(self.initial_width),
            fmt_float(self.final_width),
            fmt_float(self.opinion_spread),
            opt(self.in_group_distance),
            opt(self.out_group_distance),
            opt(self.proportional_spread),
            self.cluster_count,
            self.regime
        )
    }
}

/// Ratio of final to initial opinion width.
pub fn opinion_spread(initial: &OpinionState, final_state: &OpinionState) -> Result<f64> {
    if initial.len() != final_state.len() {
        return Err(Error::DimensionMismatch {
            expected: initial.len(),
            actual: final_state.len(),
        });
    }
    let w0 = initial.width();
    if w0 <= 0.0 {
        return Err(Error::DegenerateInitialState);
    }
    Ok(final_state.width() / w0)
}

/// Mean in-group and out-group absolute opinion distances `(I, O)`.
///
/// The in-group term for a group of size `s` averages over all `s * s`
/// ordered pairs, self-pairs included; the out-group term averages each
/// member's distance to every non-member. Both are then averaged over
/// groups.
pub fn group_distances(
    final_state: &OpinionState,
    groups: &GroupAssignment,
) -> Result<(f64, f64)> {
    if groups.n() != final_state.len() {
        return Err(Error::DimensionMismatch {
            expected: groups.n(),
            actual: final_state.len(),
        });
    }
    if groups.k() < 2 {
        return Err(Error::SingleGroup);
    }
    let x = final_state.as_slice();
    let n = x.len();
    let members = groups.members();
    let mut in_total = 0.0;
    let mut out_total = 0.0;
    for group in &members {
        let size = group.len();
        let mut in_sum = 0.0;
        let mut out_sum = 0.0;
        for &j in group {
            for &l in group {
                in_sum += (x[j] - x[l]).abs();
            }
        }
        let in_group: std::collections::HashSet<usize> = group.iter().copied().collect();
        for &j in group {
            for l in 0..n {
                if !in_group.contains(&l) {
                    out_sum += (x[j] - x[l]).abs();
                }
            }
        }
        in_total += in_sum / (size * size) as f64;
        out_total += out_sum / (size * (n - size)) as f64;
    }
    let k = groups.k() as f64;
    Ok((in_total / k, out_total / k))
}

/// Ratio of in-group to out-group distance; small values mean groups have
/// clustered apart from each other.
pub fn proportional_spread(in_group: f64, out_group: f64) -> Result<f64> {
    if out_group <= 0.0 {
        return Err(Error::ZeroOutGroupDistance);
    }
    Ok(in_group / out_group)
}

/// Sorts opinions and cuts wherever consecutive values differ by at least
/// `gap_threshold`. Clusters come back ordered by ascending mean with their
/// members in ascending node order.
pub fn cluster_opinions(final_state: &OpinionState, gap_threshold: f64) -> Vec<Cluster> {
    debug_assert!(gap_threshold > 0.0);
    let x = final_state.as_slice();
    if x.is_empty() {
        return Vec::new();
    }
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut clusters = Vec::new();
    let mut current: Vec<usize> = vec![order[0]];
    for window in order.windows(2) {
        let (prev, node) = (window[0], window[1]);
        if x[node] - x[prev] >= gap_threshold {
            clusters.push(finish_cluster(std::mem::take(&mut current), x));
        }
        current.push(node);
    }
    clusters.push(finish_cluster(current, x));
    clusters
}

fn finish_cluster(mut members: Vec<usize>, x: &[f64]) -> Cluster {
    let mean = members.iter().map(|&i| x[i]).sum::<f64>() / members.len() as f64;
    members.sort_unstable();
    Cluster { members, mean }
}

/// Classifies the cluster structure: consensus when a single cluster holds
/// at least 90% of the nodes, polarization when two or three clusters each
/// hold at least 10% and jointly at least 90%, fragmentation otherwise.
pub fn classify_regime(clusters: &[Cluster], n: usize) -> Regime {
    debug_assert!(!clusters.is_empty());
    let n = n as f64;
    let largest = clusters.iter().map(Cluster::size).max().unwrap_or(0) as f64;
    if largest >= DOMINANT_SHARE * n {
        return Regime::Consensus;
    }
    let dominant: Vec<f64> = clusters
        .iter()
        .map(|c| c.size() as f64)
        .filter(|&s| s >= CLUSTER_SHARE * n)
        .collect();
    if (2..=3).contains(&dominant.len()) && dominant.iter().sum::<f64>() >= DOMINANT_SHARE * n {
        return Regime::Polarization;
    }
    Regime::Fragmentation
}

/// Builds the full report for one run. Group metrics are filled in only
/// when an assignment with at least two groups is provided.
pub fn metrics_report(
    initial: &OpinionState,
    final_state: &OpinionState,
    groups: Option<&GroupAssignment>,
    gap_threshold: f64,
) -> Result<MetricsReport> {
    let spread = opinion_spread(initial, final_state)?;
    let clusters = cluster_opinions(final_state, gap_threshold);
    let regime = classify_regime(&clusters, final_state.len());
    let (in_group, out_group, ps) = match groups {
        Some(g) if g.k() >= 2 => {
            let (i, o) = group_distances(final_state, g)?;
            let ps = if o > 0.0 { Some(i / o) } else { None };
            (Some(i), Some(o), ps)
        }
        _ => (None, None, None),
    };
    Ok(MetricsReport {
        initial_width: initial.width(),
        final_width: final_state.width(),
        opinion_spread: spread,
        in_group_distance: in_group,
        out_group_distance: out_group,
        proportional_spread: ps,
        cluster_count: clusters.len(),
        regime,
    })
}
