//! Synchronous opinion updates on signed networks.
//!
//! Each step recomputes every opinion from a frozen snapshot of the previous
//! ones. A node averages the pull of its in-confidence neighbours: an
//! attractive neighbour at signed distance `d` contributes `d` (plain
//! bounded-confidence averaging), while a repulsive neighbour contributes a
//! push of magnitude `|c - |d||` directed away from it, so repulsion fades
//! as the pair approaches separation `c`. A repulsive pair sitting at
//! exactly the same opinion breaks the tie by node index: the higher index
//! is pushed up, the lower one down. The diagonal always participates, so
//! the averaging denominator is never zero.
//!
//! Without repulsive edges the update is exactly the Hegselmann-Krause rule.

use std::collections::{HashMap, VecDeque};
use std::io::{BufRead, BufReader, Read, Write};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SignedGraph;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Sliding-window length for revisit detection.
pub const CYCLE_WINDOW: usize = 1_000;
/// States are keyed on 12 decimal places for revisit detection.
const CYCLE_SCALE: f64 = 1e12;
/// A run that exhausts its iteration budget while the max-norm displacement
/// never drops below `OSCILLATION_FACTOR * tol` across the final window is
/// classified as oscillating.
const OSCILLATION_FACTOR: f64 = 10.0;

/// Update rule selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Signed updates with distance-scaled repulsion.
    #[default]
    ScaledRepulsion,
    /// Signed updates where repulsion pushes by the raw distance. Kept for
    /// comparison; mixed graphs under this rule can oscillate forever.
    NaiveRepulsion,
    /// Plain Hegselmann-Krause averaging; rejects repulsive edges.
    HkBaseline,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::ScaledRepulsion => "scaled-repulsion",
            Variant::NaiveRepulsion => "naive-repulsion",
            Variant::HkBaseline => "hk-baseline",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "scaled-repulsion" | "scaled" => Ok(Variant::ScaledRepulsion),
            "naive-repulsion" | "naive" => Ok(Variant::NaiveRepulsion),
            "hk-baseline" | "hk" => Ok(Variant::HkBaseline),
            other => Err(Error::InvalidParameter(format!(
                "unknown variant {other:?}; expected scaled-repulsion, naive-repulsion or hk-baseline"
            ))),
        }
    }
}

/// Simulation parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Confidence bound.
    pub c: f64,
    /// Convergence tolerance on the max-norm displacement per step.
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Iteration cap.
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default)]
    pub variant: Variant,
    /// Detect revisited states and persistent oscillation. Off by default.
    #[serde(default)]
    pub cycle_detection: bool,
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

fn default_max_iter() -> usize {
    DEFAULT_MAX_ITER
}

impl ModelParams {
    pub fn new(c: f64) -> Self {
        Self {
            c,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
            variant: Variant::ScaledRepulsion,
            cycle_detection: false,
        }
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "confidence bound c = {} must be positive",
                self.c
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerance {} must be positive",
                self.tol
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

/// Opinions of all nodes at one timestep.
#[derive(Clone, Debug, PartialEq)]
pub struct OpinionState {
    opinions: Vec<f64>,
}

impl OpinionState {
    pub fn new(opinions: Vec<f64>) -> Self {
        Self { opinions }
    }

    /// Independent uniform draws on `[lo, hi)`.
    pub fn sample_uniform(n: usize, lo: f64, hi: f64, rng: &mut impl Rng) -> Self {
        let opinions = (0..n).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect();
        Self { opinions }
    }

    pub fn len(&self) -> usize {
        self.opinions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opinions.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.opinions
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.opinions.iter()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.opinions
    }

    pub fn ensure_finite(&self) -> Result<()> {
        for (node, x) in self.opinions.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NonFiniteOpinion { node });
            }
        }
        Ok(())
    }

    /// Largest entry-wise absolute difference to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.opinions
            .iter()
            .zip(&other.opinions)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Width of the opinion range, `max - min`; equals the largest pairwise
    /// absolute distance.
    pub fn width(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for &x in &self.opinions {
            lo = lo.min(x);
            hi = hi.max(x);
        }
        if self.opinions.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }
}

impl std::ops::Index<usize> for OpinionState {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.opinions[i]
    }
}

impl From<Vec<f64>> for OpinionState {
    fn from(opinions: Vec<f64>) -> Self {
        Self::new(opinions)
    }
}

/// Signed displacement that node `j` proposes for node `i`.
///
/// For `A_ij >= 0` this is the raw difference `x_j - x_i`. For a repulsive
/// edge it is `sign(x_j - x_i) * |c - |x_j - x_i||`, and at an exact opinion
/// tie the direction falls back to index order (`sign(j - i) * c`). Note the
/// caller multiplies by `A_ij`, which flips the repulsive contribution away
/// from the neighbour.
pub fn signed_offset(
    i: usize,
    j: usize,
    state: &OpinionState,
    graph: &SignedGraph,
    c: f64,
) -> f64 {
    if i == j {
        return 0.0;
    }
    offset_given_sign(graph.sign(i, j), state[i], state[j], i, j, c)
}

#[inline]
fn offset_given_sign(sign: i8, xi: f64, xj: f64, i: usize, j: usize, c: f64) -> f64 {
    let d = xj - xi;
    if sign >= 0 {
        return d;
    }
    if d == 0.0 {
        // equal-opinion repulsive tie: higher index moves up
        if j > i {
            c
        } else {
            -c
        }
    } else {
        d.signum() * (c - d.abs()).abs()
    }
}

fn check_dims(state: &OpinionState, graph: &SignedGraph) -> Result<()> {
    if state.len() != graph.n() {
        return Err(Error::DimensionMismatch {
            expected: graph.n(),
            actual: state.len(),
        });
    }
    Ok(())
}

/// One synchronous update with distance-scaled repulsion.
///
/// `x_i' = x_i + sum_j A_ij * M_ij * 1{|x_j - x_i| < c}
///              / sum_j |A_ij| * 1{|x_j - x_i| < c}`
///
/// where `M_ij` is [`signed_offset`]. The indicator is strict, and the
/// denominator is at least one because the diagonal always qualifies.
pub fn step(state: &OpinionState, graph: &SignedGraph, params: &ModelParams) -> Result<OpinionState> {
    check_dims(state, graph)?;
    let c = params.c;
    let x = state.as_slice();
    let mut out = Vec::with_capacity(x.len());
    for (i, &xi) in x.iter().enumerate() {
        // diagonal: offset 0, weight 1
        let mut numerator = 0.0;
        let mut weight = 1usize;
        for (j, sign) in graph.neighbors(i) {
            let xj = x[j];
            if (xj - xi).abs() < c {
                numerator += sign as f64 * offset_given_sign(sign, xi, xj, i, j, c);
                weight += 1;
            }
        }
        let shift = numerator / weight as f64;
        // every contribution has magnitude < c, so the average does too
        debug_assert!(shift.abs() <= c * (1.0 + 1e-12) + 1e-15);
        out.push(xi + shift);
    }
    Ok(OpinionState::new(out))
}

/// One synchronous update where repulsive neighbours push by the raw
/// distance instead of the scaled offset. Coincides with [`step`] on graphs
/// without repulsive edges.
pub fn step_naive(
    state: &OpinionState,
    graph: &SignedGraph,
    params: &ModelParams,
) -> Result<OpinionState> {
    check_dims(state, graph)?;
    let c = params.c;
    let x = state.as_slice();
    let mut out = Vec::with_capacity(x.len());
    for (i, &xi) in x.iter().enumerate() {
        let mut numerator = 0.0;
        let mut weight = 1usize;
        for (j, sign) in graph.neighbors(i) {
            let d = x[j] - xi;
            if d.abs() < c {
                numerator += sign as f64 * d;
                weight += 1;
            }
        }
        out.push(xi + numerator / weight as f64);
    }
    Ok(OpinionState::new(out))
}

/// One Hegselmann-Krause update: each opinion becomes the mean of its
/// in-confidence neighbourhood, itself included. Requires a graph without
/// repulsive edges and agrees with [`step`] there (up to rounding, since it
/// averages levels while [`step`] averages differences).
pub fn step_hk(
    state: &OpinionState,
    graph: &SignedGraph,
    params: &ModelParams,
) -> Result<OpinionState> {
    check_dims(state, graph)?;
    if graph.m_r() > 0 {
        return Err(Error::NegativeEdgePresent);
    }
    let c = params.c;
    let x = state.as_slice();
    let mut out = Vec::with_capacity(x.len());
    for (i, &xi) in x.iter().enumerate() {
        let mut sum = xi;
        let mut count = 1usize;
        for (j, _) in graph.neighbors(i) {
            let xj = x[j];
            if (xj - xi).abs() < c {
                sum += xj;
                count += 1;
            }
        }
        out.push(sum / count as f64);
    }
    Ok(OpinionState::new(out))
}

/// Dispatches on `params.variant`.
pub fn step_variant(
    state: &OpinionState,
    graph: &SignedGraph,
    params: &ModelParams,
) -> Result<OpinionState> {
    match params.variant {
        Variant::ScaledRepulsion => step(state, graph, params),
        Variant::NaiveRepulsion => step_naive(state, graph, params),
        Variant::HkBaseline => step_hk(state, graph, params),
    }
}

/// Terminal facts about a run.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub final_state: OpinionState,
    pub converged: bool,
    /// Index of the last computed state; at most `max_iter`.
    pub stopping_time: usize,
    /// Set when revisit detection saw a repeated state, or the run exhausted
    /// its budget with the displacement never settling.
    pub cycle_detected: bool,
}

/// Full trajectory of a run, one state per timestep starting at `t = 0`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub states: Vec<OpinionState>,
    pub converged: bool,
    pub stopping_time: usize,
    pub cycle_detected: bool,
    pub params: ModelParams,
}

impl Trajectory {
    pub fn initial(&self) -> &OpinionState {
        &self.states[0]
    }

    pub fn final_state(&self) -> &OpinionState {
        self.states.last().expect("trajectory never empty")
    }
}

struct CycleDetector {
    seen: HashMap<Vec<i64>, usize>,
    order: VecDeque<Vec<i64>>,
}

impl CycleDetector {
    fn new() -> Self {
        Self {
            seen: HashMap::new(),
            order: VecDeque::new(),
        }
    }

    /// Records a state; reports whether it revisits one still in the window.
    fn observe(&mut self, state: &OpinionState, t: usize) -> Option<usize> {
        let key: Vec<i64> = state.iter().map(|x| (x * CYCLE_SCALE).round() as i64).collect();
        if let Some(&first) = self.seen.get(&key) {
            return Some(first);
        }
        self.seen.insert(key.clone(), t);
        self.order.push_back(key);
        if self.order.len() > CYCLE_WINDOW {
            let old = self.order.pop_front().expect("window not empty");
            self.seen.remove(&old);
        }
        None
    }
}

/// Runs the selected variant until the max-norm displacement falls below
/// `params.tol` or the iteration budget is exhausted, invoking
/// `on_step(t, before, after)` for every executed step.
///
/// With `params.cycle_detection` set, states rounded to 12 decimals are
/// hashed over a sliding window of [`CYCLE_WINDOW`] steps; an exact revisit
/// stops the run early with `cycle_detected` set. A run that spends its
/// whole budget with the displacement never dropping near `tol` over the
/// final window is likewise flagged, which catches oscillations whose orbit
/// never lands on exactly the same rounded state.
pub fn run_with(
    initial: &OpinionState,
    graph: &SignedGraph,
    params: &ModelParams,
    mut on_step: impl FnMut(usize, &OpinionState, &OpinionState),
) -> Result<RunOutcome> {
    params.validate()?;
    check_dims(initial, graph)?;
    initial.ensure_finite()?;

    let mut detector = params.cycle_detection.then(CycleDetector::new);
    if let Some(d) = &mut detector {
        d.observe(initial, 0);
    }

    let tail_start = params.max_iter.saturating_sub(CYCLE_WINDOW);
    let mut tail_min_delta = f64::INFINITY;

    let mut current = initial.clone();
    let mut converged = false;
    let mut cycle_detected = false;
    let mut stopping_time = params.max_iter;

    for t in 0..params.max_iter {
        let next = step_variant(&current, graph, params)?;
        let delta = current.max_abs_diff(&next);
        on_step(t, &current, &next);
        if t >= tail_start {
            tail_min_delta = tail_min_delta.min(delta);
        }
        let revisit = match &mut detector {
            Some(d) if delta >= params.tol => d.observe(&next, t + 1).is_some(),
            _ => false,
        };
        current = next;
        if delta < params.tol {
            converged = true;
            stopping_time = t + 1;
            break;
        }
        if revisit {
            cycle_detected = true;
            stopping_time = t + 1;
            break;
        }
    }

    if !converged
        && !cycle_detected
        && detector.is_some()
        && stopping_time == params.max_iter
        && tail_min_delta >= OSCILLATION_FACTOR * params.tol
    {
        cycle_detected = true;
    }

    Ok(RunOutcome {
        final_state: current,
        converged,
        stopping_time,
        cycle_detected,
    })
}

/// Runs the model and records every state.
pub fn run(initial: &OpinionState, graph: &SignedGraph, params: &ModelParams) -> Result<Trajectory> {
    let mut states = vec![initial.clone()];
    let outcome = run_with(initial, graph, params, |_, _, after| {
        states.push(after.clone());
    })?;
    debug_assert_eq!(states.len(), outcome.stopping_time + 1);
    Ok(Trajectory {
        states,
        converged: outcome.converged,
        stopping_time: outcome.stopping_time,
        cycle_detected: outcome.cycle_detected,
        params: params.clone(),
    })
}

/// Runs the model keeping only the terminal facts. Identical dynamics to
/// [`run`] without storing intermediate states.
pub fn run_summary(
    initial: &OpinionState,
    graph: &SignedGraph,
    params: &ModelParams,
) -> Result<RunOutcome> {
    run_with(initial, graph, params, |_, _, _| {})
}

/// Metadata sidecar for a trajectory file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrajectoryMeta {
    pub schema_version: u32,
    pub n: usize,
    pub seed: Option<u64>,
    pub params: ModelParams,
    pub converged: bool,
    pub stopping_time: usize,
    pub cycle_detected: bool,
}

impl TrajectoryMeta {
    pub fn for_trajectory(trajectory: &Trajectory, seed: Option<u64>) -> Self {
        Self {
            schema_version: 1,
            n: trajectory.initial().len(),
            seed,
            params: trajectory.params.clone(),
            converged: trajectory.converged,
            stopping_time: trajectory.stopping_time,
            cycle_detected: trajectory.cycle_detected,
        }
    }

    pub fn write(&self, w: impl Write) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    pub fn read(r: impl Read) -> Result<Self> {
        Ok(serde_json::from_reader(r)?)
    }
}

/// Writes states as CSV: header `t,node_0,...,node_{n-1}`, one row per
/// timestep. Values use the shortest representation that parses back to the
/// identical float.
pub fn write_states_csv(states: &[OpinionState], mut w: impl Write) -> Result<()> {
    let n = states.first().map_or(0, OpinionState::len);
    let mut header = String::from("t");
    for i in 0..n {
        header.push_str(&format!(",node_{i}"));
    }
    writeln!(w, "{header}")?;
    for (t, state) in states.iter().enumerate() {
        let mut row = t.to_string();
        for x in state.iter() {
            row.push(',');
            row.push_str(&format!("{x}"));
        }
        writeln!(w, "{row}")?;
    }
    Ok(())
}

/// Parses the CSV layout produced by [`write_states_csv`].
pub fn read_states_csv(r: impl Read) -> Result<Vec<OpinionState>> {
    let reader = BufReader::new(r);
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedTrajectory("empty file".into()))??;
    let n = header.split(',').count().saturating_sub(1);
    let mut states = Vec::new();
    for (row, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let t: usize = fields
            .next()
            .unwrap_or_default()
            .parse()
            .map_err(|_| Error::MalformedTrajectory(format!("bad timestep on row {row}")))?;
        if t != row {
            return Err(Error::MalformedTrajectory(format!(
                "timestep {t} out of order on row {row}"
            )));
        }
        let opinions: Vec<f64> = fields
            .map(|f| {
                f.parse()
                    .map_err(|_| Error::MalformedTrajectory(format!("bad value {f:?} on row {row}")))
            })
            .collect::<Result<_>>()?;
        if opinions.len() != n {
            return Err(Error::MalformedTrajectory(format!(
                "row {row} has {} values, expected {n}",
                opinions.len()
            )));
        }
        states.push(OpinionState::new(opinions));
    }
    if states.is_empty() {
        return Err(Error::MalformedTrajectory("no states".into()));
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Storage;
    use crate::rng::stream;
    use approx::assert_abs_diff_eq;

    fn two_node(sign: i8) -> SignedGraph {
        SignedGraph::from_edges(2, &[(0, 1, sign)]).unwrap()
    }

    fn fig2_graph() -> SignedGraph {
        SignedGraph::from_edges(3, &[(0, 2, -1), (0, 1, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn signed_offset_cases() {
        let g = two_node(-1);
        let x = OpinionState::new(vec![0.0, 0.3]);
        assert_eq!(signed_offset(0, 0, &x, &g, 0.5), 0.0);
        assert_abs_diff_eq!(signed_offset(0, 1, &x, &g, 0.5), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(signed_offset(1, 0, &x, &g, 0.5), -0.2, epsilon = 1e-15);

        // exact tie: higher index pushed up
        let x = OpinionState::new(vec![0.7, 0.7]);
        assert_eq!(signed_offset(0, 1, &x, &g, 0.5), 0.5);
        assert_eq!(signed_offset(1, 0, &x, &g, 0.5), -0.5);
    }

    #[test]
    fn repulsive_pair_separates_to_exactly_c() {
        let g = two_node(-1);
        let params = ModelParams::new(0.5);
        let x = OpinionState::new(vec![0.0, 0.3]);
        let next = step(&x, &g, &params).unwrap();
        assert_abs_diff_eq!(next[0], -0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(next[1], 0.4, epsilon = 1e-15);
        assert_abs_diff_eq!(next[1] - next[0], 0.5, epsilon = 1e-15);
    }

    #[test]
    fn attractive_pair_meets_in_the_middle() {
        let g = two_node(1);
        let params = ModelParams::new(0.5);
        let x = OpinionState::new(vec![0.0, 0.3]);
        let next = step(&x, &g, &params).unwrap();
        assert_abs_diff_eq!(next[0], 0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(next[1], 0.15, epsilon = 1e-15);

        let hk = step_hk(&x, &g, &params).unwrap();
        assert_abs_diff_eq!(hk[0], 0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(hk[1], 0.15, epsilon = 1e-15);
    }

    #[test]
    fn edgeless_graph_is_a_fixed_point() {
        let g = SignedGraph::from_edges(4, &[]).unwrap();
        let params = ModelParams::new(0.5);
        let x = OpinionState::new(vec![0.1, 0.9, 0.4, 0.2]);
        let next = step(&x, &g, &params).unwrap();
        assert_eq!(next, x);
    }

    #[test]
    fn hk_step_cases() {
        let g = two_node(1);
        let params = ModelParams::new(0.5);

        let x = OpinionState::new(vec![0.2, 0.2]);
        assert_eq!(step_hk(&x, &g, &params).unwrap(), x);

        // outside confidence only the self-loop contributes
        let x = OpinionState::new(vec![0.0, 1.0]);
        assert_eq!(step_hk(&x, &g, &params).unwrap(), x);

        let err = step_hk(&x, &two_node(-1), &params).unwrap_err();
        assert!(matches!(err, Error::NegativeEdgePresent));
    }

    #[test]
    fn naive_step_cases() {
        let params = ModelParams::new(0.5);

        // without repulsive edges the naive rule matches the scaled one exactly
        let g = two_node(1);
        let x = OpinionState::new(vec![0.0, 0.3]);
        assert_eq!(
            step_naive(&x, &g, &params).unwrap(),
            step(&x, &g, &params).unwrap()
        );

        // repulsive pair out of confidence does not move
        let g = two_node(-1);
        let x = OpinionState::new(vec![0.0, 0.6]);
        assert_eq!(step_naive(&x, &g, &params).unwrap(), x);
    }

    #[test]
    fn hk_agreement_on_positive_graphs() {
        // identical in exact arithmetic; 1e-12 covers the different
        // summation routes
        for seed in 0..100 {
            let mut rng = stream(seed, "hk-agree", &[]);
            let n = 2 + (seed as usize % 7);
            let g = SignedGraph::random_er(n, 0.6, 0.0, &mut rng).unwrap();
            let x = OpinionState::sample_uniform(n, 0.0, 1.0, &mut rng);
            let params = ModelParams::new(0.4);
            let a = step(&x, &g, &params).unwrap();
            let b = step_hk(&x, &g, &params).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn run_without_edges_stops_at_t1() {
        let g = SignedGraph::from_edges(3, &[]).unwrap();
        let params = ModelParams::new(0.5);
        let x = OpinionState::new(vec![0.1, 0.5, 0.9]);
        let traj = run(&x, &g, &params).unwrap();
        assert!(traj.converged);
        assert_eq!(traj.stopping_time, 1);
        assert_eq!(traj.final_state(), &x);
    }

    #[test]
    fn complete_repulsive_triangle_reaches_width_2c() {
        let g = SignedGraph::complete(3, -1).unwrap();
        let mut params = ModelParams::new(0.4);
        params.tol = 1e-10;
        let x = OpinionState::new(vec![0.05, 0.2, 0.3]);
        let traj = run(&x, &g, &params).unwrap();
        assert!(traj.converged);
        assert!((traj.final_state().width() - 0.8).abs() < 1e-6);
    }

    #[test]
    fn fig2_instance_converges_under_scaled_repulsion() {
        let g = fig2_graph();
        let params = ModelParams::new(0.6);
        let x = OpinionState::new(vec![1.0, 0.5, 0.0]);
        let traj = run(&x, &g, &params).unwrap();
        assert!(traj.converged);
        let f = traj.final_state();
        // connected, pairwise within confidence, yet not a single opinion
        for i in 0..3 {
            for j in 0..3 {
                assert!((f[i] - f[j]).abs() < 0.6);
            }
        }
        assert!(f.width() > 1e-3);
    }

    #[test]
    fn trajectories_are_deterministic() {
        let mut rng = stream(17, "det", &[]);
        let g = SignedGraph::random_er(20, 0.5, 0.3, &mut rng).unwrap();
        let x = OpinionState::sample_uniform(20, 0.0, 1.0, &mut rng);
        let params = ModelParams::new(0.4);
        let a = run(&x, &g, &params).unwrap();
        let b = run(&x, &g, &params).unwrap();
        assert_eq!(a.states.len(), b.states.len());
        for (s, t) in a.states.iter().zip(&b.states) {
            assert_eq!(s, t);
        }
    }

    #[test]
    fn dense_and_list_storage_produce_identical_trajectories() {
        let mut rng = stream(23, "storage", &[]);
        let g = SignedGraph::random_er(30, 0.5, 0.4, &mut rng).unwrap();
        let edges = g.edges();
        let dense = SignedGraph::from_edges_with_storage(30, &edges, Storage::Dense).unwrap();
        let lists = SignedGraph::from_edges_with_storage(30, &edges, Storage::Lists).unwrap();
        let x = OpinionState::sample_uniform(30, 0.0, 1.0, &mut rng);
        let params = ModelParams::new(0.3);
        let a = run(&x, &dense, &params).unwrap();
        let b = run(&x, &lists, &params).unwrap();
        assert_eq!(a.states.len(), b.states.len());
        for (s, t) in a.states.iter().zip(&b.states) {
            assert_eq!(s.as_slice(), t.as_slice());
        }
    }

    #[test]
    fn single_step_motion_is_bounded_by_c() {
        for seed in 0..50 {
            let mut rng = stream(seed, "bounded", &[]);
            let n = 2 + (seed as usize % 10);
            let g = SignedGraph::random_er(n, 0.5, 0.5, &mut rng).unwrap();
            let x = OpinionState::sample_uniform(n, 0.0, 2.0, &mut rng);
            let params = ModelParams::new(0.35);
            run_with(&x, &g, &params, |_, before, after| {
                for i in 0..n {
                    assert!((after[i] - before[i]).abs() <= params.c + 1e-12);
                }
            })
            .unwrap();
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = two_node(1);
        let params = ModelParams::new(0.5);
        let x = OpinionState::new(vec![0.1, 0.2, 0.3]);
        assert!(matches!(
            step(&x, &g, &params).unwrap_err(),
            Error::DimensionMismatch { expected: 2, actual: 3 }
        ));
    }

    #[test]
    fn states_csv_round_trip() {
        let states = vec![
            OpinionState::new(vec![0.1, 0.2, 0.30000000000000004]),
            OpinionState::new(vec![0.15, 0.25, 1.0 / 3.0]),
        ];
        let mut buf = Vec::new();
        write_states_csv(&states, &mut buf).unwrap();
        let back = read_states_csv(buf.as_slice()).unwrap();
        assert_eq!(states.len(), back.len());
        for (a, b) in states.iter().zip(&back) {
            assert_eq!(a.as_slice(), b.as_slice());
        }
    }

    #[test]
    fn trajectory_meta_round_trip() {
        let g = two_node(-1);
        let params = ModelParams::new(0.5);
        let traj = run(&OpinionState::new(vec![0.0, 0.3]), &g, &params).unwrap();
        let meta = TrajectoryMeta::for_trajectory(&traj, Some(42));
        let mut buf = Vec::new();
        meta.write(&mut buf).unwrap();
        let back = TrajectoryMeta::read(buf.as_slice()).unwrap();
        assert_eq!(back.seed, Some(42));
        assert_eq!(back.stopping_time, meta.stopping_time);
        assert_eq!(back.params, meta.params);
    }
}
