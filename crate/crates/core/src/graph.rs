//! Signed-network data model and random generators.
//!
//! A [`SignedGraph`] is an undirected graph on `n` nodes whose edges carry a
//! sign: `+1` attractive, `-1` repulsive. The diagonal is fixed at `+1` so
//! that a node always counts itself when averaging. Graphs up to
//! [`DENSE_NODE_LIMIT`] nodes are stored as a dense sign matrix, larger ones
//! as sorted adjacency lists; both storages expose neighbours in ascending
//! order, so simulations produce bit-identical results either way.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use rand::Rng;

use crate::dynamics::OpinionState;
use crate::error::{Error, Result};

/// Node count above which adjacency lists replace the dense sign matrix.
pub const DENSE_NODE_LIMIT: usize = 4096;

/// Storage layout selector for [`SignedGraph::from_edges_with_storage`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Storage {
    /// Dense below [`DENSE_NODE_LIMIT`] nodes, adjacency lists above.
    Auto,
    Dense,
    Lists,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Adjacency {
    /// Row-major `n * n` signs, diagonal fixed at +1.
    Dense(Vec<i8>),
    /// Per-node `(neighbour, sign)` pairs sorted by neighbour; no diagonal.
    Lists(Vec<Vec<(u32, i8)>>),
}

/// Assignment of nodes to contiguous groups, as produced by the block-model
/// generator. Group indices run from `0` to `k - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAssignment {
    k: usize,
    membership: Vec<usize>,
}

impl GroupAssignment {
    /// Balanced contiguous partition: node `i` belongs to group
    /// `floor(i * k / n)`, so group sizes differ by at most one.
    pub fn balanced(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k > n {
            return Err(Error::InvalidGroupCount { k, n });
        }
        let membership = (0..n).map(|i| i * k / n).collect();
        Ok(Self { k, membership })
    }

    /// Builds an assignment from an explicit membership vector. Group
    /// indices must cover `0..k` for some `k >= 1` without gaps.
    pub fn from_membership(membership: Vec<usize>) -> Result<Self> {
        let n = membership.len();
        let k = membership.iter().max().map_or(0, |m| m + 1);
        if k < 1 || k > n {
            return Err(Error::InvalidGroupCount { k, n });
        }
        let mut counts = vec![0usize; k];
        for &g in &membership {
            counts[g] += 1;
        }
        if counts.iter().any(|&c| c == 0) {
            return Err(Error::InvalidGroupCount { k, n });
        }
        Ok(Self { k, membership })
    }

    /// Builds a contiguous-block assignment from group sizes.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let n: usize = sizes.iter().sum();
        let k = sizes.len();
        if k < 1 || k > n {
            return Err(Error::InvalidGroupCount { k, n });
        }
        let mut membership = Vec::with_capacity(n);
        for (g, &size) in sizes.iter().enumerate() {
            if size == 0 {
                return Err(Error::InvalidGroupCount { k, n });
            }
            membership.extend(std::iter::repeat(g).take(size));
        }
        Ok(Self { k, membership })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.membership.len()
    }

    pub fn group_of(&self, node: usize) -> usize {
        self.membership[node]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &g in &self.membership {
            sizes[g] += 1;
        }
        sizes
    }

    /// Nodes of each group, in ascending node order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.k];
        for (node, &g) in self.membership.iter().enumerate() {
            members[g].push(node);
        }
        members
    }
}

/// Undirected signed graph with a fixed `+1` diagonal.
#[derive(Clone, Debug)]
pub struct SignedGraph {
    n: usize,
    adj: Adjacency,
    m: usize,
    m_r: usize,
    groups: Option<GroupAssignment>,
}

impl SignedGraph {
    /// Builds a graph from an explicit signed edge list.
    ///
    /// Indices must be in range, self-loops are rejected (the diagonal is
    /// implicit), and listing the same unordered pair with both signs is an
    /// error. Unlisted off-diagonal entries are zero.
    pub fn from_edges(n: usize, edges: &[(usize, usize, i8)]) -> Result<Self> {
        Self::from_edges_with_storage(n, edges, Storage::Auto)
    }

    /// Like [`SignedGraph::from_edges`] with an explicit storage layout.
    pub fn from_edges_with_storage(
        n: usize,
        edges: &[(usize, usize, i8)],
        storage: Storage,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("node count must be positive".into()));
        }
        let mut seen: HashMap<(usize, usize), i8> = HashMap::with_capacity(edges.len());
        for &(i, j, sign) in edges {
            if i >= n {
                return Err(Error::IndexOutOfRange { node: i, n });
            }
            if j >= n {
                return Err(Error::IndexOutOfRange { node: j, n });
            }
            if i == j {
                return Err(Error::SelfLoopRejected { node: i });
            }
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidSign { i, j, sign });
            }
            let key = (i.min(j), i.max(j));
            match seen.insert(key, sign) {
                Some(prev) if prev != sign => {
                    return Err(Error::ConflictingEdgeSign { i: key.0, j: key.1 })
                }
                _ => {}
            }
        }
        let mut unique: Vec<(usize, usize, i8)> =
            seen.into_iter().map(|((i, j), s)| (i, j, s)).collect();
        unique.sort_unstable();
        Ok(Self::from_clean_edges(n, &unique, storage, None))
    }

    /// Complete graph with every off-diagonal entry set to `sign`.
    pub fn complete(n: usize, sign: i8) -> Result<Self> {
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                edges.push((i, j, sign));
            }
        }
        Self::from_edges(n, &edges)
    }

    /// Signed Erdos-Renyi graph: each unordered pair independently receives
    /// an attractive edge with probability `p1 * (1 - p2)`, a repulsive edge
    /// with probability `(1 - p1) * p2`, and no edge otherwise. This is the
    /// sign difference of two independent edge samples on the same pair set;
    /// a pair proposed by both samples cancels to a non-edge.
    pub fn random_er(n: usize, p1: f64, p2: f64, rng: &mut impl Rng) -> Result<Self> {
        check_probability("p1", p1)?;
        check_probability("p2", p2)?;
        if n == 0 {
            return Err(Error::InvalidParameter("node count must be positive".into()));
        }
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if let Some(sign) = sample_pair_sign(p1, p2, rng) {
                    edges.push((i, j, sign));
                }
            }
        }
        Ok(Self::from_clean_edges(n, &edges, Storage::Auto, None))
    }

    /// Signed stochastic block model. Nodes are split into `k` balanced
    /// contiguous groups; same-group pairs draw edges with `(p1, p2)` and
    /// cross-group pairs with `(p1 * rho, p2 * rho)`. With `rho = 1` the
    /// distribution coincides with [`SignedGraph::random_er`].
    pub fn random_sbm(
        n: usize,
        k: usize,
        p1: f64,
        p2: f64,
        rho: f64,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        check_probability("p1", p1)?;
        check_probability("p2", p2)?;
        check_probability("rho", rho)?;
        let groups = GroupAssignment::balanced(n, k)?;
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let same = groups.group_of(i) == groups.group_of(j);
                let (q1, q2) = if same { (p1, p2) } else { (p1 * rho, p2 * rho) };
                if let Some(sign) = sample_pair_sign(q1, q2, rng) {
                    edges.push((i, j, sign));
                }
            }
        }
        Ok(Self::from_clean_edges(n, &edges, Storage::Auto, Some(groups)))
    }

    /// Restriction of the graph to pairs currently within confidence of each
    /// other: every off-diagonal entry `(i, j)` with `|x_j - x_i| >= c` is
    /// zeroed. Applying the operation twice with the same state is a no-op.
    pub fn receptivity(&self, state: &OpinionState, c: f64) -> Result<Self> {
        if state.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: state.len(),
            });
        }
        if c <= 0.0 {
            return Err(Error::InvalidParameter(
                "confidence bound must be positive".into(),
            ));
        }
        let x = state.as_slice();
        let keep =
            |i: usize, j: usize| (x[j] - x[i]).abs() < c;
        let storage = match self.adj {
            Adjacency::Dense(_) => Storage::Dense,
            Adjacency::Lists(_) => Storage::Lists,
        };
        let edges: Vec<(usize, usize, i8)> = self
            .edges()
            .into_iter()
            .filter(|&(i, j, _)| keep(i, j))
            .collect();
        Ok(Self::from_clean_edges(self.n, &edges, storage, self.groups.clone()))
    }

    /// Attaches a group assignment covering all nodes.
    pub fn with_groups(mut self, groups: GroupAssignment) -> Result<Self> {
        if groups.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: groups.n(),
            });
        }
        self.groups = Some(groups);
        Ok(self)
    }

    /// Edge list assumed validated: unique unordered pairs `(i < j)` with
    /// signs in `{-1, +1}`, sorted ascending.
    fn from_clean_edges(
        n: usize,
        edges: &[(usize, usize, i8)],
        storage: Storage,
        groups: Option<GroupAssignment>,
    ) -> Self {
        let m = edges.len();
        let m_r = edges.iter().filter(|&&(_, _, s)| s == -1).count();
        let dense = match storage {
            Storage::Auto => n <= DENSE_NODE_LIMIT,
            Storage::Dense => true,
            Storage::Lists => false,
        };
        let adj = if dense {
            let mut signs = vec![0i8; n * n];
            for i in 0..n {
                signs[i * n + i] = 1;
            }
            for &(i, j, s) in edges {
                signs[i * n + j] = s;
                signs[j * n + i] = s;
            }
            Adjacency::Dense(signs)
        } else {
            let mut rows: Vec<Vec<(u32, i8)>> = vec![Vec::new(); n];
            for &(i, j, s) in edges {
                rows[i].push((j as u32, s));
                rows[j].push((i as u32, s));
            }
            for row in &mut rows {
                row.sort_unstable_by_key(|&(j, _)| j);
            }
            Adjacency::Lists(rows)
        };
        Self { n, adj, m, m_r, groups }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges (nonzero off-diagonal unordered pairs).
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of repulsive edges.
    pub fn m_r(&self) -> usize {
        self.m_r
    }

    pub fn groups(&self) -> Option<&GroupAssignment> {
        self.groups.as_ref()
    }

    /// Sign of entry `(i, j)`; `+1` on the diagonal.
    pub fn sign(&self, i: usize, j: usize) -> i8 {
        if i == j {
            return 1;
        }
        match &self.adj {
            Adjacency::Dense(signs) => signs[i * self.n + j],
            Adjacency::Lists(rows) => rows[i]
                .binary_search_by_key(&(j as u32), |&(nb, _)| nb)
                .map(|pos| rows[i][pos].1)
                .unwrap_or(0),
        }
    }

    /// Off-diagonal neighbours of `i` with their signs, ascending by index.
    pub fn neighbors(&self, i: usize) -> Neighbors<'_> {
        let inner = match &self.adj {
            Adjacency::Dense(signs) => NeighborsInner::Dense {
                row: &signs[i * self.n..(i + 1) * self.n],
                node: i,
                next: 0,
            },
            Adjacency::Lists(rows) => NeighborsInner::Lists(rows[i].iter()),
        };
        Neighbors { inner }
    }

    /// All edges as `(i, j, sign)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize, i8)> {
        let mut edges = Vec::with_capacity(self.m);
        match &self.adj {
            Adjacency::Dense(signs) => {
                for i in 0..self.n {
                    for j in (i + 1)..self.n {
                        let s = signs[i * self.n + j];
                        if s != 0 {
                            edges.push((i, j, s));
                        }
                    }
                }
            }
            Adjacency::Lists(rows) => {
                for (i, row) in rows.iter().enumerate() {
                    for &(j, s) in row {
                        let j = j as usize;
                        if j > i {
                            edges.push((i, j, s));
                        }
                    }
                }
            }
        }
        edges
    }

    /// Counts of `(attractive, repulsive, absent)` unordered pairs.
    pub fn pair_counts(&self) -> (usize, usize, usize) {
        let total = self.n * (self.n - 1) / 2;
        (self.m - self.m_r, self.m_r, total - self.m)
    }

    /// Writes the plain-text edge-list format:
    /// a `n=<int>` header, an optional `groups=<sizes>` line, then one
    /// `i j sign` triple per edge. The diagonal is implicit.
    pub fn write(&self, mut w: impl Write) -> Result<()> {
        let mut text = String::new();
        writeln!(text, "n={}", self.n).expect("writing to string");
        if let Some(groups) = &self.groups {
            let sizes: Vec<String> = groups.sizes().iter().map(|s| s.to_string()).collect();
            writeln!(text, "groups={}", sizes.join(",")).expect("writing to string");
        }
        for (i, j, s) in self.edges() {
            writeln!(text, "{i} {j} {s}").expect("writing to string");
        }
        w.write_all(text.as_bytes())?;
        Ok(())
    }

    /// Parses the edge-list format produced by [`SignedGraph::write`].
    pub fn read(r: impl Read) -> Result<Self> {
        let reader = BufReader::new(r);
        let mut lines = reader.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::MalformedGraphFile("empty file".into()))??;
        let n: usize = header
            .strip_prefix("n=")
            .ok_or_else(|| Error::MalformedGraphFile(format!("expected n=<int>, got {header:?}")))?
            .trim()
            .parse()
            .map_err(|_| Error::MalformedGraphFile(format!("bad node count in {header:?}")))?;
        let mut edges = Vec::new();
        let mut groups = None;
        for line in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(spec) = line.strip_prefix("groups=") {
                let sizes: Vec<usize> = spec
                    .split(',')
                    .map(|s| {
                        s.trim().parse().map_err(|_| {
                            Error::MalformedGraphFile(format!("bad group size {s:?}"))
                        })
                    })
                    .collect::<Result<_>>()?;
                if sizes.iter().sum::<usize>() != n {
                    return Err(Error::MalformedGraphFile(
                        "group sizes do not sum to n".into(),
                    ));
                }
                groups = Some(GroupAssignment::from_sizes(&sizes)?);
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse_field = |part: Option<&str>| -> Result<i64> {
                part.ok_or_else(|| Error::MalformedGraphFile(format!("short edge line {line:?}")))?
                    .parse()
                    .map_err(|_| Error::MalformedGraphFile(format!("bad edge line {line:?}")))
            };
            let i = parse_field(parts.next())? as usize;
            let j = parse_field(parts.next())? as usize;
            let sign = parse_field(parts.next())? as i8;
            if parts.next().is_some() {
                return Err(Error::MalformedGraphFile(format!("long edge line {line:?}")));
            }
            edges.push((i, j, sign));
        }
        let graph = Self::from_edges(n, &edges)?;
        match groups {
            Some(g) => graph.with_groups(g),
            None => Ok(graph),
        }
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = fs::File::create(path)?;
        self.write(std::io::BufWriter::new(file))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let file = fs::File::open(path)?;
        Self::read(file)
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) || value.is_nan() {
        return Err(Error::InvalidProbability { name, value });
    }
    Ok(())
}

/// Draws one unordered pair: present in the attractive sample with
/// probability `p1`, in the repulsive sample with probability `p2`, and the
/// resulting sign is their difference. Exactly two uniform draws per pair,
/// in a fixed order, so the stream layout is stable.
fn sample_pair_sign(p1: f64, p2: f64, rng: &mut impl Rng) -> Option<i8> {
    let in_attractive = rng.random::<f64>() < p1;
    let in_repulsive = rng.random::<f64>() < p2;
    match (in_attractive, in_repulsive) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

enum NeighborsInner<'a> {
    Dense {
        row: &'a [i8],
        node: usize,
        next: usize,
    },
    Lists(std::slice::Iter<'a, (u32, i8)>),
}

/// Iterator over `(neighbour, sign)` pairs in ascending neighbour order.
pub struct Neighbors<'a> {
    inner: NeighborsInner<'a>,
}

impl Iterator for Neighbors<'_> {
    type Item = (usize, i8);

    fn next(&mut self) -> Option<Self::Item> {
        match &mut self.inner {
            NeighborsInner::Dense { row, node, next } => {
                while *next < row.len() {
                    let j = *next;
                    *next += 1;
                    if j == *node {
                        continue;
                    }
                    let s = row[j];
                    if s != 0 {
                        return Some((j, s));
                    }
                }
                None
            }
            NeighborsInner::Lists(iter) => iter.next().map(|&(j, s)| (j as usize, s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    fn fig2_graph() -> SignedGraph {
        // three nodes: outer pair repulsive, centre attracts both
        SignedGraph::from_edges(3, &[(0, 2, -1), (0, 1, 1), (1, 2, 1)]).unwrap()
    }

    #[test]
    fn empty_edge_list() {
        let g = SignedGraph::from_edges(2, &[]).unwrap();
        assert_eq!(g.m(), 0);
        assert_eq!(g.m_r(), 0);
        assert_eq!(g.sign(0, 0), 1);
        assert_eq!(g.sign(1, 1), 1);
        assert_eq!(g.sign(0, 1), 0);
    }

    #[test]
    fn three_node_mixed_graph() {
        let g = fig2_graph();
        assert_eq!(g.m(), 3);
        assert_eq!(g.m_r(), 1);
        assert_eq!(g.sign(0, 2), -1);
        assert_eq!(g.sign(2, 0), -1);
        assert_eq!(g.sign(0, 1), 1);
    }

    #[test]
    fn conflicting_signs_rejected() {
        let err = SignedGraph::from_edges(2, &[(0, 1, 1), (1, 0, -1)]).unwrap_err();
        assert!(matches!(err, Error::ConflictingEdgeSign { i: 0, j: 1 }));
    }

    #[test]
    fn duplicate_same_sign_allowed() {
        let g = SignedGraph::from_edges(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn self_loop_rejected() {
        let err = SignedGraph::from_edges(2, &[(1, 1, 1)]).unwrap_err();
        assert!(matches!(err, Error::SelfLoopRejected { node: 1 }));
    }

    #[test]
    fn out_of_range_rejected() {
        let err = SignedGraph::from_edges(2, &[(0, 2, 1)]).unwrap_err();
        assert!(matches!(err, Error::IndexOutOfRange { node: 2, n: 2 }));
    }

    #[test]
    fn degenerate_probabilities_give_complete_graphs() {
        let mut rng = stream(1, "test", &[]);
        let g = SignedGraph::random_er(50, 1.0, 0.0, &mut rng).unwrap();
        assert_eq!(g.m(), 1225);
        assert_eq!(g.m_r(), 0);

        let g = SignedGraph::random_er(50, 0.0, 1.0, &mut rng).unwrap();
        assert_eq!(g.m(), 1225);
        assert_eq!(g.m_r(), 1225);
    }

    #[test]
    fn invalid_probability_rejected() {
        let mut rng = stream(1, "test", &[]);
        let err = SignedGraph::random_er(10, 1.5, 0.0, &mut rng).unwrap_err();
        assert!(matches!(err, Error::InvalidProbability { name: "p1", .. }));
        let err = SignedGraph::random_sbm(10, 2, 0.5, 0.5, -0.1, &mut rng).unwrap_err();
        assert!(matches!(err, Error::InvalidProbability { name: "rho", .. }));
    }

    #[test]
    fn er_edge_type_frequencies_match_closed_form() {
        // p1 = 0.6, p2 = 0.2 over ~2e6 pairs; three standard errors.
        let n = 2000;
        let mut rng = stream(99, "er-freq", &[]);
        let g = SignedGraph::random_er(n, 0.6, 0.2, &mut rng).unwrap();
        let pairs = (n * (n - 1) / 2) as f64;
        let (pos, neg, zero) = g.pair_counts();
        for (observed, expected) in [
            (pos as f64, 0.6 * 0.8),
            (neg as f64, 0.4 * 0.2),
            (zero as f64, 0.4 * 0.8 + 0.6 * 0.2),
        ] {
            let se = (expected * (1.0 - expected) / pairs).sqrt();
            assert!(
                (observed / pairs - expected).abs() <= 3.0 * se,
                "frequency {} vs {expected}",
                observed / pairs
            );
        }
    }

    #[test]
    fn sbm_cross_group_frequency_matches_closed_form() {
        // cross-group attractive probability p1*rho*(1 - p2*rho)
        let (n, k, p1, p2, rho) = (2000, 2, 0.85, 0.3, 0.05);
        let mut rng = stream(7, "sbm-freq", &[]);
        let g = SignedGraph::random_sbm(n, k, p1, p2, rho, &mut rng).unwrap();
        let groups = g.groups().unwrap().clone();
        let mut cross_pairs = 0usize;
        let mut cross_pos = 0usize;
        for i in 0..n {
            for j in (i + 1)..n {
                if groups.group_of(i) != groups.group_of(j) {
                    cross_pairs += 1;
                    if g.sign(i, j) == 1 {
                        cross_pos += 1;
                    }
                }
            }
        }
        let expected = p1 * rho * (1.0 - p2 * rho);
        assert!((expected - 0.04186).abs() < 1e-4);
        let se = (expected * (1.0 - expected) / cross_pairs as f64).sqrt();
        let observed = cross_pos as f64 / cross_pairs as f64;
        assert!((observed - expected).abs() <= 3.0 * se);
    }

    #[test]
    fn sbm_rho_zero_has_no_cross_group_edges() {
        let mut rng = stream(3, "sbm", &[]);
        let g = SignedGraph::random_sbm(100, 5, 0.85, 0.3, 0.0, &mut rng).unwrap();
        let groups = g.groups().unwrap().clone();
        for (i, j, _) in g.edges() {
            assert_eq!(groups.group_of(i), groups.group_of(j));
        }
    }

    #[test]
    fn balanced_partition_sizes_differ_by_at_most_one() {
        for (n, k) in [(100, 5), (101, 5), (7, 3), (10, 10)] {
            let g = GroupAssignment::balanced(n, k).unwrap();
            let sizes = g.sizes();
            let lo = sizes.iter().min().unwrap();
            let hi = sizes.iter().max().unwrap();
            assert!(hi - lo <= 1, "n={n} k={k} sizes={sizes:?}");
            assert_eq!(sizes.iter().sum::<usize>(), n);
        }
        assert!(GroupAssignment::balanced(5, 0).is_err());
        assert!(GroupAssignment::balanced(5, 6).is_err());
    }

    #[test]
    fn generators_preserve_symmetry_and_diagonal() {
        for seed in 0..20 {
            let mut rng = stream(seed, "symmetry", &[]);
            let g = SignedGraph::random_sbm(40, 4, 0.7, 0.4, 0.3, &mut rng).unwrap();
            for i in 0..g.n() {
                assert_eq!(g.sign(i, i), 1);
                for j in 0..g.n() {
                    assert_eq!(g.sign(i, j), g.sign(j, i));
                }
            }
        }
    }

    #[test]
    fn receptivity_prunes_by_distance() {
        let g = SignedGraph::complete(3, 1).unwrap();
        let x = OpinionState::new(vec![0.0, 0.5, 1.0]);
        let sub = g.receptivity(&x, 0.6).unwrap();
        assert_eq!(sub.sign(0, 1), 1);
        assert_eq!(sub.sign(1, 2), 1);
        assert_eq!(sub.sign(0, 2), 0);

        // equal opinions keep everything
        let x = OpinionState::new(vec![0.3; 3]);
        let sub = g.receptivity(&x, 0.1).unwrap();
        assert_eq!(sub.m(), g.m());

        // bound below every distance keeps only the diagonal
        let x = OpinionState::new(vec![0.0, 10.0, 20.0]);
        let sub = g.receptivity(&x, 0.5).unwrap();
        assert_eq!(sub.m(), 0);
        assert_eq!(sub.sign(1, 1), 1);
    }

    #[test]
    fn receptivity_is_idempotent() {
        let mut rng = stream(11, "recept", &[]);
        let g = SignedGraph::random_er(30, 0.5, 0.5, &mut rng).unwrap();
        let x = OpinionState::sample_uniform(30, 0.0, 1.0, &mut rng);
        let once = g.receptivity(&x, 0.3).unwrap();
        let twice = once.receptivity(&x, 0.3).unwrap();
        assert_eq!(once.edges(), twice.edges());
    }

    #[test]
    fn dense_and_list_storage_agree() {
        let mut rng = stream(5, "storage", &[]);
        let g = SignedGraph::random_er(25, 0.6, 0.3, &mut rng).unwrap();
        let edges = g.edges();
        let dense = SignedGraph::from_edges_with_storage(25, &edges, Storage::Dense).unwrap();
        let lists = SignedGraph::from_edges_with_storage(25, &edges, Storage::Lists).unwrap();
        assert_eq!(dense.m(), lists.m());
        assert_eq!(dense.m_r(), lists.m_r());
        for i in 0..25 {
            let a: Vec<_> = dense.neighbors(i).collect();
            let b: Vec<_> = lists.neighbors(i).collect();
            assert_eq!(a, b);
            for j in 0..25 {
                assert_eq!(dense.sign(i, j), lists.sign(i, j));
            }
        }
    }

    #[test]
    fn file_round_trip_is_exact() {
        let mut rng = stream(21, "file", &[]);
        let g = SignedGraph::random_sbm(37, 4, 0.6, 0.4, 0.5, &mut rng).unwrap();
        let mut buf = Vec::new();
        g.write(&mut buf).unwrap();
        let back = SignedGraph::read(buf.as_slice()).unwrap();
        assert_eq!(g.n(), back.n());
        assert_eq!(g.edges(), back.edges());
        assert_eq!(
            g.groups().map(|gr| gr.membership().to_vec()),
            back.groups().map(|gr| gr.membership().to_vec())
        );

        // and the re-written bytes are identical
        let mut buf2 = Vec::new();
        back.write(&mut buf2).unwrap();
        assert_eq!(buf, buf2);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(SignedGraph::read("".as_bytes()).is_err());
        assert!(SignedGraph::read("m=3\n".as_bytes()).is_err());
        assert!(SignedGraph::read("n=3\n0 1\n".as_bytes()).is_err());
        assert!(SignedGraph::read("n=3\n0 1 2\n".as_bytes()).is_err());
        assert!(SignedGraph::read("n=3\ngroups=1,1\n".as_bytes()).is_err());
    }
}
