//! Classified 4-path and 6-cycle counts.
//!
//! A 4-path `v0-w0-v1-w1-v2` is centered on `v1`, an analysis-side node. Its
//! class is the number of extra edges among `{v0-w1, v2-w0}`. A secondary
//! `w2` adjacent to both ends closes it into a 6-cycle whose class adds one
//! more if `w2` also touches the center.
//!
//! The fast kernel never materializes individual paths. For a center `v1` and
//! an unordered end pair `{x, y}`, let `A` and `B` be the center's neighbors
//! adjacent to `x` and to `y`, and `I = A ∩ B`. Paths through that pair pick
//! `w0 ∈ A`, `w1 ∈ B` with `w0 != w1`, and the extra edges are exactly the
//! picks that land in `I`. Closers split into those inside `I` (adjacent to
//! the center) and the rest of `N(x) ∩ N(y)`, so every count is a product of
//! set sizes.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{BipartiteGraph, Side};
use crate::ratio::Ratio;

/// Largest side size accepted by [`brute_force_census`].
pub const BRUTE_FORCE_LIMIT: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("not a 4-path: {0}")]
    NotAPath(&'static str),
    #[error("graph has {primary}x{secondary} nodes, brute force is limited to {BRUTE_FORCE_LIMIT} per side")]
    TooLarge { primary: usize, secondary: usize },
}

/// The four structural classes of a bipartite 6-cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SixCycleClass {
    Unconnected = 0,
    Sparse = 1,
    High = 2,
    Complete = 3,
}

impl SixCycleClass {
    pub fn from_extra_edges(n: u8) -> Option<Self> {
        match n {
            0 => Some(SixCycleClass::Unconnected),
            1 => Some(SixCycleClass::Sparse),
            2 => Some(SixCycleClass::High),
            3 => Some(SixCycleClass::Complete),
            _ => None,
        }
    }

    pub fn value(self) -> usize {
        self as usize
    }
}

/// A 4-path in canonical orientation.
///
/// `v*` index the analysis side, `w*` the opposite side. Ends are ordered by
/// index, except that a path with exactly one extra edge is always oriented
/// so that the extra edge is `v0-w1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourPath {
    pub v0: usize,
    pub w0: usize,
    pub v1: usize,
    pub w1: usize,
    pub v2: usize,
    pub extra_edges: u8,
}

impl FourPath {
    /// Validate and canonicalize. Either orientation of the same path gives
    /// the same value.
    pub fn new(
        g: &BipartiteGraph,
        side: Side,
        v0: usize,
        w0: usize,
        v1: usize,
        w1: usize,
        v2: usize,
    ) -> Result<FourPath, CensusError> {
        let extra_edges = classify_four_path(g, side, v0, w0, v1, w1, v2)?;
        let adj = g.adjacency(side);
        let forward = match extra_edges {
            1 => has(adj, v0, w1),
            _ => v0 < v2,
        };
        Ok(if forward {
            FourPath {
                v0,
                w0,
                v1,
                w1,
                v2,
                extra_edges,
            }
        } else {
            FourPath {
                v0: v2,
                w0: w1,
                v1,
                w1: w0,
                v2: v0,
                extra_edges,
            }
        })
    }
}

/// Number of extra edges among `{v0-w1, v2-w0}` for the path `v0-w0-v1-w1-v2`.
pub fn classify_four_path(
    g: &BipartiteGraph,
    side: Side,
    v0: usize,
    w0: usize,
    v1: usize,
    w1: usize,
    v2: usize,
) -> Result<u8, CensusError> {
    let adj = g.adjacency(side);
    let n = adj.len();
    let m = g.node_count(side.opposite());
    if [v0, v1, v2].iter().any(|&v| v >= n) || [w0, w1].iter().any(|&w| w >= m) {
        return Err(CensusError::NotAPath("node index out of range"));
    }
    if v0 == v1 || v1 == v2 || v0 == v2 || w0 == w1 {
        return Err(CensusError::NotAPath("repeated node"));
    }
    if !(has(adj, v0, w0) && has(adj, v1, w0) && has(adj, v1, w1) && has(adj, v2, w1)) {
        return Err(CensusError::NotAPath("missing path edge"));
    }
    Ok(u8::from(has(adj, v0, w1)) + u8::from(has(adj, v2, w0)))
}

/// Every secondary that closes `p` into a 6-cycle, with the cycle's class.
pub fn closures_of(g: &BipartiteGraph, side: Side, p: &FourPath) -> Vec<(usize, SixCycleClass)> {
    let adj = g.adjacency(side);
    SortedIntersection::new(&adj[p.v0], &adj[p.v2])
        .filter(|&w2| w2 != p.w0 && w2 != p.w1)
        .map(|w2| {
            let class = p.extra_edges + u8::from(has(adj, p.v1, w2));
            (
                w2,
                SixCycleClass::from_extra_edges(class).expect("class is at most 3"),
            )
        })
        .collect()
}

/// Counts for the 4-paths centered on one node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NodeCounts {
    /// 4-paths by number of extra edges.
    pub lambda: [u64; 3],
    /// 4-paths with at least one closure of each 6-cycle class.
    pub lambda_closed: [u64; 4],
    /// (4-path, closing node) pairs by 6-cycle class.
    pub closure_pairs: [u64; 4],
}

impl NodeCounts {
    fn add(&mut self, other: &NodeCounts) {
        for k in 0..3 {
            self.lambda[k] += other.lambda[k];
        }
        for k in 0..4 {
            self.lambda_closed[k] += other.lambda_closed[k];
            self.closure_pairs[k] += other.closure_pairs[k];
        }
    }

    pub fn total_paths(&self) -> u64 {
        self.lambda.iter().sum()
    }
}

/// Per-node and network-wide motif counts for one analysis side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotifCensus {
    pub side: Side,
    pub nodes: Vec<NodeCounts>,
    pub global: NodeCounts,
}

impl MotifCensus {
    fn from_nodes(side: Side, nodes: Vec<NodeCounts>) -> Self {
        let mut global = NodeCounts::default();
        for n in &nodes {
            global.add(n);
        }
        MotifCensus {
            side,
            nodes,
            global,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }
}

/// Count classified 4-paths and their closures around every node of `side`.
///
/// Centers are processed in parallel on the current rayon pool.
///
/// ```
/// use bimotif::{census, BipartiteGraph, Side};
///
/// let ones = vec![vec![1i64; 3]; 3];
/// let labels = |p: &str| (0..3).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
/// let k33 = BipartiteGraph::from_biadjacency(&ones, labels("a"), labels("x"))?;
/// let c = census(&k33, Side::Primary);
/// assert_eq!(c.global.lambda, [0, 0, 18]);
/// assert_eq!(c.global.lambda_closed, [0, 0, 0, 18]);
/// # Ok::<(), bimotif::GraphError>(())
/// ```
pub fn census(g: &BipartiteGraph, side: Side) -> MotifCensus {
    let adj = g.adjacency(side);
    let back = g.adjacency(side.opposite());
    let nodes = (0..adj.len())
        .into_par_iter()
        .map_init(
            || Scratch::new(adj.len()),
            |s, v1| center_counts(adj, back, v1, s),
        )
        .collect();
    MotifCensus::from_nodes(side, nodes)
}

struct Scratch {
    slot: Vec<usize>,
    ends: Vec<(usize, Vec<usize>)>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            slot: vec![usize::MAX; n],
            ends: Vec::new(),
        }
    }
}

fn center_counts(
    adj: &[Vec<usize>],
    back: &[Vec<usize>],
    v1: usize,
    s: &mut Scratch,
) -> NodeCounts {
    let mut out = NodeCounts::default();
    let center = &adj[v1];
    if center.len() < 2 {
        return out;
    }

    // For every other analysis node x, which of the center's neighbors it shares.
    // Positions are pushed in increasing order, so each list stays sorted.
    let mut used = 0;
    for (pos, &w) in center.iter().enumerate() {
        for &x in &back[w] {
            if x == v1 {
                continue;
            }
            if s.slot[x] == usize::MAX {
                if used == s.ends.len() {
                    s.ends.push((x, Vec::new()));
                } else {
                    s.ends[used].0 = x;
                    s.ends[used].1.clear();
                }
                s.slot[x] = used;
                used += 1;
            }
            s.ends[s.slot[x]].1.push(pos);
        }
    }

    for i in 0..used {
        let (x, ref sx) = s.ends[i];
        let a = sx.len() as u64;
        for (y, sy) in &s.ends[i + 1..used] {
            let b = sy.len() as u64;
            let shared = intersection_len(sx, sy) as u64;
            let by_class = [
                (a - shared) * (b - shared),
                shared * (b - shared) + (a - shared) * shared,
                shared * shared.saturating_sub(1),
            ];
            let common = intersection_len(&adj[x], &adj[*y]) as u64;
            let outside = common - shared;
            for (e, &paths) in by_class.iter().enumerate() {
                if paths == 0 {
                    continue;
                }
                let inside = shared - e as u64;
                out.lambda[e] += paths;
                if outside > 0 {
                    out.lambda_closed[e] += paths;
                    out.closure_pairs[e] += paths * outside;
                }
                if inside > 0 {
                    out.lambda_closed[e + 1] += paths;
                    out.closure_pairs[e + 1] += paths * inside;
                }
            }
        }
    }

    for (x, _) in &s.ends[..used] {
        s.slot[*x] = usize::MAX;
    }
    out
}

/// Reference enumeration over every ordered 5-tuple, for testing [`census`].
///
/// Deliberately naive: enumerate, canonicalize into a set, then scan every
/// possible closing node.
pub fn brute_force_census(g: &BipartiteGraph, side: Side) -> Result<MotifCensus, CensusError> {
    let (np, ns) = (g.primary_count(), g.secondary_count());
    if np > BRUTE_FORCE_LIMIT || ns > BRUTE_FORCE_LIMIT {
        return Err(CensusError::TooLarge {
            primary: np,
            secondary: ns,
        });
    }
    let n = g.node_count(side);
    let m = g.node_count(side.opposite());

    let mut paths = BTreeSet::new();
    let mut hits = 0usize;
    for v0 in 0..n {
        for w0 in 0..m {
            for v1 in 0..n {
                for w1 in 0..m {
                    for v2 in 0..n {
                        if let Ok(p) = FourPath::new(g, side, v0, w0, v1, w1, v2) {
                            paths.insert(p);
                            hits += 1;
                        }
                    }
                }
            }
        }
    }
    assert_eq!(
        hits,
        2 * paths.len(),
        "each path is found once per direction"
    );

    let adj = g.adjacency(side);
    let mut nodes = vec![NodeCounts::default(); n];
    for p in &paths {
        let node = &mut nodes[p.v1];
        node.lambda[p.extra_edges as usize] += 1;
        let mut seen = [false; 4];
        for w2 in 0..m {
            if w2 == p.w0 || w2 == p.w1 || !has(adj, p.v0, w2) || !has(adj, p.v2, w2) {
                continue;
            }
            let class = p.extra_edges as usize + usize::from(has(adj, p.v1, w2));
            node.closure_pairs[class] += 1;
            seen[class] = true;
        }
        for (k, hit) in seen.iter().enumerate() {
            node.lambda_closed[k] += u64::from(*hit);
        }
    }
    Ok(MotifCensus::from_nodes(side, nodes))
}

/// Opsahl's closed 4-path counts for one node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OpsahlCounts {
    /// All 4-paths centered here.
    pub tau: u64,
    /// Those with at least one closing node.
    pub tau_closed: u64,
}

impl OpsahlCounts {
    pub fn c_star(&self) -> Option<Ratio> {
        Ratio::new(self.tau_closed, self.tau)
    }
}

/// Opsahl's coefficient for a side, network-wide and per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Opsahl {
    pub side: Side,
    pub global: OpsahlCounts,
    pub nodes: Vec<OpsahlCounts>,
}

impl Opsahl {
    pub fn c_star(&self) -> Option<Ratio> {
        self.global.c_star()
    }
}

/// Closed-4-path fraction, counted by walking each path explicitly.
///
/// Independent of the [`census`] kernel on purpose, so the two can check each other.
pub fn opsahl(g: &BipartiteGraph, side: Side) -> Opsahl {
    let adj = g.adjacency(side);
    let back = g.adjacency(side.opposite());
    let nodes: Vec<OpsahlCounts> = (0..adj.len())
        .into_par_iter()
        .map(|v1| {
            let mut c = OpsahlCounts::default();
            for &w0 in &adj[v1] {
                for &w1 in &adj[v1] {
                    if w0 == w1 {
                        continue;
                    }
                    for &v0 in &back[w0] {
                        for &v2 in &back[w1] {
                            if v0 == v1 || v2 == v1 || v0 >= v2 {
                                continue;
                            }
                            c.tau += 1;
                            let closed = adj[v0]
                                .iter()
                                .any(|&w2| w2 != w0 && w2 != w1 && has(adj, v2, w2));
                            c.tau_closed += u64::from(closed);
                        }
                    }
                }
            }
            c
        })
        .collect();
    let global = nodes
        .iter()
        .fold(OpsahlCounts::default(), |acc, c| OpsahlCounts {
            tau: acc.tau + c.tau,
            tau_closed: acc.tau_closed + c.tau_closed,
        });
    Opsahl {
        side,
        global,
        nodes,
    }
}

fn has(adj: &[Vec<usize>], v: usize, w: usize) -> bool {
    adj[v].binary_search(&w).is_ok()
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    SortedIntersection::new(a, b).count()
}

struct SortedIntersection<'a> {
    a: &'a [usize],
    b: &'a [usize],
}

impl<'a> SortedIntersection<'a> {
    fn new(a: &'a [usize], b: &'a [usize]) -> Self {
        SortedIntersection { a, b }
    }
}

impl Iterator for SortedIntersection<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while let (Some(&x), Some(&y)) = (self.a.first(), self.b.first()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => self.a = &self.a[1..],
                std::cmp::Ordering::Greater => self.b = &self.b[1..],
                std::cmp::Ordering::Equal => {
                    self.a = &self.a[1..];
                    self.b = &self.b[1..];
                    return Some(x);
                }
            }
        }
        None
    }
}
