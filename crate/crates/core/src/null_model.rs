//! Degree-preserving random graphs and ensemble confidence intervals.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::census::census;
use crate::coefficients::{global_profile, ClosureSemantics};
use crate::graph::{BipartiteGraph, Side};

pub const DEFAULT_RUNS: usize = 100;
pub const DEFAULT_SWAPS_PER_EDGE: usize = 10;

/// How replicas are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NullModel {
    /// Double-edge swaps: both degree sequences are kept exactly.
    #[default]
    DegreePreservingSwap,
    /// Uniform graph with the same node counts and edge count. Degrees vary.
    FixedDensity,
}

impl NullModel {
    pub fn as_str(self) -> &'static str {
        match self {
            NullModel::DegreePreservingSwap => "degree-preserving-swap",
            NullModel::FixedDensity => "fixed-density",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub runs: usize,
    pub seed: u64,
    pub swaps_per_edge: usize,
    pub side: Side,
    pub semantics: ClosureSemantics,
    #[serde(default)]
    pub model: NullModel,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        EnsembleConfig {
            runs: DEFAULT_RUNS,
            seed: 0,
            swaps_per_edge: DEFAULT_SWAPS_PER_EDGE,
            side: Side::Primary,
            semantics: ClosureSemantics::AtLeastOne,
            model: NullModel::DegreePreservingSwap,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnsembleError {
    #[error("need at least 2 runs for a confidence interval, got {0}")]
    TooFewRuns(usize),
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<(), EnsembleError> {
        if self.runs < 2 {
            return Err(EnsembleError::TooFewRuns(self.runs));
        }
        Ok(())
    }
}

/// One step of the splitmix64 generator, used to spread replica seeds.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn replica_seed(seed: u64, replica: usize) -> u64 {
    splitmix64(seed ^ replica as u64)
}

/// Rewire `g` with `swaps_per_edge * edge_count` attempted double-edge swaps.
///
/// A swap picks two distinct edges `(a, x)` and `(b, y)` and replaces them with
/// `(a, y)` and `(b, x)` unless that would create a duplicate. Both degree
/// sequences are preserved exactly.
///
/// ```
/// use bimotif::{randomize, BipartiteGraph, Side};
///
/// let g = BipartiteGraph::from_index_edges(4, 4, &[(0, 0), (0, 1), (1, 1), (2, 2), (3, 3), (3, 0)])?;
/// let r = randomize(&g, 7, 10);
/// assert_eq!(r.degree_sequence(Side::Primary), g.degree_sequence(Side::Primary));
/// assert_eq!(r.degree_sequence(Side::Secondary), g.degree_sequence(Side::Secondary));
/// # Ok::<(), bimotif::GraphError>(())
/// ```
pub fn randomize(g: &BipartiteGraph, seed: u64, swaps_per_edge: usize) -> BipartiteGraph {
    let mut edges: Vec<(usize, usize)> = g.index_edges().collect();
    let m = edges.len();
    if m < 2 {
        return g.clone();
    }
    let mut adj: Vec<Vec<usize>> = g.adjacency(Side::Primary).to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..swaps_per_edge * m {
        let i = rng.random_range(0..m);
        let mut j = rng.random_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let (a, x) = edges[i];
        let (b, y) = edges[j];
        if a == b || x == y || adj[a].binary_search(&y).is_ok() || adj[b].binary_search(&x).is_ok()
        {
            continue;
        }
        replace_sorted(&mut adj[a], x, y);
        replace_sorted(&mut adj[b], y, x);
        edges[i] = (a, y);
        edges[j] = (b, x);
    }
    g.with_primary_adjacency(adj)
}

/// A uniformly random graph with the node labels and edge count of `g`.
pub fn random_fixed_density(g: &BipartiteGraph, seed: u64) -> BipartiteGraph {
    let (np, ns) = (g.primary_count(), g.secondary_count());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj = vec![Vec::new(); np];
    for cell in index::sample(&mut rng, np * ns, g.edge_count()) {
        adj[cell / ns].push(cell % ns);
    }
    g.with_primary_adjacency(adj)
}

/// One replica of `g` under `cfg.model`.
pub fn replica(g: &BipartiteGraph, cfg: &EnsembleConfig, r: usize) -> BipartiteGraph {
    let seed = replica_seed(cfg.seed, r);
    match cfg.model {
        NullModel::DegreePreservingSwap => randomize(g, seed, cfg.swaps_per_edge),
        NullModel::FixedDensity => random_fixed_density(g, seed),
    }
}

fn replace_sorted(v: &mut Vec<usize>, old: usize, new: usize) {
    let at = v.binary_search(&old).expect("edge present");
    v.remove(at);
    let to = v.binary_search(&new).unwrap_err();
    v.insert(to, new);
}

/// Summary of one coefficient class over the replicas where it was defined.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub defined_count: usize,
    pub mean: Option<f64>,
    pub std: Option<f64>,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub midpoint: Option<f64>,
}

impl ClassStats {
    /// 95% t-interval on the mean. With a single value the interval collapses
    /// to that value and the standard deviation is left undefined.
    pub fn from_values(values: &[f64]) -> ClassStats {
        let n = values.len();
        if n == 0 {
            return ClassStats {
                defined_count: 0,
                mean: None,
                std: None,
                ci_low: None,
                ci_high: None,
                midpoint: None,
            };
        }
        // Sum in sorted order so the result does not depend on replica order.
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mean = sorted.iter().sum::<f64>() / n as f64;
        if n == 1 {
            return ClassStats {
                defined_count: 1,
                mean: Some(mean),
                std: None,
                ci_low: Some(mean),
                ci_high: Some(mean),
                midpoint: Some(mean),
            };
        }
        let var = sorted.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let std = var.sqrt();
        let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
            .expect("positive degrees of freedom")
            .inverse_cdf(0.975);
        let half = t * std / (n as f64).sqrt();
        ClassStats {
            defined_count: n,
            mean: Some(mean),
            std: Some(std),
            ci_low: Some(mean - half),
            ci_high: Some(mean + half),
            midpoint: Some(mean),
        }
    }

    pub fn interval(&self) -> Option<(f64, f64)> {
        Some((self.ci_low?, self.ci_high?))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnsembleStats {
    pub config: EnsembleConfig,
    pub classes: [ClassStats; 4],
    /// Global coefficients of each replica, in replica order.
    pub replicas: Vec<[Option<f64>; 4]>,
}

impl EnsembleStats {
    pub fn from_replicas(config: EnsembleConfig, replicas: Vec<[Option<f64>; 4]>) -> Self {
        let classes = std::array::from_fn(|k| {
            let values: Vec<f64> = replicas.iter().filter_map(|r| r[k]).collect();
            ClassStats::from_values(&values)
        });
        EnsembleStats {
            config,
            classes,
            replicas,
        }
    }

    pub fn midpoints(&self) -> [Option<f64>; 4] {
        std::array::from_fn(|k| self.classes[k].midpoint)
    }

    pub fn intervals(&self) -> [Option<(f64, f64)>; 4] {
        std::array::from_fn(|k| self.classes[k].interval())
    }

    /// Classes for which no replica produced a defined coefficient.
    pub fn undefined_classes(&self) -> Vec<usize> {
        (0..4)
            .filter(|&k| self.classes[k].defined_count == 0)
            .collect()
    }
}

/// Randomize `cfg.runs` times and summarize the global coefficients per class.
///
/// Replicas run in parallel; the result is the same for any thread count.
pub fn run_ensemble(
    g: &BipartiteGraph,
    cfg: &EnsembleConfig,
) -> Result<EnsembleStats, EnsembleError> {
    cfg.validate()?;
    let replicas: Vec<[Option<f64>; 4]> = (0..cfg.runs)
        .into_par_iter()
        .map(|r| {
            let rg = replica(g, cfg, r);
            global_profile(&census(&rg, cfg.side), cfg.semantics).values()
        })
        .collect();
    Ok(EnsembleStats::from_replicas(*cfg, replicas))
}
