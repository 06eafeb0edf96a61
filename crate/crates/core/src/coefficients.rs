//! The four structure-aware clustering coefficients.
//!
//! ```text
//! cc0 = λ*0 / λ0
//! cc1 = λ*1 / (λ0 + λ1)
//! cc2 = λ*2 / (λ1 + λ2)
//! cc3 = λ*3 / λ2
//! ```
//!
//! `λk` counts 4-paths with `k` extra edges and `λ*k` counts closures into
//! class-`k` 6-cycles. A coefficient is undefined when its denominator is 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{MotifCensus, NodeCounts};
use crate::ratio::Ratio;

/// How closures enter the numerators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClosureSemantics {
    /// A 4-path counts once per class in which it has at least one closing node.
    #[default]
    AtLeastOne,
    /// Every (4-path, closing node) pair counts. Values can exceed 1.
    PairCount,
}

impl ClosureSemantics {
    pub fn as_str(self) -> &'static str {
        match self {
            ClosureSemantics::AtLeastOne => "at-least-one",
            ClosureSemantics::PairCount => "pair-count",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoefficientError {
    #[error("node {index} out of range for a census of {len} nodes")]
    InvalidNode { index: usize, len: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "index")]
pub enum Scope {
    Global,
    Node(usize),
}

/// Four coefficients with the raw counts behind them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClusteringProfile {
    pub scope: Scope,
    pub numerators: [u64; 4],
    pub denominators: [u64; 4],
}

impl ClusteringProfile {
    pub fn from_counts(scope: Scope, c: &NodeCounts, semantics: ClosureSemantics) -> Self {
        let [l0, l1, l2] = c.lambda;
        let numerators = match semantics {
            ClosureSemantics::AtLeastOne => c.lambda_closed,
            ClosureSemantics::PairCount => c.closure_pairs,
        };
        ClusteringProfile {
            scope,
            numerators,
            denominators: [l0, l0 + l1, l1 + l2, l2],
        }
    }

    pub fn ratio(&self, k: usize) -> Option<Ratio> {
        Ratio::new(self.numerators[k], self.denominators[k])
    }

    pub fn ratios(&self) -> [Option<Ratio>; 4] {
        std::array::from_fn(|k| self.ratio(k))
    }

    /// Full-precision values, `None` where undefined.
    pub fn values(&self) -> [Option<f64>; 4] {
        std::array::from_fn(|k| self.ratio(k).map(|r| r.to_f64()))
    }

    /// Values rounded to 4 decimals for display.
    pub fn rounded(&self) -> [Option<f64>; 4] {
        std::array::from_fn(|k| self.ratio(k).map(|r| r.round_to(4)))
    }

    pub fn defined_count(&self) -> usize {
        self.denominators.iter().filter(|&&d| d > 0).count()
    }
}

/// Network-wide coefficients, computed from summed counts.
///
/// ```
/// use bimotif::{census, global_profile, BipartiteGraph, ClosureSemantics, Side};
///
/// let ring = BipartiteGraph::from_index_edges(3, 3, &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)])?;
/// let cc = global_profile(&census(&ring, Side::Primary), ClosureSemantics::AtLeastOne);
/// assert_eq!(cc.values(), [Some(1.0), Some(0.0), None, None]);
/// # Ok::<(), bimotif::GraphError>(())
/// ```
pub fn global_profile(c: &MotifCensus, semantics: ClosureSemantics) -> ClusteringProfile {
    ClusteringProfile::from_counts(Scope::Global, &c.global, semantics)
}

pub fn local_profile(
    c: &MotifCensus,
    i: usize,
    semantics: ClosureSemantics,
) -> Result<ClusteringProfile, CoefficientError> {
    let counts = c.nodes.get(i).ok_or(CoefficientError::InvalidNode {
        index: i,
        len: c.nodes.len(),
    })?;
    Ok(ClusteringProfile::from_counts(
        Scope::Node(i),
        counts,
        semantics,
    ))
}

pub fn local_profiles(c: &MotifCensus, semantics: ClosureSemantics) -> Vec<ClusteringProfile> {
    c.nodes
        .iter()
        .enumerate()
        .map(|(i, n)| ClusteringProfile::from_counts(Scope::Node(i), n, semantics))
        .collect()
}
