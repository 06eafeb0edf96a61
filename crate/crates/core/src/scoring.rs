//! Driving scores against an ensemble reference.
//!
//! Each class `k` is compared with the ensemble midpoint `CIk`. Distances
//! below the midpoint are scaled by `CIk` and distances above by `1 - CIk`, so
//! every component lies in `[0, 1]` (global) or `[-1, 1]` (per node).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::MotifCensus;
use crate::coefficients::{global_profile, local_profiles, ClosureSemantics, ClusteringProfile};
use crate::graph::{BipartiteGraph, NodeRef, Side};
use crate::ratio::round4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScoreError {
    #[error("midpoint {ci} cannot normalize coefficient {cc}")]
    DegenerateMidpoint { cc: f64, ci: f64 },
    #[error("midpoint {0} is outside [0, 1]")]
    MidpointOutOfRange(f64),
    #[error("no class has both a defined coefficient and a defined midpoint")]
    AllUndefined,
}

/// How a node score treats classes with an undefined local coefficient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisorRule {
    /// Average over the classes that are defined.
    #[default]
    DefinedComponents,
    /// Undefined classes contribute 0 and the sum is always divided by 4.
    FixedFour,
}

impl DivisorRule {
    pub fn as_str(self) -> &'static str {
        match self {
            DivisorRule::DefinedComponents => "defined-components",
            DivisorRule::FixedFour => "fixed-four",
        }
    }
}

/// Ensemble reference values per class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub midpoints: [Option<f64>; 4],
    /// Interval bounds when known. Only used for the direction markers.
    #[serde(default)]
    pub intervals: [Option<(f64, f64)>; 4],
}

impl Reference {
    pub fn from_midpoints(midpoints: [Option<f64>; 4]) -> Self {
        Reference {
            midpoints,
            intervals: [None; 4],
        }
    }

    pub fn validate(&self) -> Result<(), ScoreError> {
        for ci in self.midpoints.iter().flatten() {
            if !(0.0..=1.0).contains(ci) {
                return Err(ScoreError::MidpointOutOfRange(*ci));
            }
        }
        Ok(())
    }
}

fn scaled(diff: f64, denom: f64, cc: f64, ci: f64) -> Result<f64, ScoreError> {
    if diff == 0.0 {
        Ok(0.0)
    } else if denom == 0.0 {
        Err(ScoreError::DegenerateMidpoint { cc, ci })
    } else {
        Ok(diff / denom)
    }
}

/// Normalized distance of a global coefficient from its midpoint.
///
/// ```
/// let g = bimotif::g_component(0.4446, 0.63695).unwrap();
/// assert!((g - 0.30198).abs() < 1e-5);
/// assert_eq!(bimotif::g_component(0.5, 0.5).unwrap(), 0.0);
/// ```
pub fn g_component(cc: f64, ci: f64) -> Result<f64, ScoreError> {
    let diff = (ci - cc).abs();
    if cc < ci {
        scaled(diff, ci, cc, ci)
    } else {
        scaled(diff, 1.0 - ci, cc, ci)
    }
}

/// Signed per-class score of a node.
///
/// Positive when the local coefficient sits on the same side of the midpoint
/// as the global one, negative otherwise.
pub fn f_component(global: f64, local: f64, ci: f64) -> Result<f64, ScoreError> {
    let diff = (ci - local).abs();
    let below = scaled(diff, ci, local, ci);
    let above = scaled(diff, 1.0 - ci, local, ci);
    match (global < ci, local < ci) {
        (true, true) => below,
        (true, false) => above.map(|v| -v),
        (false, false) => above,
        (false, true) => below.map(|v| -v),
    }
}

/// Mean of [`g_component`] over classes where both inputs are defined.
pub fn ds_global(global: &[Option<f64>; 4], ci: &[Option<f64>; 4]) -> Result<f64, ScoreError> {
    let mut sum = 0.0;
    let mut n = 0;
    for k in 0..4 {
        if let (Some(cc), Some(ci)) = (global[k], ci[k]) {
            sum += g_component(cc, ci)?;
            n += 1;
        }
    }
    if n == 0 {
        return Err(ScoreError::AllUndefined);
    }
    Ok(sum / n as f64)
}

/// A node's score and how many classes went into it. `None` when no class is usable.
pub fn ds_node(
    local: &[Option<f64>; 4],
    global: &[Option<f64>; 4],
    ci: &[Option<f64>; 4],
    rule: DivisorRule,
) -> Result<(Option<f64>, usize), ScoreError> {
    let mut sum = 0.0;
    let mut n = 0;
    for k in 0..4 {
        if let (Some(l), Some(g), Some(c)) = (local[k], global[k], ci[k]) {
            sum += f_component(g, l, c)?;
            n += 1;
        }
    }
    let ds = match (n, rule) {
        (0, _) => None,
        (_, DivisorRule::DefinedComponents) => Some(sum / n as f64),
        (_, DivisorRule::FixedFour) => Some(sum / 4.0),
    };
    Ok((ds, n))
}

/// Where a local coefficient sits relative to the ensemble reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Below,
    Within,
    Above,
}

impl Direction {
    /// Inside the interval when bounds are known, otherwise equal to the
    /// midpoint at 4 decimals.
    pub fn of(local: f64, ci: f64, interval: Option<(f64, f64)>) -> Direction {
        match interval {
            Some((lo, hi)) if local >= lo && local <= hi => Direction::Within,
            Some(_) if local < ci => Direction::Below,
            Some(_) => Direction::Above,
            None if round4(local) == round4(ci) => Direction::Within,
            None if local < ci => Direction::Below,
            None => Direction::Above,
        }
    }

    pub fn arrow(self) -> &'static str {
        match self {
            Direction::Below => "↓",
            Direction::Within => "=",
            Direction::Above => "↑",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeScore {
    pub index: usize,
    pub label: String,
    pub degree: usize,
    pub local: ClusteringProfile,
    pub ds: Option<f64>,
    pub defined_components: usize,
    pub directions: [Option<Direction>; 4],
    pub influential: bool,
    pub anti_driver: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DrivingScoreReport {
    pub side: Side,
    pub semantics: ClosureSemantics,
    pub divisor_rule: DivisorRule,
    pub reference: Reference,
    pub global: ClusteringProfile,
    pub ds_global: f64,
    pub nodes: Vec<NodeScore>,
}

impl DrivingScoreReport {
    pub fn influential(&self) -> impl Iterator<Item = &NodeScore> {
        self.nodes.iter().filter(|n| n.influential)
    }

    pub fn anti_drivers(&self) -> impl Iterator<Item = &NodeScore> {
        self.nodes.iter().filter(|n| n.anti_driver)
    }

    pub fn node(&self, label: &str) -> Option<&NodeScore> {
        self.nodes.iter().find(|n| n.label == label)
    }
}

/// Score every node of the census side against `reference`.
pub fn classify(
    g: &BipartiteGraph,
    c: &MotifCensus,
    semantics: ClosureSemantics,
    reference: &Reference,
    rule: DivisorRule,
) -> Result<DrivingScoreReport, ScoreError> {
    reference.validate()?;
    let global = global_profile(c, semantics);
    let global_values = global.values();
    let ds_global = ds_global(&global_values, &reference.midpoints)?;
    let labels = g.labels(c.side);

    let nodes = local_profiles(c, semantics)
        .into_iter()
        .enumerate()
        .map(|(i, local)| {
            let values = local.values();
            let (ds, defined_components) =
                ds_node(&values, &global_values, &reference.midpoints, rule)?;
            let directions = std::array::from_fn(|k| {
                Some(Direction::of(
                    values[k]?,
                    reference.midpoints[k]?,
                    reference.intervals[k],
                ))
            });
            Ok(NodeScore {
                index: i,
                label: labels[i].clone(),
                degree: g.degree(NodeRef {
                    side: c.side,
                    index: i,
                }),
                local,
                ds,
                defined_components,
                directions,
                influential: ds.is_some_and(|d| d > ds_global),
                anti_driver: ds.is_some_and(|d| d < 0.0),
            })
        })
        .collect::<Result<Vec<_>, ScoreError>>()?;

    Ok(DrivingScoreReport {
        side: c.side,
        semantics,
        divisor_rule: rule,
        reference: *reference,
        global,
        ds_global,
        nodes,
    })
}
