//! Structure-aware clustering for two-mode networks.
//!
//! Four clustering coefficients separate 6-cycles by how many extra edges
//! they carry. Comparing them with a degree-preserving random ensemble gives
//! each node a driving score, which marks the nodes that push the network
//! toward its clustering pattern.
//!
//! ```
//! use bimotif::{census, classify, datasets, global_profile, ClosureSemantics, DivisorRule, Reference, Side};
//!
//! let g = datasets::southern_women();
//! let c = census(&g, Side::Primary);
//! let cc = global_profile(&c, ClosureSemantics::AtLeastOne);
//! assert_eq!(cc.rounded()[0], Some(0.4446));
//!
//! let reference = Reference::from_midpoints([Some(0.63695), Some(0.55705), Some(0.41045), Some(0.32375)]);
//! let scores = classify(&g, &c, ClosureSemantics::AtLeastOne, &reference, DivisorRule::DefinedComponents)?;
//! assert!(scores.ds_global > 0.0);
//! # Ok::<(), bimotif::ScoreError>(())
//! ```

pub mod census;
pub mod coefficients;
pub mod datasets;
pub mod graph;
pub mod input;
pub mod null_model;
mod ratio;
pub mod report;
pub mod scoring;

pub use census::{
    brute_force_census, census, classify_four_path, closures_of, opsahl, CensusError, FourPath,
    MotifCensus, NodeCounts, Opsahl, OpsahlCounts, SixCycleClass,
};
pub use coefficients::{
    global_profile, local_profile, local_profiles, ClosureSemantics, ClusteringProfile,
    CoefficientError, Scope,
};
pub use graph::{BipartiteGraph, GraphError, NodeRef, Side};
pub use input::{InputFormat, LoadError, ParseError};
pub use null_model::{
    random_fixed_density, randomize, run_ensemble, ClassStats, EnsembleConfig, EnsembleError,
    EnsembleStats, NullModel,
};
pub use ratio::{round4, Ratio};
pub use scoring::{
    classify, ds_global, ds_node, f_component, g_component, Direction, DivisorRule,
    DrivingScoreReport, NodeScore, Reference, ScoreError,
};

// Every Rust snippet in the guide runs as a doctest.
#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub mod graphs {}
    #[doc = include_str!("../../../book/src/motifs.md")]
    pub mod motifs {}
    #[doc = include_str!("../../../book/src/coefficients.md")]
    pub mod coefficients {}
    #[doc = include_str!("../../../book/src/null-model.md")]
    pub mod null_model {}
    #[doc = include_str!("../../../book/src/driving-scores.md")]
    pub mod driving_scores {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/report-format.md")]
    pub mod report_format {}
}
