//! Machine-readable output: JSON reports, CSV tables and midpoint files.
//!
//! JSON keeps full precision and writes `null` for undefined values. CSV
//! rounds to 4 decimals and writes `n/a`.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::census::{MotifCensus, NodeCounts, Opsahl};
use crate::coefficients::{ClosureSemantics, ClusteringProfile};
use crate::graph::{BipartiteGraph, NodeRef, Side};
use crate::input::InputFormat;
use crate::null_model::{ClassStats, EnsembleConfig, EnsembleStats, NullModel};
use crate::ratio::round4;
use crate::scoring::{Direction, DivisorRule, DrivingScoreReport, Reference};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    pub file: Option<String>,
    pub format: Option<InputFormat>,
    pub primary_nodes: usize,
    pub secondary_nodes: usize,
    pub edges: usize,
    pub duplicate_edges: usize,
}

impl InputInfo {
    pub fn describe(
        g: &BipartiteGraph,
        file: Option<String>,
        format: Option<InputFormat>,
        duplicate_edges: usize,
    ) -> Self {
        InputInfo {
            file,
            format,
            primary_nodes: g.primary_count(),
            secondary_nodes: g.secondary_count(),
            edges: g.edge_count(),
            duplicate_edges,
        }
    }
}

/// Everything needed to rerun the command and get the same bytes.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub side: Side,
    pub semantics: ClosureSemantics,
    pub divisor_rule: DivisorRule,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runs: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub swaps_per_edge: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub null_model: Option<NullModel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci_file: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileJson {
    pub cc: [Option<f64>; 4],
    pub numerators: [u64; 4],
    pub denominators: [u64; 4],
}

impl From<&ClusteringProfile> for ProfileJson {
    fn from(p: &ClusteringProfile) -> Self {
        ProfileJson {
            cc: p.values(),
            numerators: p.numerators,
            denominators: p.denominators,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OpsahlJson {
    pub tau: u64,
    pub tau_closed: u64,
    pub c_star: Option<f64>,
}

impl From<&Opsahl> for OpsahlJson {
    fn from(o: &Opsahl) -> Self {
        OpsahlJson {
            tau: o.global.tau,
            tau_closed: o.global.tau_closed,
            c_star: o.c_star().map(|r| r.to_f64()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeJson {
    pub label: String,
    pub degree: usize,
    pub cc: [Option<f64>; 4],
    pub counts: NodeCounts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub score: Option<NodeScoreJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeScoreJson {
    pub ds: Option<f64>,
    pub defined_components: usize,
    pub directions: [Option<Direction>; 4],
    pub influential: bool,
    pub anti_driver: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EnsembleJson {
    pub config: EnsembleConfig,
    pub classes: [ClassStats; 4],
}

impl From<&EnsembleStats> for EnsembleJson {
    fn from(s: &EnsembleStats) -> Self {
        EnsembleJson {
            config: s.config,
            classes: s.classes,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScoresJson {
    pub ci_midpoints: [Option<f64>; 4],
    pub ds_global: f64,
    pub influential: Vec<String>,
    pub anti_drivers: Vec<String>,
}

/// Top-level JSON document written by every subcommand.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub input: InputInfo,
    pub config: RunConfig,
    pub census: NodeCounts,
    pub global: ProfileJson,
    pub opsahl: OpsahlJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ensemble: Option<EnsembleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scores: Option<ScoresJson>,
    pub nodes: Vec<NodeJson>,
}

impl AnalysisReport {
    pub fn new(
        g: &BipartiteGraph,
        input: InputInfo,
        config: RunConfig,
        census: &MotifCensus,
        opsahl: &Opsahl,
        ensemble: Option<&EnsembleStats>,
        scores: Option<&DrivingScoreReport>,
    ) -> Self {
        let global = crate::coefficients::global_profile(census, config.semantics);
        let locals = crate::coefficients::local_profiles(census, config.semantics);
        let nodes = locals
            .iter()
            .enumerate()
            .map(|(i, p)| NodeJson {
                label: g.labels(census.side)[i].clone(),
                degree: g.degree(NodeRef {
                    side: census.side,
                    index: i,
                }),
                cc: p.values(),
                counts: census.nodes[i],
                score: scores.map(|s| {
                    let n = &s.nodes[i];
                    NodeScoreJson {
                        ds: n.ds,
                        defined_components: n.defined_components,
                        directions: n.directions,
                        influential: n.influential,
                        anti_driver: n.anti_driver,
                    }
                }),
            })
            .collect();
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            tool_version: TOOL_VERSION,
            input,
            config,
            census: census.global,
            global: ProfileJson::from(&global),
            opsahl: OpsahlJson::from(opsahl),
            ensemble: ensemble.map(EnsembleJson::from),
            scores: scores.map(|s| ScoresJson {
                ci_midpoints: s.reference.midpoints,
                ds_global: s.ds_global,
                influential: s.influential().map(|n| n.label.clone()).collect(),
                anti_drivers: s.anti_drivers().map(|n| n.label.clone()).collect(),
            }),
            nodes,
        }
    }
}

/// 4-decimal cell, `n/a` when undefined.
pub fn fmt4(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{:.4}", round4(v) + 0.0),
        None => "n/a".to_string(),
    }
}

/// Per-node coefficients, one row per node of the census side.
pub fn write_local_csv<W: Write>(
    w: W,
    g: &BipartiteGraph,
    census: &MotifCensus,
    semantics: ClosureSemantics,
) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["label", "degree", "cc0", "cc1", "cc2", "cc3"])?;
    for (i, p) in crate::coefficients::local_profiles(census, semantics)
        .iter()
        .enumerate()
    {
        let mut row = vec![
            g.labels(census.side)[i].clone(),
            g.degree(NodeRef {
                side: census.side,
                index: i,
            })
            .to_string(),
        ];
        row.extend(p.rounded().iter().map(|v| fmt4(*v)));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

/// Scored node table. Also serves as plot data: size by `degree`, shade by `influential`.
pub fn write_nodes_csv<W: Write>(w: W, report: &DrivingScoreReport) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "label",
        "degree",
        "cc0",
        "dir0",
        "cc1",
        "dir1",
        "cc2",
        "dir2",
        "cc3",
        "dir3",
        "ds",
        "influential",
        "anti_driver",
    ])?;
    for n in &report.nodes {
        let mut row = vec![n.label.clone(), n.degree.to_string()];
        let cc = n.local.rounded();
        for (value, dir) in cc.into_iter().zip(n.directions) {
            row.push(fmt4(value));
            row.push(dir.map_or("", Direction::arrow).to_string());
        }
        row.push(fmt4(n.ds));
        row.push(n.influential.to_string());
        row.push(n.anti_driver.to_string());
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_replicas_csv<W: Write>(w: W, stats: &EnsembleStats) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["replica", "cc0", "cc1", "cc2", "cc3"])?;
    for (r, values) in stats.replicas.iter().enumerate() {
        let mut row = vec![r.to_string()];
        row.extend(values.iter().map(|v| fmt4(*v)));
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Error)]
pub enum CiFileError {
    #[error("midpoint file is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("midpoint file has neither `ci_midpoints` nor ensemble `classes`")]
    UnknownShape,
}

/// `{"side": "...", "ci_midpoints": [4 numbers]}`, optionally with `ci_intervals`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MidpointFile {
    pub side: Side,
    pub ci_midpoints: [Option<f64>; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ci_intervals: Option<[Option<[f64; 2]>; 4]>,
}

impl MidpointFile {
    pub fn reference(&self) -> Reference {
        let intervals = self
            .ci_intervals
            .map(|iv| std::array::from_fn(|k| iv[k].map(|[lo, hi]| (lo, hi))))
            .unwrap_or([None; 4]);
        Reference {
            midpoints: self.ci_midpoints,
            intervals,
        }
    }
}

/// Read midpoints from a midpoint file, an `ensemble.json`, or a `report.json`.
pub fn read_reference(text: &str) -> Result<(Side, Reference), CiFileError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.get("ci_midpoints").is_some() {
        let file: MidpointFile = serde_json::from_value(value)?;
        return Ok((file.side, file.reference()));
    }
    let ensemble = match value.get("ensemble") {
        Some(e) if e.is_object() => e.clone(),
        _ => value,
    };
    if ensemble.get("classes").is_none() {
        return Err(CiFileError::UnknownShape);
    }
    #[derive(Deserialize)]
    struct Stored {
        config: EnsembleConfig,
        classes: [ClassStats; 4],
    }
    let stored: Stored = serde_json::from_value(ensemble)?;
    let reference = Reference {
        midpoints: std::array::from_fn(|k| stored.classes[k].midpoint),
        intervals: std::array::from_fn(|k| stored.classes[k].interval()),
    };
    Ok((stored.config.side, reference))
}
