//! Bundled and user-supplied datasets.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::graph::BipartiteGraph;
use crate::input::{self, InputFormat, LoadError, Loaded};
use crate::report::MidpointFile;

/// Davis, Gardner and Gardner's attendance of 18 women at 14 events, as a biadjacency CSV.
pub const SOUTHERN_WOMEN_CSV: &str = include_str!("../../../data/southern_women.csv");

/// Published reference midpoints for the two sides of the bundled attendance data.
pub const SOUTHERN_WOMEN_CI_PRIMARY: &str =
    include_str!("../../../data/southern_women_ci_primary.json");
pub const SOUTHERN_WOMEN_CI_SECONDARY: &str =
    include_str!("../../../data/southern_women_ci_secondary.json");

/// Reference output for the Noordin Top member/meeting subset (26 x 20, 64 edges).
/// The graph itself is not bundled.
pub const NOORDIN_EXPECTED_JSON: &str = include_str!("../../../data/noordin_expected.json");

/// Environment variable naming a user-supplied Noordin file.
pub const NOORDIN_ENV: &str = "BIMOTIF_NOORDIN";
/// `edgelist` (default) or `biadjacency`.
pub const NOORDIN_FORMAT_ENV: &str = "BIMOTIF_NOORDIN_FORMAT";

/// The bundled attendance graph: women on the primary side, events `E1..E14` on the secondary side.
///
/// ```
/// let g = bimotif::datasets::southern_women();
/// assert_eq!((g.primary_count(), g.secondary_count(), g.edge_count()), (18, 14, 89));
/// ```
pub fn southern_women() -> BipartiteGraph {
    input::parse(SOUTHERN_WOMEN_CSV, InputFormat::Biadjacency)
        .expect("bundled data is valid")
        .graph
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExpectedMember {
    pub member: String,
    pub cc: [Option<f64>; 4],
    pub ds: Option<f64>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ExpectedValues {
    pub primary_nodes: usize,
    pub secondary_nodes: usize,
    pub edges: usize,
    pub global_cc: [Option<f64>; 4],
    pub ds_global: f64,
    pub influential_includes: Vec<String>,
    pub members: Vec<ExpectedMember>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct NoordinExpected {
    #[serde(flatten)]
    pub midpoints: MidpointFile,
    pub expected: ExpectedValues,
}

pub fn noordin_expected() -> NoordinExpected {
    serde_json::from_str(NOORDIN_EXPECTED_JSON).expect("bundled reference file is valid")
}

/// Where the user put the Noordin data, if anywhere: `$BIMOTIF_NOORDIN`,
/// else `data/noordin.tsv` or `data/noordin.csv` under `root`.
pub fn noordin_location(root: &Path) -> Option<(PathBuf, InputFormat)> {
    if let Some(path) = std::env::var_os(NOORDIN_ENV) {
        let format = match std::env::var(NOORDIN_FORMAT_ENV).as_deref() {
            Ok("biadjacency") => InputFormat::Biadjacency,
            _ => InputFormat::EdgeList,
        };
        return Some((PathBuf::from(path), format));
    }
    [
        ("noordin.tsv", InputFormat::EdgeList),
        ("noordin.csv", InputFormat::Biadjacency),
    ]
    .into_iter()
    .map(|(name, f)| (root.join("data").join(name), f))
    .find(|(p, _)| p.is_file())
}

pub fn load_noordin(path: &Path, format: InputFormat) -> Result<Loaded, LoadError> {
    input::load(path, format)
}
