//! Immutable two-mode graph model.
//!
//! Nodes live on one of two sides and are addressed by a dense index within
//! their side. Adjacency is stored on both sides as sorted index lists so that
//! counting code can walk from either side without rebuilding anything.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the two node sets of a bipartite graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Primary,
    Secondary,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Primary => Side::Secondary,
            Side::Secondary => Side::Primary,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Primary => "primary",
            Side::Secondary => "secondary",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "primary" => Ok(Side::Primary),
            "secondary" => Ok(Side::Secondary),
            other => Err(format!("unknown side {other:?}")),
        }
    }
}

/// A node addressed by side and dense index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NodeRef {
    pub side: Side,
    pub index: usize,
}

impl NodeRef {
    pub fn primary(index: usize) -> Self {
        NodeRef {
            side: Side::Primary,
            index,
        }
    }

    pub fn secondary(index: usize) -> Self {
        NodeRef {
            side: Side::Secondary,
            index,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("input contains no edges")]
    EmptyInput,
    #[error("empty label in row {row}")]
    EmptyLabel { row: usize },
    #[error("label {label:?} appears on both sides")]
    BipartiteViolation { label: String },
    #[error("duplicate {side} label {label:?}")]
    DuplicateLabel { side: Side, label: String },
    #[error("entry at row {row}, column {col} is {value}, expected 0 or 1")]
    NonBinaryEntry { row: usize, col: usize, value: i64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("{side} index {index} out of range")]
    IndexOutOfRange { side: Side, index: usize },
}

/// A simple bipartite graph with labeled nodes.
///
/// Edges only ever join a primary node to a secondary node, so self loops are
/// impossible by construction. Duplicate edges are collapsed on the way in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    primary_labels: Vec<String>,
    secondary_labels: Vec<String>,
    adjacency_primary: Vec<Vec<usize>>,
    adjacency_secondary: Vec<Vec<usize>>,
    edge_count: usize,
}

impl BipartiteGraph {
    /// Build a graph from labeled `(primary, secondary)` rows.
    ///
    /// Node order follows first appearance. Returns the graph together with
    /// the number of duplicate rows that were collapsed.
    ///
    /// ```
    /// use bimotif::BipartiteGraph;
    ///
    /// let (g, dups) = BipartiteGraph::from_edge_list([("a", "E1"), ("b", "E1"), ("a", "E2")])?;
    /// assert_eq!((g.primary_count(), g.secondary_count(), g.edge_count()), (2, 2, 3));
    /// assert_eq!(dups, 0);
    /// # Ok::<(), bimotif::GraphError>(())
    /// ```
    pub fn from_edge_list<I, P, S>(rows: I) -> Result<(Self, usize), GraphError>
    where
        I: IntoIterator<Item = (P, S)>,
        P: AsRef<str>,
        S: AsRef<str>,
    {
        let mut primary: HashMap<String, usize> = HashMap::new();
        let mut secondary: HashMap<String, usize> = HashMap::new();
        let mut primary_labels = Vec::new();
        let mut secondary_labels = Vec::new();
        let mut adjacency: Vec<Vec<usize>> = Vec::new();
        let mut rows_seen = 0usize;

        for (row, (p, s)) in rows.into_iter().enumerate() {
            let (p, s) = (p.as_ref(), s.as_ref());
            if p.is_empty() || s.is_empty() {
                return Err(GraphError::EmptyLabel { row });
            }
            rows_seen += 1;
            let pi = *primary.entry(p.to_string()).or_insert_with(|| {
                primary_labels.push(p.to_string());
                adjacency.push(Vec::new());
                primary_labels.len() - 1
            });
            let si = *secondary.entry(s.to_string()).or_insert_with(|| {
                secondary_labels.push(s.to_string());
                secondary_labels.len() - 1
            });
            adjacency[pi].push(si);
        }
        if rows_seen == 0 {
            return Err(GraphError::EmptyInput);
        }
        if let Some(label) = primary_labels.iter().find(|l| secondary.contains_key(*l)) {
            return Err(GraphError::BipartiteViolation {
                label: label.clone(),
            });
        }

        let g = Self::build(primary_labels, secondary_labels, adjacency)?;
        let duplicates = rows_seen - g.edge_count;
        Ok((g, duplicates))
    }

    /// Build a graph from a 0/1 biadjacency matrix, rows primary, columns secondary.
    pub fn from_biadjacency<R: AsRef<[i64]>>(
        matrix: &[R],
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self, GraphError> {
        if matrix.len() != row_labels.len() {
            return Err(GraphError::DimensionMismatch(format!(
                "{} rows but {} row labels",
                matrix.len(),
                row_labels.len()
            )));
        }
        let mut adjacency = Vec::with_capacity(matrix.len());
        for (i, row) in matrix.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != col_labels.len() {
                return Err(GraphError::DimensionMismatch(format!(
                    "row {i} has {} entries but there are {} column labels",
                    row.len(),
                    col_labels.len()
                )));
            }
            let mut nbrs = Vec::new();
            for (j, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => nbrs.push(j),
                    value => {
                        return Err(GraphError::NonBinaryEntry {
                            row: i,
                            col: j,
                            value,
                        })
                    }
                }
            }
            adjacency.push(nbrs);
        }
        check_labels(Side::Primary, &row_labels)?;
        check_labels(Side::Secondary, &col_labels)?;
        let secondary: std::collections::HashSet<&str> =
            col_labels.iter().map(String::as_str).collect();
        if let Some(label) = row_labels.iter().find(|l| secondary.contains(l.as_str())) {
            return Err(GraphError::BipartiteViolation {
                label: label.clone(),
            });
        }
        Self::build(row_labels, col_labels, adjacency)
    }

    /// Build from index pairs with generated labels `p0, p1, ...` and `s0, s1, ...`.
    ///
    /// Handy for fixtures. Duplicate pairs are collapsed silently.
    pub fn from_index_edges(
        primary_count: usize,
        secondary_count: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); primary_count];
        for &(p, s) in edges {
            if p >= primary_count {
                return Err(GraphError::IndexOutOfRange {
                    side: Side::Primary,
                    index: p,
                });
            }
            if s >= secondary_count {
                return Err(GraphError::IndexOutOfRange {
                    side: Side::Secondary,
                    index: s,
                });
            }
            adjacency[p].push(s);
        }
        Self::build(
            (0..primary_count).map(|i| format!("p{i}")).collect(),
            (0..secondary_count).map(|j| format!("s{j}")).collect(),
            adjacency,
        )
    }

    /// Labels are assumed checked; neighbor lists may be unsorted and contain repeats.
    pub(crate) fn build(
        primary_labels: Vec<String>,
        secondary_labels: Vec<String>,
        mut adjacency_primary: Vec<Vec<usize>>,
    ) -> Result<Self, GraphError> {
        let mut adjacency_secondary = vec![Vec::new(); secondary_labels.len()];
        let mut edge_count = 0;
        for (p, nbrs) in adjacency_primary.iter_mut().enumerate() {
            nbrs.sort_unstable();
            nbrs.dedup();
            for &s in nbrs.iter() {
                if s >= secondary_labels.len() {
                    return Err(GraphError::IndexOutOfRange {
                        side: Side::Secondary,
                        index: s,
                    });
                }
                adjacency_secondary[s].push(p);
            }
            edge_count += nbrs.len();
        }
        Ok(BipartiteGraph {
            primary_labels,
            secondary_labels,
            adjacency_primary,
            adjacency_secondary,
            edge_count,
        })
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn primary_count(&self) -> usize {
        self.primary_labels.len()
    }

    pub fn secondary_count(&self) -> usize {
        self.secondary_labels.len()
    }

    pub fn node_count(&self, side: Side) -> usize {
        self.labels(side).len()
    }

    pub fn labels(&self, side: Side) -> &[String] {
        match side {
            Side::Primary => &self.primary_labels,
            Side::Secondary => &self.secondary_labels,
        }
    }

    pub fn label(&self, v: NodeRef) -> &str {
        &self.labels(v.side)[v.index]
    }

    /// Index of the node with this label on `side`, if any.
    pub fn find(&self, side: Side, label: &str) -> Option<usize> {
        self.labels(side).iter().position(|l| l == label)
    }

    /// Per-node sorted neighbor lists of `side`, indexed into the opposite side.
    pub fn adjacency(&self, side: Side) -> &[Vec<usize>] {
        match side {
            Side::Primary => &self.adjacency_primary,
            Side::Secondary => &self.adjacency_secondary,
        }
    }

    /// Sorted opposite-side neighbors of `v`.
    ///
    /// # Panics
    ///
    /// If `v.index` is out of range for its side.
    pub fn neighbors(&self, v: NodeRef) -> &[usize] {
        &self.adjacency(v.side)[v.index]
    }

    pub fn degree(&self, v: NodeRef) -> usize {
        self.neighbors(v).len()
    }

    pub fn degree_sequence(&self, side: Side) -> Vec<usize> {
        self.adjacency(side).iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, primary: usize, secondary: usize) -> bool {
        self.adjacency_primary
            .get(primary)
            .is_some_and(|n| n.binary_search(&secondary).is_ok())
    }

    /// The same graph with the roles of the two sides exchanged.
    pub fn mirror(&self) -> BipartiteGraph {
        BipartiteGraph {
            primary_labels: self.secondary_labels.clone(),
            secondary_labels: self.primary_labels.clone(),
            adjacency_primary: self.adjacency_secondary.clone(),
            adjacency_secondary: self.adjacency_primary.clone(),
            edge_count: self.edge_count,
        }
    }

    /// Labeled edges in primary-major order.
    pub fn to_edge_list(&self) -> Vec<(String, String)> {
        self.index_edges()
            .map(|(p, s)| {
                (
                    self.primary_labels[p].clone(),
                    self.secondary_labels[s].clone(),
                )
            })
            .collect()
    }

    /// Index edges in primary-major order.
    pub fn index_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency_primary
            .iter()
            .enumerate()
            .flat_map(|(p, nbrs)| nbrs.iter().map(move |&s| (p, s)))
    }

    /// Same labels, new primary adjacency. Used by the null model.
    pub(crate) fn with_primary_adjacency(&self, adjacency: Vec<Vec<usize>>) -> BipartiteGraph {
        Self::build(
            self.primary_labels.clone(),
            self.secondary_labels.clone(),
            adjacency,
        )
        .expect("rewired adjacency stays in range")
    }
}

fn check_labels(side: Side, labels: &[String]) -> Result<(), GraphError> {
    let mut seen = std::collections::HashSet::new();
    for (row, label) in labels.iter().enumerate() {
        if label.is_empty() {
            return Err(GraphError::EmptyLabel { row });
        }
        if !seen.insert(label.as_str()) {
            return Err(GraphError::DuplicateLabel {
                side,
                label: label.clone(),
            });
        }
    }
    Ok(())
}
