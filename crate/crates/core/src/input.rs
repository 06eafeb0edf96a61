//! Reading graphs from edge-list and biadjacency files.

use std::fs;
use std::path::Path;

use thiserror::Error;

use crate::graph::{BipartiteGraph, GraphError};

/// Supported on-disk formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    /// One `primary<TAB>secondary` or `primary,secondary` pair per line.
    EdgeList,
    /// CSV matrix, header row of secondary labels, one row per primary node.
    Biadjacency,
}

/// Text could not be parsed into rows.
#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: no TAB or comma separator")]
    NoDelimiter { line: usize },
    #[error("line {line}: expected {expected:?} as separator like the rest of the file")]
    InconsistentDelimiter { line: usize, expected: char },
    #[error("line {line}: expected 2 fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: empty label")]
    EmptyField { line: usize },
    #[error("line {line}: cell {cell:?} is not an integer")]
    NotAnInteger { line: usize, cell: String },
    #[error("biadjacency header must start with an empty cell")]
    BadHeader,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Either stage of loading can fail; the CLI reports them with different exit codes.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Invalid(#[from] GraphError),
}

/// A graph read from a file, with the number of duplicate edges that were collapsed.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: BipartiteGraph,
    pub duplicate_edges: usize,
}

pub fn load(path: &Path, format: InputFormat) -> Result<Loaded, LoadError> {
    let text = fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text, format)
}

pub fn parse(text: &str, format: InputFormat) -> Result<Loaded, LoadError> {
    match format {
        InputFormat::EdgeList => {
            let rows = parse_edge_list(text)?;
            let (graph, duplicate_edges) = BipartiteGraph::from_edge_list(rows)?;
            Ok(Loaded {
                graph,
                duplicate_edges,
            })
        }
        InputFormat::Biadjacency => {
            let m = parse_biadjacency(text)?;
            let graph = BipartiteGraph::from_biadjacency(&m.entries, m.row_labels, m.col_labels)?;
            Ok(Loaded {
                graph,
                duplicate_edges: 0,
            })
        }
    }
}

/// Split an edge list into `(primary, secondary)` rows.
///
/// The separator is taken from the first data line (TAB wins over comma) and
/// every later line must use it too. Blank lines and lines starting with `#`
/// are skipped.
pub fn parse_edge_list(text: &str) -> Result<Vec<(String, String)>, ParseError> {
    let mut delim: Option<char> = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let d = match delim {
            Some(d) => {
                if !line.contains(d) {
                    let other = if d == '\t' { ',' } else { '\t' };
                    return Err(if line.contains(other) {
                        ParseError::InconsistentDelimiter {
                            line: line_no,
                            expected: d,
                        }
                    } else {
                        ParseError::NoDelimiter { line: line_no }
                    });
                }
                d
            }
            None => {
                let d = if line.contains('\t') {
                    '\t'
                } else if line.contains(',') {
                    ','
                } else {
                    return Err(ParseError::NoDelimiter { line: line_no });
                };
                delim = Some(d);
                d
            }
        };
        let fields: Vec<&str> = line.split(d).map(str::trim).collect();
        if fields.len() != 2 {
            return Err(ParseError::FieldCount {
                line: line_no,
                found: fields.len(),
            });
        }
        if fields.iter().any(|f| f.is_empty()) {
            return Err(ParseError::EmptyField { line: line_no });
        }
        rows.push((fields[0].to_string(), fields[1].to_string()));
    }
    Ok(rows)
}

/// Raw biadjacency table before graph validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Biadjacency {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<i64>>,
}

pub fn parse_biadjacency(text: &str) -> Result<Biadjacency, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(r) => r?,
        None => {
            return Ok(Biadjacency {
                row_labels: vec![],
                col_labels: vec![],
                entries: vec![],
            })
        }
    };
    if header.get(0) != Some("") {
        return Err(ParseError::BadHeader);
    }
    let col_labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();

    let mut row_labels = Vec::new();
    let mut entries = Vec::new();
    for record in records {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let mut cells = record.iter();
        row_labels.push(cells.next().unwrap_or_default().to_string());
        let row = cells
            .map(|c| {
                c.parse::<i64>().map_err(|_| ParseError::NotAnInteger {
                    line,
                    cell: c.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        entries.push(row);
    }
    Ok(Biadjacency {
        row_labels,
        col_labels,
        entries,
    })
}
