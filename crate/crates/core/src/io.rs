//! Edge-list text format.
//!
//! One edge per line as two integer tokens separated by whitespace (a comma
//! also works as a separator). Blank lines and lines starting with `#` are
//! ignored, except for the directive `# nodes: <n>`, which declares the node
//! count so isolated nodes survive a round trip.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Mapping from dense node ids back to the ids used in the source file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeMap {
    original: Vec<u64>,
}

impl NodeMap {
    pub fn original_id(&self, node: usize) -> u64 {
        self.original[node]
    }

    pub fn dense_id(&self, original: u64) -> Option<usize> {
        self.original.binary_search(&original).ok()
    }

    pub fn len(&self) -> usize {
        self.original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original.is_empty()
    }
}

struct Parsed {
    pairs: Vec<(u64, u64, usize)>,
    declared_nodes: Option<usize>,
}

fn parse_lines(text: &str) -> Result<Parsed> {
    let mut pairs = Vec::new();
    let mut declared_nodes = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("nodes:") {
                let n = value.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad node count {:?}", value.trim()),
                })?;
                declared_nodes = Some(n);
            }
            continue;
        }
        let mut tokens = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty());
        let mut next_id = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: "expected two node ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not a node id: {tok:?}"),
            })
        };
        let a = next_id()?;
        let b = next_id()?;
        if a == b {
            return Err(Error::Validation(format!(
                "line {line_no}: self-loop on node {a}"
            )));
        }
        pairs.push((a, b, line_no));
    }
    Ok(Parsed {
        pairs,
        declared_nodes,
    })
}

/// Parses an edge list keeping node ids as written.
///
/// The node count is `node_override`, else the `# nodes:` directive, else
/// `1 + max id`.
pub fn parse_edge_list(text: &str, node_override: Option<usize>) -> Result<Graph> {
    let parsed = parse_lines(text)?;
    let max_id = parsed.pairs.iter().map(|&(a, b, _)| a.max(b)).max();
    let implied = max_id.map_or(0, |m| m as usize + 1);
    let n = node_override.or(parsed.declared_nodes).unwrap_or(implied);
    if n < implied {
        return Err(Error::Validation(format!(
            "node count {n} is smaller than the largest id {}",
            implied - 1
        )));
    }
    Graph::from_edges(
        n,
        parsed
            .pairs
            .iter()
            .map(|&(a, b, _)| (a as usize, b as usize)),
    )
}

/// Parses an edge list with arbitrary (sparse) ids, compacting them to
/// `0..k` in ascending order of the original id.
pub fn parse_edge_list_remapped(text: &str) -> Result<(Graph, NodeMap)> {
    let parsed = parse_lines(text)?;
    let mut ids: Vec<u64> = parsed.pairs.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    ids.sort_unstable();
    ids.dedup();
    let map = NodeMap { original: ids };
    let dense = |x: u64| map.dense_id(x).expect("id collected above");
    let graph = Graph::from_edges(
        map.len(),
        parsed.pairs.iter().map(|&(a, b, _)| (dense(a), dense(b))),
    )?;
    Ok((graph, map))
}

pub fn read_edge_list(path: &Path, node_override: Option<usize>) -> Result<Graph> {
    if !path.exists() {
        return Err(Error::MissingDataset(path.to_path_buf()));
    }
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text, node_override)
}

/// Serializes with a `# nodes:` header so isolates are preserved.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "# nodes: {}", g.node_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
