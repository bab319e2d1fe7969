//! Community detection and modularity.

mod fluid;
mod girvan_newman;
mod greedy;
mod label_propagation;
mod louvain;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use fluid::fluid_communities;
pub use girvan_newman::{edge_betweenness, girvan_newman};
pub use greedy::{greedy_modularity, greedy_modularity_traced};
pub use label_propagation::label_propagation;
pub use louvain::{louvain, louvain_traced};

/// Assignment of every node to one of `k` communities.
///
/// Ids are dense in `0..k` and ordered by community size ascending, ties
/// broken by the smallest node id in the community. Two partitions that group
/// the nodes the same way therefore compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    labels: Vec<usize>,
    k: usize,
}

impl Partition {
    /// Canonicalizes arbitrary labels. Only equality of labels matters.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut index = std::collections::HashMap::new();
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for (v, &l) in raw.iter().enumerate() {
            let slot = *index.entry(l).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[slot].push(v);
        }
        Self::from_groups(raw.len(), groups)
    }

    /// Builds a partition from disjoint groups covering `0..n`.
    pub fn from_groups(n: usize, mut groups: Vec<Vec<usize>>) -> Self {
        groups.retain(|g| !g.is_empty());
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort_by_key(|g| (g.len(), g[0]));
        let mut labels = vec![usize::MAX; n];
        for (id, g) in groups.iter().enumerate() {
            for &v in g {
                labels[v] = id;
            }
        }
        debug_assert!(labels.iter().all(|&l| l != usize::MAX));
        Self {
            labels,
            k: groups.len(),
        }
    }

    pub fn singletons(n: usize) -> Self {
        Self {
            labels: (0..n).collect(),
            k: n,
        }
    }

    /// Number of communities.
    pub fn count(&self) -> usize {
        self.k
    }

    /// Number of nodes covered.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k];
        for (v, &l) in self.labels.iter().enumerate() {
            out[l].push(v);
        }
        out
    }
}

/// `Q = Σ_c [e_c / |E| - (d_c / 2|E|)²]`.
pub fn modularity(g: &Graph, p: &Partition) -> Result<f64> {
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::UndefinedModularity);
    }
    if p.len() != g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} nodes, graph has {}",
            p.len(),
            g.node_count()
        )));
    }
    let mut internal = vec![0u64; p.count()];
    let mut degree = vec![0u64; p.count()];
    for &(u, v) in g.edges() {
        let (cu, cv) = (p.label(u), p.label(v));
        if cu == cv {
            internal[cu] += 1;
        }
        degree[cu] += 1;
        degree[cv] += 1;
    }
    let ef = e as f64;
    Ok(internal
        .iter()
        .zip(&degree)
        .map(|(&ec, &dc)| ec as f64 / ef - (dc as f64 / (2.0 * ef)).powi(2))
        .sum())
}

/// Detector selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Girvan–Newman, first split.
    Gn,
    /// Clauset–Newman–Moore greedy modularity.
    Cnm,
    /// Asynchronous label propagation.
    Lp,
    Louvain,
    /// Fluid communities; needs `k`.
    Fluid,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Gn,
        Method::Cnm,
        Method::Lp,
        Method::Louvain,
        Method::Fluid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Gn => "gn",
            Method::Cnm => "cnm",
            Method::Lp => "lp",
            Method::Louvain => "louvain",
            Method::Fluid => "fluid",
        }
    }

    /// Whether the result depends on the seed.
    pub fn is_stochastic(self) -> bool {
        matches!(self, Method::Lp | Method::Louvain | Method::Fluid)
    }

    /// Runs the detector. `k` is required by [`Method::Fluid`] and ignored
    /// otherwise.
    pub fn detect(self, g: &Graph, k: Option<usize>, seed: u64) -> Result<Partition> {
        match self {
            Method::Gn => Ok(girvan_newman(g)),
            Method::Cnm => Ok(greedy_modularity(g)),
            Method::Lp => Ok(label_propagation(g, seed)),
            Method::Louvain => Ok(louvain(g, seed)),
            Method::Fluid => {
                let k =
                    k.ok_or_else(|| Error::InvalidArgument("fluid communities need k".into()))?;
                fluid_communities(g, k, seed)
            }
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gn" | "girvan-newman" => Ok(Method::Gn),
            "cnm" | "greedy" => Ok(Method::Cnm),
            "lp" | "label-propagation" => Ok(Method::Lp),
            "louvain" => Ok(Method::Louvain),
            "fluid" => Ok(Method::Fluid),
            other => Err(Error::InvalidArgument(format!(
                "unknown method {other:?}; expected gn, cnm, lp, louvain or fluid"
            ))),
        }
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use crate::graph::Graph;

    /// `count` cliques of `size` nodes on consecutive ids.
    pub fn cliques(count: usize, size: usize) -> Graph {
        let mut edges = Vec::new();
        for c in 0..count {
            let base = c * size;
            for i in 0..size {
                for j in i + 1..size {
                    edges.push((base + i, base + j));
                }
            }
        }
        Graph::from_edges(count * size, edges).unwrap()
    }

    pub fn karate() -> Graph {
        crate::io::parse_edge_list(include_str!("../../data/karate.edges"), None).unwrap()
    }
}
