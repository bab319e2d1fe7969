//! Seeded random graphs. Pairs `(i, j)`, `i < j`, are visited in lexicographic
//! order and each consumes exactly one uniform draw from [`SplitMix64`], so a
//! seed pins the edge list on every platform.

use serde::{Deserialize, Serialize};

use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rng::SplitMix64;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "{name} must lie in [0, 1], got {p}"
        )));
    }
    Ok(())
}

/// Erdős–Rényi `G(n, p)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability("p", p)?;
    let mut rng = SplitMix64::new(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.next_f64() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_canonical(n, edges))
}

/// Stochastic block model parameters. Blocks occupy consecutive node ids in
/// the order given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SbmSpec {
    pub block_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,
    pub seed: u64,
}

impl SbmSpec {
    pub fn uniform(blocks: usize, size: usize, p_in: f64, p_out: f64, seed: u64) -> Self {
        Self {
            block_sizes: vec![size; blocks],
            p_in,
            p_out,
            seed,
        }
    }

    pub fn node_count(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p_in", self.p_in)?;
        check_probability("p_out", self.p_out)?;
        if self.p_out > self.p_in {
            return Err(Error::InvalidArgument(format!(
                "p_out ({}) must not exceed p_in ({})",
                self.p_out, self.p_in
            )));
        }
        if self.block_sizes.is_empty() || self.block_sizes.contains(&0) {
            return Err(Error::InvalidArgument(
                "every block needs at least one node".into(),
            ));
        }
        Ok(())
    }
}

/// Samples an SBM graph and returns it with its ground-truth blocks.
pub fn sbm(spec: &SbmSpec) -> Result<(Graph, Partition)> {
    spec.validate()?;
    let block: Vec<usize> = spec
        .block_sizes
        .iter()
        .enumerate()
        .flat_map(|(b, &size)| std::iter::repeat(b).take(size))
        .collect();
    let n = block.len();
    let mut rng = SplitMix64::new(spec.seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if block[i] == block[j] {
                spec.p_in
            } else {
                spec.p_out
            };
            if rng.next_f64() < p {
                edges.push((i, j));
            }
        }
    }
    Ok((
        Graph::from_canonical(n, edges),
        Partition::from_labels(&block),
    ))
}

/// Splits `g` into its intra-community part and the removed inter-community
/// edges.
pub fn hide_inter_edges(g: &Graph, part: &Partition) -> Result<(Graph, Vec<Edge>)> {
    if part.len() != g.node_count() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} nodes, graph has {}",
            part.len(),
            g.node_count()
        )));
    }
    let hidden: Vec<Edge> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !part.same(u, v))
        .collect();
    let kept = g.filter_edges(|(u, v)| part.same(u, v));
    Ok((kept, hidden))
}
