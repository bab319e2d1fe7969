//! Inputs shared by the benchmarks.

use spectral_augment::randgraph::{erdos_renyi, hide_inter_edges, sbm, SbmSpec};
use spectral_augment::Graph;

/// Sparse ER graph with about `n / 2` components.
pub fn sparse_er(n: usize, seed: u64) -> Graph {
    erdos_renyi(n, 1.0 / n as f64, seed).expect("valid probability")
}

/// Block model with every inter-block edge removed.
pub fn hidden_sbm(blocks: usize, size: usize, seed: u64) -> Graph {
    let (g, part) = sbm(&SbmSpec::uniform(blocks, size, 0.5, 0.1, seed)).expect("valid spec");
    hide_inter_edges(&g, &part)
        .expect("partition covers graph")
        .0
}
