//! Evaluation of an augmentation against a community structure.

use std::collections::HashSet;

use serde::Serialize;

use crate::augment::AugmentationResult;
use crate::community::Partition;
use crate::error::{Error, Result};
use crate::graph::{canonical, connected_components, Edge, Graph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EdgeCounts {
    pub intra_new: usize,
    pub inter_new: usize,
    pub hidden_total: usize,
    pub hidden_recovered: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MetricsReport {
    /// Components after adding the new edges.
    pub m_dagger: usize,
    /// Share of new edges joining different communities; `None` without new
    /// edges.
    pub rho: Option<f64>,
    /// Share of hidden edges re-created exactly; 0 when nothing was hidden.
    pub epsilon: f64,
    /// Set when `epsilon` is 0 only because nothing was hidden.
    pub epsilon_flag: bool,
    pub counts: EdgeCounts,
}

/// Scores `result` (an augmentation of `g_before`) against `part` and the
/// set of `hidden` inter-community edges.
pub fn evaluate(
    g_before: &Graph,
    result: &AugmentationResult,
    part: &Partition,
    hidden: &[Edge],
) -> Result<MetricsReport> {
    if part.len() != g_before.node_count() {
        return Err(Error::InvalidArgument(format!(
            "partition covers {} nodes, graph has {}",
            part.len(),
            g_before.node_count()
        )));
    }
    let hidden: HashSet<Edge> = hidden.iter().map(|&(u, v)| canonical(u, v)).collect();
    if let Some(e) = hidden.iter().find(|&&(u, v)| g_before.has_edge(u, v)) {
        return Err(Error::InvalidArgument(format!(
            "hidden edge {e:?} is still present in the graph"
        )));
    }
    let mut counts = EdgeCounts {
        hidden_total: hidden.len(),
        ..EdgeCounts::default()
    };
    for &(u, v) in &result.new_edges {
        if part.same(u, v) {
            counts.intra_new += 1;
        } else {
            counts.inter_new += 1;
        }
        if hidden.contains(&canonical(u, v)) {
            counts.hidden_recovered += 1;
        }
    }
    let total_new = counts.intra_new + counts.inter_new;
    let rho = (total_new > 0).then(|| counts.inter_new as f64 / total_new as f64);
    let epsilon = if hidden.is_empty() {
        0.0
    } else {
        counts.hidden_recovered as f64 / hidden.len() as f64
    };
    let augmented = g_before.with_edges(&result.new_edges)?;
    Ok(MetricsReport {
        m_dagger: connected_components(&augmented).count(),
        rho,
        epsilon,
        epsilon_flag: hidden.is_empty(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augment::{realize_edges, DegreeDelta};

    fn result_with(g: &Graph, edges: Vec<Edge>) -> AugmentationResult {
        let mut r = realize_edges(g, &DegreeDelta::from_raw(vec![0.0; g.node_count()]));
        r.new_edges = edges;
        r
    }

    fn two_pairs() -> (Graph, Partition) {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        (g, Partition::from_labels(&[0, 0, 1, 1]))
    }

    #[test]
    fn no_new_edges() {
        let (g, p) = two_pairs();
        let r = result_with(&g, vec![]);
        let m = evaluate(&g, &r, &p, &[(1, 2)]).unwrap();
        assert_eq!(m.rho, None);
        assert_eq!(m.epsilon, 0.0);
        assert_eq!(m.m_dagger, 2);
    }

    #[test]
    fn exact_recovery() {
        let (g, p) = two_pairs();
        let hidden = vec![(1, 2), (0, 3)];
        let r = result_with(&g, hidden.clone());
        let m = evaluate(&g, &r, &p, &hidden).unwrap();
        assert_eq!(m.rho, Some(1.0));
        assert_eq!(m.epsilon, 1.0);
        assert_eq!(m.m_dagger, 1);
    }

    #[test]
    fn mixed_edges() {
        let g = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let p = Partition::from_labels(&[0, 0, 0, 0, 1, 1]);
        let r = result_with(&g, vec![(0, 2), (1, 4), (3, 5)]);
        let m = evaluate(&g, &r, &p, &[(1, 4), (0, 5)]).unwrap();
        assert_eq!(m.counts.intra_new, 1);
        assert_eq!(m.counts.inter_new, 2);
        assert!((m.rho.unwrap() - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(m.epsilon, 0.5);
        assert_eq!(m.m_dagger, 1);
    }

    #[test]
    fn empty_hidden_is_flagged() {
        let (g, p) = two_pairs();
        let r = result_with(&g, vec![(1, 2)]);
        let m = evaluate(&g, &r, &p, &[]).unwrap();
        assert!(m.epsilon_flag);
        assert_eq!(m.epsilon, 0.0);
    }

    #[test]
    fn hidden_must_be_absent() {
        let (g, p) = two_pairs();
        let r = result_with(&g, vec![]);
        assert!(evaluate(&g, &r, &p, &[(0, 1)]).is_err());
    }

    #[test]
    fn json_field_names() {
        let (g, p) = two_pairs();
        let r = result_with(&g, vec![(1, 2)]);
        let json = serde_json::to_string(&evaluate(&g, &r, &p, &[(1, 2)]).unwrap()).unwrap();
        for field in ["\"m_dagger\":1", "\"rho\":1.0", "\"epsilon\":1.0"] {
            assert!(json.contains(field), "{json}");
        }
    }
}
