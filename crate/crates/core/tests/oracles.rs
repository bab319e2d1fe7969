mod common;

use std::f64::consts::PI;

use spectral_augment::augment::{realize_edges, DegreeDelta};
use spectral_augment::experiments::load_dataset;
use spectral_augment::randgraph::{erdos_renyi, hide_inter_edges, sbm, SbmSpec};
use spectral_augment::{
    augment, connected_components, eigendecompose, laplacian, BasisMode, ElevationPlan, Graph,
};

use common::{check_realization, count_components};

/// No pair that is still short of quota on both ends is left unjoined.
fn is_maximal(g: &Graph, budget: &[u32], new_edges: &[(usize, usize)]) -> bool {
    let n = budget.len();
    let mut left = budget.to_vec();
    for &(a, b) in new_edges {
        left[a] -= 1;
        left[b] -= 1;
    }
    let added: std::collections::HashSet<_> = new_edges.iter().copied().collect();
    (0..n).all(|i| {
        (i + 1..n)
            .all(|j| left[i] == 0 || left[j] == 0 || g.has_edge(i, j) || added.contains(&(i, j)))
    })
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        Graph::from_edges(n, edges).unwrap()
    })
}

fn all_budgets(n: usize, max: u32) -> impl Iterator<Item = Vec<u32>> {
    let base = max as u64 + 1;
    (0..base.pow(n as u32)).map(move |mut code| {
        (0..n)
            .map(|_| {
                let d = (code % base) as u32;
                code /= base;
                d
            })
            .collect()
    })
}

#[test]
fn greedy_on_every_small_graph() {
    for n in 1..=4 {
        for g in all_graphs(n) {
            for budget in all_budgets(n, 3) {
                let dd = DegreeDelta::from_raw(budget.iter().map(|&d| d as f64).collect());
                let r = realize_edges(&g, &dd);
                if let Err(msg) = check_realization(&budget, |a, b| g.has_edge(a, b), &r.new_edges)
                {
                    panic!("n={n} edges={:?} budget={budget:?}: {msg}", g.edges());
                }
                assert!(
                    is_maximal(&g, &budget, &r.new_edges),
                    "{:?} {budget:?}",
                    g.edges()
                );
            }
        }
    }
}

#[test]
fn path_and_complete_spectra() {
    let n = 12;
    let path = Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap();
    let es = eigendecompose(&laplacian(&path)).unwrap();
    let mut expected: Vec<f64> = (0..n)
        .map(|k| 2.0 - 2.0 * (PI * k as f64 / n as f64).cos())
        .collect();
    expected.sort_by(f64::total_cmp);
    for (got, want) in es.values().iter().zip(&expected) {
        assert!((got - want).abs() < 1e-10, "{got} vs {want}");
    }

    let complete =
        Graph::from_edges(7, (0..7).flat_map(|i| (i + 1..7).map(move |j| (i, j)))).unwrap();
    let es = eigendecompose(&laplacian(&complete)).unwrap();
    assert!(es.values()[0].abs() < 1e-10);
    assert!(es.values()[1..].iter().all(|v| (v - 7.0).abs() < 1e-10));
}

#[test]
fn karate_is_connected_spectrally() {
    let g = load_dataset(std::path::Path::new("/nonexistent"), "karate").unwrap();
    let es = eigendecompose(&laplacian(&g)).unwrap();
    assert_eq!(es.values().iter().filter(|v| v.abs() < 1e-8).count(), 1);
}

#[test]
fn er_components_match_union_find() {
    let g = erdos_renyi(200, 1.0 / 200.0, 7).unwrap();
    assert_eq!(
        connected_components(&g).count(),
        count_components(200, g.edges().iter().copied())
    );
}

#[test]
fn er_edge_count_expectation() {
    let total: usize = (0..200)
        .map(|s| erdos_renyi(200, 1.0 / 200.0, s).unwrap().edge_count())
        .sum();
    let mean = total as f64 / 200.0;
    assert!((mean - 99.5).abs() <= 9.95, "mean |E| = {mean}");
}

#[test]
fn sbm_inter_intra_ratio() {
    let ratios: Vec<f64> = (0..50)
        .map(|s| {
            let (g, part) = sbm(&SbmSpec::uniform(5, 50, 0.5, 0.1, s)).unwrap();
            let intra = g.edges().iter().filter(|&&(a, b)| part.same(a, b)).count();
            (g.edge_count() - intra) as f64 / intra as f64
        })
        .collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!((mean - 2500.0 / 3062.5).abs() < 0.02, "ratio {mean}");
}

#[test]
fn hidden_sbm_splits_into_blocks() {
    for s in 0..20 {
        let (g, part) = sbm(&SbmSpec::uniform(5, 50, 0.5, 0.1, s)).unwrap();
        let (kept, _) = hide_inter_edges(&g, &part).unwrap();
        let blocks_connected = part.members().iter().all(|block| {
            let inside = kept.edges().iter().filter(|&&(a, _)| block.contains(&a));
            let index = |v: usize| block.binary_search(&v).unwrap();
            count_components(block.len(), inside.map(|&(a, b)| (index(a), index(b)))) == 1
        });
        if blocks_connected {
            assert_eq!(connected_components(&kept).count(), 5, "seed {s}");
        }
    }
}

#[test]
fn augmenting_hidden_sbm_joins_blocks() {
    let (g, part) = sbm(&SbmSpec::uniform(5, 50, 0.5, 0.1, 11)).unwrap();
    let (kept, _) = hide_inter_edges(&g, &part).unwrap();
    let r = augment(&kept, &ElevationPlan::new(4, 250.0, BasisMode::Mixed, 11)).unwrap();
    assert_eq!(r.m_before, 5);
    assert!(r.m_dagger < 5, "m_dagger = {}", r.m_dagger);
}
