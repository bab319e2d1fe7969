use crate::graph::Graph;
use crate::rng::SplitMix64;

use super::Partition;

const MAX_SWEEPS: usize = 10_000;

/// Labels of maximal frequency among the neighbors of `v`, ascending.
fn modes(g: &Graph, labels: &[usize], v: usize, counts: &mut [usize], out: &mut Vec<usize>) {
    out.clear();
    let mut top = 0;
    for &u in g.neighbors(v) {
        let l = labels[u];
        counts[l] += 1;
        top = top.max(counts[l]);
    }
    for &u in g.neighbors(v) {
        let l = labels[u];
        if counts[l] == top && !out.contains(&l) {
            out.push(l);
        }
    }
    for &u in g.neighbors(v) {
        counts[labels[u]] = 0;
    }
    out.sort_unstable();
}

/// Asynchronous label propagation.
///
/// Every node starts with its own label. Each sweep visits the nodes in a
/// fresh seeded order and sets each node's label to one of the most frequent
/// labels among its neighbors, drawn uniformly when several tie. The run ends
/// once every node carries one of its neighborhood's modes. Isolated nodes
/// keep their own label.
pub fn label_propagation(g: &Graph, seed: u64) -> Partition {
    let n = g.node_count();
    let mut rng = SplitMix64::new(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut counts = vec![0usize; n];
    let mut best = Vec::new();
    for _ in 0..MAX_SWEEPS {
        rng.shuffle(&mut order);
        for &v in &order {
            if g.degree(v) == 0 {
                continue;
            }
            modes(g, &labels, v, &mut counts, &mut best);
            labels[v] = if best.len() == 1 {
                best[0]
            } else {
                best[rng.below(best.len() as u64) as usize]
            };
        }
        let stable = (0..n).all(|v| {
            if g.degree(v) == 0 {
                return true;
            }
            modes(g, &labels, v, &mut counts, &mut best);
            best.binary_search(&labels[v]).is_ok()
        });
        if stable {
            break;
        }
    }
    Partition::from_labels(&labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::testing::{cliques, karate};

    #[test]
    fn one_label_per_clique() {
        let p = label_propagation(&cliques(4, 5), 3);
        assert_eq!(p.count(), 4);
    }

    #[test]
    fn edgeless_gives_singletons() {
        assert_eq!(label_propagation(&Graph::empty(5), 1).count(), 5);
    }

    #[test]
    fn seeded_runs_repeat() {
        let g = karate();
        assert_eq!(label_propagation(&g, 42), label_propagation(&g, 42));
    }

    #[test]
    fn karate_counts_concentrate() {
        let g = karate();
        let within = (0..50u64)
            .filter(|&s| (2..=4).contains(&label_propagation(&g, s).count()))
            .count();
        assert!(within >= 42, "{within}/50 runs gave 2..=4 communities");
    }
}
