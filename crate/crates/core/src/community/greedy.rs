use std::collections::BTreeMap;

use crate::graph::Graph;

use super::Partition;

/// Agglomerative modularity maximization.
///
/// Starts from singletons and repeatedly merges the pair of adjacent
/// communities with the largest modularity gain while that gain is positive.
/// Gains are compared exactly as the integer `2|E| e_ij - D_i D_j`, where
/// `e_ij` counts edges between the two communities and `D` is total degree.
/// Ties go to the lexicographically smallest `(i, j)`; the lower id survives.
pub fn greedy_modularity(g: &Graph) -> Partition {
    greedy_modularity_traced(g).0
}

/// As [`greedy_modularity`], also returning the modularity after every
/// accepted merge, starting with the singleton partition.
pub fn greedy_modularity_traced(g: &Graph) -> (Partition, Vec<f64>) {
    let n = g.node_count();
    let m = g.edge_count() as i128;
    if m == 0 {
        return (Partition::singletons(n), Vec::new());
    }
    let mut links: Vec<BTreeMap<usize, i128>> = vec![BTreeMap::new(); n];
    for &(u, v) in g.edges() {
        *links[u].entry(v).or_default() += 1;
        *links[v].entry(u).or_default() += 1;
    }
    let mut degree: Vec<i128> = g.degrees().into_iter().map(|d| d as i128).collect();
    let mut members: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut alive = vec![true; n];

    let norm = 2.0 * (m * m) as f64;
    let mut q = -degree.iter().map(|&d| (d * d) as f64).sum::<f64>() / (2.0 * norm);
    let mut trace = vec![q];

    loop {
        let mut best: Option<(i128, usize, usize)> = None;
        for i in 0..n {
            if !alive[i] {
                continue;
            }
            for (&j, &e) in links[i].range(i + 1..) {
                let gain = 2 * m * e - degree[i] * degree[j];
                if best.map_or(true, |(b, _, _)| gain > b) {
                    best = Some((gain, i, j));
                }
            }
        }
        let Some((gain, i, j)) = best.filter(|&(gain, _, _)| gain > 0) else {
            break;
        };
        let absorbed = std::mem::take(&mut links[j]);
        for (k, e) in absorbed {
            if k == i {
                continue;
            }
            links[k].remove(&j);
            *links[k].entry(i).or_default() += e;
            *links[i].entry(k).or_default() += e;
        }
        links[i].remove(&j);
        degree[i] += degree[j];
        degree[j] = 0;
        let moved = std::mem::take(&mut members[j]);
        members[i].extend(moved);
        alive[j] = false;
        q += gain as f64 / norm;
        trace.push(q);
    }
    (Partition::from_groups(n, members), trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::modularity;
    use crate::community::testing::{cliques, karate};

    #[test]
    fn karate_gives_three() {
        let p = greedy_modularity(&karate());
        assert_eq!(p.count(), 3);
    }

    #[test]
    fn disjoint_cliques() {
        assert_eq!(greedy_modularity(&cliques(2, 5)).count(), 2);
    }

    #[test]
    fn trace_is_monotone_and_exact() {
        let g = karate();
        let (p, trace) = greedy_modularity_traced(&g);
        assert!(trace.windows(2).all(|w| w[1] > w[0]));
        let q = modularity(&g, &p).unwrap();
        assert!((trace.last().unwrap() - q).abs() < 1e-12);
        let q0 = modularity(&g, &Partition::singletons(34)).unwrap();
        assert!((trace[0] - q0).abs() < 1e-12);
    }

    /// Two 4-cliques joined by one edge: compares against every set
    /// partition of the 8 nodes.
    #[test]
    fn bridged_cliques_reach_exhaustive_optimum() {
        let mut edges: Vec<(usize, usize)> = cliques(2, 4).edges().to_vec();
        edges.push((3, 4));
        let g = Graph::from_edges(8, edges).unwrap();
        let found = modularity(&g, &greedy_modularity(&g)).unwrap();

        fn search(v: usize, labels: &mut Vec<usize>, used: usize, g: &Graph, best: &mut f64) {
            if v == labels.len() {
                let q = modularity(g, &Partition::from_labels(labels)).unwrap();
                *best = best.max(q);
                return;
            }
            for l in 0..=used {
                labels[v] = l;
                search(v + 1, labels, used.max(l + 1), g, best);
            }
        }
        let mut best = f64::NEG_INFINITY;
        search(0, &mut vec![0; 8], 0, &g, &mut best);
        assert!(found >= best - 1e-9, "greedy {found}, optimum {best}");
    }

    #[test]
    fn edgeless_gives_singletons() {
        assert_eq!(greedy_modularity(&Graph::empty(3)).count(), 3);
    }
}
