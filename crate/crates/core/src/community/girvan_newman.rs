use crate::graph::{connected_components, Edge, Graph};

use super::Partition;

/// Relative tolerance when comparing betweenness scores.
const TIE_TOLERANCE: f64 = 1e-9;

struct Residual {
    edges: Vec<Edge>,
    alive: Vec<bool>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Residual {
    fn new(g: &Graph) -> Self {
        let mut adjacency = vec![Vec::new(); g.node_count()];
        for (id, &(u, v)) in g.edges().iter().enumerate() {
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Self {
            edges: g.edges().to_vec(),
            alive: vec![true; g.edge_count()],
            adjacency,
        }
    }

    fn remove(&mut self, id: usize) {
        self.alive[id] = false;
        let (u, v) = self.edges[id];
        self.adjacency[u].retain(|&(_, e)| e != id);
        self.adjacency[v].retain(|&(_, e)| e != id);
    }

    fn component_count(&self) -> usize {
        let n = self.adjacency.len();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..n {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &(v, _) in &self.adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }

    fn to_graph(&self, n: usize) -> Graph {
        let edges = self
            .edges
            .iter()
            .zip(&self.alive)
            .filter(|(_, &a)| a)
            .map(|(&e, _)| e)
            .collect();
        Graph::from_canonical(n, edges)
    }

    /// Brandes accumulation over all sources. Each undirected edge is counted
    /// from both ends, so scores are twice the usual convention.
    fn betweenness(&self) -> Vec<f64> {
        let n = self.adjacency.len();
        let mut score = vec![0.0; self.edges.len()];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![usize::MAX; n];
        let mut delta = vec![0.0f64; n];
        let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut queue = std::collections::VecDeque::new();
        for s in 0..n {
            for v in 0..n {
                sigma[v] = 0.0;
                dist[v] = usize::MAX;
                delta[v] = 0.0;
                preds[v].clear();
            }
            order.clear();
            sigma[s] = 1.0;
            dist[s] = 0;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &(v, id) in &self.adjacency[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                    if dist[v] == dist[u] + 1 {
                        sigma[v] += sigma[u];
                        preds[v].push((u, id));
                    }
                }
            }
            for &w in order.iter().rev() {
                for &(v, id) in &preds[w] {
                    let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                    score[id] += c;
                    delta[v] += c;
                }
            }
        }
        score
    }
}

/// Edge betweenness of every edge of `g`, aligned with `g.edges()`, in the
/// undirected convention (each unordered pair of endpoints counted once).
pub fn edge_betweenness(g: &Graph) -> Vec<f64> {
    Residual::new(g)
        .betweenness()
        .into_iter()
        .map(|b| b / 2.0)
        .collect()
}

/// Removes highest-betweenness edges, recomputing after every removal, until
/// the number of components first grows, and returns that split. Ties go to
/// the first edge in canonical order.
///
/// A graph that is already disconnected is returned split by component; an
/// edgeless graph gives singletons.
pub fn girvan_newman(g: &Graph) -> Partition {
    let n = g.node_count();
    let initial = connected_components(g);
    if initial.count() > 1 || g.edge_count() == 0 {
        return Partition::from_labels(initial.labels());
    }
    let mut residual = Residual::new(g);
    let start = residual.component_count();
    loop {
        let scores = residual.betweenness();
        let best = scores
            .iter()
            .zip(&residual.alive)
            .filter(|(_, &a)| a)
            .map(|(&s, _)| s)
            .fold(f64::NEG_INFINITY, f64::max);
        let Some(pick) = (0..scores.len()).find(|&id| {
            residual.alive[id] && scores[id] >= best - TIE_TOLERANCE * best.abs().max(1.0)
        }) else {
            break;
        };
        residual.remove(pick);
        if residual.component_count() > start {
            break;
        }
    }
    Partition::from_labels(connected_components(&residual.to_graph(n)).labels())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::community::testing::{cliques, karate};

    fn barbell() -> Graph {
        Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap()
    }

    /// Counts shortest paths through each edge by enumerating every pair's
    /// shortest paths explicitly.
    fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
        let n = g.node_count();
        let mut out = vec![0.0; g.edge_count()];
        for s in 0..n {
            for t in s + 1..n {
                let mut paths = Vec::new();
                let mut frontier = vec![vec![s]];
                while paths.is_empty() && !frontier.is_empty() {
                    let mut next = Vec::new();
                    for p in &frontier {
                        let last = *p.last().unwrap();
                        for &v in g.neighbors(last) {
                            if p.contains(&v) {
                                continue;
                            }
                            let mut q = p.clone();
                            q.push(v);
                            if v == t {
                                paths.push(q);
                            } else {
                                next.push(q);
                            }
                        }
                    }
                    frontier = next;
                }
                let total = paths.len() as f64;
                for p in &paths {
                    for w in p.windows(2) {
                        let e = crate::graph::canonical(w[0], w[1]);
                        let id = g.edges().binary_search(&e).unwrap();
                        out[id] += 1.0 / total;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn betweenness_matches_enumeration() {
        for g in [barbell(), karate()] {
            let fast = edge_betweenness(&g);
            let slow = brute_force_betweenness(&g);
            for (a, b) in fast.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-9, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn barbell_splits_at_bridge() {
        let p = girvan_newman(&barbell());
        assert_eq!(p.count(), 2);
        assert!(p.same(0, 2) && p.same(3, 5) && !p.same(2, 3));
    }

    #[test]
    fn karate_first_split_is_two() {
        let p = girvan_newman(&karate());
        assert_eq!(p.count(), 2);
        assert_eq!(p.sizes().iter().sum::<usize>(), 34);
    }

    #[test]
    fn already_split_input() {
        let p = girvan_newman(&cliques(2, 4));
        assert_eq!(p.count(), 2);
    }

    #[test]
    fn edgeless_gives_singletons() {
        assert_eq!(girvan_newman(&Graph::empty(4)), Partition::singletons(4));
    }
}
