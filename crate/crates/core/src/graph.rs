//! Undirected simple graphs, connected components and the graph Laplacian.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// An undirected edge stored as `(low, high)`.
pub type Edge = (usize, usize);

/// Returns the pair in canonical `(low, high)` order.
#[inline]
pub fn canonical(a: usize, b: usize) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Undirected simple graph on nodes `0..n`.
///
/// Edges are kept sorted and deduplicated in canonical order; adjacency lists
/// are sorted so membership tests are a binary search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph from arbitrary pairs. Reversed and repeated pairs
    /// collapse to one edge; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(Error::Validation(format!("self-loop on node {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Validation(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            edges.push(canonical(a, b));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self::from_canonical(n, edges))
    }

    /// `edges` must already be canonical, sorted and unique.
    pub(crate) fn from_canonical(n: usize, edges: Vec<Edge>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            n,
            edges,
            adjacency,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_canonical(n, Vec::new())
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Average degree `2|E| / |N|`.
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    /// Returns a graph with `extra` added. Pairs already present are ignored.
    pub fn with_edges(&self, extra: &[Edge]) -> Result<Self> {
        Self::from_edges(self.n, self.edges.iter().chain(extra).copied())
    }

    /// Keeps only the edges for which `keep` returns true.
    pub fn filter_edges(&self, mut keep: impl FnMut(Edge) -> bool) -> Self {
        let edges = self.edges.iter().copied().filter(|&e| keep(e)).collect();
        Self::from_canonical(self.n, edges)
    }
}

/// Connected components, ordered by ascending size with ties broken by the
/// smallest node id each component contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl ComponentLabeling {
    /// Number of components `M`.
    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> usize {
        self.labels[node]
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.members.iter().map(Vec::len).collect()
    }

    /// Sorted member lists, indexed by component id.
    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    /// Builds the canonical ordering from any grouping of nodes.
    pub(crate) fn from_groups(n: usize, mut groups: Vec<Vec<usize>>) -> Self {
        for g in &mut groups {
            g.sort_unstable();
        }
        groups.sort_by_key(|g| (g.len(), g[0]));
        let mut labels = vec![0; n];
        for (id, g) in groups.iter().enumerate() {
            for &v in g {
                labels[v] = id;
            }
        }
        Self {
            labels,
            members: groups,
        }
    }
}

/// Connected components by breadth-first traversal.
pub fn connected_components(g: &Graph) -> ComponentLabeling {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut groups = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        let mut group = Vec::new();
        while let Some(u) = queue.pop_front() {
            group.push(u);
            for &v in g.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        groups.push(group);
    }
    ComponentLabeling::from_groups(n, groups)
}

/// Dense symmetric matrix, stored in full and mirrored on every write.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(order: usize) -> Self {
        Self {
            order,
            data: vec![0.0; order * order],
        }
    }

    /// Builds from a row-major square array, rejecting asymmetric input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        let mut m = Self::zeros(order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (j, &x) in row.iter().enumerate() {
                if rows[j][i] != x {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i}, {j}) differs from ({j}, {i})"
                    )));
                }
                m.data[i * order + j] = x;
            }
        }
        Ok(m)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.order + j] = value;
        self.data[j * self.order + i] = value;
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.order).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `self += weight * v vᵀ`, computed on the upper triangle and mirrored so
    /// symmetry stays exact.
    pub fn add_rank_one(&mut self, weight: f64, v: &[f64]) {
        assert_eq!(v.len(), self.order, "vector length must match order");
        for i in 0..self.order {
            let wi = weight * v[i];
            if wi == 0.0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate().skip(i) {
                let x = self.get(i, j) + wi * vj;
                self.set(i, j, x);
            }
        }
    }

    /// `y = self · x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.order)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.order, other.order);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Graph Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> SymmetricMatrix {
    let mut l = SymmetricMatrix::zeros(g.node_count());
    for v in 0..g.node_count() {
        l.set(v, v, g.degree(v) as f64);
    }
    for &(u, v) in g.edges() {
        l.set(u, v, -1.0);
    }
    l
}
