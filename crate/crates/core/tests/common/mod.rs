#![allow(dead_code)]

use std::collections::HashSet;

/// Disjoint-set forest with path halving and union by size.
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.sets -= 1;
    }

    pub fn sets(&self) -> usize {
        self.sets
    }
}

pub fn count_components(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> usize {
    let mut uf = UnionFind::new(n);
    for (a, b) in edges {
        uf.union(a, b);
    }
    uf.sets()
}

/// Checks a proposed set of new edges against a degree budget and the
/// existing adjacency. Returns the first violated property.
pub fn check_realization(
    budget: &[u32],
    existing: impl Fn(usize, usize) -> bool,
    new_edges: &[(usize, usize)],
) -> Result<(), String> {
    let n = budget.len();
    let mut used = vec![0u32; n];
    let mut seen = HashSet::new();
    for &(a, b) in new_edges {
        if a >= n || b >= n {
            return Err(format!("edge ({a}, {b}) leaves the node range"));
        }
        if a == b {
            return Err(format!("self-loop on {a}"));
        }
        let key = (a.min(b), a.max(b));
        if !seen.insert(key) {
            return Err(format!("edge {key:?} proposed twice"));
        }
        if existing(key.0, key.1) {
            return Err(format!("edge {key:?} already exists"));
        }
        used[a] += 1;
        used[b] += 1;
    }
    if let Some(i) = (0..n).find(|&i| used[i] > budget[i]) {
        return Err(format!("node {i} gains {} > budget {}", used[i], budget[i]));
    }
    let total: u32 = used.iter().sum();
    if total % 2 != 0 {
        return Err(format!("realized degree sum {total} is odd"));
    }
    Ok(())
}
