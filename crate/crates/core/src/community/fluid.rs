use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::rng::SplitMix64;

use super::Partition;

const MAX_SWEEPS: usize = 1_000;
/// Densities within this distance of the maximum count as tied.
const DENSITY_TOLERANCE: f64 = 1e-4;

/// Splits `k` across components: one each, then one at a time to the
/// component with the largest `size / (share + 1)`, never exceeding its size.
fn apportion(sizes: &[usize], k: usize) -> Vec<usize> {
    let mut share = vec![1; sizes.len()];
    for _ in sizes.len()..k {
        let pick = (0..sizes.len())
            .filter(|&c| share[c] < sizes[c])
            .max_by(|&a, &b| {
                let qa = sizes[a] as f64 / (share[a] + 1) as f64;
                let qb = sizes[b] as f64 / (share[b] + 1) as f64;
                qa.partial_cmp(&qb).unwrap().then(b.cmp(&a))
            })
            .expect("k <= n leaves room");
        share[pick] += 1;
    }
    share
}

/// Runs fluid propagation on one connected node set. Returns a label in
/// `0..k` per entry of `nodes`.
fn fluid_connected(g: &Graph, nodes: &[usize], k: usize, rng: &mut SplitMix64) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let size = nodes.len();
    let mut local = vec![NONE; g.node_count()];
    for (i, &v) in nodes.iter().enumerate() {
        local[v] = i;
    }
    let mut order: Vec<usize> = (0..size).collect();
    rng.shuffle(&mut order);
    let mut community = vec![NONE; size];
    let mut count = vec![1usize; k];
    for (c, &i) in order[..k].iter().enumerate() {
        community[i] = c;
    }
    let mut score = vec![0.0f64; k];
    let mut touched: Vec<usize> = Vec::new();
    let mut best: Vec<usize> = Vec::new();
    for _ in 0..MAX_SWEEPS {
        rng.shuffle(&mut order);
        let mut changed = false;
        for &i in &order {
            let v = nodes[i];
            touched.clear();
            let own = community[i];
            let neighborhood = std::iter::once(i).chain(g.neighbors(v).iter().map(|&u| local[u]));
            for j in neighborhood {
                let c = community[j];
                if c == NONE {
                    continue;
                }
                if score[c] == 0.0 {
                    touched.push(c);
                }
                score[c] += 1.0 / count[c] as f64;
            }
            let top = touched.iter().map(|&c| score[c]).fold(0.0, f64::max);
            best.clear();
            best.extend(
                touched
                    .iter()
                    .copied()
                    .filter(|&c| top - score[c] < DENSITY_TOLERANCE),
            );
            best.sort_unstable();
            for &c in &touched {
                score[c] = 0.0;
            }
            if best.is_empty() || (own != NONE && best.contains(&own)) {
                continue;
            }
            // The last member keeps a fluid alive.
            if own != NONE && count[own] == 1 {
                continue;
            }
            let pick = best[rng.below(best.len() as u64) as usize];
            if own != NONE {
                count[own] -= 1;
            }
            count[pick] += 1;
            community[i] = pick;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    community
}

/// Fluid communities with exactly `k` communities.
///
/// `k` fluids start on seeded nodes with density `1 / |c|`. Sweeps in seeded
/// order move each node to a community of maximal summed density over its
/// closed neighborhood, unless its current community already attains that
/// maximum; draws break ties. A community's last member never leaves.
/// Disconnected graphs are handled per component with `k` apportioned by
/// size, so `k` must be at least the number of components.
pub fn fluid_communities(g: &Graph, k: usize, seed: u64) -> Result<Partition> {
    let n = g.node_count();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!(
            "fluid communities need 1 <= k <= {n}, got {k}"
        )));
    }
    let comps = connected_components(g);
    if k < comps.count() {
        return Err(Error::InvalidArgument(format!(
            "k = {k} is below the {} connected components",
            comps.count()
        )));
    }
    let shares = apportion(&comps.sizes(), k);
    let mut rng = SplitMix64::new(seed);
    let mut labels = vec![0; n];
    let mut offset = 0;
    for (members, &share) in comps.members().iter().zip(&shares) {
        let local = fluid_connected(g, members, share, &mut rng);
        for (&v, &c) in members.iter().zip(&local) {
            labels[v] = offset + c;
        }
        offset += share;
    }
    Ok(Partition::from_labels(&labels))
}
