//! Turning an elevated Laplacian into new edges.
//!
//! The diagonal surplus `diag(L' - L)` is truncated to whole degrees, then
//! realized greedily: nodes with a nonzero surplus are listed by descending
//! surplus (ties by ascending id), and each node in turn is joined to every
//! later node that still has quota, skipping pairs that are already adjacent,
//! until its own quota runs out.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    canonical, connected_components, laplacian, ComponentLabeling, Edge, Graph, SymmetricMatrix,
};
use crate::spectral::{
    basis_from_components, eigendecompose, elevate, kernel_basis, kernel_basis_from_spectrum,
    BasisMode, EigenSystem, ElevationBasis, ElevationPlan, KernelBasis,
};

/// Per-node degree surplus, before and after truncation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeDelta {
    /// `L'(i,i) - L(i,i)`.
    pub raw: Vec<f64>,
    /// `max(floor(raw_i), 0)`.
    pub delta: Vec<u32>,
}

impl DegreeDelta {
    pub fn from_raw(raw: Vec<f64>) -> Self {
        let delta = raw
            .iter()
            .map(|&r| if r >= 1.0 { r.floor() as u32 } else { 0 })
            .collect();
        Self { raw, delta }
    }

    pub fn total(&self) -> u64 {
        self.delta.iter().map(|&d| d as u64).sum()
    }

    pub fn max(&self) -> u32 {
        self.delta.iter().copied().max().unwrap_or(0)
    }

    /// Size of the augmenting node set `|N^Δ|`: nodes with a nonzero surplus.
    pub fn support(&self) -> usize {
        self.delta.iter().filter(|&&d| d > 0).count()
    }

    /// Whether the largest surplus can be placed: `|N^Δ| >= Δd_max`.
    pub fn max_is_realizable(&self) -> bool {
        self.support() >= self.max() as usize
    }
}

/// Reads the degree surplus off the diagonals of `L` and `L'`.
pub fn degree_delta(l: &SymmetricMatrix, lp: &SymmetricMatrix) -> DegreeDelta {
    assert_eq!(l.order(), lp.order(), "matrices must have the same order");
    let raw = (0..l.order()).map(|i| lp.get(i, i) - l.get(i, i)).collect();
    DegreeDelta::from_raw(raw)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiFlag {
    Ok,
    /// The unclamped ratio exceeded 1 and was clamped.
    Clamped,
    /// `h * w_h = 0`; the ratio is undefined and reported as 1.
    NoOpPlan,
}

/// Edge realization ratio.
///
/// `value` is `Σ Δd† / (h w_h)` with `Σ Δd†` summed over nodes, which is
/// `2 |new edges| / (h w_h)`. `node_sum` doubles it once more (the other
/// reading of the leading factor 2) and is kept for comparison only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Phi {
    pub value: f64,
    pub unclamped: f64,
    pub node_sum: f64,
    pub flag: PhiFlag,
}

/// Outcome of one augmentation.
#[derive(Clone, Debug, Serialize)]
pub struct AugmentationResult {
    pub new_edges: Vec<Edge>,
    #[serde(skip)]
    pub delta: DegreeDelta,
    #[serde(skip)]
    pub realized_delta: Vec<u32>,
    pub phi: Option<Phi>,
    /// `1 + |new edges| / |E|`; `None` when the input has no edges.
    pub theta_realized: Option<f64>,
    /// `1 + Σ Δd† / |E|` with the sum over nodes.
    pub theta_node_sum: Option<f64>,
    pub m_before: usize,
    pub m_dagger: usize,
    /// Number of eigenvalues actually elevated.
    pub h_effective: usize,
}

impl AugmentationResult {
    pub fn realized_total(&self) -> u64 {
        self.realized_delta.iter().map(|&d| d as u64).sum()
    }
}

/// The greedy pass on its own. Nodes with positive quota are visited by
/// descending quota, ties by ascending id; each links to every later node
/// that still has quota and is not adjacent, until its own quota runs out.
///
/// The graph is seen only through `adjacent(i, j)`, which is asked at most
/// once per pair. Returns the new edges in creation order.
pub fn realize_with(delta: &[u32], mut adjacent: impl FnMut(usize, usize) -> bool) -> Vec<Edge> {
    let mut order: Vec<usize> = (0..delta.len()).filter(|&i| delta[i] > 0).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(delta[i]), i));

    let mut quota = delta.to_vec();
    let mut new_edges = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if quota[i] == 0 {
                break;
            }
            // Each pair is visited once, so only existing edges can clash.
            if quota[j] > 0 && !adjacent(i, j) {
                new_edges.push(canonical(i, j));
                quota[i] -= 1;
                quota[j] -= 1;
            }
        }
    }
    new_edges
}

/// Greedy degree realization. Unplaceable quota is left unfilled.
pub fn realize_edges(g: &Graph, dd: &DegreeDelta) -> AugmentationResult {
    let n = g.node_count();
    assert_eq!(dd.delta.len(), n, "degree delta must cover every node");
    let mut new_edges = realize_with(&dd.delta, |i, j| g.has_edge(i, j));
    let mut realized_delta = vec![0u32; n];
    for &(u, v) in &new_edges {
        realized_delta[u] += 1;
        realized_delta[v] += 1;
    }
    new_edges.sort_unstable();

    let m_before = connected_components(g).count();
    let augmented = g
        .with_edges(&new_edges)
        .expect("new edges join existing nodes without self-loops");
    let m_dagger = connected_components(&augmented).count();
    let e = g.edge_count() as f64;
    let realized_sum: u64 = realized_delta.iter().map(|&d| d as u64).sum();
    let (theta_realized, theta_node_sum) = if g.edge_count() == 0 {
        (None, None)
    } else {
        (
            Some(1.0 + new_edges.len() as f64 / e),
            Some(1.0 + realized_sum as f64 / e),
        )
    };
    AugmentationResult {
        new_edges,
        delta: dd.clone(),
        realized_delta,
        phi: None,
        theta_realized,
        theta_node_sum,
        m_before,
        m_dagger,
        h_effective: 0,
    }
}

/// `φ` for a realized result under `plan`; see [`Phi`].
pub fn realization_ratio(r: &AugmentationResult, plan: &ElevationPlan) -> Phi {
    ratio_for_mass(r.realized_total(), plan.mass())
}

fn ratio_for_mass(realized_sum: u64, mass: f64) -> Phi {
    if mass <= 0.0 {
        return Phi {
            value: 1.0,
            unclamped: 1.0,
            node_sum: 1.0,
            flag: PhiFlag::NoOpPlan,
        };
    }
    let unclamped = realized_sum as f64 / mass;
    let (value, flag) = if unclamped > 1.0 {
        (1.0, PhiFlag::Clamped)
    } else {
        (unclamped, PhiFlag::Ok)
    };
    Phi {
        value,
        unclamped,
        node_sum: 2.0 * unclamped,
        flag,
    }
}

/// What to do when `h` exceeds the number of zero eigenvalues less one.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BeyondKernel {
    /// Validation error.
    #[default]
    Reject,
    /// Elevate all `M - 1` available zero eigenvalues instead.
    Clamp,
    /// Continue with the eigenvectors of the smallest nonzero eigenvalues.
    Extend,
}

impl fmt::Display for BeyondKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BeyondKernel::Reject => "reject",
            BeyondKernel::Clamp => "clamp",
            BeyondKernel::Extend => "extend",
        })
    }
}

impl FromStr for BeyondKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reject" => Ok(Self::Reject),
            "clamp" => Ok(Self::Clamp),
            "extend" => Ok(Self::Extend),
            other => Err(Error::InvalidArgument(format!(
                "unknown beyond-kernel policy {other:?} (expected reject, clamp or extend)"
            ))),
        }
    }
}

/// Full pipeline: Laplacian, kernel basis, elevation, degree surplus, greedy
/// realization.
pub fn augment(g: &Graph, plan: &ElevationPlan) -> Result<AugmentationResult> {
    let l = laplacian(g);
    let basis = kernel_basis(g, plan.basis, plan.seed)?;
    let lp = elevate(&l, &basis, plan)?;
    let dd = degree_delta(&l, &lp);
    let mut r = realize_edges(g, &dd);
    r.phi = Some(realization_ratio(&r, plan));
    r.h_effective = plan.h;
    Ok(r)
}

/// Like [`augment`], with a policy for `h >= M`.
pub fn augment_with(
    g: &Graph,
    plan: &ElevationPlan,
    beyond: BeyondKernel,
) -> Result<AugmentationResult> {
    Augmenter::new(g, plan.basis, plan.seed, beyond)?.run(plan.h, plan.w)
}

/// A graph prepared for repeated augmentation at different `(h, w_h)`.
///
/// The basis is built once. Only the diagonal of `L'` is needed to place
/// edges, so each run costs `O(n h)` plus the greedy pass instead of forming
/// `L'` in full.
pub struct Augmenter<'g> {
    graph: &'g Graph,
    labeling: ComponentLabeling,
    mode: BasisMode,
    seed: u64,
    beyond: BeyondKernel,
    kernel: KernelBasis,
    spectrum: OnceLock<std::result::Result<EigenSystem, String>>,
    extended: OnceLock<ElevationBasis>,
}

impl<'g> Augmenter<'g> {
    pub fn new(graph: &'g Graph, mode: BasisMode, seed: u64, beyond: BeyondKernel) -> Result<Self> {
        let labeling = connected_components(graph);
        let spectrum = OnceLock::new();
        let kernel = match mode {
            BasisMode::Solver => {
                let es = eigendecompose(&laplacian(graph))?;
                let kb = kernel_basis_from_spectrum(&es, labeling.count());
                let _ = spectrum.set(Ok(es));
                kb
            }
            _ => basis_from_components(&labeling, mode, seed)?,
        };
        Ok(Self {
            graph,
            labeling,
            mode,
            seed,
            beyond,
            kernel,
            spectrum,
            extended: OnceLock::new(),
        })
    }

    /// Number of components `M` of the input.
    pub fn components(&self) -> usize {
        self.labeling.count()
    }

    pub fn labeling(&self) -> &ComponentLabeling {
        &self.labeling
    }

    pub fn kernel(&self) -> &KernelBasis {
        &self.kernel
    }

    pub fn plan(&self, h: usize, w: f64) -> ElevationPlan {
        ElevationPlan::new(h, w, self.mode, self.seed)
    }

    fn spectrum(&self) -> Result<&EigenSystem> {
        self.spectrum
            .get_or_init(|| eigendecompose(&laplacian(self.graph)).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|msg| Error::InvalidArgument(msg.clone()))
    }

    fn extended(&self) -> Result<&ElevationBasis> {
        if let Some(b) = self.extended.get() {
            return Ok(b);
        }
        let es = self.spectrum()?;
        Ok(self
            .extended
            .get_or_init(|| ElevationBasis::extended(self.kernel.clone(), es)))
    }

    /// Resolves the requested `h` under the beyond-kernel policy.
    pub fn effective_h(&self, h: usize) -> Result<usize> {
        let m = self.components();
        if h == 0 || h < m {
            return Ok(h);
        }
        match self.beyond {
            BeyondKernel::Reject => Err(Error::TooManyElevated { h, m }),
            BeyondKernel::Clamp => Ok(m.saturating_sub(1)),
            BeyondKernel::Extend => {
                let max = self.graph.node_count().saturating_sub(1);
                if h > max {
                    Err(Error::TooManyElevated { h, m: max + 1 })
                } else {
                    Ok(h)
                }
            }
        }
    }

    /// Raw diagonal surplus `w Σ_{q=2}^{h+1} v_q(i)²`.
    pub fn surplus(&self, h: usize, w: f64) -> Result<DegreeDelta> {
        self.plan(h, w).check_amplitude()?;
        let h_eff = self.effective_h(h)?;
        let n = self.graph.node_count();
        let mut raw = vec![0.0; n];
        let mut accumulate = |vectors: &[Vec<f64>]| {
            for v in vectors {
                for (r, x) in raw.iter_mut().zip(v) {
                    *r += w * x * x;
                }
            }
        };
        if h_eff < self.kernel.len() {
            accumulate(&self.kernel.vectors()[1..=h_eff]);
        } else {
            accumulate(self.extended()?.elevated(h_eff));
        }
        Ok(DegreeDelta::from_raw(raw))
    }

    pub fn run(&self, h: usize, w: f64) -> Result<AugmentationResult> {
        let h_eff = self.effective_h(h)?;
        let dd = self.surplus(h, w)?;
        let mut r = realize_edges(self.graph, &dd);
        r.phi = Some(ratio_for_mass(r.realized_total(), h_eff as f64 * w));
        r.h_effective = h_eff;
        Ok(r)
    }
}
