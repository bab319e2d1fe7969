//! Laplacian spectrum, null-space bases and eigenvalue elevation.
//!
//! Elevating `h` zero eigenvalues of `L` to a common amplitude `w` gives
//!
//! ```text
//! L' = L + w * (v_2 v_2ᵀ + ... + v_{h+1} v_{h+1}ᵀ)
//! ```
//!
//! where `v_1 .. v_M` is an orthonormal basis of the null space of `L`. The
//! first basis vector is always left at zero. Which basis is used matters:
//! see [`BasisMode`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{connected_components, laplacian, ComponentLabeling, Graph, SymmetricMatrix};
use crate::rng::SplitMix64;

/// Sweep cap for the cyclic Jacobi solver.
pub const MAX_SWEEPS: usize = 100;
/// Convergence threshold on the off-diagonal Frobenius norm, relative to `‖L‖_F`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Full eigendecomposition `L = U Λ Uᵀ` with eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    values: Vec<f64>,
    // Column k of U, stored contiguously at [k*n, (k+1)*n).
    vectors: Vec<f64>,
    sweeps: usize,
}

impl EigenSystem {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, k: usize) -> &[f64] {
        let n = self.len();
        &self.vectors[k * n..(k + 1) * n]
    }

    pub fn largest(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Number of Jacobi sweeps the solver needed.
    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Default tolerance for counting zero eigenvalues: `1e-8 (1 + λ_N)`.
    pub fn zero_tolerance(&self) -> f64 {
        1e-8 * (1.0 + self.largest())
    }

    /// Number of eigenvalues with `|λ| <= tol`. With `None` the default
    /// [`zero_tolerance`](Self::zero_tolerance) is used.
    pub fn zero_multiplicity(&self, tol: Option<f64>) -> usize {
        let tol = tol.unwrap_or_else(|| self.zero_tolerance());
        self.values.iter().filter(|l| l.abs() <= tol).count()
    }

    /// `U diag(λ) Uᵀ`.
    pub fn reconstruct(&self) -> SymmetricMatrix {
        let n = self.len();
        let mut m = SymmetricMatrix::zeros(n);
        for k in 0..n {
            m.add_rank_one(self.values[k], self.vector(k));
        }
        m
    }

    /// `max |UᵀU - I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in a..n {
                let dot = dot(self.vector(a), self.vector(b));
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// `max |U Λ Uᵀ - L|`.
    pub fn reconstruction_residual(&self, l: &SymmetricMatrix) -> f64 {
        self.reconstruct().max_abs_diff(l)
    }

    /// Spectrum as CSV with columns `index,eigenvalue`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,eigenvalue\n");
        for (k, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{k},{v:.12e}\n"));
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Rotations sweep the strict upper triangle row by row. Iteration stops once
/// the off-diagonal Frobenius norm drops to `1e-12 ‖L‖_F`; failure to reach it
/// within [`MAX_SWEEPS`] is reported with the residual norm. Eigenpairs come
/// back in ascending order; eigenvalues equal to within `1e-9 max(1, |λ|max)`
/// are ordered by the sign of their vector's first nonzero entry (positive
/// first) and then by column index.
pub fn eigendecompose(l: &SymmetricMatrix) -> Result<EigenSystem> {
    let n = l.order();
    let mut a = l.data().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = OFF_DIAGONAL_TOLERANCE * l.frobenius_norm();

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += a[p * n + q] * a[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    let mut off = off_norm(&a);
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    a[k * n + p] = new_p;
                    a[p * n + k] = new_p;
                    a[k * n + q] = new_q;
                    a[q * n + k] = new_q;
                }
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
        sweeps += 1;
        off = off_norm(&a);
    }

    let raw_values: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let column = |k: usize| -> Vec<f64> { (0..n).map(|r| v[r * n + k]).collect() };
    let sign_key = |k: usize| -> u8 {
        let first = (0..n).map(|r| v[r * n + k]).find(|x| x.abs() > 1e-12);
        match first {
            Some(x) if x < 0.0 => 1,
            _ => 0,
        }
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| raw_values[x].total_cmp(&raw_values[y]).then(x.cmp(&y)));
    let scale = raw_values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let tie_tol = 1e-9 * scale;
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && raw_values[order[end]] - raw_values[order[end - 1]] <= tie_tol {
            end += 1;
        }
        order[start..end].sort_by_key(|&k| (sign_key(k), k));
        start = end;
    }

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        values.push(raw_values[k]);
        vectors.extend(column(k));
    }
    Ok(EigenSystem {
        values,
        vectors,
        sweeps,
    })
}

/// How the orthonormal null-space basis is built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisMode {
    /// Normalized component indicators. Position 1 (never elevated) is the
    /// largest component; the rest follow in ascending component order.
    Indicator,
    /// Indicators rotated by a seeded random orthogonal matrix whose first
    /// column is the normalized constant vector, so position 1 is the
    /// constant direction and every other vector spreads over all components.
    Mixed,
    /// The eigensolver's own near-null eigenvectors, re-orthonormalized.
    Solver,
}

impl fmt::Display for BasisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisMode::Indicator => "indicator",
            BasisMode::Mixed => "mixed",
            BasisMode::Solver => "solver",
        })
    }
}

impl FromStr for BasisMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "indicator" => Ok(BasisMode::Indicator),
            "mixed" => Ok(BasisMode::Mixed),
            "solver" => Ok(BasisMode::Solver),
            other => Err(Error::InvalidArgument(format!(
                "unknown basis mode {other:?} (expected indicator, mixed or solver)"
            ))),
        }
    }
}

/// Orthonormal basis of the Laplacian null space, one vector per component.
#[derive(Clone, Debug)]
pub struct KernelBasis {
    vectors: Vec<Vec<f64>>,
    mode: BasisMode,
}

impl KernelBasis {
    pub fn mode(&self) -> BasisMode {
        self.mode
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// `max |VᵀV - I|` over the basis.
    pub fn gram_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, va) in self.vectors.iter().enumerate() {
            for (b, vb) in self.vectors.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot(va, vb) - target).abs());
            }
        }
        worst
    }
}

/// Builds the null-space basis of `laplacian(g)` in the given mode. `seed`
/// only affects [`BasisMode::Mixed`].
pub fn kernel_basis(g: &Graph, mode: BasisMode, seed: u64) -> Result<KernelBasis> {
    let labeling = connected_components(g);
    match mode {
        BasisMode::Solver => {
            let es = eigendecompose(&laplacian(g))?;
            Ok(kernel_basis_from_spectrum(&es, labeling.count()))
        }
        _ => basis_from_components(&labeling, mode, seed),
    }
}

/// Indicator or mixed basis straight from a component labeling, without an
/// eigendecomposition. Solver mode needs a spectrum; see [`kernel_basis_from_spectrum`].
pub fn basis_from_components(
    labeling: &ComponentLabeling,
    mode: BasisMode,
    seed: u64,
) -> Result<KernelBasis> {
    let members = labeling.members();
    let m = members.len();
    let n = labeling.labels().len();
    let indicator = |comp: usize| -> Vec<f64> {
        let mut v = vec![0.0; n];
        let value = 1.0 / (members[comp].len() as f64).sqrt();
        for &node in &members[comp] {
            v[node] = value;
        }
        v
    };
    let vectors = match mode {
        BasisMode::Solver => {
            return Err(Error::InvalidArgument(
                "solver basis is built from an eigendecomposition".into(),
            ))
        }
        BasisMode::Indicator => {
            if m == 0 {
                Vec::new()
            } else {
                let mut vs = vec![indicator(m - 1)];
                vs.extend((0..m - 1).map(indicator));
                vs
            }
        }
        BasisMode::Mixed => {
            let rotation = rotation_fixing_constant(labeling, seed);
            (0..m)
                .map(|k| {
                    let mut v = vec![0.0; n];
                    for (comp, nodes) in members.iter().enumerate() {
                        let value = rotation[comp][k] / (nodes.len() as f64).sqrt();
                        for &node in nodes {
                            v[node] = value;
                        }
                    }
                    v
                })
                .collect()
        }
    };
    Ok(KernelBasis { vectors, mode })
}

/// Random `M x M` orthogonal matrix (row = component, column = basis
/// position) whose first column is `sqrt(|C_q| / n)`, i.e. the constant
/// vector expressed in indicator coordinates.
fn rotation_fixing_constant(labeling: &ComponentLabeling, seed: u64) -> Vec<Vec<f64>> {
    let sizes = labeling.sizes();
    let m = sizes.len();
    let n: usize = sizes.iter().sum();
    let mut rng = SplitMix64::new(seed);
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(m);
    if m > 0 {
        columns.push(
            sizes
                .iter()
                .map(|&s| (s as f64 / n as f64).sqrt())
                .collect(),
        );
    }
    while columns.len() < m {
        let mut col: Vec<f64> = (0..m).map(|_| rng.next_gaussian()).collect();
        for _ in 0..2 {
            for prev in &columns {
                let proj = dot(&col, prev);
                for (c, p) in col.iter_mut().zip(prev) {
                    *c -= proj * p;
                }
            }
        }
        let norm = dot(&col, &col).sqrt();
        if norm < 1e-8 {
            continue;
        }
        col.iter_mut().for_each(|c| *c /= norm);
        columns.push(col);
    }
    (0..m)
        .map(|row| columns.iter().map(|col| col[row]).collect())
        .collect()
}

/// The first `m` eigenvectors of `es`, re-orthonormalized by two passes of
/// modified Gram-Schmidt.
pub fn kernel_basis_from_spectrum(es: &EigenSystem, m: usize) -> KernelBasis {
    let mut vectors: Vec<Vec<f64>> = Vec::with_capacity(m);
    for k in 0..m {
        let mut v = es.vector(k).to_vec();
        for _ in 0..2 {
            for prev in &vectors {
                let proj = dot(&v, prev);
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= proj * p;
                }
            }
        }
        let norm = dot(&v, &v).sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        vectors.push(v);
    }
    KernelBasis {
        vectors,
        mode: BasisMode::Solver,
    }
}

/// The augmentation control knobs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElevationPlan {
    /// Number of elevated eigenvalues.
    pub h: usize,
    /// Common elevation amplitude `w_h`.
    pub w: f64,
    pub basis: BasisMode,
    pub seed: u64,
}

impl ElevationPlan {
    pub fn new(h: usize, w: f64, basis: BasisMode, seed: u64) -> Self {
        Self { h, w, basis, seed }
    }

    /// Total elevated mass `h * w_h`.
    pub fn mass(&self) -> f64 {
        self.h as f64 * self.w
    }

    pub(crate) fn check_amplitude(&self) -> Result<()> {
        if !(self.w.is_finite() && self.w >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "elevation amplitude must be finite and non-negative, got {}",
                self.w
            )));
        }
        Ok(())
    }
}

/// `L' = L + w Σ_{q=2}^{h+1} v_q v_qᵀ` over the kernel basis.
pub fn elevate(
    l: &SymmetricMatrix,
    basis: &KernelBasis,
    plan: &ElevationPlan,
) -> Result<SymmetricMatrix> {
    plan.check_amplitude()?;
    if plan.h > 0 && plan.h >= basis.len() {
        return Err(Error::TooManyElevated {
            h: plan.h,
            m: basis.len(),
        });
    }
    let mut lp = l.clone();
    for v in basis.vectors.iter().skip(1).take(plan.h) {
        lp.add_rank_one(plan.w, v);
    }
    Ok(lp)
}

/// Ordered vectors eligible for elevation: the kernel basis, optionally
/// followed by the eigenvectors of the nonzero eigenvalues in ascending
/// order. The extension lets `h` run past `M - 1`, in which case nonzero
/// eigenvalues are raised by `w_h` as well.
#[derive(Clone, Debug)]
pub struct ElevationBasis {
    vectors: Vec<Vec<f64>>,
    kernel_dim: usize,
}

impl ElevationBasis {
    pub fn kernel_only(kernel: KernelBasis) -> Self {
        let kernel_dim = kernel.len();
        Self {
            vectors: kernel.vectors,
            kernel_dim,
        }
    }

    /// Appends eigenvectors `M+1 ..= N` of `es` after the kernel basis.
    pub fn extended(kernel: KernelBasis, es: &EigenSystem) -> Self {
        let kernel_dim = kernel.len();
        let mut vectors = kernel.vectors;
        vectors.extend((kernel_dim..es.len()).map(|k| es.vector(k).to_vec()));
        Self {
            vectors,
            kernel_dim,
        }
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    /// Largest admissible `h`.
    pub fn max_h(&self) -> usize {
        self.vectors.len().saturating_sub(1)
    }

    /// The `h` vectors that get elevated: positions 2 ..= h+1.
    pub fn elevated(&self, h: usize) -> &[Vec<f64>] {
        &self.vectors[1..=h]
    }

    pub(crate) fn check(&self, h: usize) -> Result<()> {
        if h > 0 && h > self.max_h() {
            return Err(Error::TooManyElevated {
                h,
                m: self.vectors.len(),
            });
        }
        Ok(())
    }
}

/// [`elevate`] over an [`ElevationBasis`], allowing `h` beyond `M - 1` when
/// the basis was extended.
pub fn elevate_with(
    l: &SymmetricMatrix,
    basis: &ElevationBasis,
    plan: &ElevationPlan,
) -> Result<SymmetricMatrix> {
    plan.check_amplitude()?;
    basis.check(plan.h)?;
    let mut lp = l.clone();
    for v in basis.elevated(plan.h) {
        lp.add_rank_one(plan.w, v);
    }
    Ok(lp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_plus_isolate() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn path_of_two() {
        let l = SymmetricMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let es = eigendecompose(&l).unwrap();
        assert!(es.values()[0].abs() < 1e-12);
        assert!((es.values()[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn triangle_spectrum() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let es = eigendecompose(&laplacian(&g)).unwrap();
        let expected = [0.0, 3.0, 3.0];
        for (got, want) in es.values().iter().zip(expected) {
            assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        assert!(es.orthonormality_residual() < 1e-10);
    }

    #[test]
    fn zero_matrix_converges_immediately() {
        let es = eigendecompose(&SymmetricMatrix::zeros(5)).unwrap();
        assert_eq!(es.sweeps(), 0);
        assert_eq!(es.zero_multiplicity(None), 5);
    }

    #[test]
    fn path_graph_has_one_zero() {
        let g = Graph::from_edges(6, (0..5).map(|i| (i, i + 1))).unwrap();
        let es = eigendecompose(&laplacian(&g)).unwrap();
        assert_eq!(es.zero_multiplicity(None), 1);
    }

    #[test]
    fn spectrum_csv_has_header() {
        let es = eigendecompose(&laplacian(&triangle_plus_isolate())).unwrap();
        let csv = es.to_csv();
        assert!(csv.starts_with("index,eigenvalue\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn indicator_basis_for_triangle_and_isolate() {
        let b = kernel_basis(&triangle_plus_isolate(), BasisMode::Indicator, 0).unwrap();
        let s = 1.0 / 3f64.sqrt();
        assert_eq!(b.vectors()[0], vec![s, s, s, 0.0]);
        assert_eq!(b.vectors()[1], vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn mixed_basis_spreads_over_components() {
        let g = Graph::from_edges(5, [(0, 1), (2, 3), (3, 4)]).unwrap();
        let b = kernel_basis(&g, BasisMode::Mixed, 1).unwrap();
        assert_eq!(b.len(), 2);
        for v in b.vectors() {
            let on_first = v[0].abs() + v[1].abs();
            let on_second = v[2].abs() + v[3].abs() + v[4].abs();
            assert!(on_first > 1e-6 && on_second > 1e-6);
        }
        // Position 1 is the constant direction.
        let c = 1.0 / 5f64.sqrt();
        for x in &b.vectors()[0] {
            assert!((x - c).abs() < 1e-12);
        }
    }

    #[test]
    fn mixed_basis_single_component_is_constant() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let b = kernel_basis(&g, BasisMode::Mixed, 7).unwrap();
        assert_eq!(b.len(), 1);
        let c = 1.0 / 3f64.sqrt();
        assert!(b.vectors()[0].iter().all(|x| (x - c).abs() < 1e-12));
    }

    #[test]
    fn every_mode_is_orthonormal_and_null() {
        let g = Graph::from_edges(9, [(0, 1), (1, 2), (3, 4), (5, 6), (6, 7)]).unwrap();
        let l = laplacian(&g);
        for mode in [BasisMode::Indicator, BasisMode::Mixed, BasisMode::Solver] {
            let b = kernel_basis(&g, mode, 3).unwrap();
            assert_eq!(b.len(), 4, "{mode}");
            assert!(b.gram_residual() < 1e-10, "{mode}");
            for v in b.vectors() {
                let r = l.mul_vec(v);
                assert!(r.iter().all(|x| x.abs() < 1e-8), "{mode}");
            }
        }
    }

    #[test]
    fn zero_h_is_identity() {
        let g = triangle_plus_isolate();
        let l = laplacian(&g);
        let b = kernel_basis(&g, BasisMode::Mixed, 2).unwrap();
        let lp = elevate(&l, &b, &ElevationPlan::new(0, 5.0, BasisMode::Mixed, 2)).unwrap();
        assert_eq!(lp, l);
    }

    #[test]
    fn elevating_isolate_vector() {
        let g = triangle_plus_isolate();
        let l = laplacian(&g);
        let b = kernel_basis(&g, BasisMode::Indicator, 0).unwrap();
        let lp = elevate(&l, &b, &ElevationPlan::new(1, 6.0, BasisMode::Indicator, 0)).unwrap();
        let gain: Vec<f64> = lp
            .diagonal()
            .iter()
            .zip(l.diagonal())
            .map(|(a, b)| a - b)
            .collect();
        assert_eq!(gain, vec![0.0, 0.0, 0.0, 6.0]);
    }

    #[test]
    fn too_many_elevated() {
        let g = triangle_plus_isolate();
        let l = laplacian(&g);
        let b = kernel_basis(&g, BasisMode::Indicator, 0).unwrap();
        let err = elevate(&l, &b, &ElevationPlan::new(2, 1.0, BasisMode::Indicator, 0));
        assert!(matches!(err, Err(Error::TooManyElevated { h: 2, m: 2 })));
    }

    #[test]
    fn negative_amplitude_rejected() {
        let g = triangle_plus_isolate();
        let b = kernel_basis(&g, BasisMode::Indicator, 0).unwrap();
        let plan = ElevationPlan::new(1, -1.0, BasisMode::Indicator, 0);
        assert!(elevate(&laplacian(&g), &b, &plan).is_err());
    }

    #[test]
    fn extended_basis_goes_past_kernel() {
        let g = triangle_plus_isolate();
        let l = laplacian(&g);
        let es = eigendecompose(&l).unwrap();
        let kb = kernel_basis(&g, BasisMode::Mixed, 4).unwrap();
        let eb = ElevationBasis::extended(kb, &es);
        assert_eq!(eb.kernel_dim(), 2);
        assert_eq!(eb.max_h(), 3);
        let plan = ElevationPlan::new(3, 2.0, BasisMode::Mixed, 4);
        let lp = elevate_with(&l, &eb, &plan).unwrap();
        assert!((lp.trace() - l.trace() - 6.0).abs() < 1e-12);
        let kernel_only =
            ElevationBasis::kernel_only(kernel_basis(&g, BasisMode::Mixed, 4).unwrap());
        assert!(elevate_with(&l, &kernel_only, &plan).is_err());
    }

    #[test]
    fn basis_mode_round_trips_through_str() {
        for mode in [BasisMode::Indicator, BasisMode::Mixed, BasisMode::Solver] {
            assert_eq!(mode.to_string().parse::<BasisMode>().unwrap(), mode);
        }
        assert!("bogus".parse::<BasisMode>().is_err());
    }
}
