//! Closed-form limits on the elevation amplitude and the augmented edge
//! density.
//!
//! All bounds are inclusive. Notation: `n = |N|`, `e = |E|`, `m = M`
//! components, `h` elevated eigenvalues, `k_ave = 2e / n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};

/// Projected edge density `θ = 1 + h w_h / (2e)`.
pub fn theta_projected(h: usize, w: f64, e: usize) -> Result<f64> {
    if e == 0 {
        return Err(Error::UndefinedDensity);
    }
    Ok(1.0 + h as f64 * w / (2.0 * e as f64))
}

/// Complete-graph ceilings for one `h`: `(ŵ_h^max, θ̂_h^max)`.
///
/// The densest outcome for a given `h` is a clique on `n - (m - 1 - h)` nodes
/// plus `m - 1 - h` isolates.
pub fn complete_graph_bounds(n: usize, e: usize, m: usize, h: usize) -> Result<(f64, f64)> {
    if e == 0 {
        return Err(Error::UndefinedDensity);
    }
    if h == 0 || h + 1 > m {
        return Err(Error::InvalidArgument(format!(
            "h must lie in [1, M-1] = [1, {}], got {h}",
            m.saturating_sub(1)
        )));
    }
    let (n, e, m, h) = (n as f64, e as f64, m as f64, h as f64);
    let clique = n - (m - 1.0 - h);
    let theta = clique * (clique - 1.0) / (2.0 * e);
    let w = ((n - m + 1.0 + h) * (n - m + h) - 2.0 * e) / h;
    Ok((w, theta))
}

/// `θ̂^max = n (n - 1) / (2e)`: the complete graph on all nodes.
pub fn complete_graph_theta_max(n: usize, e: usize) -> Result<f64> {
    if e == 0 {
        return Err(Error::UndefinedDensity);
    }
    Ok(n as f64 * (n as f64 - 1.0) / (2.0 * e as f64))
}

/// `ŵ^max = [n (n - 1) - 2e] / (m - 1)`, the `h = m - 1` ceiling. `None` when
/// the graph is connected.
pub fn complete_graph_w_max(n: usize, e: usize, m: usize) -> Option<f64> {
    (m >= 2).then(|| (n as f64 * (n as f64 - 1.0) - 2.0 * e as f64) / (m as f64 - 1.0))
}

/// Upper bound on `w_h` for which the largest degree surplus can still be
/// placed:
///
/// ```text
/// w_h <= min( n (n - m + h) / (2h), n )   for 0 < h < m - 1
/// w_h <= n                                  for h >= m - 1
/// ```
///
/// `h = 0` elevates nothing and gets the `n` branch.
pub fn w_upper(n: usize, m: usize, h: usize) -> f64 {
    let nf = n as f64;
    if h == 0 || h + 1 >= m {
        return nf;
    }
    let component_branch = nf * (nf - m as f64 + h as f64) / (2.0 * h as f64);
    component_branch.min(nf)
}

/// Density bounds `(θ^max_h, θ^max)` plus the caveat flag.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThetaUpper {
    /// `1 + h / k_ave`.
    pub at_h: f64,
    /// `1 + (m - 1) / k_ave`.
    pub overall: f64,
    /// Set when `m >= n / 2`, where the bound derivation no longer applies.
    pub extreme_topology: bool,
}

pub fn theta_upper(n: usize, e: usize, m: usize, h: usize) -> Result<ThetaUpper> {
    if e == 0 {
        return Err(Error::UndefinedDensity);
    }
    let k_ave = 2.0 * e as f64 / n as f64;
    Ok(ThetaUpper {
        at_h: 1.0 + h as f64 / k_ave,
        overall: 1.0 + m.saturating_sub(1) as f64 / k_ave,
        extreme_topology: 2 * m >= n,
    })
}

/// `w_h <= w_upper(n, m, h)`, inclusive.
pub fn is_realizable(n: usize, m: usize, h: usize, w: f64) -> bool {
    w <= w_upper(n, m, h)
}

/// Every bound for a graph and a chosen `h`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub e: usize,
    pub m: usize,
    pub h: usize,
    pub k_ave: f64,
    pub w_upper: f64,
    pub theta_projected_at_w_upper: Option<f64>,
    pub theta_upper_h: Option<f64>,
    pub theta_upper: Option<f64>,
    pub w_hat_max_h: Option<f64>,
    pub theta_hat_max_h: Option<f64>,
    pub w_hat_max: Option<f64>,
    pub theta_hat_max: Option<f64>,
    pub warnings: Vec<String>,
}

impl BoundReport {
    pub fn for_graph(g: &Graph, h: usize) -> Self {
        let m = connected_components(g).count();
        Self::new(g.node_count(), g.edge_count(), m, h)
    }

    pub fn new(n: usize, e: usize, m: usize, h: usize) -> Self {
        let mut warnings = Vec::new();
        let w_up = w_upper(n, m, h);
        let theta = theta_upper(n, e, m, h).ok();
        if theta.is_some_and(|t| t.extreme_topology) {
            warnings.push(
                "M >= |N|/2: extreme topology, the density bound may be discontinuous".into(),
            );
        }
        if e == 0 {
            warnings.push("graph has no edges: densities are undefined".into());
        }
        if h + 1 > m {
            warnings.push(format!(
                "h = {h} exceeds M - 1 = {}: elevation would reach nonzero eigenvalues",
                m.saturating_sub(1)
            ));
        }
        let complete = complete_graph_bounds(n, e, m, h).ok();
        Self {
            n,
            e,
            m,
            h,
            k_ave: if n == 0 {
                0.0
            } else {
                2.0 * e as f64 / n as f64
            },
            w_upper: w_up,
            theta_projected_at_w_upper: theta_projected(h, w_up, e).ok(),
            theta_upper_h: theta.map(|t| t.at_h),
            theta_upper: theta.map(|t| t.overall),
            w_hat_max_h: complete.map(|c| c.0),
            theta_hat_max_h: complete.map(|c| c.1),
            w_hat_max: complete_graph_w_max(n, e, m),
            theta_hat_max: complete_graph_theta_max(n, e).ok(),
            warnings,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn projected_density() {
        assert_eq!(theta_projected(0, 123.0, 10).unwrap(), 1.0);
        assert!(close(theta_projected(2, 34.0, 78).unwrap(), 1.43590, 1e-5));
        assert_eq!(theta_projected(1, 20.0, 10).unwrap(), 2.0);
        assert!(matches!(
            theta_projected(1, 1.0, 0),
            Err(Error::UndefinedDensity)
        ));
    }

    #[test]
    fn complete_graph_small_case() {
        let (w, theta) = complete_graph_bounds(4, 2, 2, 1).unwrap();
        assert_eq!(theta, 3.0);
        assert_eq!(w, 8.0);
    }

    #[test]
    fn complete_graph_at_top_h_is_full_clique() {
        let (n, e, m) = (30, 40, 6);
        let (_, theta) = complete_graph_bounds(n, e, m, m - 1).unwrap();
        assert!(close(theta, complete_graph_theta_max(n, e).unwrap(), 1e-12));
        let (w, _) = complete_graph_bounds(n, e, m, m - 1).unwrap();
        assert!(close(w, complete_graph_w_max(n, e, m).unwrap(), 1e-9));
    }

    #[test]
    fn complete_graph_connected_case() {
        assert!(complete_graph_bounds(34, 78, 1, 1).is_err());
        assert!(close(
            complete_graph_theta_max(34, 78).unwrap(),
            7.1923,
            1e-4
        ));
        assert_eq!(complete_graph_w_max(34, 78, 1), None);
    }

    #[test]
    fn w_upper_cases() {
        assert_eq!(w_upper(200, 100, 99), 200.0);
        assert_eq!(w_upper(200, 100, 10), 200.0);
        assert_eq!(w_upper(17, 3, 5), 17.0);
        // Component branch binds when m is large relative to n.
        assert!(close(w_upper(10, 9, 4), 6.25, 1e-12));
    }

    #[test]
    fn theta_upper_cases() {
        // k_ave = 1.
        let t = theta_upper(200, 100, 100, 7).unwrap();
        assert!(close(t.at_h, 8.0, 1e-12));
        assert!(t.extreme_topology);
        assert_eq!(theta_upper(10, 5, 1, 0).unwrap().at_h, 1.0);
        // Complete graph: k_ave = n - 1, one component.
        let t = theta_upper(50, 50 * 49 / 2, 1, 0).unwrap();
        assert!(close(t.overall, 1.0, 1e-12));
        assert!(!t.extreme_topology);
    }

    #[test]
    fn realizability_predicate() {
        assert!(is_realizable(200, 100, 150, 0.0));
        assert!(!is_realizable(200, 100, 150, 300.0));
        let w = w_upper(60, 20, 3);
        assert!(is_realizable(60, 20, 3, w));
        assert!(!is_realizable(60, 20, 3, w + 1e-9));
    }

    #[test]
    fn report_serializes() {
        let r = BoundReport::new(34, 78, 1, 0);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"w_upper\":34.0"));
        assert!(r.theta_hat_max.is_some());
    }
}
