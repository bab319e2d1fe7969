//! Realizability sweep on an Erdős–Rényi ensemble.

use rayon::prelude::*;

use crate::augment::{Augmenter, PhiFlag};
use crate::bounds::w_upper;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::randgraph::erdos_renyi;

use super::config::SweepConfig;
use super::{fmt_opt, mean, render_heatmap, stream, to_csv};

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2Row {
    pub h: usize,
    pub w_h: f64,
    /// Share of instances whose largest surplus fits: `|N^Δ| >= Δd^max`.
    pub realizable_fraction: f64,
    pub theta_realized_mean: Option<f64>,
    pub phi_mean: f64,
    pub w_upper: f64,
    pub theta_node_sum_mean: Option<f64>,
    pub phi_node_sum_mean: f64,
    pub new_edges_mean: f64,
    /// Instances whose ratio exceeded 1 before clamping.
    pub phi_clamped: usize,
    pub instances: usize,
}

/// One point of the `w_h` bound curve.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundPoint {
    pub h: usize,
    pub w_upper: f64,
    pub theta_upper_h: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig2Output {
    pub rows: Vec<Fig2Row>,
    pub bound: Vec<BoundPoint>,
    pub n: usize,
    /// Mean component count over instances.
    pub m_mean: f64,
    pub k_ave_mean: f64,
}

struct Cell {
    realizable: bool,
    theta: Option<f64>,
    theta_node_sum: Option<f64>,
    phi: f64,
    phi_node_sum: f64,
    clamped: bool,
    new_edges: usize,
}

struct Instance {
    components: usize,
    k_ave: f64,
    cells: Vec<Option<Cell>>,
}

/// Cells of one graph in grid order (h outer, w inner). `h` above `n - 1`
/// is clipped to `n - 1`; cells the policy refuses are `None`.
pub(crate) fn sweep_cells<T>(
    g: &Graph,
    aug: &Augmenter<'_>,
    cfg: &SweepConfig,
    mut cell: impl FnMut(&crate::augment::AugmentationResult) -> T,
) -> Result<Vec<Option<T>>> {
    let top = g.node_count().saturating_sub(1);
    let mut out = Vec::with_capacity(cfg.h_values.len() * cfg.w_values.len());
    for &h in &cfg.h_values {
        for &w in &cfg.w_values {
            match aug.run(h.min(top), w) {
                Ok(r) => out.push(Some(cell(&r))),
                Err(Error::TooManyElevated { .. }) => out.push(None),
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

fn run_instance(cfg: &SweepConfig, index: u64) -> Result<Instance> {
    let g = erdos_renyi(
        cfg.n,
        cfg.edge_probability(),
        stream::seed(cfg.seed, stream::GRAPH, index),
    )?;
    let aug = Augmenter::new(
        &g,
        cfg.basis,
        stream::seed(cfg.seed, stream::BASIS, index),
        cfg.beyond,
    )?;
    let cells = sweep_cells(&g, &aug, cfg, |r| {
        let phi = r.phi.expect("runs set phi");
        Cell {
            realizable: r.delta.max_is_realizable(),
            theta: r.theta_realized,
            theta_node_sum: r.theta_node_sum,
            phi: phi.value,
            phi_node_sum: phi.node_sum,
            clamped: phi.flag == PhiFlag::Clamped,
            new_edges: r.new_edges.len(),
        }
    })?;
    Ok(Instance {
        components: aug.components(),
        k_ave: g.average_degree(),
        cells,
    })
}

/// Sweeps `(h, w_h)` over `cfg.instances` seeded `ER(n, p)` graphs.
pub fn run_fig2(cfg: &SweepConfig) -> Result<Fig2Output> {
    cfg.validate()?;
    let instances: Vec<Instance> = (0..cfg.instances as u64)
        .into_par_iter()
        .map(|i| run_instance(cfg, i))
        .collect::<Result<_>>()?;

    let m_mean = mean(instances.iter().map(|i| i.components as f64)).unwrap_or(0.0);
    let k_ave_mean = mean(instances.iter().map(|i| i.k_ave)).unwrap_or(0.0);
    let m_round = m_mean.round() as usize;

    let mut rows = Vec::new();
    let mut idx = 0;
    for &h in &cfg.h_values {
        for &w in &cfg.w_values {
            let cells: Vec<&Cell> = instances
                .iter()
                .filter_map(|i| i.cells[idx].as_ref())
                .collect();
            idx += 1;
            let count = cells.len();
            rows.push(Fig2Row {
                h,
                w_h: w,
                realizable_fraction: if count == 0 {
                    0.0
                } else {
                    cells.iter().filter(|c| c.realizable).count() as f64 / count as f64
                },
                theta_realized_mean: mean(cells.iter().filter_map(|c| c.theta)),
                phi_mean: mean(cells.iter().map(|c| c.phi)).unwrap_or(0.0),
                w_upper: w_upper(cfg.n, m_round, h),
                theta_node_sum_mean: mean(cells.iter().filter_map(|c| c.theta_node_sum)),
                phi_node_sum_mean: mean(cells.iter().map(|c| c.phi_node_sum)).unwrap_or(0.0),
                new_edges_mean: mean(cells.iter().map(|c| c.new_edges as f64)).unwrap_or(0.0),
                phi_clamped: cells.iter().filter(|c| c.clamped).count(),
                instances: count,
            });
        }
    }

    let h_lo = *cfg.h_values.iter().min().expect("validated non-empty");
    let h_hi = *cfg.h_values.iter().max().expect("validated non-empty");
    let bound = (h_lo.max(1)..=h_hi.max(1))
        .map(|h| BoundPoint {
            h,
            w_upper: w_upper(cfg.n, m_round, h),
            theta_upper_h: if k_ave_mean > 0.0 {
                1.0 + h as f64 / k_ave_mean
            } else {
                f64::INFINITY
            },
        })
        .collect();

    Ok(Fig2Output {
        rows,
        bound,
        n: cfg.n,
        m_mean,
        k_ave_mean,
    })
}

impl Fig2Output {
    pub fn grid_csv(&self) -> String {
        to_csv(
            &[
                "h",
                "w_h",
                "realizable_fraction",
                "theta_realized_mean",
                "phi_mean",
                "w_upper",
                "theta_node_sum_mean",
                "phi_node_sum_mean",
                "new_edges_mean",
                "phi_clamped",
                "instances",
            ],
            self.rows.iter().map(|r| {
                vec![
                    r.h.to_string(),
                    r.w_h.to_string(),
                    r.realizable_fraction.to_string(),
                    fmt_opt(r.theta_realized_mean),
                    r.phi_mean.to_string(),
                    r.w_upper.to_string(),
                    fmt_opt(r.theta_node_sum_mean),
                    r.phi_node_sum_mean.to_string(),
                    r.new_edges_mean.to_string(),
                    r.phi_clamped.to_string(),
                    r.instances.to_string(),
                ]
            }),
        )
    }

    /// The `w_h` bound curve, evaluated at the rounded mean component count.
    pub fn bound_csv(&self) -> String {
        to_csv(
            &["h", "w_upper", "theta_upper_h"],
            self.bound.iter().map(|b| {
                vec![
                    b.h.to_string(),
                    b.w_upper.to_string(),
                    b.theta_upper_h.to_string(),
                ]
            }),
        )
    }

    pub fn files(&self, heatmaps: bool) -> Result<Vec<(String, String)>> {
        let grid = self.grid_csv();
        let bound = self.bound_csv();
        let mut files = vec![
            ("fig2.csv".to_string(), grid.clone()),
            ("fig2_bound.csv".to_string(), bound.clone()),
        ];
        if heatmaps {
            for column in ["realizable_fraction", "theta_realized_mean", "phi_mean"] {
                files.push((
                    format!("fig2_{column}.svg"),
                    render_heatmap(&grid, column, Some(&bound))?,
                ));
            }
        }
        Ok(files)
    }
}
