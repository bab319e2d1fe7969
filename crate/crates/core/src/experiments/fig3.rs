//! Recovery of hidden inter-block edges on a stochastic block model.

use rayon::prelude::*;

use crate::augment::Augmenter;
use crate::bounds::w_upper;
use crate::error::Result;
use crate::graph::connected_components;
use crate::metrics::evaluate;
use crate::randgraph::{hide_inter_edges, sbm, SbmSpec};

use super::config::SweepConfig;
use super::fig2::{sweep_cells, BoundPoint};
use super::{fmt_opt, mean, render_heatmap, stream, to_csv};

#[derive(Clone, Debug, PartialEq)]
pub struct Fig3Row {
    pub h: usize,
    pub w_h: f64,
    /// Mean over instances that produced new edges.
    pub rho_mean: Option<f64>,
    pub epsilon_mean: f64,
    pub m_dagger_mean: f64,
    pub rho_defined: usize,
    pub new_edges_mean: f64,
    pub w_upper: f64,
}

/// Per-`h` aggregate across the `w_h` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Fig3Summary {
    pub h: usize,
    pub rho_mean_over_w: Option<f64>,
    /// Population standard deviation over mean, across `w_h` points with a
    /// defined `ρ`.
    pub rho_cv_over_w: Option<f64>,
    pub epsilon_mean_over_w: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fig3Output {
    pub rows: Vec<Fig3Row>,
    pub boundary: Vec<BoundPoint>,
    pub summary: Vec<Fig3Summary>,
    pub n: usize,
    /// Mean component count after hiding.
    pub m_mean: f64,
}

struct Cell {
    rho: Option<f64>,
    epsilon: f64,
    m_dagger: usize,
    new_edges: usize,
}

struct Instance {
    components: usize,
    k_ave: f64,
    cells: Vec<Option<Cell>>,
}

fn run_instance(cfg: &SweepConfig, index: u64) -> Result<Instance> {
    let spec = SbmSpec {
        block_sizes: cfg.block_sizes.clone(),
        p_in: cfg.p_in,
        p_out: cfg.p_out,
        seed: stream::seed(cfg.seed, stream::GRAPH, index),
    };
    let (g, blocks) = sbm(&spec)?;
    let (kept, hidden) = hide_inter_edges(&g, &blocks)?;
    let aug = Augmenter::new(
        &kept,
        cfg.basis,
        stream::seed(cfg.seed, stream::BASIS, index),
        cfg.beyond,
    )?;
    let mut failure = None;
    let cells = sweep_cells(&kept, &aug, cfg, |r| {
        match evaluate(&kept, r, &blocks, &hidden) {
            Ok(m) => Cell {
                rho: m.rho,
                epsilon: m.epsilon,
                m_dagger: m.m_dagger,
                new_edges: r.new_edges.len(),
            },
            Err(e) => {
                failure.get_or_insert(e);
                Cell {
                    rho: None,
                    epsilon: 0.0,
                    m_dagger: 0,
                    new_edges: 0,
                }
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(Instance {
        components: connected_components(&kept).count(),
        k_ave: kept.average_degree(),
        cells,
    })
}

/// Sweeps `(h, w_h)` over `cfg.instances` seeded block models with all
/// inter-block edges hidden.
pub fn run_fig3(cfg: &SweepConfig) -> Result<Fig3Output> {
    cfg.validate()?;
    let n: usize = cfg.block_sizes.iter().sum();
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
            let rhos: Vec<f64> = cells.iter().filter_map(|c| c.rho).collect();
            rows.push(Fig3Row {
                h,
                w_h: w,
                rho_mean: mean(rhos.iter().copied()),
                epsilon_mean: mean(cells.iter().map(|c| c.epsilon)).unwrap_or(0.0),
                m_dagger_mean: mean(cells.iter().map(|c| c.m_dagger as f64)).unwrap_or(0.0),
                rho_defined: rhos.len(),
                new_edges_mean: mean(cells.iter().map(|c| c.new_edges as f64)).unwrap_or(0.0),
                w_upper: w_upper(n, m_round, h),
            });
        }
    }

    let summary = cfg
        .h_values
        .iter()
        .map(|&h| {
            let at_h: Vec<&Fig3Row> = rows.iter().filter(|r| r.h == h).collect();
            let rhos: Vec<f64> = at_h.iter().filter_map(|r| r.rho_mean).collect();
            let rho_mean = mean(rhos.iter().copied());
            let rho_cv = rho_mean.filter(|&m| m > 0.0).map(|m| {
                let var = rhos.iter().map(|r| (r - m).powi(2)).sum::<f64>() / rhos.len() as f64;
                var.sqrt() / m
            });
            Fig3Summary {
                h,
                rho_mean_over_w: rho_mean,
                rho_cv_over_w: rho_cv,
                epsilon_mean_over_w: mean(at_h.iter().map(|r| r.epsilon_mean)).unwrap_or(0.0),
            }
        })
        .collect();

    let h_lo = *cfg.h_values.iter().min().expect("validated non-empty");
    let h_hi = *cfg.h_values.iter().max().expect("validated non-empty");
    let boundary = (h_lo.max(1)..=h_hi.max(1))
        .map(|h| BoundPoint {
            h,
            w_upper: w_upper(n, m_round, h),
            theta_upper_h: if k_ave_mean > 0.0 {
                1.0 + h as f64 / k_ave_mean
            } else {
                f64::INFINITY
            },
        })
        .collect();

    Ok(Fig3Output {
        rows,
        boundary,
        summary,
        n,
        m_mean,
    })
}

impl Fig3Output {
    /// Times the `w_h`-averaged `ρ` drops from one `h` to the next, in grid
    /// order. Undefined entries are skipped.
    pub fn rho_inversions(&self) -> usize {
        let series: Vec<f64> = self
            .summary
            .iter()
            .filter_map(|s| s.rho_mean_over_w)
            .collect();
        series.windows(2).filter(|w| w[1] < w[0]).count()
    }

    pub fn grid_csv(&self) -> String {
        to_csv(
            &[
                "h",
                "w_h",
                "rho_mean",
                "epsilon_mean",
                "m_dagger_mean",
                "rho_defined",
                "new_edges_mean",
                "w_upper",
            ],
            self.rows.iter().map(|r| {
                vec![
                    r.h.to_string(),
                    r.w_h.to_string(),
                    fmt_opt(r.rho_mean),
                    r.epsilon_mean.to_string(),
                    r.m_dagger_mean.to_string(),
                    r.rho_defined.to_string(),
                    r.new_edges_mean.to_string(),
                    r.w_upper.to_string(),
                ]
            }),
        )
    }

    pub fn boundary_csv(&self) -> String {
        to_csv(
            &["h", "w_upper", "theta_upper_h"],
            self.boundary.iter().map(|b| {
                vec![
                    b.h.to_string(),
                    b.w_upper.to_string(),
                    b.theta_upper_h.to_string(),
                ]
            }),
        )
    }

    pub fn summary_csv(&self) -> String {
        to_csv(
            &[
                "h",
                "rho_mean_over_w",
                "rho_cv_over_w",
                "epsilon_mean_over_w",
            ],
            self.summary.iter().map(|s| {
                vec![
                    s.h.to_string(),
                    fmt_opt(s.rho_mean_over_w),
                    fmt_opt(s.rho_cv_over_w),
                    s.epsilon_mean_over_w.to_string(),
                ]
            }),
        )
    }

    pub fn files(&self, heatmaps: bool) -> Result<Vec<(String, String)>> {
        let grid = self.grid_csv();
        let boundary = self.boundary_csv();
        let mut files = vec![
            ("fig3.csv".to_string(), grid.clone()),
            ("fig3_boundary.csv".to_string(), boundary.clone()),
            ("fig3_summary.csv".to_string(), self.summary_csv()),
        ];
        if heatmaps {
            files.push((
                "fig3_rho_mean.svg".to_string(),
                render_heatmap(&grid, "rho_mean", Some(&boundary))?,
            ));
        }
        Ok(files)
    }
}
