//! Detect communities, hide the edges between them, augment at `w_h = |N|`
//! and measure what comes back.

use std::path::Path;

use rayon::prelude::*;

use crate::augment::{Augmenter, BeyondKernel};
use crate::community::Method;
use crate::error::{Error, Result};
use crate::graph::{connected_components, Graph};
use crate::io::{parse_edge_list, read_edge_list};
use crate::metrics::evaluate;
use crate::randgraph::hide_inter_edges;

use super::config::{Amplitude, SweepConfig};
use super::{fmt_opt, stream, to_csv};

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Row {
    pub dataset: String,
    pub method: Method,
    /// Detector rerun index; 0 for deterministic methods.
    pub run: usize,
    pub h: usize,
    /// `None` when the beyond-kernel policy refused this `h`.
    pub m_dagger: Option<usize>,
    pub rho: Option<f64>,
    pub epsilon: Option<f64>,
    pub n: usize,
    pub e: usize,
    /// Communities found by the detector.
    pub communities: usize,
    pub new_edges: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Output {
    /// Every run, ordered by dataset, method, run, h.
    pub rows: Vec<Table1Row>,
    pub reruns: usize,
}

/// Edge lists bundled with the crate.
pub fn builtin_dataset(name: &str) -> Option<&'static str> {
    match name {
        "karate" => Some(include_str!("../../data/karate.edges")),
        "davis" => Some(include_str!("../../data/davis.edges")),
        _ => None,
    }
}

/// Loads `<data_dir>/<name>.edges`, falling back to the bundled copy. A
/// leading header line such as `node_1,node_2` is skipped.
pub fn load_dataset(data_dir: &Path, name: &str) -> Result<Graph> {
    let path = data_dir.join(format!("{name}.edges"));
    if path.exists() {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        if first.is_some_and(|l| l.starts_with(|c: char| c.is_ascii_alphabetic())) {
            let header = first.expect("checked");
            let body = text.replacen(header, &format!("# {header}"), 1);
            return parse_edge_list(&body, None);
        }
        return read_edge_list(&path, None);
    }
    match builtin_dataset(name) {
        Some(text) => parse_edge_list(text, None),
        None => Err(Error::MissingDataset(path)),
    }
}

struct Job<'a> {
    dataset: &'a str,
    graph: &'a Graph,
    method: Method,
    run: usize,
    detect_seed: u64,
    basis_seed: u64,
}

fn run_job(cfg: &SweepConfig, job: &Job<'_>) -> Result<Vec<Table1Row>> {
    let g = job.graph;
    let k = match job.method {
        Method::Fluid => Some(
            *cfg.fluid_k
                .get(job.dataset)
                .ok_or_else(|| Error::Config(format!("no fluid_k.{} configured", job.dataset)))?,
        ),
        _ => None,
    };
    let part = job.method.detect(g, k, job.detect_seed)?;
    let (kept, hidden) = hide_inter_edges(g, &part)?;
    let beyond = if cfg.beyond == BeyondKernel::Extend
        && kept.node_count() > cfg.max_spectrum_nodes
        && !cfg.full_spectrum
    {
        BeyondKernel::Clamp
    } else {
        cfg.beyond
    };
    let aug = Augmenter::new(&kept, cfg.basis, job.basis_seed, beyond)?;
    let w = match cfg.amplitude {
        Amplitude::NodeCount => g.node_count() as f64,
        Amplitude::Fixed(w) => w,
    };
    let base = Table1Row {
        dataset: job.dataset.to_string(),
        method: job.method,
        run: job.run,
        h: 0,
        m_dagger: None,
        rho: None,
        epsilon: None,
        n: g.node_count(),
        e: g.edge_count(),
        communities: part.count(),
        new_edges: 0,
    };
    let mut rows = Vec::with_capacity(cfg.h_values.len());
    for &h in &cfg.h_values {
        let row = if h == 0 {
            Table1Row {
                h,
                m_dagger: Some(connected_components(&kept).count()),
                ..base.clone()
            }
        } else {
            match aug.run(h, w) {
                Ok(r) => {
                    let m = evaluate(&kept, &r, &part, &hidden)?;
                    Table1Row {
                        h,
                        m_dagger: Some(m.m_dagger),
                        rho: m.rho,
                        epsilon: (!m.epsilon_flag).then_some(m.epsilon),
                        new_edges: r.new_edges.len(),
                        ..base.clone()
                    }
                }
                Err(Error::TooManyElevated { .. }) => Table1Row { h, ..base.clone() },
                Err(e) => return Err(e),
            }
        };
        rows.push(row);
    }
    Ok(rows)
}

/// Runs every configured `(dataset, method)` pair. Stochastic detectors run
/// `cfg.reruns` times with split seeds.
pub fn run_table1(cfg: &SweepConfig) -> Result<Table1Output> {
    cfg.validate()?;
    let graphs: Vec<Graph> = cfg
        .datasets
        .iter()
        .map(|d| load_dataset(&cfg.data_dir, d))
        .collect::<Result<_>>()?;
    let mut jobs = Vec::new();
    for (di, (name, graph)) in cfg.datasets.iter().zip(&graphs).enumerate() {
        for (mi, &method) in cfg.methods.iter().enumerate() {
            let runs = if method.is_stochastic() {
                cfg.reruns
            } else {
                1
            };
            for run in 0..runs {
                let stream_index = ((di as u64) << 32) | ((mi as u64) << 16) | run as u64;
                jobs.push(Job {
                    dataset: name,
                    graph,
                    method,
                    run,
                    detect_seed: stream::seed(cfg.seed, stream::DETECT, stream_index),
                    basis_seed: stream::seed(cfg.seed, stream::BASIS, stream_index),
                });
            }
        }
    }
    let chunks: Vec<Vec<Table1Row>> = jobs
        .par_iter()
        .map(|job| run_job(cfg, job))
        .collect::<Result<_>>()?;
    Ok(Table1Output {
        rows: chunks.into_iter().flatten().collect(),
        reruns: cfg.reruns,
    })
}

const COLUMNS: [&str; 10] = [
    "dataset",
    "method",
    "h",
    "m_dagger",
    "rho",
    "epsilon",
    "n",
    "e",
    "communities",
    "new_edges",
];

fn record(r: &Table1Row) -> Vec<String> {
    vec![
        r.dataset.clone(),
        r.method.to_string(),
        r.h.to_string(),
        r.m_dagger.map(|m| m.to_string()).unwrap_or_default(),
        fmt_opt(r.rho),
        fmt_opt(r.epsilon),
        r.n.to_string(),
        r.e.to_string(),
        r.communities.to_string(),
        r.new_edges.to_string(),
    ]
}

impl Table1Output {
    /// Rows of the first run of every `(dataset, method)`.
    pub fn primary(&self) -> impl Iterator<Item = &Table1Row> {
        self.rows.iter().filter(|r| r.run == 0)
    }

    pub fn table_csv(&self) -> String {
        to_csv(&COLUMNS, self.primary().map(record))
    }

    /// All runs, with a trailing `run` column.
    pub fn reruns_csv(&self) -> String {
        let mut header = COLUMNS.to_vec();
        header.push("run");
        to_csv(
            &header,
            self.rows.iter().map(|r| {
                let mut rec = record(r);
                rec.push(r.run.to_string());
                rec
            }),
        )
    }

    pub fn files(&self) -> Vec<(String, String)> {
        let mut files = vec![("table1.csv".to_string(), self.table_csv())];
        if self.reruns > 1 {
            files.push(("table1_reruns.csv".to_string(), self.reruns_csv()));
        }
        files
    }
}
