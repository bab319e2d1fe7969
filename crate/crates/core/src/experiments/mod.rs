//! Config-driven sweeps over `(h, w_h)` grids, table runs on real networks,
//! and SVG heatmaps of the results.
//!
//! Instances run in parallel but results are folded in instance order, so
//! every CSV is byte-identical for a given config.

pub mod config;
mod fig2;
mod fig3;
mod heatmap;
mod table1;

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

pub use config::{Amplitude, ExperimentKind, SweepConfig};
pub use fig2::{run_fig2, BoundPoint, Fig2Output, Fig2Row};
pub use fig3::{run_fig3, Fig3Output, Fig3Row, Fig3Summary};
pub use heatmap::render_heatmap;
pub use table1::{builtin_dataset, load_dataset, run_table1, Table1Output, Table1Row};

/// Seed streams split off the master seed.
pub(crate) mod stream {
    pub const GRAPH: u64 = 0;
    pub const BASIS: u64 = 1;
    pub const DETECT: u64 = 2;

    pub fn seed(master: u64, kind: u64, index: u64) -> u64 {
        crate::rng::SplitMix64::derive(crate::rng::SplitMix64::derive(master, kind), index)
    }
}

pub(crate) fn mean(values: impl IntoIterator<Item = f64>) -> Option<f64> {
    let (sum, count) = values
        .into_iter()
        .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
    (count > 0).then(|| sum / count as f64)
}

pub(crate) fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Serializes a header and rows with the `csv` writer (RFC 4180 quoting).
pub(crate) fn to_csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Writes `files` into `dir`, creating it, and returns the written paths.
pub fn write_files(dir: &Path, files: &[(String, String)]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    files
        .iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
            Ok(path)
        })
        .collect()
}

/// Runs the named experiment and returns its output files as
/// `(file name, contents)`.
pub fn run(kind: ExperimentKind, cfg: &SweepConfig) -> Result<Vec<(String, String)>> {
    match kind {
        ExperimentKind::Fig2 => run_fig2(cfg)?.files(cfg.heatmaps),
        ExperimentKind::Fig3 => run_fig3(cfg)?.files(cfg.heatmaps),
        ExperimentKind::Table1 => Ok(run_table1(cfg)?.files()),
        ExperimentKind::Custom => Err(Error::Config(
            "custom experiments have no runner; pick fig2, fig3 or table1".into(),
        )),
    }
}
