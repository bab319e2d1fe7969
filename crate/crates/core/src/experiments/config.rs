//! Flat `key = value` configuration.
//!
//! ```text
//! # comment
//! experiment = fig2
//! n = 200
//! h = 0:190:10        # inclusive range start:end:step
//! w = 0,25,50         # or an explicit list
//! fluid_k.karate = 2  # dotted keys set per-dataset values
//! ```
//!
//! Keys not listed in [`SweepConfig`] are rejected so typos surface early.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::augment::BeyondKernel;
use crate::community::Method;
use crate::error::{Error, Result};
use crate::spectral::BasisMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExperimentKind {
    Fig2,
    Fig3,
    Table1,
    Custom,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Fig2 => "fig2",
            Self::Fig3 => "fig3",
            Self::Table1 => "table1",
            Self::Custom => "custom",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Self::Fig2),
            "fig3" => Ok(Self::Fig3),
            "table1" => Ok(Self::Table1),
            "custom" => Ok(Self::Custom),
            other => Err(Error::Config(format!(
                "unknown experiment {other:?} (expected fig2, fig3, table1 or custom)"
            ))),
        }
    }
}

/// Elevation amplitude for table runs.
#[derive(Clone, Debug, PartialEq)]
pub enum Amplitude {
    /// `w_h = |N|` of each dataset.
    NodeCount,
    Fixed(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub experiment: ExperimentKind,
    pub seed: u64,
    pub instances: usize,
    pub h_values: Vec<usize>,
    pub w_values: Vec<f64>,
    pub basis: BasisMode,
    pub beyond: BeyondKernel,

    /// Erdős–Rényi ensemble (fig2).
    pub n: usize,
    /// Defaults to `1 / n`.
    pub p: Option<f64>,

    /// Block model (fig3).
    pub block_sizes: Vec<usize>,
    pub p_in: f64,
    pub p_out: f64,

    /// Real networks (table1).
    pub datasets: Vec<String>,
    pub data_dir: PathBuf,
    pub methods: Vec<Method>,
    pub fluid_k: BTreeMap<String, usize>,
    pub amplitude: Amplitude,
    /// Extra detector seeds per stochastic method.
    pub reruns: usize,
    /// Above this many nodes the spectrum needed past the kernel is skipped
    /// (elevation falls back to clamping) unless `full_spectrum` is set.
    pub max_spectrum_nodes: usize,
    pub full_spectrum: bool,

    pub out: Option<PathBuf>,
    /// Render SVG heatmaps next to grid CSVs.
    pub heatmaps: bool,
}

fn default_fluid_k() -> BTreeMap<String, usize> {
    [
        ("davis", 2),
        ("karate", 2),
        ("dolphins", 2),
        ("fb_tvshow", 9),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

impl SweepConfig {
    /// Defaults for each experiment. The fig2 grid is coarsened (h step 10,
    /// w step 25); set `h = 0:199:1` and `w = 0:500:1` for the full sweep.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let base = Self {
            experiment: kind,
            seed: 20_240_101,
            instances: 10,
            h_values: (0..=190).step_by(10).collect(),
            w_values: (0..=20).map(|i| 25.0 * i as f64).collect(),
            basis: BasisMode::Mixed,
            beyond: BeyondKernel::Extend,
            n: 200,
            p: None,
            block_sizes: vec![50; 5],
            p_in: 0.5,
            p_out: 0.1,
            datasets: ["davis", "karate", "dolphins", "fb_tvshow"]
                .map(String::from)
                .to_vec(),
            data_dir: PathBuf::from("data"),
            methods: Method::ALL.to_vec(),
            fluid_k: default_fluid_k(),
            amplitude: Amplitude::NodeCount,
            reruns: 1,
            max_spectrum_nodes: 1500,
            full_spectrum: false,
            out: None,
            heatmaps: true,
        };
        match kind {
            ExperimentKind::Fig2 | ExperimentKind::Custom => base,
            ExperimentKind::Fig3 => Self {
                instances: 5,
                h_values: (1..=10).collect(),
                w_values: (0..=10).map(|i| 100.0 * i as f64).collect(),
                ..base
            },
            ExperimentKind::Table1 => Self {
                instances: 1,
                h_values: (0..=4).collect(),
                w_values: Vec::new(),
                ..base
            },
        }
    }

    /// Parses a config. The `experiment` key picks the defaults the other
    /// keys override; `fallback` applies when the key is absent.
    pub fn parse(text: &str, fallback: ExperimentKind) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        let kind = match pairs.iter().find(|(k, _, _)| k == "experiment") {
            Some((_, v, _)) => v.parse()?,
            None => fallback,
        };
        let mut cfg = Self::defaults(kind);
        for (key, value, line) in &pairs {
            cfg.apply(key, value)
                .map_err(|e| Error::Config(format!("line {line}: {key}: {e}")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, fallback: ExperimentKind) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, fallback)
    }

    fn apply(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        if let Some(name) = key.strip_prefix("fluid_k.") {
            self.fluid_k.insert(name.to_string(), parse_num(value)?);
            return Ok(());
        }
        match key {
            "experiment" => {}
            "seed" => self.seed = parse_num(value)?,
            "instances" => self.instances = parse_num(value)?,
            "h" => {
                self.h_values = parse_grid(value)?
                    .into_iter()
                    .map(|x| {
                        if x >= 0.0 && x.fract() == 0.0 {
                            Ok(x as usize)
                        } else {
                            Err(format!("h values must be non-negative integers, got {x}"))
                        }
                    })
                    .collect::<std::result::Result<_, _>>()?
            }
            "w" => {
                if value == "n" {
                    self.amplitude = Amplitude::NodeCount;
                } else {
                    self.w_values = parse_grid(value)?;
                    if let [w] = self.w_values[..] {
                        self.amplitude = Amplitude::Fixed(w);
                    }
                }
            }
            "basis" => self.basis = value.parse().map_err(|e: Error| e.to_string())?,
            "beyond" => self.beyond = value.parse().map_err(|e: Error| e.to_string())?,
            "n" => self.n = parse_num(value)?,
            "p" => self.p = Some(parse_num(value)?),
            "blocks" => self.block_sizes = parse_blocks(value)?,
            "p_in" => self.p_in = parse_num(value)?,
            "p_out" => self.p_out = parse_num(value)?,
            "datasets" => self.datasets = parse_list(value),
            "data_dir" => self.data_dir = PathBuf::from(value),
            "methods" => {
                self.methods = parse_list(value)
                    .iter()
                    .map(|m| m.parse::<Method>().map_err(|e| e.to_string()))
                    .collect::<std::result::Result<_, _>>()?
            }
            "reruns" => self.reruns = parse_num(value)?,
            "max_spectrum_nodes" => self.max_spectrum_nodes = parse_num(value)?,
            "full_spectrum" => self.full_spectrum = parse_bool(value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "heatmaps" => self.heatmaps = parse_bool(value)?,
            other => return Err(format!("unknown key {other:?}")),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.instances == 0 {
            return fail("instances must be at least 1".into());
        }
        if self.h_values.is_empty() {
            return fail("h grid is empty".into());
        }
        if self.experiment != ExperimentKind::Table1 && self.w_values.is_empty() {
            return fail("w grid is empty".into());
        }
        if self.w_values.iter().any(|&w| !(w >= 0.0 && w.is_finite())) {
            return fail("w values must be finite and non-negative".into());
        }
        if self.reruns == 0 {
            return fail("reruns must be at least 1".into());
        }
        if let Some(p) = self.p {
            if !(0.0..=1.0).contains(&p) {
                return fail(format!("p must lie in [0, 1], got {p}"));
            }
        }
        Ok(())
    }

    pub fn edge_probability(&self) -> f64 {
        self.p.unwrap_or(1.0 / self.n.max(1) as f64)
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String, usize)>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "line {}: expected key = value, got {line:?}",
                idx + 1
            )));
        };
        out.push((k.trim().to_string(), v.trim().to_string(), idx + 1));
    }
    Ok(out)
}

fn parse_num<T: FromStr>(value: &str) -> std::result::Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("cannot parse {value:?} as a number"))
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("expected true or false, got {other:?}")),
    }
}

fn parse_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

/// `a:b:step` (inclusive), `a,b,c` or a single number.
pub fn parse_grid(value: &str) -> std::result::Result<Vec<f64>, String> {
    if value.contains(':') {
        let parts: Vec<f64> = value
            .split(':')
            .map(|p| parse_num::<f64>(p.trim()))
            .collect::<std::result::Result<_, _>>()?;
        let [start, end, step] = parts[..] else {
            return Err(format!("range {value:?} must be start:end:step"));
        };
        if step <= 0.0 || end < start {
            return Err(format!("range {value:?} is empty"));
        }
        let count = ((end - start) / step + 1e-9).floor() as usize + 1;
        return Ok((0..count).map(|i| start + step * i as f64).collect());
    }
    let values: Vec<f64> = parse_list(value)
        .iter()
        .map(|s| parse_num(s))
        .collect::<std::result::Result<_, _>>()?;
    if values.is_empty() {
        return Err("empty list".into());
    }
    Ok(values)
}

/// `50,50,50` or `5x50`.
pub fn parse_blocks(value: &str) -> std::result::Result<Vec<usize>, String> {
    if let Some((count, size)) = value.split_once('x') {
        let count: usize = parse_num(count.trim())?;
        let size: usize = parse_num(size.trim())?;
        return Ok(vec![size; count]);
    }
    parse_list(value).iter().map(|s| parse_num(s)).collect()
}
