use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use spectral_augment::community::modularity;
use spectral_augment::experiments::config::parse_blocks;
use spectral_augment::experiments::{self, ExperimentKind, SweepConfig};
use spectral_augment::io::{read_edge_list, write_edge_list};
use spectral_augment::randgraph::{erdos_renyi, sbm, SbmSpec};
use spectral_augment::{
    eigendecompose, laplacian, Augmenter, BasisMode, BeyondKernel, BoundReport, Error, Graph,
    Method,
};

type CliResult<T> = Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(
    name = "spectral-augment",
    version,
    about = "Spectral edge augmentation toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Propose new edges by elevating zero Laplacian eigenvalues.
    Augment {
        #[arg(long)]
        input: PathBuf,
        /// Node count, for graphs with trailing isolated nodes.
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        h: usize,
        #[arg(long)]
        w: f64,
        #[arg(long, default_value = "mixed")]
        basis: BasisMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// What to do when h exceeds M - 1: reject, clamp or extend.
        #[arg(long, default_value = "reject")]
        beyond: BeyondKernel,
        /// Edge CSV (u, v, kind). Written to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the Laplacian spectrum as CSV.
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Print the realizability bounds of a graph as JSON.
    Bounds {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        h: usize,
    },
    /// Run a community detector and write node,community labels.
    Detect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        nodes: Option<usize>,
        #[arg(long)]
        method: Method,
        /// Community count, required by fluid.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a random graph as an edge list.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        /// Node count (er).
        #[arg(long)]
        n: Option<usize>,
        /// Block sizes as `5x50` or `50,40,30` (sbm).
        #[arg(long)]
        blocks: Option<String>,
        /// Edge probability (er); defaults to 1/n.
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0.5)]
        pin: f64,
        #[arg(long, default_value_t = 0.1)]
        pout: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Block membership CSV (sbm).
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Run fig2, fig3 or table1 and write its CSV and SVG files.
    Experiment {
        #[arg(long)]
        name: ExperimentKind,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output directory; overrides `out` in the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Er,
    Sbm,
}

fn emit(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        Some(path) => fs::write(path, body).map_err(|e| format!("{}: {e}", path.display()))?,
        None => io::stdout().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> CliResult<String> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    wtr.write_record(header)?;
    for row in rows {
        wtr.write_record(&row)?;
    }
    Ok(String::from_utf8(wtr.into_inner()?)?)
}

fn augment(
    g: &Graph,
    (h, w, basis, seed, beyond): (usize, f64, BasisMode, u64, BeyondKernel),
    out: Option<&Path>,
    spectrum: Option<&Path>,
) -> CliResult<()> {
    let aug = Augmenter::new(g, basis, seed, beyond)?;
    let r = aug.run(h, w)?;
    if let Some(path) = spectrum {
        let es = eigendecompose(&laplacian(g))?;
        fs::write(path, es.to_csv()).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    let rows = g
        .edges()
        .iter()
        .map(|&(u, v)| vec![u.to_string(), v.to_string(), "original".into()])
        .chain(
            r.new_edges
                .iter()
                .map(|&(u, v)| vec![u.to_string(), v.to_string(), "new".into()]),
        );
    let body = csv_string(&["u", "v", "kind"], rows)?;
    let summary = json!({
        "h": h,
        "h_effective": r.h_effective,
        "w": w,
        "basis": basis.to_string(),
        "seed": seed,
        "new_edges": r.new_edges.len(),
        "phi": r.phi.map(|p| p.value),
        "phi_flag": r.phi.map(|p| p.flag),
        "theta_realized": r.theta_realized,
        "theta_node_sum": r.theta_node_sum,
        "m_before": r.m_before,
        "m_dagger": r.m_dagger,
    });
    match out {
        Some(path) => {
            emit(Some(path), &body)?;
            println!("{summary}");
        }
        // Keep stdout parseable as CSV; the summary goes to stderr.
        None => {
            emit(None, &body)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn detect(
    g: &Graph,
    method: Method,
    k: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> CliResult<()> {
    let part = method.detect(g, k, seed)?;
    let rows = part
        .labels()
        .iter()
        .enumerate()
        .map(|(node, c)| vec![node.to_string(), c.to_string()]);
    emit(out, &csv_string(&["node", "community"], rows)?)?;
    let summary = json!({
        "method": method.to_string(),
        "communities": part.count(),
        "modularity": modularity(g, &part).ok(),
    });
    if out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn generate(
    model: Model,
    n: Option<usize>,
    blocks: Option<&str>,
    p: Option<f64>,
    (pin, pout): (f64, f64),
    seed: u64,
    out: Option<&Path>,
    labels: Option<&Path>,
) -> CliResult<()> {
    match model {
        Model::Er => {
            if labels.is_some() {
                return Err("--labels applies to sbm only".into());
            }
            let n = n.ok_or("--n is required for er")?;
            let p = p.unwrap_or(if n > 0 { 1.0 / n as f64 } else { 0.0 });
            emit(out, &write_edge_list(&erdos_renyi(n, p, seed)?))?;
        }
        Model::Sbm => {
            let blocks = blocks.ok_or("--blocks is required for sbm")?;
            let sizes = parse_blocks(blocks).map_err(|e| format!("--blocks: {e}"))?;
            let spec = SbmSpec {
                block_sizes: sizes,
                p_in: pin,
                p_out: pout,
                seed,
            };
            let (g, _) = sbm(&spec)?;
            emit(out, &write_edge_list(&g))?;
            if let Some(path) = labels {
                // Blocks occupy consecutive ids, so the block index is the
                // position in the size list.
                let mut rows = Vec::with_capacity(g.node_count());
                let mut node = 0;
                for (b, &size) in spec.block_sizes.iter().enumerate() {
                    for _ in 0..size {
                        rows.push(vec![node.to_string(), b.to_string()]);
                        node += 1;
                    }
                }
                emit(Some(path), &csv_string(&["node", "block"], rows)?)?;
            }
        }
    }
    Ok(())
}

fn experiment(kind: ExperimentKind, config: Option<&Path>, out: Option<PathBuf>) -> CliResult<()> {
    let mut cfg = match config {
        Some(path) => SweepConfig::load(path, kind)?,
        None => SweepConfig::defaults(kind),
    };
    if cfg.experiment != kind {
        return Err(Error::Config(format!(
            "config is for {}, but --name is {}",
            cfg.experiment.name(),
            kind.name()
        ))
        .into());
    }
    if out.is_some() {
        cfg.out = out;
    }
    let dir = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("out").join(kind.name()));
    fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let files = experiments::run(kind, &cfg)?;
    for path in experiments::write_files(&dir, &files)? {
        println!("{}", path.display());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Augment {
            input,
            nodes,
            h,
            w,
            basis,
            seed,
            beyond,
            out,
            spectrum,
        } => {
            let g = read_edge_list(&input, nodes)?;
            augment(
                &g,
                (h, w, basis, seed, beyond),
                out.as_deref(),
                spectrum.as_deref(),
            )
        }
        Command::Bounds { input, nodes, h } => {
            let g = read_edge_list(&input, nodes)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&BoundReport::for_graph(&g, h))?
            );
            Ok(())
        }
        Command::Detect {
            input,
            nodes,
            method,
            k,
            seed,
            out,
        } => detect(
            &read_edge_list(&input, nodes)?,
            method,
            k,
            seed,
            out.as_deref(),
        ),
        Command::Generate {
            model,
            n,
            blocks,
            p,
            pin,
            pout,
            seed,
            out,
            labels,
        } => generate(
            model,
            n,
            blocks.as_deref(),
            p,
            (pin, pout),
            seed,
            out.as_deref(),
            labels.as_deref(),
        ),
        Command::Experiment { name, config, out } => experiment(name, config.as_deref(), out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
