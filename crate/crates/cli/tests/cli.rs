use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spectral-augment"))
}

fn run(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn repo_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn karate() -> PathBuf {
    repo_root().join("crates/core/data/karate.edges")
}

fn sbm_file(dir: &Path) -> PathBuf {
    let g = dir.join("g.edges");
    run(&[
        "generate",
        "--model",
        "sbm",
        "--blocks",
        "3x12",
        "--pin",
        "0.6",
        "--pout",
        "0",
        "--seed",
        "5",
        "--out",
        path(&g),
    ]);
    g
}

#[test]
fn generate_er_is_seeded() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.edges");
    let b = dir.path().join("b.edges");
    for f in [&a, &b] {
        run(&[
            "generate",
            "--model",
            "er",
            "--n",
            "50",
            "--seed",
            "3",
            "--out",
            path(f),
        ]);
    }
    let text = fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("# nodes: 50\n"));
    assert_eq!(text, fs::read_to_string(&b).unwrap());
}

#[test]
fn generate_sbm_writes_labels() {
    let dir = tempfile::tempdir().unwrap();
    let labels = dir.path().join("labels.csv");
    let out = run(&[
        "generate",
        "--model",
        "sbm",
        "--blocks",
        "2x3",
        "--labels",
        path(&labels),
    ]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .starts_with("# nodes: 6"));
    assert_eq!(
        fs::read_to_string(&labels).unwrap(),
        "node,block\n0,0\n1,0\n2,0\n3,1\n4,1\n5,1\n"
    );
}

#[test]
fn augment_writes_edges_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let g = sbm_file(dir.path());
    let edges = dir.path().join("aug.csv");
    let spectrum = dir.path().join("spectrum.csv");
    let out = run(&[
        "augment",
        "--input",
        path(&g),
        "--h",
        "2",
        "--w",
        "36",
        "--seed",
        "1",
        "--out",
        path(&edges),
        "--spectrum",
        path(&spectrum),
    ]);
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["m_before"], 3);
    let new = summary["new_edges"].as_u64().unwrap();
    assert!(new > 0);

    let mut rdr = csv::Reader::from_path(&edges).unwrap();
    assert_eq!(rdr.headers().unwrap(), vec!["u", "v", "kind"]);
    let kinds: Vec<String> = rdr.records().map(|r| r.unwrap()[2].to_string()).collect();
    assert_eq!(kinds.iter().filter(|k| *k == "new").count() as u64, new);

    let spectrum = fs::read_to_string(&spectrum).unwrap();
    assert!(spectrum.starts_with("index,eigenvalue\n"));
    assert_eq!(spectrum.lines().count(), 37);
}

#[test]
fn augment_rejects_h_beyond_kernel() {
    let out = bin()
        .args([
            "augment",
            "--input",
            path(&karate()),
            "--h",
            "1",
            "--w",
            "10",
        ])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("h = 1"));
}

#[test]
fn augment_extends_on_request() {
    let out = run(&[
        "augment",
        "--input",
        path(&karate()),
        "--h",
        "2",
        "--w",
        "34",
        "--beyond",
        "extend",
    ]);
    let body = String::from_utf8(out.stdout).unwrap();
    assert!(body.starts_with("u,v,kind\n"));
    assert_eq!(
        body.lines().filter(|l| l.ends_with(",original")).count(),
        78
    );
}

#[test]
fn bounds_prints_json() {
    let dir = tempfile::tempdir().unwrap();
    let g = sbm_file(dir.path());
    let out = run(&["bounds", "--input", path(&g), "--h", "1"]);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["n"], 36);
    assert_eq!(report["m"], 3);
    assert!(report["w_upper"].as_f64().unwrap() > 0.0);
}

#[test]
fn detect_writes_labels() {
    let dir = tempfile::tempdir().unwrap();
    let labels = dir.path().join("labels.csv");
    let out = run(&[
        "detect",
        "--input",
        path(&karate()),
        "--method",
        "cnm",
        "--out",
        path(&labels),
    ]);
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["communities"], 3);
    let text = fs::read_to_string(&labels).unwrap();
    assert!(text.starts_with("node,community\n"));
    assert_eq!(text.lines().count(), 35);
}

#[test]
fn detect_fluid_needs_k() {
    let out = bin()
        .args(["detect", "--input", path(&karate()), "--method", "fluid"])
        .output()
        .unwrap();
    assert!(!out.status.success());
    let out = run(&[
        "detect",
        "--input",
        path(&karate()),
        "--method",
        "fluid",
        "--k",
        "2",
    ]);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 35);
}

#[test]
fn experiment_runs_bundled_configs() {
    let dir = tempfile::tempdir().unwrap();
    for (name, conf, first) in [
        ("fig2", "fig2-small.conf", "fig2.csv"),
        ("table1", "table1.conf", "table1.csv"),
    ] {
        let out_dir = dir.path().join(name);
        let config = repo_root().join("configs").join(conf);
        let out = bin()
            .current_dir(repo_root())
            .args([
                "experiment",
                "--name",
                name,
                "--config",
                path(&config),
                "--out",
                path(&out_dir),
            ])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out_dir.join(first).exists());
    }
    let table = fs::read_to_string(dir.path().join("table1/table1.csv")).unwrap();
    assert!(table.lines().any(|l| l == "karate,cnm,0,3,,,34,78,3,0"));
}

#[test]
fn every_bundled_config_parses() {
    for entry in fs::read_dir(repo_root().join("configs")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap();
        spectral_augment::experiments::SweepConfig::parse(
            &text,
            spectral_augment::experiments::ExperimentKind::Custom,
        )
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn experiment_rejects_mismatched_config() {
    let config = repo_root().join("configs/fig3.conf");
    let out = bin()
        .args(["experiment", "--name", "fig2", "--config", path(&config)])
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("config is for fig3"));
}
