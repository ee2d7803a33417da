//! Renders every bundled config to PNG/PGM/CSV.
//!
//! ```sh
//! cargo run --release --example gallery [OUT_DIR]
//! ```

use std::path::{Path, PathBuf};

use orbital::config::ExperimentConfig;
use orbital::experiment::run_render;

fn main() -> orbital::Result<()> {
    let out: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "out/gallery".into())
        .into();
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&configs)?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|e| e == "toml").unwrap_or(false))
        .collect();
    paths.sort();

    for path in paths {
        let cfg = ExperimentConfig::load(&path)?;
        let t = std::time::Instant::now();
        let summary = run_render(&cfg, &out)?;
        println!(
            "{:<26} {:>9} nodes -> {} ({:.1}s{})",
            cfg.name,
            summary.nodes,
            summary.png,
            t.elapsed().as_secs_f64(),
            if summary.truncated { ", truncated" } else { "" }
        );
    }
    Ok(())
}
