//! Full dimension-formula verification for one bundled config: estimates
//! dim E, dim J, and dim O, runs the separation diagnostic, and reports
//! whether dim O = max(dim E, dim J) holds within the combined uncertainty.
//!
//! ```sh
//! cargo run --release --example formula_check [CONFIG.toml]
//! ```

use std::path::{Path, PathBuf};

use orbital::config::ExperimentConfig;
use orbital::experiment::run_dimest;

fn main() -> orbital::Result<()> {
    let path: PathBuf = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| {
        Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/basilica_circle.toml")
    });
    let cfg = ExperimentConfig::load(&path)?;
    let rep = run_dimest(&cfg)?;

    println!("config: {}", cfg.name);
    println!("dim_E = {:.4} +- {:.4}", rep.dim_e.estimate, rep.dim_e.uncertainty);
    println!("dim_J = {:.4} +- {:.4}", rep.dim_j.estimate, rep.dim_j.uncertainty);
    if let Some(cross) = &rep.dim_j_escape_crosscheck {
        println!("dim_J (escape raster crosscheck) = {:.4}", cross.estimate);
    }
    println!("dim_O = {:.4} +- {:.4}", rep.dim_o.estimate, rep.dim_o.uncertainty);
    println!(
        "separation diagnostic: {} (distance to postcritical set {:.4})",
        rep.assumption_a, rep.assumption_a_distance
    );
    println!(
        "formula gap dim_O - max(dim_E, dim_J) = {:+.4} (combined uncertainty {:.4})",
        rep.formula_gap, rep.combined_uncertainty
    );
    println!("verdict: {}", rep.verdict);
    Ok(())
}
