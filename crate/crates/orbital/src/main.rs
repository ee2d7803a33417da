use std::path::PathBuf;

use clap::{Parser, Subcommand};

use orbital::config::ExperimentConfig;
use orbital::experiment;

#[derive(Parser)]
#[command(name = "orbital", about = "Backward-orbit experiments for rational maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Experiment config (TOML); required by all subcommands except
    /// `counterexamples`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for images, CSV, and JSON reports.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the config's backward-orbit depth.
    #[arg(long, global = true)]
    depth: Option<u32>,

    /// Override the config's node budget.
    #[arg(long, global = true)]
    budget: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Render the orbital set to PNG/PGM and dump the tree as CSV.
    Render,
    /// Estimate dim E, dim J, dim O and verify the max-formula.
    Dimest,
    /// Convergence exponent h_z and the inequality h_z <= dim J.
    Hz,
    /// Run the three bundled counterexample configurations.
    Counterexamples,
    /// Escape-time raster of the Julia set (polynomial maps only).
    Julia,
}

fn load_config(cli: &Cli) -> orbital::Result<ExperimentConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| orbital::Error::Config("--config PATH is required".into()))?;
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(depth) = cli.depth {
        cfg.orbit.depth = depth;
    }
    if let Some(budget) = cli.budget {
        cfg.orbit.budget = budget;
    }
    Ok(cfg)
}

fn write_json<T: serde::Serialize>(out: &std::path::Path, name: &str, value: &T) -> orbital::Result<()> {
    std::fs::create_dir_all(out)?;
    let path = out.join(name);
    std::fs::write(&path, serde_json::to_string_pretty(value)?)?;
    println!("wrote {}", path.display());
    Ok(())
}

fn run(cli: &Cli) -> orbital::Result<()> {
    match &cli.command {
        Command::Render => {
            let cfg = load_config(cli)?;
            let summary = experiment::run_render(&cfg, &cli.out)?;
            write_json(&cli.out, &format!("{}_render.json", cfg.name), &summary)?;
        }
        Command::Dimest => {
            let cfg = load_config(cli)?;
            let report = experiment::run_dimest(&cfg)?;
            println!(
                "dim_E = {:.4}  dim_J = {:.4}  dim_O = {:.4}  gap = {:+.4}  verdict = {}",
                report.dim_e.estimate,
                report.dim_j.estimate,
                report.dim_o.estimate,
                report.formula_gap,
                report.verdict
            );
            write_json(&cli.out, &format!("{}_dimest.json", cfg.name), &report)?;
        }
        Command::Hz => {
            let cfg = load_config(cli)?;
            let report = experiment::run_hz(&cfg)?;
            println!(
                "h_z = {:.4} (+- {:.4})  dim_J = {:.4}  inequality_ok = {}",
                report.h_z, report.h_z_bracket, report.dim_j, report.inequality_ok
            );
            write_json(&cli.out, &format!("{}_hz.json", cfg.name), &report)?;
        }
        Command::Counterexamples => {
            let suite = experiment::run_counterexamples()?;
            for case in &suite.cases {
                println!(
                    "{}: dim_E = {:.4}  dim_J = {:.4}  dim_O = {:.4}  [{}]  {}",
                    case.name,
                    case.dim_e,
                    case.dim_j,
                    case.dim_o,
                    case.target,
                    if case.pass { "pass" } else { "FAIL" }
                );
            }
            write_json(&cli.out, "counterexamples.json", &suite)?;
        }
        Command::Julia => {
            let cfg = load_config(cli)?;
            let summary = experiment::run_julia(&cfg, &cli.out)?;
            println!("{} boundary cells", summary.boundary_cells);
            write_json(&cli.out, &format!("{}_julia.json", cfg.name), &summary)?;
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool already initialized");
    }
    if let Err(e) = run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
