//! Convergence exponent of the backward-orbit series from single seeds,
//! and the inequality h_z <= dim J.
//!
//! ```sh
//! cargo run --release --example hz_exponent
//! ```

use num_complex::Complex64;
use orbital::algebra::RationalMap;
use orbital::dimension::{dim_estimate, ScaleLadder};
use orbital::experiment::default_julia_window;
use orbital::julia::escape_boundary;
use orbital::orbit::hz_exponent;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> orbital::Result<()> {
    let cases = [
        ("z^2", RationalMap::quadratic(c(0.0, 0.0)), c(2.0, 0.0)),
        ("z^2", RationalMap::quadratic(c(0.0, 0.0)), c(3.0, 1.0)),
        ("z^2-1", RationalMap::quadratic(c(-1.0, 0.0)), c(2.0, 2.0)),
    ];
    for (name, map, seed) in cases {
        let (h, bracket) = hz_exponent(&map, seed, 12, 0.05, 2.5, 40)?;
        let julia = escape_boundary(&map, default_julia_window(&map)?, 2048, 400)?;
        let dim_j = dim_estimate(&julia.cloud, &ScaleLadder::dyadic(0.25, 6)?)?.estimate;
        println!(
            "{name:<6} z = {seed}: h_z = {h:.4} (+- {bracket:.1e}), dim_J = {dim_j:.4}, \
             h_z <= dim_J: {}",
            h <= dim_j + 0.1
        );
    }
    Ok(())
}
