//! Compares the two Julia-set approximations — backward iteration and the
//! escape-time boundary raster — on the same map, reporting the one-sided
//! Hausdorff distances and both dimension estimates.
//!
//! ```sh
//! cargo run --release --example julia_methods
//! ```

use num_complex::Complex64;
use orbital::algebra::RationalMap;
use orbital::dimension::{dim_estimate, ScaleLadder};
use orbital::julia::{escape_boundary, julia_backward_with_burn};
use orbital::shapes::{PointCloud, Rect};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn one_sided_hausdorff(from: &PointCloud, to: &PointCloud) -> f64 {
    from.points
        .iter()
        .map(|&z| {
            to.points
                .iter()
                .map(|&w| (z - w).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

fn main() -> orbital::Result<()> {
    let map = RationalMap::quadratic(c(-1.0, 0.0));

    let backward = julia_backward_with_burn(&map, c(2.0, 2.0), 14, 1e-3, 4_000_000, 6)?;
    let window = Rect::square(c(0.0, 0.0), 2.0);
    let escape = escape_boundary(&map, window, 2048, 400)?.cloud;

    let ladder = ScaleLadder::dyadic(0.25, 6)?;
    let dim_b = dim_estimate(&backward.cloud, &ladder)?;
    let dim_e = dim_estimate(&escape, &ladder)?;

    println!("backward iteration: {} points, dim = {:.4} +- {:.4}",
        backward.cloud.len(), dim_b.estimate, dim_b.uncertainty);
    println!("escape boundary:    {} points, dim = {:.4} +- {:.4}",
        escape.len(), dim_e.estimate, dim_e.uncertainty);
    println!(
        "hausdorff(backward -> escape) = {:.4}",
        one_sided_hausdorff(&backward.cloud, &escape)
    );
    println!(
        "hausdorff(escape -> backward) = {:.4}",
        one_sided_hausdorff(&escape, &backward.cloud)
    );
    Ok(())
}
