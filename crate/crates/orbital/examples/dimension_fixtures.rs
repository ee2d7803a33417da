//! Box-dimension estimates for shapes whose dimensions are known exactly,
//! as a calibration check of the counting machinery.
//!
//! ```sh
//! cargo run --release --example dimension_fixtures
//! ```

use num_complex::Complex64;
use orbital::dimension::{dim_estimate, ScaleLadder};
use orbital::shapes::{
    circle_cloud, ifs_cloud, segment_cloud, sequence_cloud, sierpinski_maps, vicsek_maps,
    PointCloud,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> orbital::Result<()> {
    let mut rows: Vec<(&str, PointCloud, ScaleLadder, f64)> = vec![
        (
            "segment [0,1]",
            segment_cloud(c(0.0, 0.0), c(1.0, 0.0), 100_000)?,
            ScaleLadder::dyadic(0.125, 9)?,
            1.0,
        ),
        (
            "unit circle",
            circle_cloud(c(0.0, 0.0), 1.0, 100_000)?,
            ScaleLadder::dyadic(0.25, 9)?,
            1.0,
        ),
        (
            "sierpinski triangle",
            ifs_cloud(&sierpinski_maps(c(0.0, 0.0), 1.0), 10)?,
            ScaleLadder::dyadic(0.25, 7)?,
            3f64.log2(),
        ),
        (
            "vicsek cross",
            ifs_cloud(&vicsek_maps(c(0.0, 0.0), 1.0), 7)?,
            ScaleLadder::dyadic(0.25, 8)?,
            5f64.ln() / 3f64.ln(),
        ),
        (
            "{1/n}",
            sequence_cloud(c(0.0, 0.0), 1.0, 1_000_000)?,
            ScaleLadder::dyadic(0.5f64.powi(5), 10)?,
            0.5,
        ),
        (
            "{1/n^2}",
            sequence_cloud(c(0.0, 0.0), 2.0, 1_000_000)?,
            ScaleLadder::dyadic(0.5f64.powi(5), 10)?,
            1.0 / 3.0,
        ),
    ];

    println!("{:<22} {:>9} {:>8} {:>8} {:>7}", "shape", "estimate", "exact", "error", "+-");
    for (name, cloud, ladder, exact) in rows.drain(..) {
        let rep = dim_estimate(&cloud, &ladder)?;
        println!(
            "{:<22} {:>9.4} {:>8.4} {:>+8.4} {:>7.4}",
            name,
            rep.estimate,
            exact,
            rep.estimate - exact,
            rep.uncertainty
        );
    }
    Ok(())
}
