//! Rasterization of point clouds and orbit trees to grayscale images.
//!
//! Orbit renders encode depth as darkness: deeper preimages, which sit
//! closer to the Julia set, are drawn darker, so the attractor structure is
//! readable from a still image.

use image::{GrayImage, Luma};

use crate::error::Result;
use crate::orbit::OrbitCloud;
use crate::shapes::{PointCloud, Rect};

pub const DEFAULT_RESOLUTION: u32 = 2048;

/// Bounding box of the points expanded by a 5% margin, squared up so pixels
/// stay isotropic.
pub fn render_window(bbox: Rect) -> Rect {
    let half = 0.5 * bbox.width().max(bbox.height()).max(1e-6) * 1.05;
    let center = num_complex::Complex64::new(
        0.5 * (bbox.min_re + bbox.max_re),
        0.5 * (bbox.min_im + bbox.max_im),
    );
    Rect::square(center, half)
}

fn pixel_of(window: &Rect, res: u32, re: f64, im: f64) -> Option<(u32, u32)> {
    let x = (re - window.min_re) / window.width() * res as f64;
    // image rows grow downward; flip so im grows upward
    let y = (window.max_im - im) / window.height() * res as f64;
    if x < 0.0 || y < 0.0 || x >= res as f64 || y >= res as f64 {
        return None;
    }
    Some((x as u32, y as u32))
}

/// White-background render of a plain point cloud.
pub fn render_cloud(cloud: &PointCloud, resolution: u32) -> GrayImage {
    let window = render_window(cloud.bbox);
    let mut img = GrayImage::from_pixel(resolution, resolution, Luma([255u8]));
    for z in &cloud.points {
        if let Some((x, y)) = pixel_of(&window, resolution, z.re, z.im) {
            img.put_pixel(x, y, Luma([0u8]));
        }
    }
    img
}

/// Orbit render with depth-graded darkness: depth 0 is mid-gray, the
/// deepest level is black.
pub fn render_orbit(tree: &OrbitCloud, resolution: u32) -> GrayImage {
    let bbox = Rect::from_points(&tree.nodes.iter().map(|n| n.point).collect::<Vec<_>>());
    let window = render_window(bbox);
    let depth_max = tree.max_populated_depth().max(1) as f64;
    let mut img = GrayImage::from_pixel(resolution, resolution, Luma([255u8]));
    let mut nodes: Vec<_> = tree.nodes.iter().collect();
    // draw shallow first so deep (dark) pixels win overlaps
    nodes.sort_by_key(|n| n.depth);
    for n in nodes {
        if let Some((x, y)) = pixel_of(&window, resolution, n.point.re, n.point.im) {
            let shade = (160.0 * (1.0 - n.depth as f64 / depth_max)) as u8;
            img.put_pixel(x, y, Luma([shade]));
        }
    }
    img
}

pub fn save_png(img: &GrayImage, path: &std::path::Path) -> Result<()> {
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| crate::error::Error::Config(format!("png write failed: {e}")))
}

/// Binary PGM (P5) of a grayscale image.
pub fn write_pgm<W: std::io::Write>(img: &GrayImage, mut w: W) -> std::io::Result<()> {
    writeln!(w, "P5")?;
    writeln!(w, "{} {}", img.width(), img.height())?;
    writeln!(w, "255")?;
    w.write_all(img.as_raw())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RationalMap;
    use crate::orbit::{backward_tree, TreeParams};
    use crate::shapes::circle_cloud;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn window_has_margin_and_is_square() {
        let w = render_window(Rect::new(0.0, 0.0, 2.0, 1.0));
        assert!((w.width() - w.height()).abs() < 1e-12);
        assert!(w.width() > 2.0);
        assert!(w.min_re < 0.0 && w.max_re > 2.0);
    }

    #[test]
    fn cloud_render_hits_expected_pixels() {
        let cloud = circle_cloud(c(0.0, 0.0), 1.0, 1024).unwrap();
        let img = render_cloud(&cloud, 256);
        let dark = img.pixels().filter(|p| p.0[0] == 0).count();
        assert!(dark > 100 && dark < 4000, "dark pixel count {dark}");
        // center stays white
        assert_eq!(img.get_pixel(128, 128).0[0], 255);
    }

    #[test]
    fn orbit_render_darker_with_depth() {
        let map = RationalMap::quadratic(c(-1.0, 0.0));
        let seeds = crate::shapes::PointCloud::from_points(vec![c(2.0, 2.0)], "s").unwrap();
        let tree = backward_tree(&map, &seeds, TreeParams::new(8, 1e-3, 100_000)).unwrap();
        let img = render_orbit(&tree, 512);
        let dark = img.pixels().filter(|p| p.0[0] < 255).count();
        assert!(dark > 100);
        let min_shade = img.pixels().map(|p| p.0[0]).min().unwrap();
        assert!(min_shade < 30, "deepest shade {min_shade}");
    }

    #[test]
    fn pgm_roundtrip_header() {
        let cloud = circle_cloud(c(0.0, 0.0), 1.0, 64).unwrap();
        let img = render_cloud(&cloud, 64);
        let mut buf = Vec::new();
        write_pgm(&img, &mut buf).unwrap();
        assert!(buf.starts_with(b"P5\n64 64\n255\n"));
        assert_eq!(buf.len(), 13 + 64 * 64);
    }
}
