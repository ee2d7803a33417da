//! Condensation-set generators: circles, segments, IFS attractors
//! (Sierpinski triangle, Vicsek cross), and the sequence sets
//! `{c + n^{-p}}` and `{c + n^{-p} + i m^{-p}}`.
//!
//! Each generator documents its reference box dimension in the tests that
//! exercise it. Continuum sets are represented by samples whose spacing
//! must stay below half the finest counted scale; the dimension module
//! enforces that with a sampling error.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min_re: f64,
    pub min_im: f64,
    pub max_re: f64,
    pub max_im: f64,
}

impl Rect {
    pub fn new(min_re: f64, min_im: f64, max_re: f64, max_im: f64) -> Self {
        Rect {
            min_re,
            min_im,
            max_re,
            max_im,
        }
    }

    pub fn square(center: Complex64, half: f64) -> Self {
        Rect::new(
            center.re - half,
            center.im - half,
            center.re + half,
            center.im + half,
        )
    }

    pub fn width(&self) -> f64 {
        self.max_re - self.min_re
    }

    pub fn height(&self) -> f64 {
        self.max_im - self.min_im
    }

    pub fn diameter(&self) -> f64 {
        (self.width().powi(2) + self.height().powi(2)).sqrt()
    }

    pub fn min_corner(&self) -> Complex64 {
        Complex64::new(self.min_re, self.min_im)
    }

    pub fn contains(&self, z: Complex64, pad: f64) -> bool {
        z.re >= self.min_re - pad
            && z.re <= self.max_re + pad
            && z.im >= self.min_im - pad
            && z.im <= self.max_im + pad
    }

    pub fn from_points(points: &[Complex64]) -> Self {
        let mut r = Rect::new(
            f64::INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::NEG_INFINITY,
        );
        for z in points {
            r.min_re = r.min_re.min(z.re);
            r.min_im = r.min_im.min(z.im);
            r.max_re = r.max_re.max(z.re);
            r.max_im = r.max_im.max(z.im);
        }
        r
    }
}

/// Finite sample of a planar set. `spacing` is the maximum nearest-neighbor
/// gap along the generating parametrization; 0 means the cloud is the set
/// (discrete sets are represented exactly).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<Complex64>,
    pub spacing: f64,
    pub bbox: Rect,
    pub label: String,
}

impl PointCloud {
    pub fn new(points: Vec<Complex64>, spacing: f64, label: impl Into<String>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyCloud);
        }
        let bbox = Rect::from_points(&points);
        Ok(PointCloud {
            points,
            spacing,
            bbox,
            label: label.into(),
        })
    }

    /// An exact discrete set (spacing 0).
    pub fn from_points(points: Vec<Complex64>, label: impl Into<String>) -> Result<Self> {
        Self::new(points, 0.0, label)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "re,im")?;
        for z in &self.points {
            writeln!(w, "{:?},{:?}", z.re, z.im)?;
        }
        Ok(())
    }
}

/// `n` equally spaced points on the circle `|z - center| = radius`.
pub fn circle_cloud(center: Complex64, radius: f64, n: usize) -> Result<PointCloud> {
    if n < 4 || radius <= 0.0 {
        return Err(Error::Config(format!(
            "circle_cloud needs n >= 4 and radius > 0, got n = {n}, radius = {radius}"
        )));
    }
    let points = (0..n)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
            center + Complex64::from_polar(radius, theta)
        })
        .collect();
    let spacing = 2.0 * std::f64::consts::PI * radius / (n as f64);
    PointCloud::new(
        points,
        spacing,
        format!("circle(center={center}, r={radius}, n={n})"),
    )
}

/// `n` equally spaced points from `a` to `b` inclusive.
pub fn segment_cloud(a: Complex64, b: Complex64, n: usize) -> Result<PointCloud> {
    if n < 2 || a == b {
        return Err(Error::Config(format!(
            "segment_cloud needs n >= 2 and a != b, got n = {n}"
        )));
    }
    let points = (0..n)
        .map(|j| {
            let t = (j as f64) / ((n - 1) as f64);
            a + (b - a) * t
        })
        .collect();
    let spacing = (b - a).norm() / ((n - 1) as f64);
    PointCloud::new(points, spacing, format!("segment({a} -> {b}, n={n})"))
}

/// Segment sample with half the points uniform and half geometrically
/// graded toward `a`, down to parameter `floor` (e.g. 1e-300). Backward
/// iteration of a power map compresses radii as `t^(1/d^k)`, so a uniform
/// sample of a segment ending at a superattracting point starves every
/// deep preimage level of small radii; the geometric half restores them.
pub fn graded_segment_cloud(
    a: Complex64,
    b: Complex64,
    n: usize,
    floor: f64,
) -> Result<PointCloud> {
    if n < 4 || a == b || floor <= 0.0 || floor >= 1.0 {
        return Err(Error::Config(
            "graded_segment_cloud needs n >= 4, a != b, floor in (0,1)".into(),
        ));
    }
    let half = n / 2;
    let mut ts: Vec<f64> = Vec::with_capacity(n + 1);
    ts.push(0.0);
    for j in 0..half {
        ts.push((j as f64 + 1.0) / (half as f64));
    }
    let log_floor = floor.ln();
    for j in 0..(n - half) {
        // geometric from floor up to (but excluding) 1
        let u = (j as f64 + 0.5) / ((n - half) as f64);
        ts.push((log_floor * (1.0 - u)).exp());
    }
    ts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    ts.dedup();
    let uniform_gap = 1.0 / (half as f64);
    let points = ts.iter().map(|&t| a + (b - a) * t).collect();
    PointCloud::new(
        points,
        uniform_gap * (b - a).norm(),
        format!("graded_segment({a} -> {b}, n={n})"),
    )
}

/// Planar similarity `z -> ratio * e^(i rotation) * z + translation`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Similarity {
    pub ratio: f64,
    pub rotation: f64,
    pub translation: Complex64,
}

impl Similarity {
    pub fn contraction(ratio: f64, translation: Complex64) -> Self {
        Similarity {
            ratio,
            rotation: 0.0,
            translation,
        }
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        Complex64::from_polar(self.ratio, self.rotation) * z + self.translation
    }

    pub fn fixed_point(&self) -> Complex64 {
        let a = Complex64::from_polar(self.ratio, self.rotation);
        self.translation / (Complex64::new(1.0, 0.0) - a)
    }
}

/// Three maps of ratio 1/2 toward the vertices of the triangle with corners
/// `origin`, `origin + size`, `origin + size(1 + i sqrt(3))/2`.
pub fn sierpinski_maps(origin: Complex64, size: f64) -> Vec<Similarity> {
    let vertices = [
        origin,
        origin + Complex64::new(size, 0.0),
        origin + Complex64::new(size / 2.0, size * 3f64.sqrt() / 2.0),
    ];
    vertices
        .iter()
        .map(|&v| Similarity::contraction(0.5, v * 0.5))
        .collect()
}

/// Five maps of ratio 1/3: center plus the four corners of the square with
/// min corner `origin` and side `size`.
pub fn vicsek_maps(origin: Complex64, size: f64) -> Vec<Similarity> {
    let offsets = [
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0 / 3.0, 0.0),
        Complex64::new(1.0 / 3.0, 1.0 / 3.0),
        Complex64::new(0.0, 2.0 / 3.0),
        Complex64::new(2.0 / 3.0, 2.0 / 3.0),
    ];
    offsets
        .iter()
        .map(|&o| Similarity::contraction(1.0 / 3.0, origin * (2.0 / 3.0) + o * size))
        .collect()
}

/// Images of a base point (the fixed point of the first map) under all
/// depth-length compositions of the system.
pub fn ifs_cloud(maps: &[Similarity], depth: usize) -> Result<PointCloud> {
    if maps.is_empty() || depth == 0 {
        return Err(Error::Config("ifs_cloud needs maps and depth >= 1".into()));
    }
    let max_ratio = maps.iter().map(|m| m.ratio).fold(0.0f64, f64::max);
    if max_ratio >= 1.0 {
        return Err(Error::Config(format!(
            "ifs_cloud requires contraction ratios < 1, got {max_ratio}"
        )));
    }
    let mut points = vec![maps[0].fixed_point()];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * maps.len());
        for m in maps {
            for &z in &points {
                next.push(m.apply(z));
            }
        }
        points = next;
    }
    let bbox = Rect::from_points(&points);
    let spacing = bbox.diameter() * max_ratio.powi(depth as i32);
    PointCloud::new(
        points,
        spacing,
        format!("ifs({} maps, depth={depth})", maps.len()),
    )
}

/// `{c + n^{-p} : 1 <= n <= count} ∪ {c}`, an exact discrete set.
pub fn sequence_cloud(c: Complex64, p: f64, count: usize) -> Result<PointCloud> {
    if p <= 0.0 || count < 10 {
        return Err(Error::Config(format!(
            "sequence_cloud needs p > 0 and count >= 10, got p = {p}, count = {count}"
        )));
    }
    let mut points = Vec::with_capacity(count + 1);
    points.push(c);
    for n in 1..=count {
        points.push(c + Complex64::new((n as f64).powf(-p), 0.0));
    }
    PointCloud::from_points(points, format!("sequence(c={c}, p={p}, N={count})"))
}

/// `{c + n^{-p} + i m^{-p} : 1 <= n, m <= count}` plus the axis limit
/// points and `c` itself.
pub fn product_sequence_cloud(c: Complex64, p: f64, count: usize) -> Result<PointCloud> {
    if p <= 0.0 || count < 1 {
        return Err(Error::Config(format!(
            "product_sequence_cloud needs p > 0 and count >= 1, got p = {p}, count = {count}"
        )));
    }
    let vals: Vec<f64> = (1..=count).map(|n| (n as f64).powf(-p)).collect();
    let mut points = Vec::with_capacity(count * count + 2 * count + 1);
    points.push(c);
    for &x in &vals {
        points.push(c + Complex64::new(x, 0.0));
        points.push(c + Complex64::new(0.0, x));
        for &y in &vals {
            points.push(c + Complex64::new(x, y));
        }
    }
    PointCloud::from_points(points, format!("product_sequence(c={c}, p={p}, N={count})"))
}
