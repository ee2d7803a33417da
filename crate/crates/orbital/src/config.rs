//! TOML experiment configuration: map, condensation shape, orbit depth and
//! budget, scale ladder, Julia parameters, and output paths.
//!
//! Polynomials are written as lists of `[re, im]` pairs, lowest degree
//! first. Shapes are kind-tagged tables.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{ComplexPoly, RationalMap};
use crate::dimension::ScaleLadder;
use crate::error::{Error, Result};
use crate::shapes;
use crate::shapes::{PointCloud, Rect};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapSpec {
    /// Numerator coefficients, lowest degree first, as [re, im] pairs.
    pub p: Vec<[f64; 2]>,
    /// Denominator; defaults to the constant 1 (polynomial map).
    #[serde(default)]
    pub q: Vec<[f64; 2]>,
    #[serde(default = "default_escape_radius")]
    pub escape_radius: f64,
}

fn default_escape_radius() -> f64 {
    crate::algebra::DEFAULT_ESCAPE_RADIUS
}

fn to_poly(pairs: &[[f64; 2]]) -> ComplexPoly {
    ComplexPoly::new(
        pairs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    )
}

impl MapSpec {
    pub fn build(&self) -> Result<RationalMap> {
        if self.p.is_empty() {
            return Err(Error::Config("map.p must be non-empty".into()));
        }
        let p = to_poly(&self.p);
        let q = if self.q.is_empty() {
            ComplexPoly::constant(Complex64::new(1.0, 0.0))
        } else {
            to_poly(&self.q)
        };
        Ok(RationalMap::new(p, q)?.with_escape_radius(self.escape_radius))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ShapeSpec {
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(default = "default_samples")]
        samples: usize,
    },
    Segment {
        a: [f64; 2],
        b: [f64; 2],
        #[serde(default = "default_samples")]
        samples: usize,
        /// Adds a geometric grading toward `a` down to this parameter floor.
        #[serde(default)]
        graded_floor: Option<f64>,
    },
    Sierpinski {
        origin: [f64; 2],
        size: f64,
        depth: usize,
    },
    Vicsek {
        origin: [f64; 2],
        size: f64,
        depth: usize,
    },
    Sequence {
        c: [f64; 2],
        p: f64,
        count: usize,
    },
    ProductSequence {
        c: [f64; 2],
        p: f64,
        count: usize,
    },
    Points {
        points: Vec<[f64; 2]>,
    },
}

fn default_samples() -> usize {
    4096
}

fn cx(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

impl ShapeSpec {
    pub fn build(&self) -> Result<PointCloud> {
        match self {
            ShapeSpec::Circle {
                center,
                radius,
                samples,
            } => shapes::circle_cloud(cx(*center), *radius, *samples),
            ShapeSpec::Segment {
                a,
                b,
                samples,
                graded_floor,
            } => match graded_floor {
                Some(floor) => shapes::graded_segment_cloud(cx(*a), cx(*b), *samples, *floor),
                None => shapes::segment_cloud(cx(*a), cx(*b), *samples),
            },
            ShapeSpec::Sierpinski {
                origin,
                size,
                depth,
            } => shapes::ifs_cloud(&shapes::sierpinski_maps(cx(*origin), *size), *depth),
            ShapeSpec::Vicsek {
                origin,
                size,
                depth,
            } => shapes::ifs_cloud(&shapes::vicsek_maps(cx(*origin), *size), *depth),
            ShapeSpec::Sequence { c, p, count } => shapes::sequence_cloud(cx(*c), *p, *count),
            ShapeSpec::ProductSequence { c, p, count } => {
                shapes::product_sequence_cloud(cx(*c), *p, *count)
            }
            ShapeSpec::Points { points } => {
                PointCloud::from_points(points.iter().map(|&v| cx(v)).collect(), "points")
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitSpec {
    #[serde(default = "default_depth")]
    pub depth: u32,
    #[serde(default = "default_budget")]
    pub budget: usize,
    /// 0 lets the ladder choose (delta_min / 4).
    #[serde(default)]
    pub dedup_cell: f64,
}

fn default_depth() -> u32 {
    10
}

fn default_budget() -> usize {
    10_000_000
}

impl Default for OrbitSpec {
    fn default() -> Self {
        OrbitSpec {
            depth: default_depth(),
            budget: default_budget(),
            dedup_cell: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LadderSpec {
    #[serde(default = "default_delta0")]
    pub delta0: f64,
    #[serde(default = "default_scale_count")]
    pub count: usize,
    /// Fit window as inclusive scale indices; defaults to the full ladder.
    #[serde(default)]
    pub window: Option<(usize, usize)>,
}

fn default_delta0() -> f64 {
    0.25
}

fn default_scale_count() -> usize {
    9
}

impl Default for LadderSpec {
    fn default() -> Self {
        LadderSpec {
            delta0: default_delta0(),
            count: default_scale_count(),
            window: None,
        }
    }
}

impl LadderSpec {
    pub fn build(&self) -> Result<ScaleLadder> {
        let ladder = ScaleLadder::dyadic(self.delta0, self.count)?;
        match self.window {
            Some((lo, hi)) => ladder.with_window(lo, hi),
            None => Ok(ladder),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JuliaMethodSpec {
    Backward,
    Escape,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JuliaSpec {
    #[serde(default = "default_julia_method")]
    pub method: JuliaMethodSpec,
    /// Backward-iteration seed; defaults to a boundary cell of a coarse
    /// escape raster (polynomial maps only).
    #[serde(default)]
    pub seed: Option<[f64; 2]>,
    #[serde(default = "default_julia_depth")]
    pub depth: u32,
    #[serde(default = "default_burn_in")]
    pub burn_in: u32,
    /// Raster window as [min_re, min_im, max_re, max_im].
    #[serde(default)]
    pub window: Option<[f64; 4]>,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_julia_method() -> JuliaMethodSpec {
    JuliaMethodSpec::Backward
}

fn default_julia_depth() -> u32 {
    14
}

fn default_burn_in() -> u32 {
    crate::julia::DEFAULT_BURN_IN
}

fn default_resolution() -> usize {
    512
}

fn default_max_iter() -> usize {
    200
}

impl Default for JuliaSpec {
    fn default() -> Self {
        JuliaSpec {
            method: default_julia_method(),
            seed: None,
            depth: default_julia_depth(),
            burn_in: default_burn_in(),
            window: None,
            resolution: default_resolution(),
            max_iter: default_max_iter(),
        }
    }
}

impl JuliaSpec {
    pub fn window_rect(&self) -> Option<Rect> {
        self.window.map(|[a, b, c, d]| Rect::new(a, b, c, d))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HzSpec {
    pub seed: [f64; 2],
    #[serde(default = "default_hz_depth")]
    pub depth: u32,
    #[serde(default = "default_s_lo")]
    pub s_lo: f64,
    #[serde(default = "default_s_hi")]
    pub s_hi: f64,
    #[serde(default = "default_hz_iters")]
    pub iters: usize,
}

fn default_hz_depth() -> u32 {
    12
}

fn default_s_lo() -> f64 {
    0.05
}

fn default_s_hi() -> f64 {
    2.5
}

fn default_hz_iters() -> usize {
    40
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Experiment name; prefixes output file names.
    #[serde(default = "default_name")]
    pub name: String,
    pub map: MapSpec,
    pub shape: ShapeSpec,
    #[serde(default)]
    pub orbit: OrbitSpec,
    #[serde(default)]
    pub ladder: LadderSpec,
    #[serde(default)]
    pub julia: JuliaSpec,
    #[serde(default)]
    pub hz: Option<HzSpec>,
    /// Postcritical tube radius for the separation diagnostic.
    #[serde(default = "default_tube")]
    pub tube: f64,
    #[serde(default = "default_postcritical_iters")]
    pub postcritical_iters: usize,
}

fn default_name() -> String {
    "experiment".into()
}

fn default_tube() -> f64 {
    0.05
}

fn default_postcritical_iters() -> usize {
    64
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_toml(&std::fs::read_to_string(path)?)
    }

    /// Effective dedup cell: explicit value, or a quarter of the finest
    /// counted scale.
    pub fn dedup_cell(&self) -> Result<f64> {
        if self.orbit.dedup_cell > 0.0 {
            return Ok(self.orbit.dedup_cell);
        }
        Ok(self.ladder.build()?.default_dedup_cell())
    }
}
