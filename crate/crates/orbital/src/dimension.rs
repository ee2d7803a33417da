//! Grid box counting over a dyadic scale ladder and slope-based estimation
//! of the upper box dimension.
//!
//! A count at scale delta uses axis-aligned cells of side delta/sqrt(2)
//! (cell diameter = delta) anchored at the cloud's bounding-box corner.
//! Grid counts agree with minimal cover counts up to a bounded factor,
//! which cancels in log-log slopes. The limsup is approximated by the OLS
//! slope over a window of scales, with the maximum two-point slope kept as
//! a diagnostic.

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::PointCloud;

/// Strictly decreasing dyadic scales `delta_j = delta0 * 2^-j` and the
/// index window used for slope fitting.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScaleLadder {
    pub deltas: Vec<f64>,
    pub window: (usize, usize),
}

impl ScaleLadder {
    pub fn dyadic(delta0: f64, count: usize) -> Result<Self> {
        if delta0 <= 0.0 || count < 3 {
            return Err(Error::Window(format!(
                "ladder needs delta0 > 0 and at least 3 scales, got {delta0}, {count}"
            )));
        }
        let deltas = (0..count).map(|j| delta0 * 0.5f64.powi(j as i32)).collect();
        Ok(ScaleLadder {
            deltas,
            window: (0, count - 1),
        })
    }

    pub fn with_window(mut self, lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi || hi >= self.deltas.len() {
            return Err(Error::Window(format!(
                "window ({lo}, {hi}) invalid for {} scales",
                self.deltas.len()
            )));
        }
        self.window = (lo, hi);
        Ok(self)
    }

    pub fn delta_min(&self) -> f64 {
        *self.deltas.last().unwrap()
    }

    pub fn delta_max(&self) -> f64 {
        self.deltas[0]
    }

    /// Default dedup cell for orbit enumeration feeding this ladder:
    /// a quarter of the finest counted scale, so dedup never deletes
    /// boxes at any counted scale.
    pub fn default_dedup_cell(&self) -> f64 {
        self.delta_min() / 4.0
    }

    /// Drops the two finest scales from the fitting window; used for
    /// depth-truncated orbit clouds whose fine scales are starved.
    pub fn truncation_trimmed(mut self) -> Self {
        let (lo, hi) = self.window;
        if hi >= lo + 4 {
            self.window = (lo, hi - 2);
        }
        self
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoxCountReport {
    pub deltas: Vec<f64>,
    pub counts: Vec<usize>,
    pub window: (usize, usize),
    pub ols_slope: f64,
    pub ols_stderr: f64,
    pub local_slopes: Vec<f64>,
    pub max_local_slope: f64,
    pub estimate: f64,
    pub uncertainty: f64,
    pub label: String,
}

impl BoxCountReport {
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "delta,count")?;
        for (d, n) in self.deltas.iter().zip(self.counts.iter()) {
            writeln!(w, "{:?},{}", d, n)?;
        }
        Ok(())
    }
}

/// Occupied grid cells of diameter `delta`, anchored at the cloud's
/// bounding-box min corner.
pub fn box_count(cloud: &PointCloud, delta: f64) -> Result<usize> {
    box_count_anchored(cloud, delta, cloud.bbox.min_corner())
}

/// Same count on a caller-supplied anchor, so that subsets can be compared
/// on a literally shared grid.
pub fn box_count_anchored(cloud: &PointCloud, delta: f64, anchor: Complex64) -> Result<usize> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud);
    }
    if delta <= 0.0 {
        return Err(Error::Window(format!("delta must be positive, got {delta}")));
    }
    if cloud.spacing > delta / 2.0 {
        return Err(Error::Sampling {
            spacing: cloud.spacing,
            delta,
        });
    }
    let side = delta / std::f64::consts::SQRT_2;
    let mut cells: HashSet<(i64, i64)> = HashSet::with_capacity(cloud.len() / 4 + 16);
    for z in &cloud.points {
        let i = ((z.re - anchor.re) / side).floor() as i64;
        let j = ((z.im - anchor.im) / side).floor() as i64;
        cells.insert((i, j));
    }
    Ok(cells.len())
}

/// Counts the cloud across the ladder and fits the log-log slope over the
/// window. `estimate` is the OLS slope; `max_local_slope` approximates the
/// limsup and feeds the uncertainty.
pub fn dim_estimate(cloud: &PointCloud, ladder: &ScaleLadder) -> Result<BoxCountReport> {
    let (lo, hi) = ladder.window;
    if hi < lo + 2 {
        return Err(Error::Window(format!(
            "need at least 3 scales in window, got ({lo}, {hi})"
        )));
    }
    let counts: Vec<usize> = ladder
        .deltas
        .iter()
        .map(|&d| box_count(cloud, d))
        .collect::<Result<_>>()?;

    let ln2 = std::f64::consts::LN_2;
    let xs: Vec<f64> = ladder.deltas[lo..=hi].iter().map(|d| -d.ln()).collect();
    let ys: Vec<f64> = counts[lo..=hi].iter().map(|&n| (n as f64).ln()).collect();
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .sum();
    let stderr = if xs.len() > 2 {
        (ss_res / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };

    let local_slopes: Vec<f64> = counts
        .windows(2)
        .map(|w| ((w[1] as f64).ln() - (w[0] as f64).ln()) / ln2)
        .collect();
    let max_local_slope = local_slopes[lo..hi]
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);

    let uncertainty = (max_local_slope - slope).abs().max(stderr);
    Ok(BoxCountReport {
        deltas: ladder.deltas.clone(),
        counts,
        window: ladder.window,
        ols_slope: slope,
        ols_stderr: stderr,
        local_slopes,
        max_local_slope,
        estimate: slope,
        uncertainty,
        label: cloud.label.clone(),
    })
}
