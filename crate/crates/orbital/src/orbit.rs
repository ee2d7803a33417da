//! Backward-orbit tree enumeration with accumulated derivatives.
//!
//! The tree is expanded breadth-first: level k+1 is the union of the fibers
//! of level-k points, with each child carrying
//! `log|(T^{k+1})'(child)| = log|T'(child)| + log|(T^k)'(parent)|`.
//! Each level is deduplicated on a grid, keeping per cell the node with the
//! smallest forward log-derivative: that is the branch whose inverse image
//! is largest and therefore the one that still needs covering detail.
//! Frontier expansion is partitioned across workers; the merge is an
//! ordered reduction, so results are scheduler-independent.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::{floored_log_abs, RationalMap};
use crate::error::{Error, Result};
use crate::roots::preimages;
use crate::shapes::PointCloud;

#[derive(Debug, Clone, Copy)]
pub struct OrbitNode {
    pub point: Complex64,
    pub depth: u32,
    /// `log|(T^depth)'(point)|`, accumulated along the branch.
    pub log_fwd_derivative: f64,
}

#[derive(Debug, Clone)]
pub struct OrbitCloud {
    pub nodes: Vec<OrbitNode>,
    pub seed_meta: String,
    pub depth_max: u32,
    pub dedup_cell: f64,
    /// Set when enumeration stopped early because the node budget ran out.
    pub truncated: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct TreeParams {
    pub depth: u32,
    /// 0 disables grid dedup (exact duplicates still collapse).
    pub dedup_cell: f64,
    /// Total node-visit budget; exceeding it sets the truncation flag.
    pub budget: usize,
    pub fiber_tol: f64,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            depth: 8,
            dedup_cell: 0.0,
            budget: 50_000_000,
            fiber_tol: 1e-10,
        }
    }
}

impl TreeParams {
    pub fn new(depth: u32, dedup_cell: f64, budget: usize) -> Self {
        TreeParams {
            depth,
            dedup_cell,
            budget,
            ..Default::default()
        }
    }
}

fn cell_key(z: Complex64, cell: f64) -> (i64, i64) {
    ((z.re / cell).floor() as i64, (z.im / cell).floor() as i64)
}

fn sort_nodes(nodes: &mut [OrbitNode]) {
    nodes.sort_by(|a, b| {
        (a.point.re, a.point.im)
            .partial_cmp(&(b.point.re, b.point.im))
            .unwrap()
    });
}

fn dedup_exact(mut nodes: Vec<OrbitNode>) -> Vec<OrbitNode> {
    nodes.sort_by(|a, b| {
        (a.log_fwd_derivative, a.point.re, a.point.im)
            .partial_cmp(&(b.log_fwd_derivative, b.point.re, b.point.im))
            .unwrap()
    });
    sort_nodes(&mut nodes);
    nodes.dedup_by(|a, b| a.point == b.point);
    nodes
}

/// Grid dedup of one level, keyed on the spatial cell *and* the dyadic
/// derivative band: two nodes at the same location whose accumulated
/// derivatives differ by a factor of 2 or more carry geometrically
/// different preimage trees (inverse-branch disk sizes scale with
/// 1/|(T^k)'|), so merging them starves deep levels. Within a key the node
/// of smallest log-derivative wins, ties broken lexicographically.
///
/// Nodes within `protect_radius` of a critical value are exempt from grid
/// merging (exact duplicates still collapse): near a critical value of
/// multiplicity m the inverse branches expand like |w - w_c|^(1/m - 1), so
/// two nodes a cell apart there have descendant fans that separate instead
/// of staying close, and merging them permanently deletes coverage.
fn dedup_level(
    mut nodes: Vec<OrbitNode>,
    cell: f64,
    protected: &[Complex64],
    protect_radius: f64,
) -> Vec<OrbitNode> {
    if cell <= 0.0 {
        return dedup_exact(nodes);
    }
    let ln2 = std::f64::consts::LN_2;
    let mut best: HashMap<(i64, i64, i64), OrbitNode> = HashMap::with_capacity(nodes.len());
    let mut exempt: Vec<OrbitNode> = Vec::new();
    // deterministic preference independent of input order
    nodes.sort_by(|a, b| {
        (a.log_fwd_derivative, a.point.re, a.point.im)
            .partial_cmp(&(b.log_fwd_derivative, b.point.re, b.point.im))
            .unwrap()
    });
    for node in nodes {
        if protected
            .iter()
            .any(|&c| (node.point - c).norm() < protect_radius)
        {
            exempt.push(node);
            continue;
        }
        let (i, j) = cell_key(node.point, cell);
        let band = (node.log_fwd_derivative / ln2).floor() as i64;
        best.entry((i, j, band)).or_insert(node);
    }
    let mut out: Vec<OrbitNode> = best.into_values().collect();
    out.extend(dedup_exact(exempt));
    sort_nodes(&mut out);
    out
}

/// Position-only grid dedup, used for the final cloud merge where only the
/// covered cells matter.
fn dedup_spatial(mut nodes: Vec<OrbitNode>, cell: f64) -> Vec<OrbitNode> {
    if cell <= 0.0 {
        return dedup_exact(nodes);
    }
    let mut best: HashMap<(i64, i64), OrbitNode> = HashMap::with_capacity(nodes.len());
    nodes.sort_by(|a, b| {
        (a.log_fwd_derivative, a.point.re, a.point.im)
            .partial_cmp(&(b.log_fwd_derivative, b.point.re, b.point.im))
            .unwrap()
    });
    for node in nodes {
        best.entry(cell_key(node.point, cell)).or_insert(node);
    }
    let mut out: Vec<OrbitNode> = best.into_values().collect();
    sort_nodes(&mut out);
    out
}

/// Breadth-first fiber expansion of the backward orbit of `seeds` down to
/// `params.depth`, or until the node budget is hit.
pub fn backward_tree(map: &RationalMap, seeds: &PointCloud, params: TreeParams) -> Result<OrbitCloud> {
    if seeds.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let level0: Vec<OrbitNode> = seeds
        .points
        .iter()
        .map(|&z| OrbitNode {
            point: z,
            depth: 0,
            log_fwd_derivative: 0.0,
        })
        .collect();
    // seeds are never grid-merged: sub-cell structure in E (e.g. a graded
    // tail toward a superattracting point) unfolds only at depth
    let mut frontier = dedup_exact(level0);
    let mut nodes: Vec<OrbitNode> = frontier.clone();
    let mut visits = nodes.len();
    let mut truncated = false;
    let d = map.degree();
    // exemption zone around the critical values; sqrt(cell) because one
    // degree-2 inverse step maps a cell-sized gap at distance r from the
    // critical value to a gap of order cell / sqrt(r)
    let protected: Vec<Complex64> = if params.dedup_cell > 0.0 {
        map.critical_values(params.fiber_tol).unwrap_or_default()
    } else {
        Vec::new()
    };
    let protect_radius = params.dedup_cell.sqrt();

    for depth in 1..=params.depth {
        if frontier.is_empty() {
            break;
        }
        let mut parents = frontier.len();
        if visits + parents * d > params.budget {
            parents = (params.budget.saturating_sub(visits)) / d;
            truncated = true;
        }
        if parents == 0 {
            break;
        }
        let children: Result<Vec<Vec<OrbitNode>>> = frontier[..parents]
            .par_iter()
            .map(|parent| -> Result<Vec<OrbitNode>> {
                let fiber = preimages(map, parent.point, params.fiber_tol)?;
                let mut out = Vec::with_capacity(d);
                for r in fiber.distinct() {
                    let der = map.derivative_at(r)?;
                    out.push(OrbitNode {
                        point: r,
                        depth,
                        log_fwd_derivative: floored_log_abs(der) + parent.log_fwd_derivative,
                    });
                }
                Ok(out)
            })
            .collect();
        let level: Vec<OrbitNode> = children?.into_iter().flatten().collect();
        visits += level.len();
        frontier = dedup_level(level, params.dedup_cell, &protected, protect_radius);
        nodes.extend_from_slice(&frontier);
        if truncated {
            break;
        }
    }

    Ok(OrbitCloud {
        nodes,
        seed_meta: seeds.label.clone(),
        depth_max: params.depth,
        dedup_cell: params.dedup_cell,
        truncated,
    })
}

impl OrbitCloud {
    pub fn level(&self, depth: u32) -> impl Iterator<Item = &OrbitNode> {
        self.nodes.iter().filter(move |n| n.depth == depth)
    }

    pub fn max_populated_depth(&self) -> u32 {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// CSV rows: re, im, depth, log_fwd_derivative.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "re,im,depth,log_fwd_derivative")?;
        for n in &self.nodes {
            writeln!(
                w,
                "{:?},{:?},{},{:?}",
                n.point.re, n.point.im, n.depth, n.log_fwd_derivative
            )?;
        }
        Ok(())
    }
}

/// Union over all depths with a final grid dedup; the result carries the
/// dedup cell as its certified sample spacing.
pub fn orbital_cloud(tree: &OrbitCloud) -> Result<PointCloud> {
    let merged = dedup_spatial(tree.nodes.clone(), tree.dedup_cell);
    let points: Vec<Complex64> = merged.iter().map(|n| n.point).collect();
    PointCloud::new(
        points,
        tree.dedup_cell.max(0.0),
        format!("orbital({}, K={})", tree.seed_meta, tree.depth_max),
    )
}

/// Restricts the tree to depths in `[lo, hi]` and merges them into a cloud.
pub fn depth_band_cloud(tree: &OrbitCloud, lo: u32, hi: u32) -> Result<PointCloud> {
    let band: Vec<OrbitNode> = tree
        .nodes
        .iter()
        .filter(|n| n.depth >= lo && n.depth <= hi)
        .copied()
        .collect();
    if band.is_empty() {
        return Err(Error::EmptyLevel(lo));
    }
    let merged = dedup_spatial(band, tree.dedup_cell);
    let points: Vec<Complex64> = merged.iter().map(|n| n.point).collect();
    PointCloud::new(
        points,
        tree.dedup_cell.max(0.0),
        format!("orbital_band({}, {lo}..={hi})", tree.seed_meta),
    )
}

/// `L_k(s) = sum over depth-k nodes of |（T^k)'(x)|^{-s}`, computed as a
/// stable log-sum-exp.
pub fn level_sum(tree: &OrbitCloud, s: f64, k: u32) -> Result<f64> {
    Ok(level_log_sum(tree, s, k)?.exp())
}

fn level_log_sum(tree: &OrbitCloud, s: f64, k: u32) -> Result<f64> {
    let terms: Vec<f64> = tree
        .level(k)
        .map(|n| -s * n.log_fwd_derivative)
        .collect();
    if terms.is_empty() {
        return Err(Error::EmptyLevel(k));
    }
    let m = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - m).exp()).sum();
    Ok(m + sum.ln())
}

/// Least-squares growth rate of `ln L_k(s)` over `k in [k_lo, k_hi]`.
pub fn level_growth_rate(tree: &OrbitCloud, s: f64, k_lo: u32, k_hi: u32) -> Result<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for k in k_lo..=k_hi {
        xs.push(k as f64);
        ys.push(level_log_sum(tree, s, k)?);
    }
    if xs.len() < 2 {
        return Err(Error::Window("need at least 2 levels for growth rate".into()));
    }
    let n = xs.len() as f64;
    let xbar = xs.iter().sum::<f64>() / n;
    let ybar = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - xbar).powi(2)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - xbar) * (y - ybar))
        .sum();
    Ok(sxy / sxx)
}

/// Quick forward-orbit classification used as the `z` is-not-on-`J` check:
/// the orbit must either escape or settle onto a short cycle.
fn seed_in_fatou(map: &RationalMap, z: Complex64) -> bool {
    let mut orbit = Vec::with_capacity(256);
    let mut w = z;
    for _ in 0..256 {
        orbit.push(w);
        w = match map.eval(w) {
            Ok(v) => v,
            Err(Error::Pole { .. }) => return false,
            Err(_) => return true,
        };
        if w.norm() > map.escape_radius() {
            return true; // escaping orbits are in the Fatou set
        }
    }
    // settled onto a cycle of period <= 24? (must be attracting: repelling
    // cycles lie on the Julia set)
    let tail = &orbit[orbit.len() - 32..];
    for period in 1..=24usize {
        let mut ok = true;
        for i in 0..(32 - period) {
            if (tail[i] - tail[i + period]).norm() > 1e-6 * (1.0 + tail[i].norm()) {
                ok = false;
                break;
            }
        }
        if ok {
            let mut log_mult = 0.0;
            for i in 0..period {
                match map.derivative_at(tail[i]) {
                    Ok(d) => log_mult += floored_log_abs(d),
                    Err(_) => return false,
                }
            }
            return log_mult < -1e-9;
        }
    }
    false
}

/// Convergence exponent of the backward-orbit series from a single seed:
/// bisection on `s` for the sign change of the geometric growth rate of
/// `L_k(s)` over the deep half of the tree. Returns the crossing together
/// with the half-width of the final bracket.
pub fn hz_exponent(
    map: &RationalMap,
    z: Complex64,
    depth: u32,
    s_lo: f64,
    s_hi: f64,
    iters: usize,
) -> Result<(f64, f64)> {
    if depth < 6 {
        return Err(Error::Window("hz_exponent needs depth >= 6".into()));
    }
    if !seed_in_fatou(map, z) {
        return Err(Error::SeedOnJulia);
    }
    let seeds = PointCloud::from_points(vec![z], format!("hz_seed({z})"))?;
    let tree = backward_tree(
        map,
        &seeds,
        TreeParams {
            depth,
            dedup_cell: 0.0,
            budget: 4_000_000,
            fiber_tol: 1e-10,
        },
    )?;
    let k_hi = tree.max_populated_depth();
    let k_lo = k_hi / 2;

    let rho = |s: f64| level_growth_rate(&tree, s, k_lo, k_hi);
    let (mut lo, mut hi) = (s_lo, s_hi);
    let rho_lo = rho(lo)?;
    let rho_hi = rho(hi)?;
    if rho_lo.signum() == rho_hi.signum() {
        return Err(Error::Bracket {
            lo,
            hi,
            rho_lo,
            rho_hi,
        });
    }
    for _ in 0..iters {
        let mid = 0.5 * (lo + hi);
        let r = rho(mid)?;
        if r.signum() == rho_lo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// Number of nodes (over all depths) whose forward derivative modulus lies
/// in the dyadic band `[2^n, 2^(n+1))`.
pub fn derivative_band_count(tree: &OrbitCloud, n: i32) -> usize {
    let ln2 = std::f64::consts::LN_2;
    let lo = n as f64 * ln2;
    let hi = (n + 1) as f64 * ln2;
    tree.nodes
        .iter()
        .filter(|node| node.log_fwd_derivative >= lo && node.log_fwd_derivative < hi)
        .count()
}
