//! Julia-set approximation by two independent methods, plus the diagnostic
//! machinery around it: postcritical orbits, exceptional points, and the
//! separation check between a condensation set and the postcritical set.
//!
//! Backward iteration converges to the Julia set at geometric speed, so the
//! first few levels are discarded as burn-in. The escape-time raster is a
//! cross-check restricted to polynomial maps, where escape to infinity is a
//! certificate of membership in the basin.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::RationalMap;
use crate::error::{Error, Result};
use crate::orbit::{backward_tree, depth_band_cloud, TreeParams};
use crate::shapes::{PointCloud, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JuliaMethod {
    Backward,
    Escape,
}

#[derive(Debug, Clone)]
pub struct JuliaCloud {
    pub cloud: PointCloud,
    pub method: JuliaMethod,
    pub depth: u32,
    pub burn_in: u32,
}

pub const DEFAULT_BURN_IN: u32 = 3;

/// Julia set approximation by backward iteration of a single seed,
/// discarding the first `DEFAULT_BURN_IN` levels.
pub fn julia_backward(
    map: &RationalMap,
    seed: Complex64,
    depth: u32,
    dedup_cell: f64,
    budget: usize,
) -> Result<JuliaCloud> {
    julia_backward_with_burn(map, seed, depth, dedup_cell, budget, DEFAULT_BURN_IN)
}

/// Backward Julia approximation with an explicit burn-in. Seeds near a
/// superattracting cycle converge slowly (moduli like 2^(1/2^k) for the
/// square map), so tight tolerances need a deeper burn-in than the default.
pub fn julia_backward_with_burn(
    map: &RationalMap,
    seed: Complex64,
    depth: u32,
    dedup_cell: f64,
    budget: usize,
    burn_in: u32,
) -> Result<JuliaCloud> {
    if burn_in >= depth {
        return Err(Error::Window(format!(
            "burn_in {burn_in} must be below depth {depth}"
        )));
    }
    let seeds = PointCloud::from_points(vec![seed], format!("julia_seed({seed})"))?;
    let tree = backward_tree(map, &seeds, TreeParams::new(depth, dedup_cell, budget))?;
    let top = tree.max_populated_depth();
    if top <= burn_in {
        return Err(Error::EmptyLevel(burn_in + 1));
    }
    let mut cloud = depth_band_cloud(&tree, burn_in + 1, top)?;
    cloud.label = format!("julia_backward(seed={seed}, K={depth})");
    Ok(JuliaCloud {
        cloud,
        method: JuliaMethod::Backward,
        depth,
        burn_in,
    })
}

/// Escape-time classification raster. `cells` is row-major from the min
/// corner: 0 = escaped, 1 = bounded at `max_iter`, 2 = boundary (bounded or
/// escaped with an opposite 4-neighbor).
#[derive(Debug, Clone)]
pub struct EscapeRaster {
    pub window: Rect,
    pub resolution: usize,
    pub cells: Vec<u8>,
    pub max_iter: usize,
}

impl EscapeRaster {
    pub fn cell_size(&self) -> f64 {
        (self.window.width() / self.resolution as f64)
            .max(self.window.height() / self.resolution as f64)
    }

    fn at(&self, i: usize, j: usize) -> u8 {
        self.cells[j * self.resolution + i]
    }

    /// Centers of the boundary cells, as an exact discrete set with spacing
    /// equal to the cell diagonal.
    pub fn boundary_points(&self) -> Result<PointCloud> {
        let dx = self.window.width() / self.resolution as f64;
        let dy = self.window.height() / self.resolution as f64;
        let mut points = Vec::new();
        for j in 0..self.resolution {
            for i in 0..self.resolution {
                if self.at(i, j) == 2 {
                    points.push(Complex64::new(
                        self.window.min_re + (i as f64 + 0.5) * dx,
                        self.window.min_im + (j as f64 + 0.5) * dy,
                    ));
                }
            }
        }
        if points.is_empty() {
            return Err(Error::Window(
                "escape raster found no boundary cells in the window".into(),
            ));
        }
        PointCloud::new(points, (dx * dx + dy * dy).sqrt(), "escape_boundary")
    }

    /// Binary PGM (P5), one byte per cell with the raw class value.
    pub fn write_pgm<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "P5")?;
        writeln!(w, "{} {}", self.resolution, self.resolution)?;
        writeln!(w, "255")?;
        w.write_all(&self.cells)
    }
}

/// Escape-time raster of a polynomial map over `window`. A cell escapes if
/// its center leaves the escape radius within `max_iter` steps.
pub fn escape_raster(
    map: &RationalMap,
    window: Rect,
    resolution: usize,
    max_iter: usize,
) -> Result<EscapeRaster> {
    if !map.is_polynomial() {
        return Err(Error::NotPolynomial);
    }
    if resolution < 64 {
        return Err(Error::Window(format!(
            "raster resolution must be >= 64, got {resolution}"
        )));
    }
    let dx = window.width() / resolution as f64;
    let dy = window.height() / resolution as f64;
    let radius = map.escape_radius();
    let rows: Vec<Vec<u8>> = (0..resolution)
        .into_par_iter()
        .map(|j| {
            (0..resolution)
                .map(|i| {
                    let mut z = Complex64::new(
                        window.min_re + (i as f64 + 0.5) * dx,
                        window.min_im + (j as f64 + 0.5) * dy,
                    );
                    for _ in 0..max_iter {
                        if z.norm() > radius {
                            return 0u8;
                        }
                        z = map.eval(z).unwrap(); // polynomial: no poles
                    }
                    1u8
                })
                .collect()
        })
        .collect();
    let mut cells: Vec<u8> = rows.into_iter().flatten().collect();

    // mark boundary cells: any cell with a 4-neighbor of the opposite class
    let base = cells.clone();
    let n = resolution as isize;
    for j in 0..n {
        for i in 0..n {
            let me = base[(j * n + i) as usize];
            let mut mixed = false;
            for (di, dj) in [(-1isize, 0isize), (1, 0), (0, -1), (0, 1)] {
                let (ii, jj) = (i + di, j + dj);
                if ii >= 0 && ii < n && jj >= 0 && jj < n && base[(jj * n + ii) as usize] != me {
                    mixed = true;
                    break;
                }
            }
            if mixed {
                cells[(j * n + i) as usize] = 2;
            }
        }
    }
    Ok(EscapeRaster {
        window,
        resolution,
        cells,
        max_iter,
    })
}

/// Julia set approximation as the boundary cells of an escape raster.
pub fn escape_boundary(
    map: &RationalMap,
    window: Rect,
    resolution: usize,
    max_iter: usize,
) -> Result<JuliaCloud> {
    let raster = escape_raster(map, window, resolution, max_iter)?;
    let cloud = raster.boundary_points()?;
    Ok(JuliaCloud {
        cloud,
        method: JuliaMethod::Escape,
        depth: max_iter as u32,
        burn_in: 0,
    })
}

/// A deterministic backward-iteration seed: the lexicographically first
/// repelling fixed point, which always lies on the Julia set. Works for
/// Cantor-dust Julia sets where no raster cell stays bounded.
pub fn default_seed(map: &RationalMap) -> Result<Complex64> {
    let z_poly = crate::algebra::ComplexPoly::new(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    ]);
    let shift = map.p().sub(&z_poly.mul(map.q()));
    if shift.degree() == 0 {
        return Err(Error::Config(
            "map has no finite fixed points; specify julia.seed".into(),
        ));
    }
    let fixed = crate::roots::solve_polynomial(&shift, 1e-10, 400)?;
    for z in fixed.distinct() {
        if map.derivative_at(z)?.norm() > 1.0 + 1e-9 {
            return Ok(z);
        }
    }
    Err(Error::Config(
        "no repelling fixed point found; specify julia.seed".into(),
    ))
}

#[derive(Debug, Clone)]
pub struct PostCriticalCloud {
    pub cloud: PointCloud,
    /// Critical orbits that left the escape radius before `n_iters` steps.
    pub escaped_to_infinity: bool,
}

/// Forward orbits `T^n(c)` for `1 <= n <= n_iters` over all finite critical
/// points `c`. Orbits that escape are truncated at the escape step and
/// flagged; an escaping critical orbit accumulates only at infinity.
pub fn postcritical_cloud(map: &RationalMap, n_iters: usize) -> Result<PostCriticalCloud> {
    let crit = map.critical_points(1e-12)?;
    let mut points = Vec::new();
    let mut escaped = false;
    for c0 in crit {
        let mut z = c0;
        for _ in 0..n_iters {
            z = match map.eval(z) {
                Ok(v) => v,
                Err(Error::Pole { .. }) => {
                    escaped = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            if z.norm() > map.escape_radius() {
                escaped = true;
                break;
            }
            points.push(z);
        }
    }
    // deduplicate exact repeats from cycles
    points.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    points.dedup_by(|a, b| (*a - *b).norm() <= 1e-12 * (1.0 + b.norm()));
    if points.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let cloud = PointCloud::from_points(points, format!("postcritical(n={n_iters})"))?;
    Ok(PostCriticalCloud {
        cloud,
        escaped_to_infinity: escaped,
    })
}

#[derive(Debug, Clone)]
pub struct ExceptionalPoints {
    pub finite: Vec<Complex64>,
    pub includes_infinity: bool,
}

/// Exceptional points: points whose full backward orbit is finite. There
/// are at most two. A fixed point is exceptional iff its fiber is that
/// single point with full multiplicity; 2-cycles are searched through the
/// second iterate when its degree stays small enough to solve reliably.
pub fn exceptional_points(map: &RationalMap, tol: f64) -> Result<ExceptionalPoints> {
    let d = map.degree();
    let mut finite = Vec::new();

    // fixed points: roots of P(z) - z Q(z)
    let shift = map
        .p()
        .sub(&crate::algebra::ComplexPoly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]).mul(map.q()));
    if shift.degree() >= 1 {
        let fixed = crate::roots::solve_polynomial_clustered(&shift, tol, 400, Some(1e-6))?;
        for (z, _) in &fixed.roots {
            if is_totally_invariant(map, *z, d, tol)? {
                finite.push(*z);
            }
        }
    }

    // 2-cycles via the second iterate, only when its degree is tractable
    if finite.len() < 2 && d * d + 1 <= 20 {
        let (p2, q2) = compose_self(map);
        let shift2 = p2.sub(
            &crate::algebra::ComplexPoly::new(vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
                .mul(&q2),
        );
        if shift2.degree() >= 1 {
            if let Ok(period2) =
                crate::roots::solve_polynomial_clustered(&shift2, tol, 600, Some(1e-6))
            {
                for (z, _) in &period2.roots {
                    if finite
                        .iter()
                        .any(|w| (w - z).norm() <= 1e-6 * (1.0 + z.norm()))
                    {
                        continue;
                    }
                    // each cycle element must pull back only to the cycle
                    match map.eval(*z) {
                        Ok(img) => {
                            if is_cycle_invariant(map, *z, img, d, tol)?
                                && is_cycle_invariant(map, img, *z, d, tol)?
                            {
                                finite.push(*z);
                            }
                        }
                        Err(Error::Pole { .. }) => {
                            // 2-cycle through infinity (e.g. 1/z^2): needs
                            // every preimage of z at infinity and z as the
                            // only pole, with full multiplicity
                            let fiber_poly = map.p().sub(&map.q().scale(*z));
                            let no_finite_preimage =
                                fiber_poly.degree() == 0 && !fiber_poly.is_zero();
                            let pole_only = map.p().degree() < map.q().degree()
                                && crate::roots::solve_polynomial_clustered(
                                    map.q(),
                                    tol,
                                    400,
                                    Some(1e-6),
                                )
                                .map(|rs| {
                                    let dd: Vec<Complex64> = rs.distinct().collect();
                                    dd.len() == 1
                                        && (dd[0] - z).norm() <= 1e-6 * (1.0 + z.norm())
                                        && rs.total_multiplicity() == d
                                })
                                .unwrap_or(false);
                            if no_finite_preimage && pole_only {
                                finite.push(*z);
                            }
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }

    finite.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    finite.dedup_by(|a, b| (*a - *b).norm() <= 1e-6 * (1.0 + b.norm()));
    finite.truncate(2);
    Ok(ExceptionalPoints {
        finite,
        includes_infinity: map.is_polynomial(),
    })
}

fn is_totally_invariant(map: &RationalMap, z: Complex64, d: usize, tol: f64) -> Result<bool> {
    let fiber = match crate::roots::preimages(map, z, tol) {
        Ok(f) => f,
        Err(Error::FiberDegree { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let distinct: Vec<Complex64> = fiber.distinct().collect();
    Ok(distinct.len() == 1
        && (distinct[0] - z).norm() <= 1e-6 * (1.0 + z.norm())
        && fiber.total_multiplicity() == d)
}

fn is_cycle_invariant(
    map: &RationalMap,
    z: Complex64,
    partner: Complex64,
    d: usize,
    tol: f64,
) -> Result<bool> {
    let fiber = match crate::roots::preimages(map, z, tol) {
        Ok(f) => f,
        Err(Error::FiberDegree { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    let distinct: Vec<Complex64> = fiber.distinct().collect();
    Ok(distinct.len() == 1
        && (distinct[0] - partner).norm() <= 1e-6 * (1.0 + partner.norm())
        && fiber.total_multiplicity() == d)
}

fn compose_self(map: &RationalMap) -> (crate::algebra::ComplexPoly, crate::algebra::ComplexPoly) {
    // T(T(z)) as a pair of polynomials via homogeneous substitution:
    // P2 = P(P/Q) * Q^degP-normalizer, computed coefficient-wise.
    let p = map.p();
    let q = map.q();
    let d = p.degree().max(q.degree());
    // numerator: sum p_i P^i Q^{d-i}; denominator: sum q_i P^i Q^{d-i}
    let mut p_pows = vec![crate::algebra::ComplexPoly::constant(Complex64::new(1.0, 0.0))];
    let mut q_pows = vec![crate::algebra::ComplexPoly::constant(Complex64::new(1.0, 0.0))];
    for i in 1..=d {
        p_pows.push(p_pows[i - 1].mul(p));
        q_pows.push(q_pows[i - 1].mul(q));
    }
    let zero = crate::algebra::ComplexPoly::constant(Complex64::new(0.0, 0.0));
    let mut num = zero.clone();
    let mut den = zero;
    for i in 0..=d {
        let basis = p_pows[i].mul(&q_pows[d - i]);
        if i < p.coeffs().len() {
            num = num.sub(&basis.scale(-p.coeffs()[i]));
        }
        if i < q.coeffs().len() {
            den = den.sub(&basis.scale(-q.coeffs()[i]));
        }
    }
    (num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

#[derive(Debug, Clone)]
pub struct AssumptionDiagnostic {
    /// Distance from the condensation set to the postcritical set.
    pub dist: f64,
    /// Whether straight segments from each sampled condensation point to
    /// the nearest Julia sample stay clear of the postcritical tube.
    pub path_clear: bool,
    pub verdict: Verdict,
}

fn subsample(points: &[Complex64], cap: usize) -> Vec<Complex64> {
    if points.len() <= cap {
        return points.to_vec();
    }
    let stride = points.len() / cap;
    points.iter().step_by(stride.max(1)).copied().collect()
}

fn min_dist(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.par_iter()
        .map(|z| {
            b.iter()
                .map(|w| (z - w).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min)
}

/// Heuristic separation check: PASS needs the condensation set to stay a
/// tube-width away from the postcritical set and the straight paths toward
/// the Julia set to remain clear; a straight path blocked by the tube gives
/// UNKNOWN (some curved path may still work), a tube violation gives FAIL.
pub fn assumption_a_diagnostic(
    condensation: &PointCloud,
    postcritical: &PostCriticalCloud,
    julia: &PointCloud,
    tube: f64,
) -> AssumptionDiagnostic {
    let e = subsample(&condensation.points, 2048);
    let pc = subsample(&postcritical.cloud.points, 2048);
    let j = subsample(&julia.points, 2048);

    let dist = min_dist(&e, &pc);
    if dist <= tube {
        return AssumptionDiagnostic {
            dist,
            path_clear: false,
            verdict: Verdict::Fail,
        };
    }

    let path_clear = e.par_iter().all(|&z| {
        let target = j
            .iter()
            .min_by(|a, b| {
                (z - *a)
                    .norm()
                    .partial_cmp(&(z - *b).norm())
                    .unwrap()
            })
            .copied()
            .unwrap();
        (0..=256).all(|t| {
            let s = t as f64 / 256.0;
            let w = z + (target - z) * s;
            pc.iter().all(|&u| (w - u).norm() > tube)
        })
    });

    AssumptionDiagnostic {
        dist,
        path_clear,
        verdict: if path_clear {
            Verdict::Pass
        } else {
            Verdict::Unknown
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ComplexPoly, RationalMap};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn square_map() -> RationalMap {
        RationalMap::quadratic(c(0.0, 0.0))
    }

    #[test]
    fn backward_unit_circle_from_root_of_unity() {
        // seed already on the Julia set: every preimage stays on |z| = 1
        let j = julia_backward(&square_map(), c(1.0, 0.0), 10, 0.0, 1_000_000).unwrap();
        assert!(j.cloud.len() > 50);
        for z in &j.cloud.points {
            assert!((z.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn backward_moduli_from_exterior_seed() {
        // seed 2: depth-k preimages all have modulus 2^(1/2^k)
        let seeds = PointCloud::from_points(vec![c(2.0, 0.0)], "s").unwrap();
        let tree = backward_tree(&square_map(), &seeds, TreeParams::new(8, 0.0, 100_000)).unwrap();
        for n in &tree.nodes {
            let want = 2f64.powf(1.0 / 2f64.powi(n.depth as i32));
            assert!((n.point.norm() - want).abs() < 1e-9, "depth {}", n.depth);
        }
        // burn-in removes the slow shallow levels
        let j = julia_backward_with_burn(&square_map(), c(2.0, 0.0), 14, 0.0, 500_000, 9).unwrap();
        for z in &j.cloud.points {
            assert!((z.norm() - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn chebyshev_interval_julia() {
        // J(z^2 - 2) = [-2, 2]
        let map = RationalMap::quadratic(c(-2.0, 0.0));
        let j = julia_backward(&map, c(0.0, 0.0), 12, 1e-3, 500_000).unwrap();
        for z in &j.cloud.points {
            assert!(z.im.abs() < 1e-6, "im = {}", z.im);
            assert!(z.re.abs() <= 2.0 + 1e-9);
        }
        // and the samples spread over most of the interval
        let min = j.cloud.points.iter().map(|z| z.re).fold(f64::INFINITY, f64::min);
        let max = j.cloud.points.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
        assert!(min < -1.9 && max > 1.9);
    }

    #[test]
    fn basilica_symmetry() {
        // J(z^2 - 1) is invariant under z -> -z
        let map = RationalMap::quadratic(c(-1.0, 0.0));
        let j = julia_backward(&map, c(2.0, 2.0), 12, 1e-2, 500_000).unwrap();
        let cell = 2e-2;
        let keys: std::collections::HashSet<(i64, i64)> = j
            .cloud
            .points
            .iter()
            .map(|z| ((z.re / cell).round() as i64, (z.im / cell).round() as i64))
            .collect();
        let mirrored = j
            .cloud
            .points
            .iter()
            .filter(|z| {
                let k = ((-z.re / cell).round() as i64, (-z.im / cell).round() as i64);
                keys.contains(&k)
            })
            .count();
        assert!(
            mirrored as f64 >= 0.9 * j.cloud.len() as f64,
            "{mirrored} of {}",
            j.cloud.len()
        );
    }

    #[test]
    fn escape_raster_classifies_square_map() {
        let map = square_map().with_escape_radius(4.0);
        let raster = escape_raster(&map, Rect::square(c(0.0, 0.0), 2.0), 256, 100).unwrap();
        let idx = |re: f64, im: f64| {
            let i = ((re + 2.0) / 4.0 * 256.0) as usize;
            let j = ((im + 2.0) / 4.0 * 256.0) as usize;
            raster.cells[j * 256 + i]
        };
        assert_eq!(idx(0.0, 0.0), 1); // origin bounded
        assert_eq!(idx(1.8, 1.8), 0); // far corner escapes
        let boundary = raster.boundary_points().unwrap();
        for z in &boundary.points {
            assert!((z.norm() - 1.0).abs() < 0.05, "boundary at |z| = {}", z.norm());
        }
    }

    #[test]
    fn methods_agree_on_square_map() {
        let map = square_map().with_escape_radius(1e6);
        let back = julia_backward_with_burn(&map, c(2.0, 0.0), 14, 5e-3, 500_000, 8).unwrap();
        let esc = escape_boundary(&map, Rect::square(c(0.0, 0.0), 1.5), 512, 200).unwrap();
        let cell = esc.cloud.spacing;
        // directed Hausdorff distances within a few raster cells
        let d1 = back
            .cloud
            .points
            .iter()
            .map(|z| {
                esc.cloud
                    .points
                    .iter()
                    .map(|w| (z - w).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        assert!(d1 <= 4.0 * cell, "hausdorff {d1} vs cell {cell}");
    }

    #[test]
    fn postcritical_examples() {
        // z^2: critical orbit of 0 is {0}
        let pc = postcritical_cloud(&square_map(), 8).unwrap();
        assert_eq!(pc.cloud.len(), 1);
        assert!(pc.cloud.points[0].norm() < 1e-12);
        assert!(!pc.escaped_to_infinity);

        // z^2 + 6: 0 -> 6 -> 42 -> 1770 -> ... escapes
        let pc = postcritical_cloud(&RationalMap::quadratic(c(6.0, 0.0)), 20).unwrap();
        assert!(pc.escaped_to_infinity);
        for want in [6.0, 42.0, 1770.0] {
            assert!(pc
                .cloud
                .points
                .iter()
                .any(|z| (z - c(want, 0.0)).norm() < 1e-9));
        }

        // z^2 - 1: superattracting 2-cycle {0, -1}
        let pc = postcritical_cloud(&RationalMap::quadratic(c(-1.0, 0.0)), 16).unwrap();
        assert_eq!(pc.cloud.len(), 2);
        assert!(!pc.escaped_to_infinity);
    }

    #[test]
    fn postcritical_monotone_in_iterations() {
        let map = RationalMap::polynomial(ComplexPoly::from_real(&[0.0, 1.0, 0.0, 0.0, 1.0]))
            .unwrap();
        let a = postcritical_cloud(&map, 4).unwrap();
        let b = postcritical_cloud(&map, 8).unwrap();
        for z in &a.cloud.points {
            assert!(b
                .cloud
                .points
                .iter()
                .any(|w| (z - w).norm() <= 1e-9 * (1.0 + z.norm())));
        }
    }

    #[test]
    fn exceptional_point_examples() {
        // z^2: 0 and infinity are exceptional
        let e = exceptional_points(&square_map(), 1e-10).unwrap();
        assert_eq!(e.finite.len(), 1);
        assert!(e.finite[0].norm() < 1e-8);
        assert!(e.includes_infinity);

        // z^2 - 1 and z^2 + 6: only infinity
        for cc in [c(-1.0, 0.0), c(6.0, 0.0)] {
            let e = exceptional_points(&RationalMap::quadratic(cc), 1e-10).unwrap();
            assert!(e.finite.is_empty(), "c = {cc}: {:?}", e.finite);
            assert!(e.includes_infinity);
        }

        // 1/z^2 swaps 0 and infinity: exceptional 2-cycle, 0 is finite
        let inv = RationalMap::new(
            ComplexPoly::from_real(&[1.0]),
            ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        let e = exceptional_points(&inv, 1e-10).unwrap();
        assert_eq!(e.finite.len(), 1);
        assert!(e.finite[0].norm() < 1e-8);
        assert!(!e.includes_infinity);
    }

    #[test]
    fn assumption_diagnostic_three_cases() {
        let julia = crate::shapes::circle_cloud(c(0.0, 0.0), 1.0, 512).unwrap();
        let pc = PostCriticalCloud {
            cloud: PointCloud::from_points(vec![c(0.0, 0.0)], "pc").unwrap(),
            escaped_to_infinity: false,
        };

        // far-away condensation set: clear paths
        let e = crate::shapes::circle_cloud(c(3.0, 0.0), 0.2, 128).unwrap();
        let d = assumption_a_diagnostic(&e, &pc, &julia, 0.1);
        assert_eq!(d.verdict, Verdict::Pass);
        assert!(d.dist > 2.0);

        // condensation set inside the tube
        let e = crate::shapes::circle_cloud(c(0.0, 0.0), 0.05, 64).unwrap();
        let d = assumption_a_diagnostic(&e, &pc, &julia, 0.1);
        assert_eq!(d.verdict, Verdict::Fail);

        // postcritical barrier between E and J: straight path blocked
        let pc_ring = PostCriticalCloud {
            cloud: crate::shapes::circle_cloud(c(2.0, 0.0), 0.5, 512).unwrap(),
            escaped_to_infinity: false,
        };
        let e = PointCloud::from_points(vec![c(2.0, 0.0)], "inside").unwrap();
        let d = assumption_a_diagnostic(&e, &pc_ring, &julia, 0.1);
        assert_eq!(d.verdict, Verdict::Unknown);
    }

    #[test]
    fn default_seed_is_repelling_fixed_point() {
        // z^2: fixed points 0 (superattracting) and 1 (repelling)
        let seed = default_seed(&square_map()).unwrap();
        assert!((seed - c(1.0, 0.0)).norm() < 1e-8, "seed {seed}");
        // z^2 + 6: both fixed points repelling, on the Cantor Julia set
        let seed = default_seed(&RationalMap::quadratic(c(6.0, 0.0))).unwrap();
        let map = RationalMap::quadratic(c(6.0, 0.0));
        assert!((map.eval(seed).unwrap() - seed).norm() < 1e-8);
        assert!(map.derivative_at(seed).unwrap().norm() > 1.0);
    }

    #[test]
    fn raster_rejects_rational_and_tiny_resolution() {
        let inv = RationalMap::new(
            ComplexPoly::from_real(&[1.0]),
            ComplexPoly::from_real(&[0.0, 0.0, 1.0]),
        )
        .unwrap();
        assert!(matches!(
            escape_raster(&inv, Rect::square(c(0.0, 0.0), 2.0), 256, 50),
            Err(Error::NotPolynomial)
        ));
        assert!(matches!(
            escape_raster(&square_map(), Rect::square(c(0.0, 0.0), 2.0), 32, 50),
            Err(Error::Window(_))
        ));
    }
}
