//! Simultaneous-iteration polynomial root finding and the fiber solver
//! `T^{-1}(w)`.
//!
//! All roots are found at once: every approximation repels the others, so
//! the iteration cannot collapse onto a single root. Initial guesses sit on
//! a circle of the Cauchy root-bound radius with a fixed angular offset,
//! followed by per-root Newton polishing on `p/p'` (which keeps quadratic
//! convergence at multiple roots). Nearby roots are merged into one root
//! with summed multiplicity, and output is sorted lexicographically by
//! (re, im) so identical inputs give identical root lists.

use num_complex::Complex64;

use crate::algebra::{ComplexPoly, RationalMap};
use crate::error::{Error, Result};

/// One level of the inverse-branch tree: all roots of one polynomial,
/// with multiplicities and post-polish residuals `|p(root)|`.
#[derive(Debug, Clone)]
pub struct RootSet {
    pub roots: Vec<(Complex64, usize)>,
    pub residuals: Vec<f64>,
}

impl RootSet {
    /// Roots repeated according to multiplicity.
    pub fn flat(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for &(r, m) in &self.roots {
            for _ in 0..m {
                out.push(r);
            }
        }
        out
    }

    pub fn distinct(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().map(|&(r, _)| r)
    }

    pub fn total_multiplicity(&self) -> usize {
        self.roots.iter().map(|&(_, m)| m).sum()
    }
}

const LEADING_FLOOR: f64 = 1e-14;

pub fn solve_polynomial(p: &ComplexPoly, tol: f64, max_iter: usize) -> Result<RootSet> {
    solve_polynomial_clustered(p, tol, max_iter, None)
}

/// `cluster_radius = None` uses `1e-8 * (1 + |root|)` per pair.
///
/// Roots are found after the substitution `z = s*y` with `s` the geometric
/// mean of the root magnitudes (read off the constant and leading
/// coefficients), so fibers whose roots sit hundreds of orders of magnitude
/// below the coefficient scale stay well conditioned.
pub fn solve_polynomial_clustered(
    p: &ComplexPoly,
    tol: f64,
    max_iter: usize,
    cluster_radius: Option<f64>,
) -> Result<RootSet> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::Degenerate);
    }
    if p.leading().norm() <= LEADING_FLOOR * p.max_coeff_norm() {
        return Err(Error::Degenerate);
    }

    // Exact zero roots come off first so the scale substitution has a
    // nonzero constant term to work with.
    let mut inner = p.coeffs().to_vec();
    let mut zero_mult = 0usize;
    while inner.len() > 1 && inner[0].norm() == 0.0 {
        inner.remove(0);
        zero_mult += 1;
    }
    let stripped = ComplexPoly::new(inner);
    let m = stripped.degree();

    let mut roots: Vec<Complex64> = Vec::with_capacity(n);
    let mut root_scale = 1.0f64;
    if m > 0 {
        let s = {
            let ratio = stripped.coeffs()[0].norm() / stripped.leading().norm();
            let s = ratio.powf(1.0 / m as f64);
            if s.is_finite() && s > 0.0 {
                s
            } else {
                1.0
            }
        };
        root_scale = s;
        // monic coefficients of p(s*y)/(lead * s^m), built in log2 space to
        // dodge under/overflow of s^i
        let log2_s = s.log2();
        let log2_lead = stripped.leading().norm().log2();
        let scaled = ComplexPoly::new(
            stripped
                .coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    if c.norm() == 0.0 {
                        return Complex64::new(0.0, 0.0);
                    }
                    let mag = c.norm().log2() - log2_lead + (i as f64 - m as f64) * log2_s;
                    (c / c.norm()) * mag.exp2()
                })
                .collect(),
        );
        if scaled.degree() != m {
            return Err(Error::Degenerate);
        }
        let mut y_roots = if m == 1 {
            vec![-scaled.coeffs()[0]]
        } else {
            aberth_iterate(&scaled, max_iter, tol)?
        };
        for y in y_roots.iter_mut() {
            *y = polish_root(&scaled, *y);
        }
        roots.extend(y_roots.into_iter().map(|y| y * s));
    }
    roots.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(zero_mult));

    // Residual acceptance on the original polynomial, relative to the Horner
    // magnitude bound at each root.
    let mut residuals_ok = true;
    for &r in &roots {
        let (v, scale) = p.eval_with_scale(r);
        if v.norm() > tol.max(1e-9) * scale {
            residuals_ok = false;
        }
    }
    if !residuals_ok {
        return Err(Error::RootSolve(format!(
            "residuals above tolerance after {max_iter} iterations (degree {n})"
        )));
    }

    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());

    // Greedy cluster merge.
    let mut merged: Vec<(Complex64, usize)> = Vec::new();
    for &r in &roots {
        // default merge radius follows the root scale, not the coefficient
        // scale: fibers near a superattracting point have genuinely
        // distinct roots far below 1
        let radius = cluster_radius.unwrap_or_else(|| 1e-8 * (root_scale + r.norm()));
        match merged
            .iter_mut()
            .find(|(c, _)| (*c - r).norm() <= radius)
        {
            Some((c, m)) => {
                // multiplicity-weighted centroid
                let total = *m as f64 + 1.0;
                *c = (*c * (*m as f64) + r) / total;
                *m += 1;
            }
            None => merged.push((r, 1)),
        }
    }
    merged.sort_by(|a, b| (a.0.re, a.0.im).partial_cmp(&(b.0.re, b.0.im)).unwrap());

    let residuals = merged.iter().map(|&(r, _)| p.eval(r).norm()).collect();
    Ok(RootSet {
        roots: merged,
        residuals,
    })
}

fn aberth_iterate(monic: &ComplexPoly, max_iter: usize, tol: f64) -> Result<Vec<Complex64>> {
    let n = monic.degree();
    let deriv = monic.derivative();
    let coeffs = monic.coeffs();

    // Cauchy bound: all roots lie within 1 + max |c_i|.
    let radius = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let offset = 0.4; // fixed angular offset so no guess starts on an axis
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = offset + 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
            Complex64::from_polar(radius, theta)
        })
        .collect();

    for _ in 0..max_iter {
        let mut max_step = 0.0f64;
        let mut next = z.clone();
        for j in 0..n {
            let pv = monic.eval(z[j]);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = deriv.eval(z[j]);
            let w = if dv.norm() < 1e-300 {
                // sitting on a critical point of p: nudge
                Complex64::new(1e-8, 1e-8)
            } else {
                pv / dv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for k in 0..n {
                if k != j {
                    let diff = z[j] - z[k];
                    if diff.norm() > 1e-300 {
                        repulsion += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let step = if denom.norm() < 1e-300 { w } else { w / denom };
            next[j] = z[j] - step;
            max_step = max_step.max(step.norm() / (1.0 + next[j].norm()));
        }
        z = next;
        if max_step <= tol.max(1e-14) {
            break;
        }
    }
    Ok(z)
}

/// Newton on u = p/p', which has only simple roots, so multiple roots of p
/// still converge quadratically.
fn polish_root(monic: &ComplexPoly, mut z: Complex64) -> Complex64 {
    let d1 = monic.derivative();
    let d2 = d1.derivative();
    for _ in 0..20 {
        let pv = monic.eval(z);
        if pv.norm() == 0.0 {
            return z;
        }
        let dv = d1.eval(z);
        let ddv = d2.eval(z);
        let denom = dv * dv - pv * ddv;
        if denom.norm() < 1e-300 {
            return z;
        }
        let step = pv * dv / denom;
        z -= step;
        if step.norm() <= 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// The full fiber `T^{-1}(w)` with multiplicities, solved as
/// `P(z) - w Q(z) = 0`.
pub fn preimages(map: &RationalMap, w: Complex64, tol: f64) -> Result<RootSet> {
    if w.norm() > map.escape_radius() {
        return Err(Error::Escape {
            modulus: w.norm(),
            radius: map.escape_radius(),
        });
    }
    let fiber_poly = map.p().sub(&map.q().scale(w));
    if fiber_poly.degree() < map.degree()
        || fiber_poly.leading().norm() <= LEADING_FLOOR * fiber_poly.max_coeff_norm()
    {
        return Err(Error::FiberDegree {
            expected: map.degree(),
            got: fiber_poly.degree(),
        });
    }
    // scale-aware default clustering: fiber roots can sit far below the
    // coefficient scale near superattracting points
    let set = solve_polynomial_clustered(&fiber_poly, tol, 400, None)?;

    // Forward check: every root must map back onto w.
    for r in set.distinct() {
        let back = map.eval(r)?;
        if (back - w).norm() > tol.max(1e-8) * (1.0 + w.norm()) {
            return Err(Error::RootSolve(format!(
                "fiber root {r} fails forward check: T(root) = {back}, want {w}"
            )));
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_simple_quadratic() {
        let p = ComplexPoly::from_real(&[-1.0, 0.0, 1.0]);
        let set = solve_polynomial(&p, 1e-12, 100).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert!((set.roots[0].0 - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((set.roots[1].0 - c(1.0, 0.0)).norm() < 1e-10);
        assert_eq!(set.total_multiplicity(), 2);
    }

    #[test]
    fn solve_double_root() {
        let p = ComplexPoly::from_real(&[0.0, 0.0, 1.0]);
        let set = solve_polynomial(&p, 1e-12, 200).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert_eq!(set.roots[0].1, 2);
        assert!(set.roots[0].0.norm() < 1e-8);
    }

    #[test]
    fn solve_cubic_residual_oracle() {
        // 4z^3 + 1: three distinct roots verified by substitution
        let p = ComplexPoly::from_real(&[1.0, 0.0, 0.0, 4.0]);
        let set = solve_polynomial(&p, 1e-12, 200).unwrap();
        assert_eq!(set.roots.len(), 3);
        for r in set.distinct() {
            assert!((4.0 * r * r * r + 1.0).norm() <= 1e-10);
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert!((set.roots[i].0 - set.roots[j].0).norm() > 1e-3);
            }
        }
    }

    #[test]
    fn residuals_below_acceptance() {
        let p = ComplexPoly::from_real(&[3.0, -2.0, 0.5, 1.0, 2.0]);
        let set = solve_polynomial(&p, 1e-12, 300).unwrap();
        for &resid in &set.residuals {
            assert!(resid <= 1e-8);
        }
        assert_eq!(set.total_multiplicity(), 4);
    }

    #[test]
    fn degenerate_leading_coefficient() {
        let p = ComplexPoly::new(vec![c(1.0, 0.0), c(1.0, 0.0), c(1e-20, 0.0)]);
        assert!(matches!(
            solve_polynomial(&p, 1e-12, 100),
            Err(Error::Degenerate)
        ));
    }

    #[test]
    fn preimages_of_square_map() {
        let t = RationalMap::quadratic(c(0.0, 0.0));
        let set = preimages(&t, c(1.0, 0.0), 1e-10).unwrap();
        let roots: Vec<_> = set.distinct().collect();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - c(-1.0, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn preimages_near_critical_value() {
        // T = z^2 + 6, w = 6 + 1/4 -> {1/2, -1/2}
        let t = RationalMap::quadratic(c(6.0, 0.0));
        let set = preimages(&t, c(6.25, 0.0), 1e-10).unwrap();
        let roots: Vec<_> = set.distinct().collect();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - c(-0.5, 0.0)).norm() < 1e-10);
        assert!((roots[1] - c(0.5, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn preimages_critical_fiber() {
        let t = RationalMap::quadratic(c(6.0, 0.0));
        let set = preimages(&t, c(6.0, 0.0), 1e-10).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert_eq!(set.roots[0].1, 2);
        assert!(set.roots[0].0.norm() < 1e-7);
    }

    #[test]
    fn fiber_cardinality_equals_degree() {
        let maps = [
            RationalMap::quadratic(c(-1.0, 0.0)),
            RationalMap::polynomial(ComplexPoly::from_real(&[0.0, 1.0, 0.0, 0.0, 1.0])).unwrap(),
        ];
        for t in &maps {
            for w in [c(0.3, 0.8), c(-1.5, 0.2), c(2.0, 2.0)] {
                let set = preimages(t, w, 1e-10).unwrap();
                assert_eq!(set.total_multiplicity(), t.degree());
            }
        }
    }

    #[test]
    fn fiber_degree_error_when_leading_cancels() {
        // T = (z^2 - 1) / (z^2 + 1): at w = 1 the fiber polynomial drops degree.
        let t = RationalMap::new(
            ComplexPoly::from_real(&[-1.0, 0.0, 1.0]),
            ComplexPoly::from_real(&[1.0, 0.0, 1.0]),
        )
        .unwrap();
        assert!(matches!(
            preimages(&t, c(1.0, 0.0), 1e-10),
            Err(Error::FiberDegree { .. })
        ));
    }

    #[test]
    fn determinism_identical_inputs() {
        let p = ComplexPoly::new(vec![c(0.3, -1.2), c(1.0, 0.7), c(-2.0, 0.0), c(1.0, 0.5)]);
        let a = solve_polynomial(&p, 1e-12, 200).unwrap();
        let b = solve_polynomial(&p, 1e-12, 200).unwrap();
        assert_eq!(a.roots.len(), b.roots.len());
        for (x, y) in a.roots.iter().zip(b.roots.iter()) {
            assert_eq!(x.0, y.0);
            assert_eq!(x.1, y.1);
        }
    }

    #[test]
    fn perturbation_stability() {
        let t = RationalMap::quadratic(c(0.0, 0.0));
        let w = c(0.7, 0.3);
        let a = preimages(&t, w, 1e-12).unwrap();
        let b = preimages(&t, w + c(1e-9, 0.0), 1e-12).unwrap();
        for (ra, rb) in a.distinct().zip(b.distinct()) {
            assert!((ra - rb).norm() <= 1e-4);
        }
    }
}
