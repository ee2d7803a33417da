//! Complex polynomial and rational-map arithmetic.
//!
//! Polynomials are dense coefficient lists, lowest degree first. A rational
//! map `T = P/Q` carries its degree `d = max(deg P, deg Q)` and gives access
//! to critical points and forward iteration with chain-rule derivative
//! accumulation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// log|v| of values below 1e-300 is reported as this sentinel so branches
/// through exact critical points stay finite (and sort below everything).
pub const LOG_ZERO_FLOOR: f64 = -700.0;
pub const DEFAULT_ESCAPE_RADIUS: f64 = 1e6;
pub const POLE_TOL: f64 = 1e-12;
pub const DEFAULT_ROOT_TOL: f64 = 1e-12;

pub fn floored_log_abs(v: Complex64) -> f64 {
    let m = v.norm();
    if m < 1e-300 {
        LOG_ZERO_FLOOR
    } else {
        m.ln()
    }
}

/// Dense complex polynomial, coefficient of `z^i` at index `i`.
/// Trailing zero coefficients are trimmed on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.norm() == 0.0).unwrap_or(false) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        ComplexPoly { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `z^2 + c`
    pub fn quadratic_plus(c: Complex64) -> Self {
        Self::new(vec![c, Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)])
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() == 0.0
    }

    pub fn leading(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation together with a running bound `sum |c_i| |z|^i`,
    /// useful as a relative-residual scale.
    pub fn eval_with_scale(&self, z: Complex64) -> (Complex64, f64) {
        let zn = z.norm();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut scale = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
            scale = scale * zn + c.norm();
        }
        (acc, scale.max(1e-300))
    }

    /// Coefficient-wise derivative; a constant maps to the zero polynomial.
    pub fn derivative(&self) -> ComplexPoly {
        if self.coeffs.len() == 1 {
            return ComplexPoly::constant(Complex64::new(0.0, 0.0));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as f64))
            .collect();
        ComplexPoly::new(coeffs)
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }

    pub fn sub(&self, other: &ComplexPoly) -> ComplexPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            out[i] += a;
        }
        for (i, &b) in other.coeffs.iter().enumerate() {
            out[i] -= b;
        }
        ComplexPoly::new(out)
    }

    pub fn scale(&self, s: Complex64) -> ComplexPoly {
        ComplexPoly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }
}

/// Rational map `T = P/Q` of degree at least 2.
#[derive(Debug, Clone)]
pub struct RationalMap {
    p: ComplexPoly,
    q: ComplexPoly,
    degree: usize,
    /// Set when the resultant of P and Q is suspiciously small; the map is
    /// still usable, downstream consumers may surface the warning.
    coprime_warning: bool,
    escape_radius: f64,
}

impl RationalMap {
    pub fn new(p: ComplexPoly, q: ComplexPoly) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::Degenerate);
        }
        let degree = p.degree().max(q.degree());
        if degree < 2 {
            return Err(Error::DegreeTooLow(degree));
        }
        let mut map = RationalMap {
            p,
            q,
            degree,
            coprime_warning: false,
            escape_radius: DEFAULT_ESCAPE_RADIUS,
        };
        map.coprime_warning = map.check_coprimality_warning();
        Ok(map)
    }

    pub fn polynomial(p: ComplexPoly) -> Result<Self> {
        Self::new(p, ComplexPoly::constant(Complex64::new(1.0, 0.0)))
    }

    /// `z^2 + c`
    pub fn quadratic(c: Complex64) -> Self {
        Self::polynomial(ComplexPoly::quadratic_plus(c)).unwrap()
    }

    pub fn with_escape_radius(mut self, r: f64) -> Self {
        self.escape_radius = r;
        self
    }

    pub fn p(&self) -> &ComplexPoly {
        &self.p
    }

    pub fn q(&self) -> &ComplexPoly {
        &self.q
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn escape_radius(&self) -> f64 {
        self.escape_radius
    }

    pub fn coprime_warning(&self) -> bool {
        self.coprime_warning
    }

    pub fn is_polynomial(&self) -> bool {
        self.q.degree() == 0
    }

    fn check_coprimality_warning(&mut self) -> bool {
        if self.p.degree() == 0 || self.q.degree() == 0 {
            return false;
        }
        // res(P, Q) = lc(P)^{deg Q} * prod_i Q(r_i) over the roots of P.
        let roots = match crate::roots::solve_polynomial(&self.p, 1e-10, 200) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let mut log_res = (self.q.degree() as f64) * self.p.leading().norm().max(1e-300).ln();
        for (r, m) in &roots.roots {
            log_res += (*m as f64) * self.q.eval(*r).norm().max(1e-300).ln();
        }
        let log_scale = (self.q.degree() as f64) * self.p.max_coeff_norm().max(1e-300).ln()
            + (self.p.degree() as f64) * self.q.max_coeff_norm().max(1e-300).ln();
        log_res < log_scale + (1e-8f64).ln()
    }

    fn pole_tolerance(&self, z: Complex64) -> f64 {
        POLE_TOL * (1.0 + z.norm()).powi(self.q.degree() as i32)
    }

    /// `T(z) = P(z)/Q(z)`; errors when `z` is within pole tolerance of a
    /// pole, which means the experiment has left the bounded regime.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let qv = self.q.eval(z);
        if qv.norm() <= self.pole_tolerance(z) {
            return Err(Error::Pole { z });
        }
        Ok(self.p.eval(z) / qv)
    }

    /// Numerator of `T'`, i.e. `P'Q - PQ'`.
    pub fn derivative_numerator(&self) -> ComplexPoly {
        self.p
            .derivative()
            .mul(&self.q)
            .sub(&self.p.mul(&self.q.derivative()))
    }

    /// `T'(z) = (P'Q - PQ')(z) / Q(z)^2`
    pub fn derivative_at(&self, z: Complex64) -> Result<Complex64> {
        let qv = self.q.eval(z);
        if qv.norm() <= self.pole_tolerance(z) {
            return Err(Error::Pole { z });
        }
        let num = self.p.derivative().eval(z) * qv - self.p.eval(z) * self.q.derivative().eval(z);
        Ok(num / (qv * qv))
    }

    /// Finite critical points of `T`, with multiplicity, as roots of
    /// `P'Q - PQ'`. The point at infinity (present for every polynomial of
    /// degree >= 2) is not included.
    pub fn critical_points(&self, root_tol: f64) -> Result<Vec<Complex64>> {
        let num = self.derivative_numerator();
        if num.degree() == 0 {
            return Ok(Vec::new());
        }
        let roots = crate::roots::solve_polynomial(&num, root_tol, 400)?;
        Ok(roots.flat())
    }

    /// Images of the finite critical points, deduplicated within `root_tol`.
    pub fn critical_values(&self, root_tol: f64) -> Result<Vec<Complex64>> {
        let pts = self.critical_points(root_tol)?;
        let mut vals: Vec<Complex64> = Vec::new();
        for c in pts {
            let v = self.eval(c)?;
            if !vals
                .iter()
                .any(|u| (u - v).norm() <= root_tol.max(1e-12) * (1.0 + v.norm()))
            {
                vals.push(v);
            }
        }
        vals.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Ok(vals)
    }

    /// Returns `(T^n(z), sum_{k<n} log|T'(T^k z)|)`. The identity case
    /// `n = 0` returns `(z, 0)`.
    pub fn iterate_with_derivative(&self, z: Complex64, n: u32) -> Result<(Complex64, f64)> {
        let mut point = z;
        let mut log_der = 0.0f64;
        for _ in 0..n {
            let d = self.derivative_at(point)?;
            log_der += floored_log_abs(d);
            point = self.eval(point)?;
            let m = point.norm();
            if m > self.escape_radius {
                return Err(Error::Escape {
                    modulus: m,
                    radius: self.escape_radius,
                });
            }
        }
        Ok((point, log_der))
    }
}
