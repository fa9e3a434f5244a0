//! Quadrature over spacelike hyperplanes.
//!
//! Every smooth piece of a body is integrated on its own chart. The default
//! chart maps the unit ball onto the ellipsoid where the piece's support
//! tube meets the slice, with Gauss–Legendre in radius and polar cosine and
//! the periodic trapezoid rule in azimuth. For polynomial bump profiles the
//! integrand is then polynomial and the rule is exact once the order
//! exceeds the degree. A padded bounding-box chart is available for
//! comparison.
//!
//! Point particles contribute in closed form: a linear functional
//! `F(x, T)` picks up `F(x_i, m u_i ⊗ u_i) / (u_i·n)` at the crossing.

use crate::affine::{Event, Hyperplane};
use crate::body::{Body, Component, SupportTube};
use crate::error::{Error, Result};
use crate::minkowski::{MinkVector, SymTensor};
use nalgebra::{Matrix3, Vector3};
use rayon::prelude::*;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Rule {
    #[default]
    GaussLegendre,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Chart {
    /// Ellipsoid-adapted polar chart.
    #[default]
    Ball,
    /// Tensor-product chart on the padded bounding box.
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub points_per_axis: usize,
    pub rule: Rule,
    pub chart: Chart,
    /// Relative padding of the bounding box (box chart only).
    pub support_padding: f64,
    /// Absolute error above which integration fails, if set.
    pub tolerance: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            points_per_axis: 48,
            rule: Rule::GaussLegendre,
            chart: Chart::Ball,
            support_padding: 0.02,
            tolerance: None,
        }
    }
}

impl QuadratureSpec {
    pub fn with_points(points_per_axis: usize) -> Self {
        QuadratureSpec { points_per_axis, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.points_per_axis < 2 {
            return Err(Error::InvalidInput(format!(
                "points_per_axis must be at least 2, got {}",
                self.points_per_axis
            )));
        }
        if !(self.support_padding >= 0.0) {
            return Err(Error::InvalidInput("support padding must be nonnegative".into()));
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(Error::InvalidInput("tolerance must be positive".into()));
            }
        }
        Ok(())
    }

    /// The resolution used for the refinement error estimate.
    pub fn coarse(&self) -> Self {
        QuadratureSpec { points_per_axis: ((3 * self.points_per_axis) / 4).max(2), ..*self }
    }
}

/// Gauss–Legendre nodes and weights on `[−1, 1]`, by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, z);
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let dp = legendre(n, z).1;
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    (x, w)
}

/// `(P_n(z), P_n'(z))`.
fn legendre(n: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    (p1, n as f64 * (z * p1 - p0) / (z * z - 1.0))
}

/// Midpoint rule on `[−1, 1]`.
pub fn midpoint(n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 / n as f64;
    ((0..n).map(|i| -1.0 + h * (i as f64 + 0.5)).collect(), vec![h; n])
}

pub fn rule_nodes(rule: Rule, n: usize) -> (Vec<f64>, Vec<f64>) {
    match rule {
        Rule::GaussLegendre => gauss_legendre(n),
        Rule::Midpoint => midpoint(n),
    }
}

/// A point of the slice with its quadrature weight (including `d³s`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub point: Event,
    pub weight: f64,
}

/// Where a support tube meets a slice, in slice coordinates
/// `x(s) = base + s_i f_i`: the ellipsoid `(s − s*)ᵀ A (s − s*) ≤ κ²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceEllipsoid {
    pub centre: Vector3<f64>,
    pub shape: Matrix3<f64>,
    pub kappa: f64,
}

impl SliceEllipsoid {
    /// `None` if the tube misses the slice.
    pub fn new(tube: &SupportTube, base: Event, triad: &[MinkVector; 3]) -> Result<Option<Self>> {
        let w = tube.velocity;
        let d0 = base - tube.center;
        let alpha = w.dot(&d0);
        let beta = Vector3::from_fn(|i, _| w.dot(&triad[i]));
        let g = Vector3::from_fn(|i, _| d0.dot(&triad[i]));
        let shape = Matrix3::identity() + beta * beta.transpose();
        let b = beta * alpha - g;
        let c0 = alpha * alpha - d0.norm_sq();
        let inv = shape.try_inverse().ok_or(Error::UnboundedSupport)?;
        let centre = -(inv * b);
        let r2min = c0 - b.dot(&(inv * b));
        let k2 = tube.radius * tube.radius - r2min;
        if !k2.is_finite() {
            return Err(Error::UnboundedSupport);
        }
        if k2 <= 0.0 {
            return Ok(None);
        }
        Ok(Some(SliceEllipsoid { centre, shape, kappa: k2.sqrt() }))
    }

    /// Half-widths of the axis-aligned bounding box.
    pub fn half_widths(&self) -> Vector3<f64> {
        let inv = self.shape.try_inverse().expect("positive definite");
        Vector3::from_fn(|i, _| self.kappa * inv[(i, i)].sqrt())
    }
}

fn slice_point(base: Event, triad: &[MinkVector; 3], s: &Vector3<f64>) -> Event {
    base + triad[0] * s[0] + triad[1] * s[1] + triad[2] * s[2]
}

/// Quadrature nodes covering one support tube on the slice.
pub fn tube_nodes(
    tube: &SupportTube,
    base: Event,
    triad: &[MinkVector; 3],
    spec: &QuadratureSpec,
) -> Result<Vec<Node>> {
    let Some(ell) = SliceEllipsoid::new(tube, base, triad)? else {
        return Ok(Vec::new());
    };
    let n = spec.points_per_axis;
    let mut nodes = Vec::new();
    match spec.chart {
        Chart::Ball => {
            let chol = ell.shape.cholesky().ok_or(Error::UnboundedSupport)?;
            let lt_inv = chol.l().transpose().try_inverse().ok_or(Error::UnboundedSupport)?;
            let jac = ell.kappa.powi(3) / ell.shape.determinant().sqrt();
            let (x, w) = rule_nodes(spec.rule, n);
            let dphi = 2.0 * PI / n as f64;
            nodes.reserve(n * n * n);
            for (xr, wr) in x.iter().zip(&w) {
                let r = 0.5 * (xr + 1.0);
                let wr = 0.5 * wr * r * r;
                for (mu, wm) in x.iter().zip(&w) {
                    let st = (1.0 - mu * mu).max(0.0).sqrt();
                    for k in 0..n {
                        let phi = dphi * (k as f64 + 0.5);
                        let y = Vector3::new(r * st * phi.cos(), r * st * phi.sin(), r * mu);
                        let s = ell.centre + lt_inv * y * ell.kappa;
                        nodes.push(Node { point: slice_point(base, triad, &s), weight: jac * wr * wm * dphi });
                    }
                }
            }
        }
        Chart::Box => {
            let half = ell.half_widths() * (1.0 + spec.support_padding);
            let (x, w) = rule_nodes(spec.rule, n);
            nodes.reserve(n * n * n);
            for (x0, w0) in x.iter().zip(&w) {
                for (x1, w1) in x.iter().zip(&w) {
                    for (x2, w2) in x.iter().zip(&w) {
                        let s = ell.centre + Vector3::new(x0 * half[0], x1 * half[1], x2 * half[2]);
                        let weight = w0 * w1 * w2 * half[0] * half[1] * half[2];
                        nodes.push(Node { point: slice_point(base, triad, &s), weight });
                    }
                }
            }
        }
    }
    Ok(nodes)
}

/// A slice integral and its reported error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceIntegral<const K: usize> {
    pub value: [f64; K],
    /// Refinement difference plus a rounding allowance, max over components.
    pub error: f64,
}

/// `∫_Σ F(x, T(x)) d³s` for a functional `F` linear in `T`.
pub fn integrate_slice<const K: usize, F>(
    body: &Body,
    slice: &Hyperplane,
    spec: &QuadratureSpec,
    f: F,
) -> Result<SliceIntegral<K>>
where
    F: Fn(Event, &SymTensor) -> [f64; K] + Sync,
{
    spec.validate()?;
    let fine = integrate_at::<K, F>(body, slice, spec, &f)?;
    let smooth = body.components().iter().any(|c| c.support().is_some());
    let error = if smooth {
        let coarse = integrate_at::<K, F>(body, slice, &spec.coarse(), &f)?;
        let diff = (0..K).map(|k| (fine.0[k] - coarse.0[k]).abs()).fold(0.0, f64::max);
        diff + 1e-14 * fine.1
    } else {
        1e-15 * fine.1
    };
    if let Some(tol) = spec.tolerance {
        if error > tol {
            return Err(Error::NonConvergence { estimate: error, tolerance: tol });
        }
    }
    Ok(SliceIntegral { value: fine.0, error })
}

fn integrate_at<const K: usize, F>(
    body: &Body,
    slice: &Hyperplane,
    spec: &QuadratureSpec,
    f: &F,
) -> Result<([f64; K], f64)>
where
    F: Fn(Event, &SymTensor) -> [f64; K] + Sync,
{
    let triad = slice.triad(1);
    let base = slice.base_point();
    let n = slice.normal();
    let mut total = [0.0; K];
    let mut magnitude: f64 = 0.0;
    for c in body.components() {
        match c {
            Component::Swarm(s) => {
                for p in s.particles() {
                    let x = p.crossing(&n, slice.anchor(), slice.offset());
                    let u = p.velocity();
                    let t: SymTensor = std::array::from_fn(|a| std::array::from_fn(|b| p.mass() * u.0[a] * u.0[b]));
                    let val = f(x, &t);
                    let jac = 1.0 / u.dot(&n);
                    for k in 0..K {
                        total[k] += val[k] * jac;
                        magnitude = magnitude.max((val[k] * jac).abs());
                    }
                }
            }
            _ => {
                let tube = c.support().expect("smooth piece has a support tube");
                let nodes = tube_nodes(&tube, base, &triad, spec)?;
                let values: Vec<Result<[f64; K]>> = nodes
                    .par_iter()
                    .map(|node| {
                        let t = c.eval(node.point)?;
                        let v = f(node.point, &t);
                        Ok(v.map(|x| x * node.weight))
                    })
                    .collect();
                let mut abs_sum = [0.0; K];
                for v in values {
                    let v = v?;
                    for k in 0..K {
                        total[k] += v[k];
                        abs_sum[k] += v[k].abs();
                    }
                }
                magnitude = abs_sum.iter().fold(magnitude, |m, x| m.max(*x));
            }
        }
    }
    Ok((total, magnitude))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        let sum: f64 = w.iter().sum();
        assert!((sum - 2.0).abs() < 1e-15);
        // ∫ x^8 = 2/9, degree 9 is the limit for 5 nodes
        let i8: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(8)).sum();
        assert!((i8 - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn gauss_legendre_known_nodes() {
        let (x, w) = gauss_legendre(2);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(3);
        assert!(x[1].abs() < 1e-15);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        let (x, w) = gauss_legendre(64);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn midpoint_weights_sum_to_length() {
        let (_, w) = midpoint(7);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn ball_chart_volume_of_moving_tube() {
        // a tube moving with speed v, cut at t = 0, is an ellipsoid contracted
        // along the motion: volume 4π/3 R³ / γ
        let u = MinkVector::from_velocity([0.6, 0.0, 0.0]);
        let tube = SupportTube { center: Event::ORIGIN, velocity: u, radius: 1.0 };
        let slice = Hyperplane::at_time(0.0);
        let nodes = tube_nodes(&tube, slice.base_point(), &slice.triad(1), &QuadratureSpec::with_points(6)).unwrap();
        let vol: f64 = nodes.iter().map(|n| n.weight).sum();
        assert!((vol - 4.0 * PI / 3.0 / 1.25).abs() < 1e-13);
    }

    #[test]
    fn ellipsoid_centred_on_axis_crossing() {
        let u = MinkVector::from_velocity([0.3, -0.4, 0.2]);
        let tube = SupportTube { center: Event::new(0.5, 1.0, 2.0, -1.0), velocity: u, radius: 0.7 };
        let slice = Hyperplane::new(MinkVector::from_velocity([0.1, 0.2, 0.0]), Event::ORIGIN, 0.3).unwrap();
        let triad = slice.triad(1);
        let ell = SliceEllipsoid::new(&tube, slice.base_point(), &triad).unwrap().unwrap();
        assert!((ell.kappa - 0.7).abs() < 1e-14);
        let x = slice_point(slice.base_point(), &triad, &ell.centre);
        let d = x - tube.center;
        assert!((d.dot(&u).powi(2) - d.norm_sq()).abs() < 1e-13);
    }
}
