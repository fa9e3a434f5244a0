//! Observer-dependent mass centres, the spin/orbital split, the rest frame,
//! the spin vector and the Møller disc, all computed algebraically from a
//! [`ChargeSet`].

use crate::affine::{Event, Hyperplane};
use crate::body::Body;
use crate::charges::{ChargeSet, QuadratureSpec};
use crate::error::{Error, Result};
use crate::minkowski::{tensor_on, Bivector, MinkVector, ETA};
use crate::quadrature::integrate_slice;
use nalgebra::Matrix4;

/// Sign of the permutation `(a, b, c, d)` of `(0, 1, 2, 3)`, zero on
/// repeated indices.
pub fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for i in 0..4 {
        for j in i + 1..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn check_observer(u: &MinkVector) -> Result<()> {
    if (u.norm_sq() - 1.0).abs() >= 1e-12 || u.0[0] <= 0.0 {
        return Err(Error::Invariant(format!(
            "observer must be unit future timelike, η(u,u) = {}",
            u.norm_sq()
        )));
    }
    Ok(())
}

fn check_timelike(p: &MinkVector) -> Result<f64> {
    let p2 = p.norm_sq();
    if !(p2 > 0.0) || p.0[0] <= 0.0 {
        return Err(Error::NonTimelikeMomentum(p2));
    }
    Ok(p2.sqrt())
}

fn check_pu(p: &MinkVector, u: &MinkVector) -> Result<f64> {
    let pu = p.dot(u);
    if !(pu.abs() > 1e-14 * p.max_abs() * u.max_abs()) {
        return Err(Error::DegenerateObserver(pu));
    }
    Ok(pu)
}

/// `Π^a_b = δ^a_b − P^a u_b / (P·u)`, projecting along `P` onto `u^⊥`.
pub fn projector(p: &MinkVector, u: &MinkVector) -> Result<Matrix4<f64>> {
    let pu = check_pu(p, u)?;
    let ul = u.lower();
    Ok(Matrix4::from_fn(|a, b| if a == b { 1.0 } else { 0.0 } - p.0[a] * ul.0[b] / pu))
}

/// A straight worldline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WorldLine {
    pub point: Event,
    pub direction: MinkVector,
}

impl WorldLine {
    pub fn at(&self, lambda: f64) -> Event {
        self.point + self.direction * lambda
    }

    /// Length of the part of `x − point` orthogonal to the (timelike)
    /// direction.
    pub fn distance_to(&self, x: Event) -> f64 {
        let d = x - self.point;
        let perp = d - self.direction * (d.dot(&self.direction) / self.direction.norm_sq());
        perp.norm_sq().abs().sqrt()
    }

    /// Where the line meets a hyperplane.
    pub fn crossing(&self, slice: &Hyperplane) -> Event {
        let n = slice.normal();
        let lambda = -slice.signed_distance(self.point) / self.direction.dot(&n);
        self.at(lambda)
    }
}

/// `a(z, u; λ) = J[z]·u / (P·u) + λ P`.
pub fn worldline_offset(c: &ChargeSet, u: &MinkVector, lambda: f64) -> Result<MinkVector> {
    let pu = check_pu(&c.p, u)?;
    Ok(c.j.dot(u) * (1.0 / pu) + c.p * lambda)
}

/// `λ = σ / (P·u)` for the point at slice offset `σ` along `u`.
pub fn lambda_from_sigma(c: &ChargeSet, u: &MinkVector, sigma: f64) -> Result<f64> {
    Ok(sigma / check_pu(&c.p, u)?)
}

pub fn sigma_from_lambda(c: &ChargeSet, u: &MinkVector, lambda: f64) -> Result<f64> {
    Ok(lambda * check_pu(&c.p, u)?)
}

/// The centre-of-mass worldline relative to the observer `u`.
pub fn mass_center_line(c: &ChargeSet, u: &MinkVector) -> Result<WorldLine> {
    check_observer(u)?;
    check_timelike(&c.p)?;
    Ok(WorldLine { point: c.z_ref + worldline_offset(c, u, 0.0)?, direction: c.p })
}

/// `S(u)` with the observer it refers to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinData {
    pub s: Bivector,
    pub u: MinkVector,
}

/// `S(u) = J[z] − a(z, u) ∧ P`.
pub fn spin(c: &ChargeSet, u: &MinkVector) -> Result<SpinData> {
    check_observer(u)?;
    let a = worldline_offset(c, u, 0.0)?;
    Ok(SpinData { s: c.j - a.wedge(&c.p), u: *u })
}

/// `S(u) = Π ⊗ Π (J[z])`.
pub fn spin_projected(c: &ChargeSet, u: &MinkVector) -> Result<SpinData> {
    check_observer(u)?;
    let pi = projector(&c.p, u)?;
    Ok(SpinData { s: c.j.transform(&pi), u: *u })
}

/// `L(z, u) = a(z, u) ∧ P`, so that `J = S(u) + L(z, u)`.
pub fn orbital(c: &ChargeSet, u: &MinkVector) -> Result<Bivector> {
    check_observer(u)?;
    Ok(worldline_offset(c, u, 0.0)?.wedge(&c.p))
}

/// `(u*, M0) = (P/‖P‖, ‖P‖)`.
pub fn rest_frame(c: &ChargeSet) -> Result<(MinkVector, f64)> {
    let m0 = check_timelike(&c.p)?;
    Ok((c.p * (1.0 / m0), m0))
}

/// `S⃗^n = −½ ε_{abcd} η^{dn} S^{ab} u^c`.
pub fn spin_vector(s: &SpinData, orientation: i8) -> Result<MinkVector> {
    let su = s.s.dot(&s.u);
    if su.max_abs() > 1e-12 * s.s.max_abs().max(1.0) {
        return Err(Error::Invariant(format!("spin is not orthogonal to its observer: |S·u| = {:e}", su.max_abs())));
    }
    let sign = if orientation < 0 { -1.0 } else { 1.0 };
    let mut out = MinkVector::ZERO;
    for n in 0..4 {
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                if s.s.0[a][b] == 0.0 {
                    continue;
                }
                for cc in 0..4 {
                    acc += levi_civita([a, b, cc, n]) * s.s.0[a][b] * s.u.0[cc];
                }
            }
        }
        out.0[n] = -0.5 * sign * ETA[n] * acc;
    }
    Ok(out)
}

/// `S^{mn} = −ε_{abcd} η^{cm} η^{dn} S⃗^a u^b`.
pub fn spin_tensor_from_vector(sv: &MinkVector, u: &MinkVector, orientation: i8) -> Bivector {
    let sign = if orientation < 0 { -1.0 } else { 1.0 };
    let mut out = Bivector::ZERO;
    for m in 0..4 {
        for n in 0..4 {
            let mut acc = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    acc += levi_civita([a, b, m, n]) * sv.0[a] * u.0[b];
                }
            }
            out.0[m][n] = -sign * ETA[m] * ETA[n] * acc;
        }
    }
    out
}

/// `R_M = ‖S*‖ / ‖P‖`.
pub fn moller_radius(c: &ChargeSet) -> Result<f64> {
    let (u_star, m0) = rest_frame(c)?;
    Ok(spin(c, &u_star)?.s.norm() / m0)
}

/// One mass-centre position on the rest-frame slice through the centroid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscPoint {
    pub event: Event,
    pub rapidity: f64,
    pub direction: MinkVector,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscSample {
    pub centroid: Event,
    pub rest_velocity: MinkVector,
    /// Unit spin axis, absent when the disc degenerates.
    pub axis: Option<MinkVector>,
    pub radius: f64,
    pub points: Vec<DiscPoint>,
}

impl DiscSample {
    pub fn is_degenerate(&self) -> bool {
        self.axis.is_none()
    }

    pub fn max_distance(&self) -> f64 {
        self.points.iter().map(|p| p.distance).fold(0.0, f64::max)
    }
}

/// The default grid: rapidities with `tanh ρ` in `0.1, …, 0.9, 0.99, 0.999`.
pub fn default_rapidities() -> Vec<f64> {
    let mut t: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    t.extend([0.99, 0.999]);
    t.into_iter().map(f64::atanh).collect()
}

/// 24 unit directions in `u*^⊥`: 8 azimuths around `axis` at elevations
/// `0` and `±π/4`.
pub fn default_directions(u_star: &MinkVector, axis: &MinkVector) -> Vec<MinkVector> {
    let (e1, e2) = complement(u_star, axis);
    let mut out = Vec::with_capacity(24);
    for el in [0.0, std::f64::consts::FRAC_PI_4, -std::f64::consts::FRAC_PI_4] {
        for k in 0..8 {
            let phi = k as f64 * std::f64::consts::FRAC_PI_4;
            let (s, c) = el.sin_cos();
            out.push((e1 * phi.cos() + e2 * phi.sin()) * c + *axis * s);
        }
    }
    out
}

/// `n` unit directions evenly spaced in the plane orthogonal to `u*` and
/// `axis`.
pub fn equatorial_directions(u_star: &MinkVector, axis: &MinkVector, n: usize) -> Vec<MinkVector> {
    let (e1, e2) = complement(u_star, axis);
    (0..n)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            e1 * phi.cos() + e2 * phi.sin()
        })
        .collect()
}

/// Two unit vectors completing `axis` to an orthonormal triad of `u^⊥`.
fn complement(u: &MinkVector, axis: &MinkVector) -> (MinkVector, MinkVector) {
    let slice = Hyperplane::new(*u, Event::ORIGIN, 0.0).expect("unit observer");
    let mut found = Vec::with_capacity(2);
    let mut triad = slice.triad(1).to_vec();
    triad.sort_by(|a, b| a.dot(axis).abs().total_cmp(&b.dot(axis).abs()));
    for f in triad {
        let mut w = f + *axis * f.dot(axis);
        for g in &found {
            w = w + *g * w.dot(g);
        }
        let n = (-w.norm_sq()).max(0.0).sqrt();
        if n > 1e-6 {
            found.push(w * (1.0 / n));
        }
        if found.len() == 2 {
            break;
        }
    }
    (found[0], found[1])
}

/// Mass centres for observers `u = cosh ρ u* + sinh ρ n`, placed on the
/// rest-frame slice through the centroid: `centroid + S*·u / (P·u)`.
pub fn moller_disc_sample(
    c: &ChargeSet,
    rapidities: &[f64],
    directions: Option<&[MinkVector]>,
    orientation: i8,
) -> Result<DiscSample> {
    let (u_star, m0) = rest_frame(c)?;
    let line = mass_center_line(c, &u_star)?;
    let centroid = line.point;
    let s_star = c.at(centroid).j;
    let radius = s_star.norm() / m0;
    let length = (c.j.max_abs() / m0).max((centroid - c.z_ref).max_abs()).max(f64::MIN_POSITIVE);
    if s_star.norm() <= 1e-12 * m0 * length {
        return Ok(DiscSample {
            centroid,
            rest_velocity: u_star,
            axis: None,
            radius: 0.0,
            points: vec![DiscPoint { event: centroid, rapidity: 0.0, direction: MinkVector::ZERO, distance: 0.0 }],
        });
    }
    let sv = spin_vector(&SpinData { s: s_star, u: u_star }, orientation)?;
    let axis = sv * (1.0 / (-sv.norm_sq()).sqrt());
    let defaults;
    let directions = match directions {
        Some(d) => d,
        None => {
            defaults = default_directions(&u_star, &axis);
            &defaults
        }
    };
    let mut points = Vec::with_capacity(rapidities.len() * directions.len());
    for n in directions {
        let n = *n - u_star * n.dot(&u_star);
        let len = (-n.norm_sq()).sqrt();
        if !(len > 0.0) {
            return Err(Error::InvalidInput("disc direction must have a component orthogonal to u*".into()));
        }
        let n = n * (1.0 / len);
        for &rho in rapidities {
            let u = u_star * rho.cosh() + n * rho.sinh();
            let b = s_star.dot(&u) * (1.0 / c.p.dot(&u));
            points.push(DiscPoint {
                event: centroid + b,
                rapidity: rho,
                direction: n,
                distance: (-b.norm_sq()).max(0.0).sqrt(),
            });
        }
    }
    Ok(DiscSample { centroid, rest_velocity: u_star, axis: Some(axis), radius, points })
}

/// The energy-weighted first moment on a slice with its reported error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstMoment {
    pub point: Event,
    pub energy: f64,
    pub error: f64,
}

/// `z + ∫ (x − z) T(u,u) dμ / ∫ T(u,u) dμ` on `Σ`.
pub fn first_moment_center(b: &Body, slice: &Hyperplane, z: Event, q: &QuadratureSpec) -> Result<FirstMoment> {
    let u = slice.normal();
    let r = integrate_slice::<5, _>(b, slice, q, |x, t| {
        let e = tensor_on(t, &u, &u);
        let d = x - z;
        [e, d.0[0] * e, d.0[1] * e, d.0[2] * e, d.0[3] * e]
    })?;
    let energy = r.value[0];
    if !(energy > 0.0) {
        return Err(Error::InvalidInput(format!("total energy on the slice is {energy:e}")));
    }
    let point = z + MinkVector(std::array::from_fn(|a| r.value[a + 1] / energy));
    let arm = (1..5).map(|k| r.value[k].abs()).fold(0.0, f64::max) / energy;
    Ok(FirstMoment { point, energy, error: r.error * (1.0 + arm) / energy })
}

/// `z + J[z]·u / (P·u) + σ P / (P·u)` for the slice `Σ`, i.e. the closed
/// form of [`first_moment_center`].
pub fn first_moment_closed_form(c: &ChargeSet, slice: &Hyperplane) -> Result<Event> {
    let u = slice.normal();
    let sigma = slice.offset_from(c.z_ref);
    let lambda = lambda_from_sigma(c, &u, sigma)?;
    Ok(c.z_ref + worldline_offset(c, &u, lambda)?)
}
