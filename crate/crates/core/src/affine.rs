//! Affine Minkowski space: events, the difference map, affine frames and
//! spacelike hyperplanes of simultaneity.
//!
//! Events are stored by their coordinates in one fixed global orthonormal
//! affine frame; every other frame is data relative to it.

use crate::error::{Error, Result};
use crate::minkowski::MinkVector;
use nalgebra::{Matrix4, Vector4};
use std::ops::{Add, Sub};

/// A point of Minkowski space.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Event(pub [f64; 4]);

impl Event {
    pub const ORIGIN: Event = Event([0.0; 4]);

    pub fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Event([t, x, y, z])
    }

    pub fn coords(&self) -> [f64; 4] {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }
}

/// `p + v`.
pub fn point_plus(p: Event, v: MinkVector) -> Event {
    Event(std::array::from_fn(|a| p.0[a] + v.0[a]))
}

/// The unique vector `p − q` with `q + (p − q) = p`.
pub fn point_diff(p: Event, q: Event) -> MinkVector {
    MinkVector(std::array::from_fn(|a| p.0[a] - q.0[a]))
}

impl Add<MinkVector> for Event {
    type Output = Event;
    fn add(self, v: MinkVector) -> Event {
        point_plus(self, v)
    }
}

impl Sub<MinkVector> for Event {
    type Output = Event;
    fn sub(self, v: MinkVector) -> Event {
        point_plus(self, -v)
    }
}

impl Sub for Event {
    type Output = MinkVector;
    fn sub(self, q: Event) -> MinkVector {
        point_diff(self, q)
    }
}

/// An affine frame `(o, f)`: an origin and the images of the canonical
/// basis.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineFrame {
    origin: Event,
    basis: [MinkVector; 4],
    // columns are the basis vectors
    matrix: Matrix4<f64>,
    inverse: Matrix4<f64>,
}

impl AffineFrame {
    pub fn new(origin: Event, basis: [MinkVector; 4]) -> Result<Self> {
        let matrix = Matrix4::from_fn(|a, b| basis[b].0[a]);
        let det = matrix.determinant();
        if !(det.abs() > 1e-12) {
            return Err(Error::SingularFrame(det));
        }
        let inverse = matrix.try_inverse().ok_or(Error::SingularFrame(det))?;
        Ok(AffineFrame { origin, basis, matrix, inverse })
    }

    /// The storage chart.
    pub fn global() -> Self {
        Self::new(Event::ORIGIN, std::array::from_fn(MinkVector::basis)).expect("identity frame")
    }

    pub fn origin(&self) -> Event {
        self.origin
    }

    pub fn basis(&self) -> &[MinkVector; 4] {
        &self.basis
    }

    /// `η(e_a, e_b) = η_ab` within `1e-12`.
    pub fn is_orthonormal(&self) -> bool {
        (0..4).all(|a| {
            (0..4).all(|b| {
                let expected = if a == b { crate::minkowski::ETA[a] } else { 0.0 };
                (self.basis[a].dot(&self.basis[b]) - expected).abs() < 1e-12
            })
        })
    }

    /// `r^a = θ^a(p − o)` with `θ` the dual basis.
    pub fn coords(&self, p: Event) -> [f64; 4] {
        let d = (p - self.origin).to_nalgebra();
        let r = self.inverse * d;
        [r[0], r[1], r[2], r[3]]
    }

    /// `o + r^a e_a`.
    pub fn point(&self, r: [f64; 4]) -> Event {
        let v = self.matrix * Vector4::from(r);
        self.origin + MinkVector::from_nalgebra(&v)
    }

    /// Coordinates in `other` of the point with coordinates `r` here:
    /// `r'^a = θ'^a(o − o') + θ'^a(e_b) r^b`.
    pub fn transition(&self, other: &AffineFrame, r: [f64; 4]) -> [f64; 4] {
        let shift = other.inverse * (self.origin - other.origin).to_nalgebra();
        let linear = other.inverse * self.matrix;
        let out = shift + linear * Vector4::from(r);
        [out[0], out[1], out[2], out[3]]
    }
}

/// `Σ(u, σ) = { x : (x − z)·u = σ }` with `u` unit timelike and
/// future-pointing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperplane {
    normal: MinkVector,
    anchor: Event,
    offset: f64,
}

impl Hyperplane {
    pub fn new(normal: MinkVector, anchor: Event, offset: f64) -> Result<Self> {
        if !normal.is_finite() || !anchor.is_finite() || !offset.is_finite() {
            return Err(Error::InvalidInput("non-finite hyperplane data".into()));
        }
        if (normal.norm_sq() - 1.0).abs() >= 1e-12 {
            return Err(Error::Invariant(format!(
                "hyperplane normal must be unit timelike, η(u,u) = {}",
                normal.norm_sq()
            )));
        }
        if normal.0[0] <= 0.0 {
            return Err(Error::Invariant("hyperplane normal must be future-pointing".into()));
        }
        Ok(Hyperplane { normal, anchor, offset })
    }

    /// Normalise a future timelike vector and build the hyperplane.
    pub fn from_direction(direction: MinkVector, anchor: Event, offset: f64) -> Result<Self> {
        let n2 = direction.norm_sq();
        if !(n2 > 0.0) || direction.0[0] <= 0.0 {
            return Err(Error::Invariant("slice normal must be future timelike".into()));
        }
        Self::new(direction * (1.0 / n2.sqrt()), anchor, offset)
    }

    /// The rest-frame simultaneity slice `t = t0`.
    pub fn at_time(t0: f64) -> Self {
        Hyperplane { normal: MinkVector::basis(0), anchor: Event::ORIGIN, offset: t0 }
    }

    pub fn normal(&self) -> MinkVector {
        self.normal
    }

    pub fn anchor(&self) -> Event {
        self.anchor
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// The point `z + σ u` of the slice.
    pub fn base_point(&self) -> Event {
        self.anchor + self.normal * self.offset
    }

    /// `(x − z)·u − σ`.
    pub fn signed_distance(&self, x: Event) -> f64 {
        (x - self.anchor).dot(&self.normal) - self.offset
    }

    /// Offset of this slice measured from another reference point.
    pub fn offset_from(&self, z: Event) -> f64 {
        (self.base_point() - z).dot(&self.normal)
    }

    /// Three spacelike vectors `f_i` with `η(f_i, f_j) = −δ_ij`,
    /// `η(u, f_i) = 0`, and `ε(u, f1, f2, f3)` of the sign of
    /// `orientation`.
    pub fn triad(&self, orientation: i8) -> [MinkVector; 3] {
        let u = self.normal;
        let mut found: Vec<MinkVector> = Vec::with_capacity(3);
        for seed in [1, 2, 3, 0] {
            if found.len() == 3 {
                break;
            }
            let s = MinkVector::basis(seed);
            let mut w = s - u * s.dot(&u);
            for f in &found {
                w = w + *f * w.dot(f);
            }
            let n2 = -w.norm_sq();
            if n2.sqrt() < 1e-9 {
                continue;
            }
            let mut f = w * (1.0 / n2.sqrt());
            // one re-orthogonalisation pass
            f = f - u * f.dot(&u);
            for g in &found {
                f = f + *g * f.dot(g);
            }
            found.push(f * (1.0 / (-f.norm_sq()).sqrt()));
        }
        let mut triad = [found[0], found[1], found[2]];
        let vol = tetrad_volume(&u, &triad);
        if (vol < 0.0) != (orientation < 0) {
            triad[2] = -triad[2];
        }
        triad
    }

    /// The image under an affine map `x ↦ o + a + L(x − o)`.
    pub fn transformed(&self, g: &crate::poincare::PoincareElement, o: Event) -> Result<Self> {
        let normal = g.lorentz().apply(&self.normal);
        let anchor = g.act_on_point(self.anchor, o);
        Hyperplane::new(renormalise(normal), anchor, self.offset)
    }
}

fn renormalise(u: MinkVector) -> MinkVector {
    u * (1.0 / u.norm_sq().sqrt())
}

/// `det[u, f1, f2, f3]`, i.e. the volume form with `ε_0123 = +1`
/// evaluated on the tetrad.
pub fn tetrad_volume(u: &MinkVector, f: &[MinkVector; 3]) -> f64 {
    Matrix4::from_fn(|a, b| match b {
        0 => u.0[a],
        k => f[k - 1].0[a],
    })
    .determinant()
}
