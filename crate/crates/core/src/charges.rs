//! Conserved charges of a body: linear momentum `P^a` and angular momentum
//! `J^{ab}[z]` as slice integrals, the momentum map on the Poincaré
//! algebra, and the slice-independence and equivariance diagnostics.
//!
//! Charges are identified with elements of the dual algebra through
//! [`ChargeSet::to_dual`], which maps `(P, J[o])` to `(P♭, −J[o])`. With
//! that sign the pairing reproduces `∫_Σ 𝒯_X` for the fundamental field
//! `V^X = v + M·(x − o)` and the charges of a moved body are the
//! co-adjoint image of the original ones.

use crate::affine::{Event, Hyperplane};
use crate::body::{pushforward_body, three_form_from_tensor, Body};
use crate::error::{Error, Result};
use crate::minkowski::{tensor_dot, Bivector, MinkVector, INDEPENDENT_PAIRS};
use crate::poincare::{coadjoint, fundamental_field, pairing, AlgebraElement, DualElement, PoincareElement};
pub use crate::quadrature::{Chart, QuadratureSpec, Rule};
use crate::quadrature::integrate_slice;

/// `(P, J[z_ref])`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeSet {
    pub p: MinkVector,
    pub j: Bivector,
    pub z_ref: Event,
}

impl ChargeSet {
    pub fn new(p: MinkVector, j: Bivector, z_ref: Event) -> Result<Self> {
        if j.antisymmetry_defect() > 0.0 {
            return Err(Error::Invariant("angular momentum must be antisymmetric".into()));
        }
        Ok(ChargeSet { p, j, z_ref })
    }

    pub fn zero(z_ref: Event) -> Self {
        ChargeSet { p: MinkVector::ZERO, j: Bivector::ZERO, z_ref }
    }

    /// `J[z + a] = J[z] − a ∧ P`.
    pub fn rebase(&self, a: MinkVector) -> Self {
        ChargeSet { p: self.p, j: self.j - a.wedge(&self.p), z_ref: self.z_ref + a }
    }

    /// The same charges referred to `z`.
    pub fn at(&self, z: Event) -> Self {
        let mut out = self.rebase(z - self.z_ref);
        out.z_ref = z;
        out
    }

    /// The dual-algebra element `(P♭, −J[o])`.
    pub fn to_dual(&self, o: Event) -> DualElement {
        let c = self.at(o);
        DualElement { p: c.p.lower(), j: -c.j }
    }

    pub fn from_dual(d: &DualElement, o: Event) -> Self {
        ChargeSet { p: d.p.raise(), j: -d.j, z_ref: o }
    }

    /// Charges of the body moved by `g` (relative to `o`).
    pub fn transformed(&self, g: &PoincareElement, o: Event) -> Self {
        Self::from_dual(&coadjoint(g, &self.to_dual(o)), o)
    }

    /// `⟨𝔐, X⟩ = η(v, P) − ½ η_ac η_bd M^{ab} J^{cd}[o]`.
    pub fn evaluate(&self, x: &AlgebraElement, o: Event) -> f64 {
        pairing(&self.to_dual(o), x)
    }

    /// Largest relative component difference after referring both sets to
    /// `self.z_ref`. Angular momenta are scaled by `max(|J|, |P|·length)`.
    pub fn relative_deviation(&self, other: &ChargeSet, length: f64) -> f64 {
        let o = other.at(self.z_ref);
        let p_scale = self.p.max_abs().max(o.p.max_abs());
        let j_scale = self.j.max_abs().max(o.j.max_abs()).max(p_scale * length);
        let dp = (self.p - o.p).max_abs();
        let dj = (self.j - o.j).max_abs();
        let rel = |d: f64, s: f64| if s > 0.0 { d / s } else { d };
        rel(dp, p_scale).max(rel(dj, j_scale))
    }

    /// Components as `[P^0..P^3, J^01, J^02, J^03, J^12, J^13, J^23]`.
    pub fn to_array(&self) -> [f64; 10] {
        let j = self.j.independent();
        std::array::from_fn(|k| if k < 4 { self.p.0[k] } else { j[k - 4] })
    }
}

/// Charges with the reported absolute quadrature error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeEstimate {
    pub charges: ChargeSet,
    pub error: f64,
}

/// `P^a = ∫ T^a_b u^b dμ`, `J^{ab}[z] = ∫ [(x−z)^a T^b_c − (x−z)^b T^a_c] u^c dμ`.
pub fn integrate_charges(b: &Body, slice: &Hyperplane, z: Event, q: &QuadratureSpec) -> Result<ChargeEstimate> {
    let u = slice.normal();
    let r = integrate_slice::<10, _>(b, slice, q, |x, t| {
        let w = tensor_dot(t, &u);
        let d = x - z;
        std::array::from_fn(|k| {
            if k < 4 {
                w.0[k]
            } else {
                let (a, c) = INDEPENDENT_PAIRS[k - 4];
                d.0[a] * w.0[c] - d.0[c] * w.0[a]
            }
        })
    })?;
    let p = MinkVector(std::array::from_fn(|k| r.value[k]));
    let j = Bivector::from_independent(std::array::from_fn(|k| r.value[k + 4]));
    Ok(ChargeEstimate { charges: ChargeSet { p, j, z_ref: z }, error: r.error })
}

/// A scalar charge with its reported absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarEstimate {
    pub value: f64,
    pub error: f64,
}

/// `⟨𝔐, X⟩` from the integrated charges.
pub fn momentum_map(
    b: &Body,
    x: &AlgebraElement,
    o: Event,
    slice: &Hyperplane,
    q: &QuadratureSpec,
) -> Result<ScalarEstimate> {
    let c = integrate_charges(b, slice, o, q)?;
    let error = c.error * (4.0 * x.v.max_abs() + 8.0 * x.m.max_abs());
    Ok(ScalarEstimate { value: c.charges.evaluate(x, o), error })
}

/// `∫_Σ 𝒯_X`, evaluating the 3-form on an oriented triad of the slice.
pub fn momentum_map_direct(
    b: &Body,
    x: &AlgebraElement,
    o: Event,
    slice: &Hyperplane,
    q: &QuadratureSpec,
    orientation: i8,
) -> Result<ScalarEstimate> {
    let triad = slice.triad(orientation);
    let vecs: [&[f64]; 3] = [&triad[0].0, &triad[1].0, &triad[2].0];
    let r = integrate_slice::<1, _>(b, slice, q, |at, t| {
        let form = three_form_from_tensor(t, &fundamental_field(x, o, at), orientation)
            .expect("grade-1 Hodge dual in four dimensions");
        [form.evaluate(&vecs)]
    })?;
    Ok(ScalarEstimate { value: r.value[0], error: r.error })
}

/// Relative deviation of the charges on `Σ(u, σ1)` and `Σ(u, σ2)`, both
/// anchored at `z`.
pub fn slice_independence_check(
    b: &Body,
    u: MinkVector,
    sigma1: f64,
    sigma2: f64,
    z: Event,
    q: &QuadratureSpec,
) -> Result<f64> {
    let s1 = Hyperplane::new(u, z, sigma1)?;
    let s2 = Hyperplane::new(u, z, sigma2)?;
    let c1 = integrate_charges(b, &s1, z, q)?;
    let c2 = integrate_charges(b, &s2, z, q)?;
    Ok(c1.charges.relative_deviation(&c2.charges, b.extent()))
}

/// Relative deviation between the charges of the moved body on the moved
/// slice and the co-adjoint image of the original charges.
pub fn equivariance_check(
    b: &Body,
    g: &PoincareElement,
    o: Event,
    slice: &Hyperplane,
    q: &QuadratureSpec,
) -> Result<f64> {
    let before = integrate_charges(b, slice, o, q)?.charges;
    let moved = pushforward_body(b, g, o);
    let after = integrate_charges(&moved, &slice.transformed(g, o)?, o, q)?.charges;
    let predicted = before.transformed(g, o);
    Ok(predicted.relative_deviation(&after, b.extent()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::{DustBlob, Particle};
    use crate::poincare::LorentzMatrix;

    fn two_particles(m: f64, v: f64, d: f64) -> Body {
        Body::from_particles(vec![
            Particle::moving(m, [v, 0.0, 0.0], Event::new(0.0, 0.0, d, 0.0)).unwrap(),
            Particle::moving(m, [-v, 0.0, 0.0], Event::new(0.0, 0.0, -d, 0.0)).unwrap(),
        ])
    }

    #[test]
    fn two_particle_closed_form() {
        let (m, v, d) = (1.5, 0.6f64, 2.0);
        let gamma = 1.0 / (1.0 - v * v).sqrt();
        let c = integrate_charges(&two_particles(m, v, d), &Hyperplane::at_time(0.0), Event::ORIGIN, &QuadratureSpec::default())
            .unwrap()
            .charges;
        assert!((c.p.0[0] - 2.0 * gamma * m).abs() < 1e-12);
        assert!(c.p.0[1..].iter().all(|x| x.abs() < 1e-12));
        assert!((c.j.0[2][1] - 2.0 * gamma * m * v * d).abs() < 1e-12);
        let mut rest = c.j;
        rest.0[2][1] = 0.0;
        rest.0[1][2] = 0.0;
        assert!(rest.max_abs() < 1e-12);
    }

    #[test]
    fn particle_on_worldline_has_no_angular_momentum() {
        let p = Particle::moving(2.0, [0.3, 0.2, -0.1], Event::new(0.0, 1.0, 1.0, 1.0)).unwrap();
        let z = p.event() + p.velocity() * 3.0;
        let c = integrate_charges(&Body::from_particles(vec![p]), &Hyperplane::at_time(5.0), z, &QuadratureSpec::default())
            .unwrap();
        assert!(c.charges.j.max_abs() < 1e-13);
    }

    #[test]
    fn rest_blob_about_its_centre() {
        let blob = DustBlob::at_rest(Event::new(0.0, 0.5, 0.0, -0.5), 1.0, 3.0).unwrap();
        let c = integrate_charges(&Body::from_blobs([blob]), &Hyperplane::at_time(0.0), blob.center(), &QuadratureSpec::with_points(12))
            .unwrap();
        // ρ0 · 4π R³ ∫ s²(1 − s²)³ ds
        let mass = 3.0 * 64.0 * std::f64::consts::PI / 315.0;
        assert!((c.charges.p.0[0] - mass).abs() < 1e-13);
        assert!(c.charges.p.0[1..].iter().all(|x| x.abs() < 1e-14));
        assert!(c.charges.j.max_abs() < 1e-14);
        assert!(c.error < 1e-12);
    }

    #[test]
    fn rebase_round_trip_and_parallel_shift() {
        let c = ChargeSet::new(
            MinkVector::new(3.0, 0.1, 0.2, 0.0),
            Bivector::from_independent([0.5, -0.2, 0.0, 1.0, 0.3, -0.7]),
            Event::ORIGIN,
        )
        .unwrap();
        let a = MinkVector::new(0.4, 1.0, -2.0, 0.5);
        assert!((c.rebase(a).rebase(-a).j - c.j).max_abs() < 1e-15);
        assert!((c.rebase(c.p * 2.5).j - c.j).max_abs() < 1e-14);
    }

    #[test]
    fn translated_body_matches_dual_translation() {
        let body = two_particles(1.0, 0.5, 1.0);
        let a = MinkVector::new(0.0, 2.0, -1.0, 0.5);
        let g = PoincareElement::translation(a);
        let r = equivariance_check(&body, &g, Event::ORIGIN, &Hyperplane::at_time(0.0), &QuadratureSpec::default()).unwrap();
        assert!(r < 1e-15);
    }

    #[test]
    fn boosted_swarm_equivariance() {
        let body = two_particles(1.0, 0.5, 1.0);
        let g = PoincareElement::new(MinkVector::new(0.3, 0.0, 1.0, 0.0), LorentzMatrix::boost(0.9, [0.2, 1.0, 0.0]));
        let r = equivariance_check(&body, &g, Event::new(1.0, 0.0, 0.0, 2.0), &Hyperplane::at_time(0.0), &QuadratureSpec::default())
            .unwrap();
        assert!(r < 1e-13, "{r}");
    }

    #[test]
    fn direct_and_formula_momentum_map_agree() {
        let blob = DustBlob::moving([0.3, 0.1, 0.0], Event::new(0.0, 0.2, 0.4, 0.0), 1.0, 1.0).unwrap();
        let body = Body::from_blobs([blob]);
        let x = AlgebraElement::new(
            MinkVector::new(0.5, 0.2, 0.0, -1.0),
            Bivector::from_independent([0.3, -0.4, 0.1, 0.7, 0.0, 0.2]),
        )
        .unwrap();
        let o = Event::new(0.3, -1.0, 0.5, 0.2);
        let slice = Hyperplane::new(MinkVector::from_velocity([0.0, 0.2, 0.1]), Event::ORIGIN, 0.4).unwrap();
        let q = QuadratureSpec::with_points(12);
        let a = momentum_map(&body, &x, o, &slice, &q).unwrap().value;
        for orientation in [1, -1] {
            let b = momentum_map_direct(&body, &x, o, &slice, &q, orientation).unwrap().value;
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn non_convergence_reported() {
        let blob = DustBlob::at_rest(Event::ORIGIN, 1.0, 1.0).unwrap();
        let q = QuadratureSpec {
            points_per_axis: 4,
            chart: Chart::Box,
            tolerance: Some(1e-12),
            ..QuadratureSpec::default()
        };
        let r = integrate_charges(&Body::from_blobs([blob]), &Hyperplane::at_time(0.0), Event::ORIGIN, &q);
        assert!(matches!(r, Err(Error::NonConvergence { .. })));
    }
}
