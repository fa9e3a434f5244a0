//! Conserved Poincaré charges of compact bodies in Minkowski space.
//!
//! The crate integrates an energy-momentum tensor over spacelike
//! hyperplanes to obtain linear momentum `P` and angular momentum `J[z]`,
//! and derives observer-dependent mass centres, the spin/orbital split,
//! the spin vector and the Møller radius. Conventions: `c = 1`,
//! `η = diag(+1, −1, −1, −1)`, `ε_0123 = +1` unless an orientation is
//! passed explicitly.

pub mod affine;
pub mod body;
pub mod centers;
pub mod charges;
pub mod error;
pub mod exterior;
pub mod minkowski;
pub mod poincare;
pub mod quadrature;

pub use affine::{AffineFrame, Event, Hyperplane};
pub use body::{Body, Component, DustBlob, Particle, ParticleSwarm, Profile, SampledField, SupportTube};
pub use centers::{DiscSample, SpinData, WorldLine};
pub use charges::{ChargeEstimate, ChargeSet};
pub use error::{Error, Result};
pub use exterior::{Metric, PForm};
pub use minkowski::{Bivector, Covector, MinkVector, SymTensor};
pub use poincare::{AlgebraElement, DualElement, LorentzMatrix, PoincareElement};
pub use quadrature::{Chart, QuadratureSpec, Rule};
