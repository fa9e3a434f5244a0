//! Energy-momentum sources with compact spatial support.
//!
//! Three kinds of pieces are supported and may be superposed:
//! uniformly moving dust blobs (exactly divergence-free), point-particle
//! swarms (distributional, integrated in closed form), and sampled fields
//! given by an arbitrary evaluator callback.

use crate::affine::Event;
use crate::error::{Error, Result};
use crate::exterior::{exterior_derivative_fd, hodge, volume_form, Metric, PForm};
use crate::minkowski::{tensor_dot, tensor_max_diff, tensor_on, tensor_transform, MinkVector, SymTensor};
use crate::poincare::{fundamental_field, AlgebraElement, PoincareElement};
use std::fmt;
use std::sync::Arc;

pub const ZERO_TENSOR: SymTensor = [[0.0; 4]; 4];

/// Radial density profile on the unit ball, `f(s) = (1 − s²)^k` for `s < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Polynomial { power: u32 },
}

impl Default for Profile {
    fn default() -> Self {
        Profile::Polynomial { power: 3 }
    }
}

impl Profile {
    /// Value at squared normalised radius `s² = r²/R²`.
    pub fn value(&self, s2: f64) -> f64 {
        match *self {
            Profile::Polynomial { power } => {
                if s2 >= 1.0 {
                    0.0
                } else {
                    (1.0 - s2).powi(power as i32)
                }
            }
        }
    }

    /// Polynomial degree in the radius, used to pick exact quadrature orders.
    pub fn degree(&self) -> u32 {
        match *self {
            Profile::Polynomial { power } => 2 * power,
        }
    }
}

/// Dust of constant velocity `u` with density `ρ0 f(r/R)`, where `r` is the
/// rest-frame distance from the central worldline through `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DustBlob {
    u: MinkVector,
    center: Event,
    radius: f64,
    rho0: f64,
    profile: Profile,
}

impl DustBlob {
    pub fn new(u: MinkVector, center: Event, radius: f64, rho0: f64, profile: Profile) -> Result<Self> {
        if (u.norm_sq() - 1.0).abs() >= 1e-12 || u.0[0] <= 0.0 {
            return Err(Error::Invariant(format!(
                "blob velocity must be unit future timelike, η(u,u) = {}",
                u.norm_sq()
            )));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("blob radius must be positive, got {radius}")));
        }
        if !(rho0 >= 0.0) || !rho0.is_finite() {
            return Err(Error::InvalidInput(format!("blob density must be nonnegative, got {rho0}")));
        }
        if !center.is_finite() {
            return Err(Error::InvalidInput("non-finite blob centre".into()));
        }
        Ok(DustBlob { u, center, radius, rho0, profile })
    }

    /// Blob moving with ordinary 3-velocity `v` (|v| < 1).
    pub fn moving(velocity: [f64; 3], center: Event, radius: f64, rho0: f64) -> Result<Self> {
        let speed2: f64 = velocity.iter().map(|c| c * c).sum();
        if !(speed2 < 1.0) {
            return Err(Error::InvalidInput("blob speed must be below 1".into()));
        }
        Self::new(MinkVector::from_velocity(velocity), center, radius, rho0, Profile::default())
    }

    pub fn at_rest(center: Event, radius: f64, rho0: f64) -> Result<Self> {
        Self::moving([0.0; 3], center, radius, rho0)
    }

    pub fn velocity(&self) -> MinkVector {
        self.u
    }

    pub fn center(&self) -> Event {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    /// Squared rest-frame distance from the central worldline,
    /// `(u·d)² − d·d` with `d = x − center`.
    pub fn rest_radius_sq(&self, x: Event) -> f64 {
        let d = x - self.center;
        let ud = self.u.dot(&d);
        (ud * ud - d.norm_sq()).max(0.0)
    }

    pub fn density(&self, x: Event) -> f64 {
        self.rho0 * self.profile.value(self.rest_radius_sq(x) / (self.radius * self.radius))
    }

    pub fn eval(&self, x: Event) -> SymTensor {
        let rho = self.density(x);
        if rho == 0.0 {
            return ZERO_TENSOR;
        }
        std::array::from_fn(|a| std::array::from_fn(|b| rho * self.u.0[a] * self.u.0[b]))
    }

    pub fn support(&self) -> SupportTube {
        SupportTube { center: self.center, velocity: self.u, radius: self.radius }
    }

    fn pushforward(&self, g: &PoincareElement, o: Event) -> Self {
        let u = g.lorentz().apply(&self.u);
        let u = u * (1.0 / u.norm_sq().sqrt());
        DustBlob { u, center: g.act_on_point(self.center, o), ..*self }
    }
}

/// A point mass on the straight worldline `x(τ) = event + τ u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    mass: f64,
    u: MinkVector,
    event: Event,
}

impl Particle {
    pub fn new(mass: f64, u: MinkVector, event: Event) -> Result<Self> {
        if !(mass > 0.0) || !mass.is_finite() {
            return Err(Error::InvalidInput(format!("particle mass must be positive, got {mass}")));
        }
        if (u.norm_sq() - 1.0).abs() >= 1e-12 || u.0[0] <= 0.0 {
            return Err(Error::Invariant("particle velocity must be unit future timelike".into()));
        }
        if !event.is_finite() {
            return Err(Error::InvalidInput("non-finite particle event".into()));
        }
        Ok(Particle { mass, u, event })
    }

    pub fn moving(mass: f64, velocity: [f64; 3], event: Event) -> Result<Self> {
        let speed2: f64 = velocity.iter().map(|c| c * c).sum();
        if !(speed2 < 1.0) {
            return Err(Error::InvalidInput("particle speed must be below 1".into()));
        }
        Self::new(mass, MinkVector::from_velocity(velocity), event)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn velocity(&self) -> MinkVector {
        self.u
    }

    pub fn event(&self) -> Event {
        self.event
    }

    pub fn momentum(&self) -> MinkVector {
        self.u * self.mass
    }

    /// Where the worldline meets `{x : (x − anchor)·n = σ}`.
    pub fn crossing(&self, normal: &MinkVector, anchor: Event, offset: f64) -> Event {
        let tau = (offset - (self.event - anchor).dot(normal)) / self.u.dot(normal);
        self.event + self.u * tau
    }

    fn pushforward(&self, g: &PoincareElement, o: Event) -> Self {
        let u = g.lorentz().apply(&self.u);
        Particle { mass: self.mass, u: u * (1.0 / u.norm_sq().sqrt()), event: g.act_on_point(self.event, o) }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ParticleSwarm {
    particles: Vec<Particle>,
}

impl ParticleSwarm {
    pub fn new(particles: Vec<Particle>) -> Self {
        ParticleSwarm { particles }
    }

    pub fn particles(&self) -> &[Particle] {
        &self.particles
    }
}

/// A tube `{x : rest-frame distance from the line c + τw is < R}` that
/// contains a piece's support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportTube {
    pub center: Event,
    pub velocity: MinkVector,
    pub radius: f64,
}

pub type Evaluator = dyn Fn(Event) -> Result<SymTensor> + Send + Sync;

/// `T^{ab}` given by a callback, with a declared support tube. The callback
/// must be pure.
#[derive(Clone)]
pub struct SampledField {
    label: String,
    evaluator: Arc<Evaluator>,
    support: SupportTube,
}

impl SampledField {
    pub fn new(
        label: impl Into<String>,
        support: SupportTube,
        evaluator: impl Fn(Event) -> Result<SymTensor> + Send + Sync + 'static,
    ) -> Result<Self> {
        let u = support.velocity;
        if (u.norm_sq() - 1.0).abs() >= 1e-12 || u.0[0] <= 0.0 || !(support.radius > 0.0) {
            return Err(Error::Invariant("support tube needs a unit timelike axis and positive radius".into()));
        }
        Ok(SampledField { label: label.into(), evaluator: Arc::new(evaluator), support })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn support(&self) -> SupportTube {
        self.support
    }

    pub fn eval(&self, x: Event) -> Result<SymTensor> {
        let t = (self.evaluator)(x)?;
        let mut scale: f64 = 0.0;
        let mut asym: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                if !t[a][b].is_finite() {
                    return Err(Error::Evaluator(format!("{}: non-finite component at {:?}", self.label, x.0)));
                }
                scale = scale.max(t[a][b].abs());
                asym = asym.max((t[a][b] - t[b][a]).abs());
            }
        }
        if asym > 1e-12 * scale.max(1.0) {
            return Err(Error::Evaluator(format!("{}: tensor not symmetric (defect {asym:e})", self.label)));
        }
        Ok(t)
    }

    fn pushforward(&self, g: &PoincareElement, o: Event) -> Self {
        let inner = Arc::clone(&self.evaluator);
        let inv = g.inverse();
        let l = *g.lorentz().matrix();
        let u = g.lorentz().apply(&self.support.velocity);
        let support = SupportTube {
            center: g.act_on_point(self.support.center, o),
            velocity: u * (1.0 / u.norm_sq().sqrt()),
            radius: self.support.radius,
        };
        SampledField {
            label: self.label.clone(),
            evaluator: Arc::new(move |x| Ok(tensor_transform(&inner(inv.act_on_point(x, o))?, &l))),
            support,
        }
    }
}

impl fmt::Debug for SampledField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledField").field("label", &self.label).field("support", &self.support).finish()
    }
}

#[derive(Debug, Clone)]
pub enum Component {
    Blob(DustBlob),
    Swarm(ParticleSwarm),
    Sampled(SampledField),
}

impl Component {
    /// `T^{ab}(x)`; not defined pointwise for swarms.
    pub fn eval(&self, x: Event) -> Result<SymTensor> {
        match self {
            Component::Blob(b) => Ok(b.eval(x)),
            Component::Sampled(s) => s.eval(x),
            Component::Swarm(_) => Err(Error::NotApplicable("point particles have no pointwise tensor".into())),
        }
    }

    pub fn support(&self) -> Option<SupportTube> {
        match self {
            Component::Blob(b) => Some(b.support()),
            Component::Sampled(s) => Some(s.support()),
            Component::Swarm(_) => None,
        }
    }
}

/// A finite superposition of pieces.
#[derive(Debug, Clone, Default)]
pub struct Body {
    components: Vec<Component>,
}

impl Body {
    pub fn new(components: Vec<Component>) -> Self {
        Body { components }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_blobs(blobs: impl IntoIterator<Item = DustBlob>) -> Self {
        Body { components: blobs.into_iter().map(Component::Blob).collect() }
    }

    pub fn from_particles(particles: Vec<Particle>) -> Self {
        Body { components: vec![Component::Swarm(ParticleSwarm::new(particles))] }
    }

    pub fn push(&mut self, c: Component) {
        self.components.push(c);
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn has_particles(&self) -> bool {
        self.components.iter().any(|c| matches!(c, Component::Swarm(_)))
    }

    pub fn particles(&self) -> impl Iterator<Item = &Particle> {
        self.components.iter().flat_map(|c| match c {
            Component::Swarm(s) => s.particles(),
            _ => &[],
        })
    }

    /// A length characterising the body: the largest support radius or
    /// particle separation, at least the smallest positive one found.
    pub fn extent(&self) -> f64 {
        let mut ext: f64 = 0.0;
        for c in &self.components {
            if let Some(t) = c.support() {
                ext = ext.max(t.radius);
            }
        }
        let ps: Vec<&Particle> = self.particles().collect();
        for p in &ps {
            for q in &ps {
                let d = p.event() - q.event();
                ext = ext.max(d.0[1..].iter().map(|c| c * c).sum::<f64>().sqrt());
            }
        }
        if ext > 0.0 {
            ext
        } else {
            1.0
        }
    }
}

/// `T^{ab}(x)` summed over all pieces.
pub fn eval_t(b: &Body, x: Event) -> Result<SymTensor> {
    let mut total = ZERO_TENSOR;
    for c in &b.components {
        let t = c.eval(x)?;
        for i in 0..4 {
            for j in 0..4 {
                total[i][j] += t[i][j];
            }
        }
    }
    Ok(total)
}

/// Central-difference `∂_a T^{ab}` at `x`.
pub fn divergence_fd(b: &Body, x: Event, h: f64) -> Result<MinkVector> {
    let mut div = MinkVector::ZERO;
    for a in 0..4 {
        let step = MinkVector::basis(a) * h;
        let plus = eval_t(b, x + step)?;
        let minus = eval_t(b, x - step)?;
        for c in 0..4 {
            div.0[c] += (plus[a][c] - minus[a][c]) / (2.0 * h);
        }
    }
    Ok(div)
}

/// `𝒯_X = ⋆ i_{V^X} 𝐓` at `x`, with `ε_0123 = orientation`.
pub fn three_form(b: &Body, x: &AlgebraElement, o: Event, at: Event, orientation: i8) -> Result<PForm> {
    let t = eval_t(b, at)?;
    three_form_from_tensor(&t, &fundamental_field(x, o, at), orientation)
}

pub(crate) fn three_form_from_tensor(t: &SymTensor, v: &MinkVector, orientation: i8) -> Result<PForm> {
    // (i_V T)_b = T_ab V^a
    let w = tensor_dot(t, v).lower();
    let g = Metric::minkowski();
    hodge(&PForm::covector(&w.0), &g, &volume_form(&g, orientation))
}

/// `max |d𝒯_X|` by finite differences.
pub fn closedness_fd(b: &Body, x: &AlgebraElement, o: Event, at: Event, h: f64) -> Result<f64> {
    if b.has_particles() {
        return Err(Error::NotApplicable("closedness of 𝒯_X needs a smooth tensor".into()));
    }
    let d = exterior_derivative_fd(
        |c: &[f64]| three_form(b, x, o, Event([c[0], c[1], c[2], c[3]]), 1),
        &at.0,
        h,
    )?;
    Ok(d.max_abs())
}

/// The body moved by `g`, so that `T'(g·x) = L T(x) Lᵀ`.
pub fn pushforward_body(b: &Body, g: &PoincareElement, o: Event) -> Body {
    let components = b
        .components
        .iter()
        .map(|c| match c {
            Component::Blob(blob) => Component::Blob(blob.pushforward(g, o)),
            Component::Swarm(s) => {
                Component::Swarm(ParticleSwarm::new(s.particles.iter().map(|p| p.pushforward(g, o)).collect()))
            }
            Component::Sampled(f) => Component::Sampled(f.pushforward(g, o)),
        })
        .collect();
    Body { components }
}

/// `T(u, u) ≥ −1e−12` at every sample.
pub fn weak_energy_check(b: &Body, samples: &[(Event, MinkVector)]) -> Result<bool> {
    for (x, u) in samples {
        if (u.norm_sq() - 1.0).abs() >= 1e-12 {
            return Err(Error::Invariant("weak energy samples need unit timelike observers".into()));
        }
        if tensor_on(&eval_t(b, *x)?, u, u) < -1e-12 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `max |T'(g·x) − L T(x) Lᵀ|` for a pushed-forward body.
pub fn pushforward_residual(b: &Body, g: &PoincareElement, o: Event, x: Event) -> Result<f64> {
    let moved = pushforward_body(b, g, o);
    let lhs = eval_t(&moved, g.act_on_point(x, o))?;
    let rhs = tensor_transform(&eval_t(b, x)?, g.lorentz().matrix());
    Ok(tensor_max_diff(&lhs, &rhs))
}
