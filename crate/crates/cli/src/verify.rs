//! Seeded randomized checks of the kernel's identities.

use poincare_charges::body::{closedness_fd, divergence_fd, weak_energy_check};
use poincare_charges::centers::{
    default_rapidities, mass_center_line, moller_disc_sample, orbital, rest_frame, spin, spin_projected,
    spin_tensor_from_vector, spin_vector, worldline_offset,
};
use poincare_charges::charges::{equivariance_check, integrate_charges, momentum_map, slice_independence_check};
use poincare_charges::exterior::{hodge, inner_norm, insert, volume_form, wedge};
use poincare_charges::poincare::{
    adjoint, coadjoint, exp_algebra, field_commutator_check, killing_residual_fd, pairing,
    pushforward_equivariance_check,
};
use poincare_charges::{
    AlgebraElement, Bivector, Body, ChargeSet, Component, Covector, DualElement, DustBlob, Event, Hyperplane,
    LorentzMatrix, Metric, MinkVector, PForm, Particle, PoincareElement, QuadratureSpec, SampledField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Exterior,
    Poincare,
    Charges,
    Centers,
}

/// Deliberately broken inputs that the suite must catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Fault {
    /// Generators get an η-symmetric Lorentz part.
    SymmetricGenerator,
    /// The conserved dust field is replaced by one with time-modulated
    /// density.
    TimeModulatedField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub suite: Suite,
    pub seed: u64,
    pub samples: usize,
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { suite: Suite::All, seed: 0, samples: 50, fault: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: &'static str,
    /// The identity under test.
    pub identity: &'static str,
    pub residual: f64,
    pub threshold: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.residual <= self.threshold
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let cmp = if self.passed() { "<=" } else { ">" };
        format!(
            "{status} {}/{}: {} (residual {:.3e} {cmp} {:.1e})",
            self.suite, self.name, self.identity, self.residual, self.threshold
        )
    }
}

pub fn run(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let wants = |s: Suite| cfg.suite == Suite::All || cfg.suite == s;
    let n = cfg.samples.max(1);
    if wants(Suite::Exterior) {
        exterior_suite(&mut Draw::new(cfg.seed, 1), n, &mut out);
    }
    if wants(Suite::Poincare) {
        poincare_suite(&mut Draw::new(cfg.seed, 2), n, cfg.fault, &mut out);
    }
    if wants(Suite::Charges) {
        charges_suite(&mut Draw::new(cfg.seed, 3), n, cfg.fault, &mut out);
    }
    if wants(Suite::Centers) {
        centers_suite(&mut Draw::new(cfg.seed, 4), n, &mut out);
    }
    out
}

struct Draw(ChaCha8Rng);

impl Draw {
    fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Draw(rng)
    }

    fn comp(&mut self) -> f64 {
        self.0.random_range(-1.0..1.0)
    }

    fn range(&mut self, lo: f64, hi: f64) -> f64 {
        self.0.random_range(lo..hi)
    }

    fn vector(&mut self) -> MinkVector {
        MinkVector(std::array::from_fn(|_| self.comp()))
    }

    fn event(&mut self) -> Event {
        Event(std::array::from_fn(|_| self.comp()))
    }

    fn bivector(&mut self) -> Bivector {
        Bivector::from_independent(std::array::from_fn(|_| self.comp()))
    }

    fn algebra(&mut self) -> AlgebraElement {
        AlgebraElement::from_raw(self.vector(), self.bivector())
    }

    fn dual(&mut self) -> DualElement {
        DualElement { p: Covector(std::array::from_fn(|_| self.comp())), j: self.bivector() }
    }

    fn direction(&mut self) -> [f64; 3] {
        loop {
            let d = [self.comp(), self.comp(), self.comp()];
            let n = d.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 0.1 && n <= 1.0 {
                return d.map(|x| x / n);
            }
        }
    }

    fn velocity(&mut self, max_speed: f64) -> [f64; 3] {
        let s = self.range(0.0, max_speed);
        self.direction().map(|x| x * s)
    }

    fn observer(&mut self) -> MinkVector {
        MinkVector::from_velocity(self.velocity(0.9))
    }

    fn group(&mut self) -> PoincareElement {
        let l = LorentzMatrix::boost(self.range(-1.5, 1.5), self.direction())
            .compose(&LorentzMatrix::rotation(self.direction(), self.range(-3.0, 3.0)));
        PoincareElement::new(self.vector(), l)
    }

    fn form(&mut self, dim: usize, grade: usize) -> PForm {
        PForm::from_independent(dim, grade, |_| self.comp())
    }

    fn swarm(&mut self, count: usize) -> Body {
        Body::from_particles(
            (0..count)
                .map(|_| Particle::moving(self.range(0.5, 2.0), self.velocity(0.8), self.event()).expect("particle"))
                .collect(),
        )
    }

    fn charges(&mut self) -> ChargeSet {
        let p = MinkVector::from_velocity(self.velocity(0.8)) * self.range(0.5, 2.0);
        ChargeSet::new(p, self.bivector(), self.event()).expect("charges")
    }
}

struct Worst(f64);

impl Worst {
    fn new() -> Self {
        Worst(0.0)
    }

    fn see(&mut self, r: f64) {
        self.0 = if r.is_nan() { f64::INFINITY } else { self.0.max(r) };
    }
}

fn record(
    out: &mut Vec<CheckResult>,
    suite: &'static str,
    name: &'static str,
    identity: &'static str,
    residual: f64,
    threshold: f64,
) {
    out.push(CheckResult { suite, name, identity, residual, threshold });
}

fn exterior_suite(d: &mut Draw, n: usize, out: &mut Vec<CheckResult>) {
    let metrics = [Metric::minkowski(), Metric::euclidean(4), Metric::lorentzian(3), Metric::euclidean(3)];
    let (mut inv, mut dual, mut comm, mut anti) = (Worst::new(), Worst::new(), Worst::new(), Worst::new());
    for g in &metrics {
        let dim = g.dim();
        let eps = volume_form(g, 1);
        for p in 0..=dim {
            let sign = if (p * (dim - p) + g.n_minus()) % 2 == 0 { 1.0 } else { -1.0 };
            for _ in 0..n {
                let a = d.form(dim, p);
                let b = d.form(dim, p);
                let ss = hodge(&hodge(&a, g, &eps).unwrap(), g, &eps).unwrap();
                inv.see(ss.max_abs_diff(&(&a * sign)));
                let lhs = wedge(&a, &hodge(&b, g, &eps).unwrap()).unwrap();
                dual.see(lhs.max_abs_diff(&(&eps * inner_norm(&a, &b, g).unwrap())));
                let q = d.0.random_range(0..=dim - p);
                let c = d.form(dim, q);
                let swap = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
                comm.see(wedge(&a, &c).unwrap().max_abs_diff(&(&wedge(&c, &a).unwrap() * swap)));
                if p >= 1 && q >= 1 {
                    let v: Vec<f64> = (0..dim).map(|_| d.comp()).collect();
                    let lhs = insert(&v, &wedge(&a, &c).unwrap()).unwrap();
                    let sp = if p % 2 == 0 { 1.0 } else { -1.0 };
                    let rhs = &wedge(&insert(&v, &a).unwrap(), &c).unwrap()
                        + &(&wedge(&a, &insert(&v, &c).unwrap()).unwrap() * sp);
                    anti.see(lhs.max_abs_diff(&rhs));
                }
            }
        }
    }
    let s = "exterior";
    record(out, s, "hodge-involution", "⋆⋆α = (−1)^{p(n−p)} (−1)^{n−} α", inv.0, 1e-12);
    record(out, s, "hodge-duality", "α ∧ ⋆β = ⟨α, β⟩ ε", dual.0, 1e-12);
    record(out, s, "graded-commutativity", "α ∧ β = (−1)^{pq} β ∧ α", comm.0, 1e-12);
    record(out, s, "insertion-antiderivation", "i_v(α ∧ β) = i_vα ∧ β + (−1)^p α ∧ i_vβ", anti.0, 1e-12);
}

fn poincare_suite(d: &mut Draw, n: usize, fault: Option<Fault>, out: &mut Vec<CheckResult>) {
    let s = "poincare";
    let mut w = [Worst::new(), Worst::new(), Worst::new(), Worst::new(), Worst::new(), Worst::new(), Worst::new()];
    let o = Event::ORIGIN;
    for _ in 0..n {
        let (x, y, z) = (d.algebra(), d.algebra(), d.algebra());
        let jac = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        w[0].see(jac.max_abs());
        let (g1, g2) = (d.group(), d.group());
        let g12 = g1.compose(&g2);
        w[1].see(adjoint(&g12, &x).max_abs_diff(&adjoint(&g1, &adjoint(&g2, &x))) / (1.0f64 + g12.translation_part().max_abs()).powi(2));
        let p = d.dual();
        let scale = (1.0f64 + g12.translation_part().max_abs()).powi(2) * (1.0 + p.max_abs());
        w[2].see(coadjoint(&g12, &p).max_abs_diff(&coadjoint(&g1, &coadjoint(&g2, &p))) / scale);
        let lhs = pairing(&coadjoint(&g1, &p), &adjoint(&g1, &x));
        w[3].see((lhs - pairing(&p, &x)).abs() / (1.0 + lhs.abs()));
        let at = d.event();
        w[4].see(field_commutator_check(&x, &y, o, at));
        let gen = match fault {
            Some(Fault::SymmetricGenerator) => {
                let k = d.bivector();
                let mut sym = Bivector::ZERO;
                for a in 0..4 {
                    for b in 0..4 {
                        sym.0[a][b] = k.0[a][b].abs() + k.0[b][a].abs();
                    }
                }
                AlgebraElement::from_raw(x.v, sym)
            }
            _ => x,
        };
        w[5].see(killing_residual_fd(&gen, o, at, 1e-3));
        w[6].see(pushforward_equivariance_check(&g1, &x, o, at) / (1.0f64 + g1.translation_part().max_abs()).powi(2));
    }
    let e0 = AlgebraElement::translation(0);
    let m01 = AlgebraElement::lorentz(0, 1);
    let spot = e0.bracket(&m01).max_abs_diff(&AlgebraElement::translation(1));
    let x = d.algebra();
    let (t1, t2) = (d.range(-1.0, 1.0), d.range(-1.0, 1.0));
    let lhs = exp_algebra(&x, t1).unwrap().compose(&exp_algebra(&x, t2).unwrap());
    let subgroup = lhs.max_abs_diff(&exp_algebra(&x, t1 + t2).unwrap());
    record(out, s, "jacobi", "[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]] = 0", w[0].0, 1e-12);
    record(out, s, "basis-bracket", "[e₀, m₀₁] = e₁", spot, 0.0);
    record(out, s, "adjoint-homomorphism", "Ad_{gh} = Ad_g Ad_h", w[1].0, 1e-12);
    record(out, s, "coadjoint-homomorphism", "Ad*_{gh} = Ad*_g Ad*_h", w[2].0, 1e-12);
    record(out, s, "pairing-invariance", "⟨Ad*_g p, Ad_g X⟩ = ⟨p, X⟩", w[3].0, 1e-12);
    record(out, s, "field-antihomomorphism", "[V^X, V^Y] = −V^{[X,Y]}", w[4].0, 1e-10);
    record(out, s, "killing-equation", "∂_a V_b + ∂_b V_a = 0 for V = V^X", w[5].0, 1e-8);
    record(out, s, "pushforward-equivariance", "L·V^X(x) = V^{Ad_g X}(g·x)", w[6].0, 1e-10);
    record(out, s, "one-parameter-subgroup", "exp(sX) exp(tX) = exp((s+t)X)", subgroup, 1e-12);
}

/// Dust at rest in its own frame, as a sampled field; with `modulated` the
/// density is multiplied by `1 + sin t / 2`, breaking conservation.
fn dust_field(blob: DustBlob, modulated: bool) -> Body {
    let support = blob.support();
    let label = if modulated { "modulated dust" } else { "dust" };
    let field = SampledField::new(label, support, move |x: Event| {
        let mut t = blob.eval(x);
        if modulated {
            let f = 1.0 + 0.5 * x.0[0].sin();
            t.iter_mut().flatten().for_each(|c| *c *= f);
        }
        Ok(t)
    })
    .expect("unit support tube");
    Body::new(vec![Component::Sampled(field)])
}

fn charges_suite(d: &mut Draw, n: usize, fault: Option<Fault>, out: &mut Vec<CheckResult>) {
    let s = "charges";
    let q = QuadratureSpec::with_points(24);
    let mut w = [Worst::new(), Worst::new(), Worst::new(), Worst::new(), Worst::new()];
    for _ in 0..n {
        let b = d.swarm(3);
        let u = d.observer();
        let z = d.event();
        w[0].see(slice_independence_check(&b, u, d.range(-2.0, 2.0), d.range(-2.0, 2.0), z, &q).unwrap());
        let slice = Hyperplane::new(d.observer(), z, d.range(-1.0, 1.0)).unwrap();
        w[1].see(equivariance_check(&b, &d.group(), z, &slice, &q).unwrap());
        let (x, y) = (d.algebra(), d.algebra());
        let (a, c) = (d.comp(), d.comp());
        let combo = momentum_map(&b, &x.scale(a).add(&y.scale(c)), z, &slice, &q).unwrap().value;
        let parts = a * momentum_map(&b, &x, z, &slice, &q).unwrap().value
            + c * momentum_map(&b, &y, z, &slice, &q).unwrap().value;
        w[2].see((combo - parts).abs() / (1.0 + combo.abs()));
        let p = integrate_charges(&b, &slice, z, &q).unwrap().charges.p;
        w[3].see(if p.is_timelike() && p.0[0] > 0.0 { 0.0 } else { 1.0 });
    }
    let smooth = n.min(4);
    let mut cons = Worst::new();
    let mut closed = Worst::new();
    let mut weak = Worst::new();
    for _ in 0..smooth {
        let blob = DustBlob::moving(d.velocity(0.3), Event::ORIGIN, 1.0, 1.0).unwrap();
        let b = Body::from_blobs([blob]);
        w[4].see(slice_independence_check(&b, d.observer(), 0.0, 1.0, Event::ORIGIN, &q).unwrap());
        let field = dust_field(blob, fault == Some(Fault::TimeModulatedField));
        for _ in 0..3 {
            let at = Event(d.event().0.map(|c| 0.4 * c));
            let coarse = divergence_fd(&field, at, 2e-3).unwrap();
            let fine = divergence_fd(&field, at, 1e-3).unwrap();
            cons.see((fine * (4.0 / 3.0) - coarse * (1.0 / 3.0)).max_abs());
            closed.see(closedness_fd(&b, &d.algebra(), Event::ORIGIN, at, 1e-3).unwrap());
            let samples: Vec<(Event, MinkVector)> = (0..4).map(|_| (at, d.observer())).collect();
            weak.see(if weak_energy_check(&b, &samples).unwrap() { 0.0 } else { 1.0 });
        }
    }
    record(out, s, "swarm-slice-independence", "(P, J) on Σ(u,σ₁) = (P, J) on Σ(u,σ₂)", w[0].0, 1e-12);
    record(out, s, "swarm-equivariance", "charges(g·body) = Ad*_g charges(body)", w[1].0, 1e-11);
    record(out, s, "momentum-map-linearity", "⟨𝔐, aX + bY⟩ = a⟨𝔐, X⟩ + b⟨𝔐, Y⟩", w[2].0, 1e-12);
    record(out, s, "timelike-momentum", "η(P, P) > 0 and P⁰ > 0", w[3].0, 0.0);
    record(out, s, "blob-slice-independence", "(P, J) on Σ(u,0) = (P, J) on Σ(u,1)", w[4].0, 1e-6);
    record(out, s, "conservation", "∂_a T^{ab} = 0 (Richardson-extrapolated differences)", cons.0, 1e-8);
    record(out, s, "closed-current", "d(⋆ i_{V^X} T) = 0", closed.0, 1e-5);
    record(out, s, "weak-energy", "T(u, u) ≥ 0", weak.0, 0.0);
}

fn centers_suite(d: &mut Draw, n: usize, out: &mut Vec<CheckResult>) {
    let s = "centers";
    let mut w: Vec<Worst> = (0..9).map(|_| Worst::new()).collect();
    for _ in 0..n {
        let c = d.charges();
        let u = d.observer();
        let scale = 1.0 + c.j.max_abs() + (c.z_ref.0.iter().fold(0.0f64, |m, x| m.max(x.abs())));
        let sp = spin(&c, &u).unwrap();
        let l = orbital(&c, &u).unwrap();
        w[0].see((sp.s + l - c.j).max_abs() / scale);
        w[1].see(sp.s.dot(&u).max_abs() / scale);
        w[2].see((spin_projected(&c, &u).unwrap().s - sp.s).max_abs() / scale);
        let a = d.vector();
        let l1 = mass_center_line(&c, &u).unwrap();
        let l2 = mass_center_line(&c.rebase(a), &u).unwrap();
        w[3].see(l1.distance_to(l2.point) / (1.0 + (l2.point - l1.point).max_abs()) / scale);
        let (u_star, _) = rest_frame(&c).unwrap();
        let star = spin(&c, &u_star).unwrap();
        let sv = spin_vector(&star, 1).unwrap();
        w[4].see(((-sv.norm_sq()).max(0.0).sqrt() - star.s.norm()).abs() / scale);
        w[5].see((spin_tensor_from_vector(&sv, &u_star, 1) - star.s).max_abs() / scale);
        let b = d.vector();
        let lam = d.comp();
        let shifted = c.at(c.z_ref + b);
        let lhs = worldline_offset(&shifted, &u, lam).unwrap();
        let rhs = worldline_offset(&c, &u, lam + u.dot(&b) / u.dot(&c.p)).unwrap() - b;
        w[6].see((lhs - rhs).max_abs() / (scale + b.max_abs()));
        let disc = moller_disc_sample(&c, &default_rapidities(), None, 1).unwrap();
        if let Some(axis) = disc.axis {
            let r = disc.radius;
            for p in &disc.points {
                let dv = p.event - disc.centroid;
                w[7].see(dv.dot(&disc.rest_velocity).abs().max(dv.dot(&axis).abs()) / (1.0 + r));
                w[7].see((p.distance - r * (1.0 + 1e-12)).max(0.0));
            }
            w[8].see((0.99 * r - disc.max_distance()).max(0.0) / r);
        }
    }
    record(out, s, "spin-orbital-split", "J = S(u) + L(z, u)", w[0].0, 1e-12);
    record(out, s, "spin-transversality", "S(u)·u = 0", w[1].0, 1e-12);
    record(out, s, "projected-spin", "S(u) = Π⊗Π(J)", w[2].0, 1e-11);
    record(out, s, "line-rebase-invariance", "centre line of J[z] = centre line of J[z+a]", w[3].0, 1e-12);
    record(out, s, "spin-vector-norm", "‖S⃗*‖ = ‖S*‖", w[4].0, 1e-12);
    record(out, s, "spin-vector-round-trip", "S → S⃗ → S", w[5].0, 1e-12);
    record(out, s, "offset-shift-law", "a(z+b, u; λ) = a(z, u; λ + u·b/u·P) − b", w[6].0, 1e-12);
    record(out, s, "disc-geometry", "disc ⊥ u*, ⊥ S⃗*, radius ≤ R_M", w[7].0, 1e-12);
    record(out, s, "disc-supremum", "max distance ≥ 0.99 R_M", w[8].0, 0.0);
}
