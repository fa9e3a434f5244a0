//! Acceptance criteria, one pass/fail line each.

use poincare_charges::centers::{
    mass_center_line, moller_disc_sample, moller_radius, orbital, rest_frame, spin,
    spin_tensor_from_vector, spin_vector, first_moment_center, first_moment_closed_form,
};
use poincare_charges::charges::{equivariance_check, integrate_charges, slice_independence_check};
use poincare_charges::exterior::{hodge, increasing_tuples, inner_norm, volume_form, wedge};
use poincare_charges::poincare::{
    adjoint, coadjoint, exp_algebra, field_commutator_check, killing_check, pairing, pushforward_equivariance_check,
};
use poincare_charges::{
    AlgebraElement, Bivector, Body, Covector, DualElement, Event, Hyperplane, LorentzMatrix, Metric,
    MinkVector, PForm, PoincareElement, QuadratureSpec, SpinData,
};
use poincare_cli::constants::PhysicalConstants;
use poincare_cli::radii::radii_table;
use poincare_cli::verify::{self, Fault, Suite, VerifyConfig};
use poincare_cli::Scene;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use std::time::Instant;

type Outcome = Result<String, String>;

fn fixture(name: &str) -> Scene {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.toml"));
    Scene::load(&path).expect("fixture parses")
}

fn body(name: &str) -> Body {
    fixture(name).body().expect("fixture body")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Rand(ChaCha8Rng);

impl Rand {
    fn new(seed: u64) -> Self {
        Rand(ChaCha8Rng::seed_from_u64(seed))
    }

    fn comp(&mut self) -> f64 {
        self.0.random_range(-1.0..1.0)
    }

    fn vector(&mut self) -> MinkVector {
        MinkVector(std::array::from_fn(|_| self.comp()))
    }

    fn bivector(&mut self) -> Bivector {
        Bivector::from_independent(std::array::from_fn(|_| self.comp()))
    }

    fn algebra(&mut self) -> AlgebraElement {
        AlgebraElement::from_raw(self.vector(), self.bivector())
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

    fn observer(&mut self) -> MinkVector {
        let s = self.0.random_range(0.0..0.95);
        MinkVector::from_velocity(self.direction().map(|x| x * s))
    }

    fn group(&mut self) -> PoincareElement {
        let l = LorentzMatrix::boost(self.0.random_range(-1.5..1.5), self.direction())
            .compose(&LorentzMatrix::rotation(self.direction(), self.0.random_range(-3.0..3.0)));
        PoincareElement::new(self.vector() * 2.0, l)
    }
}

/// Sign of the permutation taking `seq` to increasing order.
fn perm_sign(seq: &[usize]) -> i64 {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn hodge_suite() -> Outcome {
    let metrics: Vec<Vec<i8>> =
        vec![vec![1, -1, -1, -1], vec![1, 1, 1, 1], vec![-1, 1, 1, 1], vec![1, 1, -1, -1], vec![1, -1, -1], vec![1, 1]];
    let mut monomials = 0;
    for sig in &metrics {
        let g = Metric::new(sig.clone()).map_err(|e| e.to_string())?;
        let n = sig.len();
        let eps = volume_form(&g, 1);
        let n_minus = sig.iter().filter(|s| **s < 0).count();
        for p in 0..=n {
            let expected_sign: i64 = if (p * (n - p) + n_minus) % 2 == 0 { 1 } else { -1 };
            let tuples = increasing_tuples(n, p);
            for idx in &tuples {
                monomials += 1;
                let alpha = PForm::monomial(n, idx);
                let comp: Vec<usize> = (0..n).filter(|i| !idx.contains(i)).collect();
                let seq: Vec<usize> = idx.iter().chain(&comp).copied().collect();
                let raise: i64 = idx.iter().map(|&i| sig[i] as i64).product();
                let star_sign = perm_sign(&seq) * raise;
                let star = hodge(&alpha, &g, &eps).map_err(|e| e.to_string())?;
                let oracle = &PForm::monomial(n, &comp) * star_sign as f64;
                ensure(star == oracle, || format!("⋆ of monomial {idx:?} in signature {sig:?}"))?;
                let twice = hodge(&star, &g, &eps).map_err(|e| e.to_string())?;
                ensure(twice == &alpha * expected_sign as f64, || format!("⋆⋆ of {idx:?} in {sig:?}"))?;
                for jdx in &tuples {
                    let beta = PForm::monomial(n, jdx);
                    let lhs = wedge(&alpha, &hodge(&beta, &g, &eps).unwrap()).unwrap();
                    let inner: i64 = if idx == jdx { raise } else { 0 };
                    ensure(lhs == &eps * inner as f64, || format!("α∧⋆β for {idx:?}, {jdx:?} in {sig:?}"))?;
                }
            }
        }
    }
    let mut r = Rand::new(11);
    let g = Metric::minkowski();
    let eps = volume_form(&g, 1);
    let mut worst: f64 = 0.0;
    for p in 0..=4 {
        let sign = if (p * (4 - p) + 3) % 2 == 0 { 1.0 } else { -1.0 };
        for _ in 0..200 {
            let a = PForm::from_independent(4, p, |_| r.comp());
            let b = PForm::from_independent(4, p, |_| r.comp());
            let ss = hodge(&hodge(&a, &g, &eps).unwrap(), &g, &eps).unwrap();
            worst = worst.max(ss.max_abs_diff(&(&a * sign)));
            let lhs = wedge(&a, &hodge(&b, &g, &eps).unwrap()).unwrap();
            worst = worst.max(lhs.max_abs_diff(&(&eps * inner_norm(&a, &b, &g).unwrap())));
        }
    }
    ensure(worst < 1e-12, || format!("random-form residual {worst:e}"))?;
    Ok(format!("{monomials} monomials exact; 1000 random forms, worst residual {worst:.1e}"))
}

fn lie_suite() -> Outcome {
    let eta = [1.0, -1.0, -1.0, -1.0];
    let e = AlgebraElement::translation;
    let m = |a: usize, b: usize| AlgebraElement::from_raw(MinkVector::ZERO, Bivector::basis(a, b));
    for a in 0..4 {
        for b in 0..4 {
            ensure(e(a).bracket(&e(b)).max_abs() == 0.0, || format!("[e{a}, e{b}] ≠ 0"))?;
            for c in 0..4 {
                let lhs = e(a).bracket(&m(b, c));
                let rhs = e(c).scale(if a == b { eta[a] } else { 0.0 })
                    .add(&e(b).scale(if a == c { -eta[a] } else { 0.0 }));
                ensure(lhs.max_abs_diff(&rhs) == 0.0, || format!("[e{a}, m{b}{c}]"))?;
                for d in 0..4 {
                    let h = |x: usize, y: usize| if x == y { eta[x] } else { 0.0 };
                    let rhs = m(b, c)
                        .scale(h(a, d))
                        .add(&m(a, d).scale(h(b, c)))
                        .add(&m(b, d).scale(-h(a, c)))
                        .add(&m(a, c).scale(-h(b, d)));
                    ensure(m(a, b).bracket(&m(c, d)).max_abs_diff(&rhs) == 0.0, || format!("[m{a}{b}, m{c}{d}]"))?;
                }
            }
        }
    }
    ensure(e(0).bracket(&m(0, 1)) == e(1), || "[e0, m01] ≠ e1".into())?;

    let mut r = Rand::new(22);
    let mut w = [0.0f64; 7];
    let o = Event::ORIGIN;
    for _ in 0..200 {
        let (x, y, z) = (r.algebra(), r.algebra(), r.algebra());
        let jac = x.bracket(&y.bracket(&z)).add(&y.bracket(&z.bracket(&x))).add(&z.bracket(&x.bracket(&y)));
        w[0] = w[0].max(jac.max_abs());
        let (g1, g2) = (r.group(), r.group());
        let g12 = g1.compose(&g2);
        let scale = (1.0f64 + g12.translation_part().max_abs()).powi(2);
        w[1] = w[1].max(adjoint(&g12, &x).max_abs_diff(&adjoint(&g1, &adjoint(&g2, &x))) / scale);
        let p = DualElement { p: Covector(r.vector().0), j: r.bivector() };
        w[2] = w[2].max(coadjoint(&g12, &p).max_abs_diff(&coadjoint(&g1, &coadjoint(&g2, &p))) / scale);
        let lhs = pairing(&coadjoint(&g1, &p), &adjoint(&g1, &x));
        w[3] = w[3].max((lhs - pairing(&p, &x)).abs() / (1.0 + lhs.abs()));
        let h = 1e-4;
        let plus = adjoint(&exp_algebra(&x, h).unwrap(), &y);
        let minus = adjoint(&exp_algebra(&x, -h).unwrap(), &y);
        let fd = plus.add(&minus.scale(-1.0)).scale(0.5 / h);
        w[4] = w[4].max(fd.max_abs_diff(&x.bracket(&y)));
        let at = Event(r.vector().0);
        w[5] = w[5].max(field_commutator_check(&x, &y, o, at));
        w[6] = w[6].max(pushforward_equivariance_check(&g1, &x, o, at) / (1.0f64 + g1.translation_part().max_abs()).powi(2));
    }
    let names = ["jacobi", "Ad hom", "Ad* hom", "pairing", "ad FD", "field anti-hom", "push-forward"];
    let limits = [1e-12, 1e-12, 1e-12, 1e-12, 1e-6, 1e-10, 1e-10];
    for i in 0..7 {
        ensure(w[i] < limits[i], || format!("{}: {:e} ≥ {:e}", names[i], w[i], limits[i]))?;
    }
    Ok(format!(
        "basis brackets exact; 200 random samples: jacobi {:.1e}, ad-FD {:.1e}, field {:.1e}, push-forward {:.1e}",
        w[0], w[4], w[5], w[6]
    ))
}

fn swarm_charges() -> Outcome {
    let (m, v, d) = (1.0f64, 0.6f64, 0.5f64);
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let c = integrate_charges(&body("two_particle_spin"), &Hyperplane::at_time(0.0), Event::ORIGIN, &QuadratureSpec::default())
        .map_err(|e| e.to_string())?
        .charges;
    let e = 2.0 * gamma * m;
    let dp = (c.p - MinkVector::new(e, 0.0, 0.0, 0.0)).max_abs();
    let dj = (c.j.0[2][1] - 2.0 * gamma * m * v * d).abs();
    let others = (c.j - Bivector::basis(2, 1) * c.j.0[2][1]).max_abs();
    let (_, m0) = rest_frame(&c).map_err(|e| e.to_string())?;
    let rm = moller_radius(&c).map_err(|e| e.to_string())?;
    let worst = dp.max(dj).max(others).max((m0 - e).abs()).max((rm - v * d).abs());
    ensure(worst < 1e-12, || format!("residual {worst:e}"))?;
    Ok(format!("P⁰ = {}, J²¹ = {}, M0 = {m0}, R_M = {rm}; worst residual {worst:.1e}", c.p.0[0], c.j.0[2][1]))
}

fn blob_quadrature() -> Outcome {
    let mut details = Vec::new();
    for name in ["rest_blob", "boosted_blob", "three_blob_spinning"] {
        let start = Instant::now();
        let b = body(name);
        let q48 = QuadratureSpec::with_points(48);
        let sigma = slice_independence_check(&b, MinkVector::basis(0), 0.0, 1.0, Event::ORIGIN, &q48)
            .map_err(|e| e.to_string())?;
        let slice = Hyperplane::at_time(0.0);
        let c48 = integrate_charges(&b, &slice, Event::ORIGIN, &q48).map_err(|e| e.to_string())?.charges;
        let c64 = integrate_charges(&b, &slice, Event::ORIGIN, &QuadratureSpec::with_points(64))
            .map_err(|e| e.to_string())?
            .charges;
        let refine = c48.relative_deviation(&c64, b.extent());
        let secs = start.elapsed().as_secs_f64();
        ensure(sigma < 1e-6, || format!("{name}: slice independence {sigma:e}"))?;
        ensure(refine < 1e-7, || format!("{name}: 48 vs 64 points {refine:e}"))?;
        ensure(secs < 30.0, || format!("{name}: {secs:.1} s"))?;
        details.push(format!("{name} σ {sigma:.1e} n {refine:.1e} {secs:.2}s"));
    }
    Ok(details.join("; "))
}

fn equivariance() -> Outcome {
    let mut r = Rand::new(55);
    let swarm = body("two_particle_spin");
    let blob = body("boosted_blob");
    let q = QuadratureSpec::default();
    let slice = Hyperplane::at_time(0.0);
    let (mut ws, mut wb) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let g = r.group();
        let o = Event(r.vector().0);
        ws = ws.max(equivariance_check(&swarm, &g, o, &slice, &q).map_err(|e| e.to_string())?);
        wb = wb.max(equivariance_check(&blob, &g, o, &slice, &q).map_err(|e| e.to_string())?);
    }
    ensure(ws < 1e-12, || format!("swarm {ws:e}"))?;
    ensure(wb < 1e-6, || format!("blob {wb:e}"))?;
    Ok(format!("20 elements: swarm {ws:.1e}, blob {wb:.1e}"))
}

fn centre_spin() -> Outcome {
    let mut r = Rand::new(66);
    let mut w = [0.0f64; 5];
    for name in ["three_blob_spinning", "two_particle_spin", "boosted_blob"] {
        let c = integrate_charges(&body(name), &Hyperplane::at_time(0.0), Event::ORIGIN, &QuadratureSpec::default())
            .map_err(|e| e.to_string())?
            .charges;
        let scale = c.j.max_abs().max(c.p.max_abs());
        for _ in 0..100 {
            let u = r.observer();
            let s = spin(&c, &u).map_err(|e| e.to_string())?;
            let l = orbital(&c, &u).map_err(|e| e.to_string())?;
            w[0] = w[0].max((s.s + l - c.j).max_abs() / scale);
            w[1] = w[1].max(s.s.dot(&u).max_abs() / scale);
            let a = r.vector() * 3.0;
            let l1 = mass_center_line(&c, &u).map_err(|e| e.to_string())?;
            let l2 = mass_center_line(&c.rebase(a), &u).map_err(|e| e.to_string())?;
            w[2] = w[2].max(l1.distance_to(l2.point));
        }
        let (u_star, _) = rest_frame(&c).map_err(|e| e.to_string())?;
        let star: SpinData = spin(&c, &u_star).map_err(|e| e.to_string())?;
        let sv = spin_vector(&star, 1).map_err(|e| e.to_string())?;
        w[3] = w[3].max(((-sv.norm_sq()).max(0.0).sqrt() - star.s.norm()).abs() / scale);
        w[4] = w[4].max((spin_tensor_from_vector(&sv, &u_star, 1) - star.s).max_abs() / scale);
    }
    let names = ["J = S + L", "S·u", "line rebase distance", "‖S⃗*‖ − ‖S*‖", "round trip"];
    for i in 0..5 {
        ensure(w[i] < 1e-12, || format!("{}: {:e}", names[i], w[i]))?;
    }
    Ok(format!(
        "300 observers: split {:.1e}, S·u {:.1e}, rebase {:.1e}, norm {:.1e}, round trip {:.1e}",
        w[0], w[1], w[2], w[3], w[4]
    ))
}

fn moller_disc() -> Outcome {
    let mut details = Vec::new();
    for name in ["two_particle_spin", "three_blob_spinning"] {
        let b = body(name);
        let q = QuadratureSpec::default();
        let c = integrate_charges(&b, &Hyperplane::at_time(0.0), Event::ORIGIN, &q).map_err(|e| e.to_string())?.charges;
        let rapidities: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).chain([0.99]).map(f64::atanh).collect();
        let disc = moller_disc_sample(&c, &rapidities, None, 1).map_err(|e| e.to_string())?;
        let axis = disc.axis.ok_or_else(|| format!("{name}: disc degenerate"))?;
        ensure(disc.points.len() == 24 * rapidities.len(), || format!("{name}: {} points", disc.points.len()))?;
        let rm = disc.radius;
        let mut ortho: f64 = 0.0;
        for p in &disc.points {
            let d = p.event - disc.centroid;
            ortho = ortho.max(d.dot(&disc.rest_velocity).abs().max(d.dot(&axis).abs()) / rm);
            ensure(p.distance <= rm * (1.0 + 1e-12), || format!("{name}: distance {} > R_M {rm}", p.distance))?;
        }
        ensure(ortho < 1e-12, || format!("{name}: orthogonality {ortho:e}"))?;
        let top = disc.points.iter().filter(|p| p.rapidity == 0.99f64.atanh()).map(|p| p.distance).fold(0.0, f64::max);
        ensure(top >= 0.99 * rm * (1.0 - 1e-12), || format!("{name}: max distance {top} < 0.99 R_M"))?;

        for slice in [Hyperplane::at_time(0.7), Hyperplane::new(MinkVector::from_velocity([0.3, -0.2, 0.1]), Event::ORIGIN, 0.4).unwrap()] {
            let charges = integrate_charges(&b, &slice, Event::ORIGIN, &q).map_err(|e| e.to_string())?;
            let fm = first_moment_center(&b, &slice, Event::ORIGIN, &q).map_err(|e| e.to_string())?;
            let closed = first_moment_closed_form(&charges.charges, &slice).map_err(|e| e.to_string())?;
            let gap = (fm.point - closed).max_abs();
            let tol = fm.error + charges.error / charges.charges.p.0[0] * (1.0 + b.extent());
            ensure(gap <= tol, || format!("{name}: first moment gap {gap:e} above reported tolerance {tol:e}"))?;
            details.push(format!("{name} moment gap {gap:.1e} (tol {tol:.1e})"));
        }
        details.push(format!("{name} R_M {rm:.6} max@0.99 {:.6}", top / rm));
    }
    Ok(details.join("; "))
}

fn radii_reproduction() -> Outcome {
    let k = PhysicalConstants::default();
    let rows = radii_table(&k);
    let get = |q: &str| rows.iter().find(|r| r.quantity == q).map(|r| r.value).ok_or(format!("missing {q}"));
    let rel = |v: f64, target: f64| ((v - target) / target).abs();
    let lambda = get("proton_compton_wavelength")?;
    let rm = get("proton_moller_radius")?;
    let checks = [
        ("proton λ_C vs 1.32e-15 m", rel(lambda, 1.32e-15), 0.005),
        ("proton R_M vs 1.05e-16 m", rel(rm, 1.05e-16), 0.005),
        ("proton R_M vs R_charge/8", rel(rm, 0.87e-15 / 8.0), 0.10),
        ("R_M/R_classical vs 137", rel(get("charged_moller_over_classical_radius")?, 137.0), 0.001),
        ("earth R_M vs 4 m", rel(get("earth_moller_radius")?, 4.0), 0.05),
        ("moon R_M vs 1.1 cm", rel(get("moon_moller_radius")?, 0.011), 0.10),
        ("pulsar R_M/R vs 0.1", rel(get("pulsar_moller_over_radius")?, 0.1), 0.15),
        ("pulsar Rω/c vs 0.24", rel(get("pulsar_surface_speed")?, 0.24), 0.05),
    ];
    for (name, dev, tol) in checks {
        ensure(dev < tol, || format!("{name}: relative deviation {dev:.3} ≥ {tol}"))?;
    }
    ensure(radii_table(&k) == rows, || "table not reproducible".into())?;
    Ok(format!(
        "λ_C {lambda:.4e} m, R_M {rm:.4e} m, earth {:.3} m, moon {:.4} m, pulsar {:.3}",
        get("earth_moller_radius")?,
        get("moon_moller_radius")?,
        get("pulsar_moller_over_radius")?
    ))
}

fn negative_controls() -> Outcome {
    let sym = AlgebraElement::from_raw(MinkVector::ZERO, {
        let mut b = Bivector::ZERO;
        b.0[0][1] = 1.0;
        b.0[1][0] = 1.0;
        b
    });
    ensure(!killing_check(&sym), || "symmetric generator passed the Killing check".into())?;
    let clean = VerifyConfig { suite: Suite::All, seed: 3, samples: 10, fault: None };
    let baseline = verify::run(&clean);
    ensure(baseline.iter().all(|r| r.passed()), || {
        let bad: Vec<String> = baseline.iter().filter(|r| !r.passed()).map(|r| r.line()).collect();
        format!("clean run failed: {}", bad.join(" | "))
    })?;
    let mut named = Vec::new();
    for (fault, expect) in [(Fault::SymmetricGenerator, "killing-equation"), (Fault::TimeModulatedField, "conservation")] {
        let results = verify::run(&VerifyConfig { fault: Some(fault), ..clean });
        let failed: Vec<&verify::CheckResult> = results.iter().filter(|r| !r.passed()).collect();
        ensure(failed.len() == 1 && failed[0].name == expect, || {
            format!("{fault:?}: expected only `{expect}` to fail, got {:?}", failed.iter().map(|r| r.name).collect::<Vec<_>>())
        })?;
        println!("    {}", failed[0].line());
        named.push(format!("{fault:?} caught by {}", failed[0].name));
    }
    Ok(named.join("; "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<f64>); 9] = [
        ("hodge suite", hodge_suite, Some(1.0)),
        ("lie suite", lie_suite, Some(5.0)),
        ("exact swarm charges", swarm_charges, None),
        ("blob quadrature charges", blob_quadrature, None),
        ("co-adjoint equivariance", equivariance, None),
        ("centre and spin", centre_spin, None),
        ("møller disc and first moment", moller_disc, None),
        ("radius table", radii_reproduction, Some(1.0)),
        ("negative controls", negative_controls, None),
    ];
    let mut failures = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = f();
        let secs = start.elapsed().as_secs_f64();
        if let (Ok(_), Some(l)) = (&outcome, limit) {
            if secs >= *l {
                outcome = Err(format!("runtime {secs:.2} s exceeds {l} s"));
            }
        }
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name} ({secs:.2} s): {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {} FAIL {name} ({secs:.2} s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
