//! Subcommand bodies, independent of argument parsing.

use crate::constants::PhysicalConstants;
use crate::error::{CliError, CliResult};
use crate::radii::radii_table;
use crate::report::{Cell, Sheet};
use crate::scene::Scene;
use poincare_charges::centers::{
    default_rapidities, equatorial_directions, mass_center_line, moller_disc_sample, moller_radius, orbital,
    rest_frame, spin, spin_vector,
};
use poincare_charges::charges::integrate_charges;
use poincare_charges::{ChargeEstimate, Event, Hyperplane, MinkVector, QuadratureSpec};

/// Overrides applied on top of a scene.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Overrides {
    pub points_per_axis: Option<usize>,
    pub tolerance: Option<f64>,
    pub orientation: Option<i8>,
}

impl Overrides {
    pub fn quadrature(&self, scene: &Scene) -> CliResult<QuadratureSpec> {
        let mut q = scene.quadrature();
        if let Some(n) = self.points_per_axis {
            q.points_per_axis = n;
        }
        if let Some(t) = self.tolerance {
            q.tolerance = Some(t);
        }
        q.validate().map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(q)
    }

    pub fn orientation(&self, scene: &Scene) -> i8 {
        self.orientation.unwrap_or(scene.orientation)
    }
}

/// `Σ(u, σ)` given by an observer 3-velocity and an offset.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SliceArg {
    pub velocity: [f64; 3],
    pub sigma: f64,
}

impl SliceArg {
    /// `sigma` or `vx,vy,vz,sigma`.
    pub fn parse(s: &str) -> CliResult<Self> {
        let v = parse_numbers(s)?;
        match v.as_slice() {
            [sigma] => Ok(SliceArg { velocity: [0.0; 3], sigma: *sigma }),
            [x, y, z, sigma] => {
                check_speed(&[*x, *y, *z])?;
                Ok(SliceArg { velocity: [*x, *y, *z], sigma: *sigma })
            }
            _ => Err(CliError::Parse(format!("slice needs `sigma` or `vx,vy,vz,sigma`, got `{s}`"))),
        }
    }

    pub fn hyperplane(&self, z: Event) -> CliResult<Hyperplane> {
        Ok(Hyperplane::new(MinkVector::from_velocity(self.velocity), z, self.sigma)?)
    }
}

pub fn parse_event(s: &str) -> CliResult<Event> {
    match parse_numbers(s)?.as_slice() {
        [t, x, y, z] => Ok(Event::new(*t, *x, *y, *z)),
        _ => Err(CliError::Parse(format!("event needs `t,x,y,z`, got `{s}`"))),
    }
}

pub fn parse_velocity(s: &str) -> CliResult<[f64; 3]> {
    match parse_numbers(s)?.as_slice() {
        [x, y, z] => {
            check_speed(&[*x, *y, *z])?;
            Ok([*x, *y, *z])
        }
        _ => Err(CliError::Parse(format!("velocity needs `vx,vy,vz`, got `{s}`"))),
    }
}

fn parse_numbers(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| CliError::Parse(format!("`{p}`: {e}"))))
        .collect()
}

fn check_speed(v: &[f64; 3]) -> CliResult<()> {
    let s2: f64 = v.iter().map(|c| c * c).sum();
    if s2.is_finite() && s2 < 1.0 {
        Ok(())
    } else {
        Err(CliError::Parse(format!("velocity {v:?} is not below the speed of light")))
    }
}

pub fn compute_charges(scene: &Scene, slice: SliceArg, z: Option<Event>, o: &Overrides) -> CliResult<ChargeEstimate> {
    let z = z.unwrap_or(scene.origin());
    let body = scene.body()?;
    let q = o.quadrature(scene)?;
    Ok(integrate_charges(&body, &slice.hyperplane(z)?, z, &q)?)
}

const PAIRS: [&str; 6] = ["01", "02", "03", "12", "13", "23"];

pub fn charges_sheet(c: &ChargeEstimate) -> Sheet {
    let mut s = Sheet::new(["quantity", "value"]);
    let mut put = |k: String, v: Cell| s.push(vec![Cell::Text(k), v]);
    for (a, x) in c.charges.z_ref.0.iter().enumerate() {
        put(format!("z{a}"), Cell::Num(*x));
    }
    for (a, x) in c.charges.p.0.iter().enumerate() {
        put(format!("P{a}"), Cell::Num(*x));
    }
    for (k, x) in PAIRS.iter().zip(c.charges.j.independent()) {
        put(format!("J{k}"), Cell::Num(x));
    }
    match rest_frame(&c.charges) {
        Ok((u, m0)) => {
            put("M0".into(), Cell::Num(m0));
            for (a, x) in u.0.iter().enumerate() {
                put(format!("u*{a}"), Cell::Num(*x));
            }
        }
        Err(_) => {
            put("M0".into(), Cell::Empty);
            for a in 0..4 {
                put(format!("u*{a}"), Cell::Empty);
            }
        }
    }
    put("quadrature_error".into(), Cell::Num(c.error));
    s
}

/// Which observers `centers` reports on.
#[derive(Debug, Clone, PartialEq)]
pub enum ObserverChoice {
    Rest,
    Velocities(Vec<[f64; 3]>),
    /// The scene's observers, or the rest frame if it lists none.
    Scene,
}

pub const CENTERS_HEADER: [&str; 27] = [
    "observer", "u0", "u1", "u2", "u3", "t", "x", "y", "z", "S01", "S02", "S03", "S12", "S13", "S23", "L01", "L02",
    "L03", "L12", "L13", "L23", "spin0", "spin1", "spin2", "spin3", "moller_radius", "su_residual",
];

pub fn centers_sheet(
    scene: &Scene,
    slice: SliceArg,
    z: Option<Event>,
    choice: &ObserverChoice,
    o: &Overrides,
) -> CliResult<Sheet> {
    let c = compute_charges(scene, slice, z, o)?.charges;
    let (u_star, _) = rest_frame(&c)?;
    let radius = moller_radius(&c)?;
    let observers: Vec<(String, MinkVector)> = match choice {
        ObserverChoice::Rest => vec![("rest".into(), u_star)],
        ObserverChoice::Velocities(v) => {
            v.iter().enumerate().map(|(i, v)| (format!("u{}", i + 1), MinkVector::from_velocity(*v))).collect()
        }
        ObserverChoice::Scene if scene.observers.is_empty() => vec![("rest".into(), u_star)],
        ObserverChoice::Scene => {
            scene.observers().into_iter().enumerate().map(|(i, u)| (format!("u{}", i + 1), u)).collect()
        }
    };
    let orientation = o.orientation(scene);
    let mut sheet = Sheet::new(CENTERS_HEADER);
    for (name, u) in observers {
        let line = mass_center_line(&c, &u)?;
        let s = spin(&c, &u)?;
        let l = orbital(&c, &u)?;
        let sv = spin_vector(&s, orientation)?;
        let mut row = vec![Cell::Text(name)];
        row.extend(u.0.map(Cell::Num));
        row.extend(line.point.0.map(Cell::Num));
        row.extend(s.s.independent().map(Cell::Num));
        row.extend(l.independent().map(Cell::Num));
        row.extend(sv.0.map(Cell::Num));
        row.push(Cell::Num(radius));
        row.push(Cell::Num(s.s.dot(&u).max_abs()));
        sheet.push(row);
    }
    Ok(sheet)
}

pub const DISC_HEADER: [&str; 6] = ["t", "x", "y", "z", "rho", "dist"];

/// Disc points; `samples` equatorial directions, or the default 24-direction
/// grid.
pub fn disc_sheet(
    scene: &Scene,
    slice: SliceArg,
    z: Option<Event>,
    samples: Option<usize>,
    o: &Overrides,
) -> CliResult<Sheet> {
    let c = compute_charges(scene, slice, z, o)?.charges;
    let orientation = o.orientation(scene);
    let rapidities = default_rapidities();
    let mut disc = moller_disc_sample(&c, &rapidities, None, orientation)?;
    if let (Some(n), Some(axis)) = (samples, disc.axis) {
        if n == 0 {
            return Err(CliError::Parse("--samples must be positive".into()));
        }
        let dirs = equatorial_directions(&disc.rest_velocity, &axis, n);
        disc = moller_disc_sample(&c, &rapidities, Some(&dirs), orientation)?;
    }
    let mut sheet = Sheet::new(DISC_HEADER);
    for p in &disc.points {
        let mut row: Vec<Cell> = p.event.0.map(Cell::Num).to_vec();
        row.push(Cell::Num(p.rapidity));
        row.push(Cell::Num(p.distance));
        sheet.push(row);
    }
    Ok(sheet)
}

pub fn radii_sheet(k: &PhysicalConstants) -> Sheet {
    let mut s = Sheet::new(["quantity", "value", "unit"]);
    for r in radii_table(k) {
        s.push(vec![Cell::Text(r.quantity), Cell::Num(r.value), Cell::from(r.unit)]);
    }
    s
}
