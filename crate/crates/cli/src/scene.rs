//! TOML scene files.
//!
//! ```toml
//! orientation = 1
//! origin = [0.0, 0.0, 0.0, 0.0]
//! observers = [[0.0, 0.0, 0.0], [0.5, 0.0, 0.0]]
//!
//! [quadrature]
//! points_per_axis = 48
//!
//! [[body]]
//! kind = "dust-blob"
//! velocity = [0.3, 0.0, 0.0]
//! center = [0.0, 0.0, 0.0, 0.0]
//! radius = 1.0
//! rho0 = 1.0
//!
//! [[body]]
//! kind = "particle"
//! mass = 1.0
//! velocity = [0.0, 0.6, 0.0]
//! event = [0.0, 1.0, 0.0, 0.0]
//! ```
//!
//! Velocities are coordinate 3-velocities in units of `c`.

use crate::error::{CliError, CliResult};
use poincare_charges::{
    Body, Chart, Component, DustBlob, Event, MinkVector, Particle, ParticleSwarm, Profile, QuadratureSpec, Rule,
};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene {
    #[serde(default = "default_orientation")]
    pub orientation: i8,
    #[serde(default)]
    pub origin: [f64; 4],
    #[serde(default)]
    pub observers: Vec<[f64; 3]>,
    #[serde(default)]
    pub quadrature: QuadratureSection,
    #[serde(default, rename = "body")]
    pub bodies: Vec<BodySpec>,
}

fn default_orientation() -> i8 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BodySpec {
    DustBlob {
        #[serde(default)]
        velocity: [f64; 3],
        #[serde(default)]
        center: [f64; 4],
        radius: f64,
        rho0: f64,
        #[serde(default = "default_power")]
        profile_power: u32,
    },
    Particle {
        mass: f64,
        #[serde(default)]
        velocity: [f64; 3],
        #[serde(default)]
        event: [f64; 4],
    },
}

fn default_power() -> u32 {
    3
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum RuleName {
    #[default]
    GaussLegendre,
    Midpoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum ChartName {
    #[default]
    Ball,
    Box,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSection {
    #[serde(default = "default_points")]
    pub points_per_axis: usize,
    #[serde(default)]
    pub rule: RuleName,
    #[serde(default)]
    pub chart: ChartName,
    #[serde(default = "default_padding")]
    pub support_padding: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

fn default_points() -> usize {
    48
}

fn default_padding() -> f64 {
    0.02
}

impl Default for QuadratureSection {
    fn default() -> Self {
        QuadratureSection {
            points_per_axis: default_points(),
            rule: RuleName::default(),
            chart: ChartName::default(),
            support_padding: default_padding(),
            tolerance: None,
        }
    }
}

impl QuadratureSection {
    pub fn spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            points_per_axis: self.points_per_axis,
            rule: match self.rule {
                RuleName::GaussLegendre => Rule::GaussLegendre,
                RuleName::Midpoint => Rule::Midpoint,
            },
            chart: match self.chart {
                ChartName::Ball => Chart::Ball,
                ChartName::Box => Chart::Box,
            },
            support_padding: self.support_padding,
            tolerance: self.tolerance,
        }
    }
}

impl Scene {
    pub fn parse(text: &str) -> CliResult<Scene> {
        let scene: Scene = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn load(path: &Path) -> CliResult<Scene> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Scene::parse(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scene serialises")
    }

    fn validate(&self) -> CliResult<()> {
        if self.orientation != 1 && self.orientation != -1 {
            return Err(CliError::Invalid(format!("orientation must be 1 or -1, got {}", self.orientation)));
        }
        for v in &self.observers {
            check_velocity(v)?;
        }
        self.quadrature.spec().validate().map_err(|e| CliError::Invalid(e.to_string()))?;
        self.body().map(|_| ())
    }

    pub fn origin(&self) -> Event {
        Event(self.origin)
    }

    pub fn observers(&self) -> Vec<MinkVector> {
        self.observers.iter().map(|v| MinkVector::from_velocity(*v)).collect()
    }

    pub fn quadrature(&self) -> QuadratureSpec {
        self.quadrature.spec()
    }

    /// All blobs plus one swarm holding every particle.
    pub fn body(&self) -> CliResult<Body> {
        let mut components = Vec::new();
        let mut particles = Vec::new();
        for (i, spec) in self.bodies.iter().enumerate() {
            let bad = |e: poincare_charges::Error| CliError::Invalid(format!("body {}: {e}", i + 1));
            match *spec {
                BodySpec::DustBlob { velocity, center, radius, rho0, profile_power } => {
                    check_velocity(&velocity)?;
                    let blob = DustBlob::new(
                        MinkVector::from_velocity(velocity),
                        Event(center),
                        radius,
                        rho0,
                        Profile::Polynomial { power: profile_power },
                    )
                    .map_err(bad)?;
                    components.push(Component::Blob(blob));
                }
                BodySpec::Particle { mass, velocity, event } => {
                    check_velocity(&velocity)?;
                    particles.push(Particle::moving(mass, velocity, Event(event)).map_err(bad)?);
                }
            }
        }
        if !particles.is_empty() {
            components.push(Component::Swarm(ParticleSwarm::new(particles)));
        }
        Ok(Body::new(components))
    }
}

fn check_velocity(v: &[f64; 3]) -> CliResult<()> {
    let s2: f64 = v.iter().map(|c| c * c).sum();
    if !s2.is_finite() || s2 >= 1.0 {
        return Err(CliError::Invalid(format!("velocity {v:?} is not below the speed of light")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_scene_uses_defaults() {
        let s = Scene::parse("[[body]]\nkind = \"particle\"\nmass = 2.0\n").unwrap();
        assert_eq!(s.orientation, 1);
        assert_eq!(s.quadrature(), QuadratureSpec::default());
        assert!(s.body().unwrap().has_particles());
    }

    #[test]
    fn empty_scene_is_valid() {
        let s = Scene::parse("").unwrap();
        assert!(s.body().unwrap().is_empty());
    }

    #[test]
    fn superluminal_velocity_rejected() {
        let err = Scene::parse("[[body]]\nkind = \"particle\"\nmass = 1.0\nvelocity = [1.0, 0.0, 0.0]\n").unwrap_err();
        assert!(matches!(err, CliError::Invalid(_)));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn unknown_kind_rejected() {
        assert_eq!(Scene::parse("[[body]]\nkind = \"fluid\"\n").unwrap_err().exit_code(), 2);
        assert_eq!(Scene::parse("orientation = 2\n").unwrap_err().exit_code(), 3);
        let negative = "[[body]]\nkind = \"dust-blob\"\nradius = 1.0\nrho0 = -1.0\n";
        assert_eq!(Scene::parse(negative).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn round_trip_preserves_scene() {
        let s = Scene::parse(
            "observers = [[0.1, 0.0, 0.0]]\n[quadrature]\nchart = \"box\"\ntolerance = 1e-6\n\
             [[body]]\nkind = \"dust-blob\"\nradius = 1.5\nrho0 = 0.5\nvelocity = [0.0, 0.2, 0.0]\n",
        )
        .unwrap();
        assert_eq!(Scene::parse(&s.to_toml()).unwrap(), s);
    }
}
