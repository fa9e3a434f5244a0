//! Physical constants and the body catalogue used by the radius table.

use crate::error::{CliError, CliResult};
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Environment variable naming a constants file that replaces the defaults.
pub const CONSTANTS_ENV: &str = "POINCARE_CONSTANTS";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicalConstants {
    /// m/s
    pub c: f64,
    /// J·s
    pub hbar: f64,
    pub alpha_inv: f64,
    /// kg
    pub proton_mass: f64,
    /// m
    pub proton_charge_radius: f64,
    #[serde(default, rename = "body")]
    pub catalog: Vec<CatalogEntry>,
}

/// A homogeneous rigidly spinning sphere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    pub name: String,
    /// kg
    pub mass: f64,
    /// m
    pub radius: f64,
    /// rad/s
    pub omega: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        let entry = |name: &str, mass, radius, omega| CatalogEntry { name: name.into(), mass, radius, omega };
        PhysicalConstants {
            c: 2.997_924_58e8,
            hbar: 1.054_571_817e-34,
            alpha_inv: 137.036,
            proton_mass: 1.672_62e-27,
            proton_charge_radius: 0.87e-15,
            catalog: vec![
                entry("earth", 5.972e24, 6.371e6, 7.2921e-5),
                entry("moon", 7.342e22, 1.7374e6, 2.6617e-6),
                entry("pulsar", 2.8e30, 1.6e4, 2.0 * std::f64::consts::PI * 716.0),
            ],
        }
    }
}

impl PhysicalConstants {
    pub fn parse(text: &str) -> CliResult<Self> {
        let c: PhysicalConstants = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// An explicit file, else the file named by [`CONSTANTS_ENV`], else the
    /// defaults.
    pub fn resolve(path: Option<&Path>) -> CliResult<Self> {
        match path {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONSTANTS_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("constants serialise")
    }

    fn validate(&self) -> CliResult<()> {
        let named = [
            ("c", self.c),
            ("hbar", self.hbar),
            ("alpha_inv", self.alpha_inv),
            ("proton_mass", self.proton_mass),
            ("proton_charge_radius", self.proton_charge_radius),
        ];
        for (name, v) in named {
            positive(name, v)?;
        }
        for e in &self.catalog {
            positive(&format!("{}.mass", e.name), e.mass)?;
            positive(&format!("{}.radius", e.name), e.radius)?;
            positive(&format!("{}.omega", e.name), e.omega)?;
        }
        Ok(())
    }
}

fn positive(name: &str, v: f64) -> CliResult<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::Invalid(format!("constant {name} must be positive and finite, got {v}")))
    }
}
