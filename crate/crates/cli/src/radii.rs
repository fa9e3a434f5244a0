//! Møller radii of a spin-½ proton and of rigidly spinning spheres, in SI
//! units.

use crate::constants::PhysicalConstants;
use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusRow {
    pub quantity: String,
    pub value: f64,
    pub unit: &'static str,
}

/// `R_M = ħ / (2 m c)` for a spin-½ particle of mass `m`.
pub fn spin_half_radius(k: &PhysicalConstants, mass: f64) -> f64 {
    k.hbar / (2.0 * mass * k.c)
}

/// `λ_C = h / (m c)`.
pub fn compton_wavelength(k: &PhysicalConstants, mass: f64) -> f64 {
    2.0 * PI * k.hbar / (mass * k.c)
}

/// Radius `R_cl` fixed by `e² / (8π ε0 R_cl) = m c²`, i.e. `α ħ / (2 m c)`.
pub fn classical_radius(k: &PhysicalConstants, mass: f64) -> f64 {
    k.hbar / (2.0 * mass * k.c * k.alpha_inv)
}

/// `S = (2/5) M R² ω` for a homogeneous sphere.
pub fn rigid_spin(mass: f64, radius: f64, omega: f64) -> f64 {
    0.4 * mass * radius * radius * omega
}

/// `R_M = S / (M c)`.
pub fn rigid_radius(k: &PhysicalConstants, mass: f64, radius: f64, omega: f64) -> f64 {
    rigid_spin(mass, radius, omega) / (mass * k.c)
}

pub fn radii_table(k: &PhysicalConstants) -> Vec<RadiusRow> {
    let row = |quantity: String, value: f64, unit| RadiusRow { quantity, value, unit };
    let mp = k.proton_mass;
    let rm = spin_half_radius(k, mp);
    let mut rows = vec![
        row("proton_compton_wavelength".into(), compton_wavelength(k, mp), "m"),
        row("proton_moller_radius".into(), rm, "m"),
        row("proton_moller_over_charge_radius".into(), rm / k.proton_charge_radius, "1"),
        row("charged_moller_over_classical_radius".into(), rm / classical_radius(k, mp), "1"),
    ];
    for e in &k.catalog {
        rows.push(row(format!("{}_moller_radius", e.name), rigid_radius(k, e.mass, e.radius, e.omega), "m"));
        rows.push(row(format!("{}_surface_speed", e.name), e.radius * e.omega / k.c, "c"));
        rows.push(row(
            format!("{}_moller_over_radius", e.name),
            rigid_radius(k, e.mass, e.radius, e.omega) / e.radius,
            "1",
        ));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half_is_compton_over_four_pi() {
        let k = PhysicalConstants::default();
        let m = k.proton_mass;
        assert!((spin_half_radius(&k, m) - compton_wavelength(&k, m) / (4.0 * PI)).abs() < 1e-30);
    }

    #[test]
    fn rigid_ratio_is_two_fifths_surface_speed() {
        let k = PhysicalConstants::default();
        let (r, w) = (3.0e3, 10.0);
        let ratio = rigid_radius(&k, 1.0, r, w) / r;
        assert!((ratio - 0.4 * r * w / k.c).abs() < 1e-18);
    }

    #[test]
    fn table_is_deterministic() {
        let k = PhysicalConstants::default();
        assert_eq!(radii_table(&k), radii_table(&k));
        assert_eq!(radii_table(&k).len(), 4 + 3 * k.catalog.len());
    }
}
