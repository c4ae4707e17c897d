//! Physical constants (CODATA 2018), particle species and Planck units.

use crate::error::{Error, Result};

/// Fundamental constants in SI units.
///
/// The Planck quantities are stored as published rather than recomputed so
/// that consumers can cross-check them against [`PhysicalConstants::derived_planck`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Boltzmann constant (J/K).
    pub boltzmann: f64,
    /// Unified atomic mass unit (kg).
    pub atomic_mass_unit: f64,
    /// Speed of light in vacuum (m/s).
    pub speed_of_light: f64,
    /// Newtonian constant of gravitation (m^3 kg^-1 s^-2).
    pub gravitational_constant: f64,
    /// Planck mass (kg).
    pub planck_mass: f64,
    /// Planck length (m).
    pub planck_length: f64,
    /// Planck temperature (K).
    pub planck_temperature: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    boltzmann: 1.380_649e-23,
    atomic_mass_unit: 1.660_539_066_60e-27,
    speed_of_light: 299_792_458.0,
    gravitational_constant: 6.674_30e-11,
    planck_mass: 2.176_434e-8,
    planck_length: 1.616_255e-35,
    planck_temperature: 1.416_784e32,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        CODATA_2018
    }
}

impl PhysicalConstants {
    /// Natural units with every constant set to one.
    pub const fn reduced() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            boltzmann: 1.0,
            atomic_mass_unit: 1.0,
            speed_of_light: 1.0,
            gravitational_constant: 1.0,
            planck_mass: 1.0,
            planck_length: 1.0,
            planck_temperature: 1.0,
        }
    }

    /// Copy of `self` with a different reduced Planck constant.
    pub fn with_hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    /// Planck units recomputed from hbar, c, G and k_B.
    pub fn derived_planck(&self) -> PlanckUnits {
        let (hbar, c, g) = (self.hbar, self.speed_of_light, self.gravitational_constant);
        let mass = (hbar * c / g).sqrt();
        PlanckUnits {
            mass,
            length: (hbar * g / c.powi(3)).sqrt(),
            temperature: mass * c * c / self.boltzmann,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanckUnits {
    pub mass: f64,
    pub length: f64,
    pub temperature: f64,
}

/// Planck mass, length and temperature derived from CODATA 2018.
pub fn planck_units() -> PlanckUnits {
    CODATA_2018.derived_planck()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleSpecies {
    pub name: &'static str,
    /// Mass in kg.
    pub mass: f64,
}

// Atomic masses in u.
const SPECIES: &[(&str, f64)] = &[
    ("hydrogen-1", 1.007_825_032_07),
    ("helium-4", 4.002_603_254_13),
    ("lithium-7", 7.016_003_436_6),
    ("sodium-23", 22.989_77),
    ("potassium-39", 38.963_706_486_4),
    ("rubidium-87", 86.909_180_527),
];

/// Names of the built-in species, in registry order.
pub fn species_names() -> impl Iterator<Item = &'static str> {
    SPECIES.iter().map(|(name, _)| *name)
}

/// Case-insensitive lookup in the built-in species registry.
pub fn lookup_species(name: &str) -> Result<ParticleSpecies> {
    SPECIES
        .iter()
        .find(|(known, _)| known.eq_ignore_ascii_case(name.trim()))
        .map(|&(name, mass_u)| ParticleSpecies {
            name,
            mass: mass_u * CODATA_2018.atomic_mass_unit,
        })
        .ok_or_else(|| Error::UnknownSpecies(name.to_string()))
}
