//! Ideal Bose gas in a d-dimensional hard-walled box.
//!
//! Two descriptions live here. The continuum (thermodynamic-limit) equation
//! of state, rho lambda^d = Li_{d/2}(z), with the condensed branch z = 1
//! below the critical temperature in three dimensions. And the exact
//! grand-canonical sum over the discrete box levels, used to check the
//! continuum model at finite size.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::{domain, Error, Result};
use crate::special::{polylog_of_log, zeta};

/// Physical description of the gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasSpec {
    dimension: u32,
    box_length: f64,
    mass: f64,
    particle_number: f64,
    constants: PhysicalConstants,
}

impl GasSpec {
    /// Gas evaluated with CODATA 2018 constants.
    pub fn new(dimension: u32, box_length: f64, mass: f64, particle_number: f64) -> Result<Self> {
        Self::with_units(
            dimension,
            box_length,
            mass,
            particle_number,
            PhysicalConstants::default(),
        )
    }

    pub fn with_units(
        dimension: u32,
        box_length: f64,
        mass: f64,
        particle_number: f64,
        constants: PhysicalConstants,
    ) -> Result<Self> {
        if !(1..=3).contains(&dimension) {
            return Err(domain(format!("dimension must be 1, 2 or 3, got {dimension}")));
        }
        if !(box_length > 0.0 && box_length.is_finite()) {
            return Err(domain(format!("box length must be positive, got {box_length}")));
        }
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(domain(format!("mass must be positive, got {mass}")));
        }
        if !(particle_number >= 1.0 && particle_number.is_finite()) {
            return Err(domain(format!(
                "particle number must be at least 1, got {particle_number}"
            )));
        }
        if !(constants.hbar > 0.0 && constants.boltzmann > 0.0) {
            return Err(domain("hbar and k_B must be positive"));
        }
        Ok(GasSpec {
            dimension,
            box_length,
            mass,
            particle_number,
            constants,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn particle_number(&self) -> f64 {
        self.particle_number
    }

    pub fn constants(&self) -> &PhysicalConstants {
        &self.constants
    }

    /// L^d.
    pub fn volume(&self) -> f64 {
        self.box_length.powi(self.dimension as i32)
    }

    /// N / L^d.
    pub fn density(&self) -> f64 {
        self.particle_number / self.volume()
    }

    pub fn with_dimension(self, dimension: u32) -> Result<Self> {
        Self::with_units(dimension, self.box_length, self.mass, self.particle_number, self.constants)
    }

    pub fn with_box_length(self, box_length: f64) -> Result<Self> {
        Self::with_units(self.dimension, box_length, self.mass, self.particle_number, self.constants)
    }

    pub fn with_mass(self, mass: f64) -> Result<Self> {
        Self::with_units(self.dimension, self.box_length, mass, self.particle_number, self.constants)
    }

    pub fn with_particle_number(self, particle_number: f64) -> Result<Self> {
        Self::with_units(self.dimension, self.box_length, self.mass, particle_number, self.constants)
    }

    pub fn with_constants(self, constants: PhysicalConstants) -> Result<Self> {
        Self::with_units(self.dimension, self.box_length, self.mass, self.particle_number, constants)
    }

    /// Thermal de Broglie wavelength of this species at `temperature`.
    pub fn thermal_wavelength(&self, temperature: f64) -> Result<f64> {
        thermal_wavelength(&self.constants, temperature, self.mass)
    }

    /// Phase-space density rho lambda_T^d.
    pub fn degeneracy(&self, temperature: f64) -> Result<f64> {
        let lambda = self.thermal_wavelength(temperature)?;
        Ok(self.density() * lambda.powi(self.dimension as i32))
    }

    /// hbar^2 pi^2 / (2 m L^2), the per-axis unit of the box spectrum.
    pub fn level_unit(&self) -> f64 {
        let hbar = self.constants.hbar;
        hbar * hbar * PI * PI / (2.0 * self.mass * self.box_length * self.box_length)
    }

    fn half_d(&self) -> f64 {
        self.dimension as f64 / 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Condensed,
    Normal,
}

/// A solved thermodynamic state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub temperature: f64,
    /// z = e^(beta mu). In the discrete model mu is measured from the
    /// ground level so that z stays in [0, 1].
    pub fugacity: f64,
    /// ln z, kept separately because z rounds to 1 just above condensation.
    pub log_fugacity: f64,
    pub chemical_potential: f64,
    pub internal_energy: f64,
    pub phase: Phase,
}

/// lambda_T = sqrt(2 pi hbar^2 / (m k_B T)).
pub fn thermal_wavelength(constants: &PhysicalConstants, temperature: f64, mass: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return Err(domain(format!("temperature must be positive, got {temperature}")));
    }
    if !(mass > 0.0) {
        return Err(domain(format!("mass must be positive, got {mass}")));
    }
    let hbar = constants.hbar;
    Ok((2.0 * PI * hbar * hbar / (mass * constants.boltzmann * temperature)).sqrt())
}

/// BEC critical temperature 2 pi hbar^2 rho^(2/d) / (k_B m zeta(d/2)^(2/d)).
///
/// Only d = 3 has a finite value; zeta(d/2) diverges for d <= 2.
pub fn critical_temperature(spec: &GasSpec) -> Result<f64> {
    let zeta_half_d = match zeta(spec.half_d()) {
        Ok(v) => v,
        Err(Error::DivergentZeta(_)) => return Err(Error::NoFiniteCondensation(spec.dimension)),
        Err(e) => return Err(e),
    };
    let c = &spec.constants;
    let two_over_d = 2.0 / spec.dimension as f64;
    Ok(2.0 * PI * c.hbar * c.hbar * spec.density().powf(two_over_d)
        / (c.boltzmann * spec.mass * zeta_half_d.powf(two_over_d)))
}

/// Condensed-branch internal energy (d/2) k_B T zeta(1 + d/2) V / lambda_T^d.
///
/// No phase guard: this is the mu = 0 expression extrapolated to any T.
pub fn internal_energy_condensed(spec: &GasSpec, temperature: f64) -> Result<f64> {
    let lambda = spec.thermal_wavelength(temperature)?;
    let kt = spec.constants.boltzmann * temperature;
    Ok(spec.half_d() * kt * zeta(1.0 + spec.half_d())? * spec.volume()
        / lambda.powi(spec.dimension as i32))
}

/// Normal-phase state: solves rho lambda^d = Li_{d/2}(z) by bisection.
pub fn solve_fugacity(spec: &GasSpec, temperature: f64) -> Result<ThermoPoint> {
    let target = spec.degeneracy(temperature)?;
    let s = spec.half_d();
    if spec.dimension == 3 {
        let critical = critical_temperature(spec)?;
        if temperature <= critical || target >= zeta(s)? {
            return Err(Error::Phase {
                temperature,
                critical,
            });
        }
    }

    // Li_s(z) is bracketed by z <= Li_s(z) <= z / (1 - z).
    let mut lo = (target / (1.0 + target)).ln();
    let mut hi = if target < 1.0 { target.ln() } else { 0.0 };
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if polylog_of_log(s, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let log_z = 0.5 * (lo + hi);
    let kt = spec.constants.boltzmann * temperature;
    let lambda = spec.thermal_wavelength(temperature)?;
    let internal_energy = s * kt * spec.volume() / lambda.powi(spec.dimension as i32)
        * polylog_of_log(1.0 + s, log_z)?;
    Ok(ThermoPoint {
        temperature,
        fugacity: log_z.exp(),
        log_fugacity: log_z,
        chemical_potential: kt * log_z,
        internal_energy,
        phase: Phase::Normal,
    })
}

/// Continuum state at `temperature`, dispatching on the phase. At exactly
/// T_crit the condensed branch is used.
pub fn state(spec: &GasSpec, temperature: f64) -> Result<ThermoPoint> {
    if !(temperature > 0.0) {
        return Err(domain(format!("temperature must be positive, got {temperature}")));
    }
    let condensed = match critical_temperature(spec) {
        Ok(critical) => temperature <= critical,
        Err(Error::NoFiniteCondensation(_)) => false,
        Err(e) => return Err(e),
    };
    if condensed {
        Ok(ThermoPoint {
            temperature,
            fugacity: 1.0,
            log_fugacity: 0.0,
            chemical_potential: 0.0,
            internal_energy: internal_energy_condensed(spec, temperature)?,
            phase: Phase::Condensed,
        })
    } else {
        solve_fugacity(spec, temperature)
    }
}

/// Continuum internal energy U(T), continuous and increasing in T.
pub fn internal_energy(spec: &GasSpec, temperature: f64) -> Result<f64> {
    state(spec, temperature).map(|p| p.internal_energy)
}

/// Single-particle box levels grouped by energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    dimension: u32,
    max_index: u64,
    cutoff_energy: f64,
    levels: Vec<Level>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub degeneracy: u64,
}

/// Largest |n|^2 a mode set will enumerate.
const MAX_SQUARED_INDEX: u64 = 50_000_000;

impl ModeSet {
    /// All box modes eps_n = hbar^2 pi^2 |n|^2 / (2 m L^2), n_i >= 1, with
    /// eps_n <= cutoff_energy.
    pub fn up_to(spec: &GasSpec, cutoff_energy: f64) -> Result<Self> {
        let unit = spec.level_unit();
        let d = spec.dimension as u64;
        let ratio = cutoff_energy / unit;
        if !(ratio >= d as f64) {
            return Err(domain("mode cutoff lies below the ground level"));
        }
        if ratio > MAX_SQUARED_INDEX as f64 {
            return Err(domain(format!(
                "mode cutoff needs |n|^2 up to {ratio:.3e}, limit is {MAX_SQUARED_INDEX}"
            )));
        }
        let max_sq = ratio.floor() as u64;
        let max_index = ((max_sq - (d - 1)) as f64).sqrt().floor() as u64;
        let squares: Vec<usize> = (1..=max_index).map(|n| (n * n) as usize).collect();

        // counts[k] = number of n in N^d with |n|^2 = k
        let len = max_sq as usize + 1;
        let mut counts = vec![0u64; len];
        for &q in &squares {
            counts[q] = 1;
        }
        for _ in 1..d {
            let mut next = vec![0u64; len];
            for &q in &squares {
                for k in 0..len - q {
                    next[k + q] += counts[k];
                }
            }
            counts = next;
        }

        let levels = counts
            .iter()
            .enumerate()
            .filter(|(_, &g)| g > 0)
            .map(|(k, &g)| Level {
                energy: unit * k as f64,
                degeneracy: g,
            })
            .collect();
        Ok(ModeSet {
            dimension: spec.dimension,
            max_index,
            cutoff_energy,
            levels,
        })
    }

    /// Modes within 40 k_B T of the ground level.
    pub fn for_temperature(spec: &GasSpec, temperature: f64) -> Result<Self> {
        if !(temperature > 0.0) {
            return Err(domain(format!("temperature must be positive, got {temperature}")));
        }
        let ground = spec.dimension as f64 * spec.level_unit();
        Self::up_to(spec, ground + 40.0 * spec.constants.boltzmann * temperature)
    }

    /// A complete, explicitly given spectrum (nothing omitted).
    pub fn from_levels(dimension: u32, mut levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() || levels.iter().any(|l| !(l.energy >= 0.0) || l.degeneracy == 0) {
            return Err(domain("levels must be non-empty with non-negative energies"));
        }
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Ok(ModeSet {
            dimension,
            max_index: 0,
            cutoff_energy: f64::INFINITY,
            levels,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn max_index(&self) -> u64 {
        self.max_index
    }

    /// Every mode at or below this energy is included.
    pub fn cutoff_energy(&self) -> f64 {
        self.cutoff_energy
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn ground_energy(&self) -> f64 {
        self.levels[0].energy
    }

    pub fn mode_count(&self) -> u64 {
        self.levels.iter().map(|l| l.degeneracy).sum()
    }

    /// Mode energies in ascending order, repeated by degeneracy.
    pub fn energies(&self) -> impl Iterator<Item = f64> + '_ {
        self.levels
            .iter()
            .flat_map(|l| std::iter::repeat_n(l.energy, l.degeneracy as usize))
    }
}

/// Exact grand-canonical state over a finite mode set: mu is chosen so the
/// mean occupation sum equals N.
pub fn discrete_grand_canonical(
    spec: &GasSpec,
    temperature: f64,
    modes: &ModeSet,
) -> Result<ThermoPoint> {
    if !(temperature > 0.0) {
        return Err(domain(format!("temperature must be positive, got {temperature}")));
    }
    if modes.dimension != spec.dimension {
        return Err(domain(format!(
            "mode set is {}-dimensional, gas is {}-dimensional",
            modes.dimension, spec.dimension
        )));
    }
    let kt = spec.constants.boltzmann * temperature;
    let ground = modes.ground_energy();
    let weight = (-(modes.cutoff_energy - ground) / kt).exp();
    if !(weight < 1e-16) {
        return Err(Error::CutoffTooSmall { weight });
    }

    // x = beta (eps_0 - mu) > 0; occupations 1 / (e^(x + beta (eps - eps_0)) - 1)
    let excitations: Vec<(f64, f64)> = modes
        .levels
        .iter()
        .map(|l| ((l.energy - ground) / kt, l.degeneracy as f64))
        .collect();
    let occupation_sum = |x: f64| -> (f64, f64) {
        let mut n = 0.0;
        let mut u = 0.0;
        for (&(excess, g), level) in excitations.iter().zip(&modes.levels) {
            let occ = g / (x + excess).exp_m1();
            n += occ;
            u += occ * level.energy;
        }
        (n, u)
    };

    let target = spec.particle_number;
    let mut lo = (1e-15 * ground / kt).max(1e-300).ln();
    let mut hi = 1e3f64.ln();
    if occupation_sum(lo.exp()).0 < target {
        return Err(domain("particle number exceeds the chemical-potential bracket"));
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (n, _) = occupation_sum(mid.exp());
        if ((n - target) / target).abs() < 1e-13 {
            lo = mid;
            hi = mid;
            break;
        }
        if n > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = (0.5 * (lo + hi)).exp();
    let (_, internal_energy) = occupation_sum(x);
    let condensed = spec.dimension == 3
        && critical_temperature(spec).is_ok_and(|critical| temperature <= critical);
    Ok(ThermoPoint {
        temperature,
        fugacity: (-x).exp(),
        log_fugacity: -x,
        chemical_potential: ground - x * kt,
        internal_energy,
        phase: if condensed { Phase::Condensed } else { Phase::Normal },
    })
}
