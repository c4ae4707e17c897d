//! Energy and temperature entanglement witnesses for a spatially partitioned
//! box.
//!
//! Cutting each axis of the box into `M` equal ranges confines every
//! particle of a separable state to a sub-box of side `L/M`, so the energy
//! of any such state is at least `d N hbar^2 pi^2 M^2 / (2 m L^2)`. Equating
//! that floor with the condensed-branch internal energy gives the
//! temperature below which thermal states must be entangled.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::gas::{critical_temperature, internal_energy_condensed, GasSpec};
use crate::special::zeta;

/// Number of equal ranges per axis (M^d subsets in total).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(u64);

impl Partition {
    pub fn new(cuts: u64) -> Result<Self> {
        if cuts == 0 {
            return Err(domain("partition needs at least one range per axis"));
        }
        Ok(Partition(cuts))
    }

    pub fn cuts(self) -> u64 {
        self.0
    }

    /// Total number of subsets, M^d.
    pub fn subsets(self, dimension: u32) -> u64 {
        self.0.pow(dimension)
    }

    /// Side of one subset, L / M.
    pub fn subset_length(self, spec: &GasSpec) -> f64 {
        spec.box_length() / self.0 as f64
    }
}

/// E_lowest(M) = d N hbar^2 pi^2 M^2 / (2 m L^2).
pub fn lowest_separable_energy(spec: &GasSpec, part: Partition) -> f64 {
    lowest_separable_energy_at(spec, part.cuts() as f64)
}

/// [`lowest_separable_energy`] for a real-valued number of cuts.
pub fn lowest_separable_energy_at(spec: &GasSpec, cuts: f64) -> f64 {
    spec.dimension() as f64 * spec.particle_number() * spec.level_unit() * cuts * cuts
}

/// T_trans(M) = (2 pi hbar^2 / (k_B m L^2)) (N M^2 pi / (2 zeta(1 + d/2)))^(2/(2+d)).
pub fn transition_temperature(spec: &GasSpec, part: Partition) -> f64 {
    transition_temperature_at(spec, part.cuts() as f64)
}

/// [`transition_temperature`] for a real-valued number of cuts.
pub fn transition_temperature_at(spec: &GasSpec, cuts: f64) -> f64 {
    let c = spec.constants();
    let d = spec.dimension() as f64;
    let l = spec.box_length();
    let prefactor = 2.0 * PI * c.hbar * c.hbar / (c.boltzmann * spec.mass() * l * l);
    let bracket = spec.particle_number() * cuts * cuts * PI / (2.0 * zeta_one_plus_half(spec));
    prefactor * bracket.powf(2.0 / (2.0 + d))
}

/// T_trans at M^d = N, written in terms of the density:
/// (2 pi hbar^2 rho^(2/d) / (k_B m)) (pi / (2 zeta(1 + d/2)))^(2/(2+d)).
pub fn transition_temperature_fixed_density(spec: &GasSpec) -> f64 {
    let c = spec.constants();
    let d = spec.dimension() as f64;
    let prefactor = 2.0 * PI * c.hbar * c.hbar * spec.density().powf(2.0 / d) / (c.boltzmann * spec.mass());
    prefactor * (PI / (2.0 * zeta_one_plus_half(spec))).powf(2.0 / (2.0 + d))
}

fn zeta_one_plus_half(spec: &GasSpec) -> f64 {
    zeta(1.0 + spec.dimension() as f64 / 2.0).expect("zeta(1 + d/2) is finite for d >= 1")
}

/// Result of inverting T_trans(M) = T for M.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionEstimate {
    pub real: f64,
    pub floor: u64,
    pub nearest: u64,
}

/// Largest partition whose temperature witness fires at `temperature`:
/// M = sqrt((2 zeta(1+d/2) / (N pi)) (T k_B m L^2 / (2 pi hbar^2))^((2+d)/2)).
pub fn max_witnessed_partition(spec: &GasSpec, temperature: f64) -> Result<PartitionEstimate> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(domain(format!("temperature must be positive, got {temperature}")));
    }
    let c = spec.constants();
    let d = spec.dimension() as f64;
    let l = spec.box_length();
    let reduced_t = temperature * c.boltzmann * spec.mass() * l * l / (2.0 * PI * c.hbar * c.hbar);
    let real = (2.0 * zeta_one_plus_half(spec) / (spec.particle_number() * PI)
        * reduced_t.powf((2.0 + d) / 2.0))
    .sqrt();
    Ok(PartitionEstimate {
        real,
        floor: real.floor() as u64,
        nearest: real.round() as u64,
    })
}

/// Entanglement length L / M.
pub fn entanglement_length(spec: &GasSpec, part: Partition) -> f64 {
    part.subset_length(spec)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Measurement {
    /// Mean energy in J.
    Energy(f64),
    /// Temperature in K.
    Temperature(f64),
}

impl Measurement {
    pub fn value(self) -> f64 {
        match self {
            Measurement::Energy(v) | Measurement::Temperature(v) => v,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Entangled,
    /// At or above the bound; separable states can reach it.
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessReport {
    pub e_lowest: f64,
    pub t_trans: f64,
    /// `None` where no finite condensation temperature exists (d < 3).
    pub t_crit: Option<f64>,
    pub entanglement_length: f64,
    pub measurement: Measurement,
    /// Energy of the measurement: the value itself, or the condensed-branch
    /// internal energy for a temperature reading.
    pub equivalent_energy: f64,
    pub verdict: Verdict,
    /// measured / bound, in the units of the measurement.
    pub margin: f64,
}

/// Compare a measurement against the witness for partition `part`.
pub fn verdict(spec: &GasSpec, part: Partition, measurement: Measurement) -> Result<WitnessReport> {
    verdict_at(spec, part.cuts() as f64, measurement)
}

/// [`verdict`] for a real-valued number of cuts, e.g. M = N^(1/d).
pub fn verdict_at(spec: &GasSpec, cuts: f64, measurement: Measurement) -> Result<WitnessReport> {
    if !(cuts >= 1.0 && cuts.is_finite()) {
        return Err(domain(format!("partition must be at least 1, got {cuts}")));
    }
    let value = measurement.value();
    if !(value > 0.0 && value.is_finite()) {
        return Err(domain(format!("measurement must be positive, got {value}")));
    }
    let e_lowest = lowest_separable_energy_at(spec, cuts);
    let t_trans = transition_temperature_at(spec, cuts);
    let (bound, equivalent_energy) = match measurement {
        Measurement::Energy(e) => (e_lowest, e),
        Measurement::Temperature(t) => (t_trans, internal_energy_condensed(spec, t)?),
    };
    let t_crit = match critical_temperature(spec) {
        Ok(t) => Some(t),
        Err(Error::NoFiniteCondensation(_)) => None,
        Err(e) => return Err(e),
    };
    let verdict = if value < bound {
        Verdict::Entangled
    } else {
        Verdict::Inconclusive
    };
    Ok(WitnessReport {
        e_lowest,
        t_trans,
        t_crit,
        entanglement_length: spec.box_length() / cuts,
        measurement,
        equivalent_energy,
        verdict,
        margin: value / bound,
    })
}
