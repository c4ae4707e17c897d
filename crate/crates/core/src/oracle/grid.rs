//! One-dimensional finite-difference box with Dirichlet walls.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use super::tridiag::SymTridiagonal;
use crate::constants::PhysicalConstants;
use crate::error::{domain, Error, Result};

/// Smallest grid (or subset) resolution accepted.
pub const MIN_POINTS: usize = 16;

/// Interior grid x_i = i h, i = 1..=n, with h = L / (n + 1) and the
/// wavefunction pinned to zero at x = 0 and x = L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteBox {
    grid_points: usize,
    length: f64,
    mass: f64,
    hbar: f64,
}

impl DiscreteBox {
    pub fn new(grid_points: usize, length: f64, mass: f64, constants: &PhysicalConstants) -> Result<Self> {
        if grid_points < MIN_POINTS {
            return Err(Error::TooCoarse {
                points: grid_points,
            });
        }
        if !(length > 0.0 && mass > 0.0) {
            return Err(domain("box length and mass must be positive"));
        }
        Ok(DiscreteBox {
            grid_points,
            length,
            mass,
            hbar: constants.hbar,
        })
    }

    /// Box in units with hbar = m = L = 1.
    pub fn reduced(grid_points: usize) -> Result<Self> {
        Self::new(grid_points, 1.0, 1.0, &PhysicalConstants::reduced())
    }

    pub fn grid_points(&self) -> usize {
        self.grid_points
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / (self.grid_points + 1) as f64
    }

    /// hbar^2 / (2 m h^2), the off-diagonal magnitude of the kinetic operator.
    fn hopping(&self) -> f64 {
        let h = self.spacing();
        self.hbar * self.hbar / (2.0 * self.mass * h * h)
    }

    /// Second-order central-difference form of -hbar^2/(2m) d^2/dx^2.
    pub fn operator(&self) -> SymTridiagonal {
        self.restricted(0..=self.grid_points - 1)
    }

    /// Principal sub-block on the given 0-based grid indices, i.e. the
    /// operator with hard walls just outside that range.
    pub fn restricted(&self, indices: RangeInclusive<usize>) -> SymTridiagonal {
        let t = self.hopping();
        let n = indices.end() + 1 - indices.start();
        SymTridiagonal::new(vec![2.0 * t; n], vec![-t; n - 1])
    }

    /// Continuum level hbar^2 pi^2 (i+1)^2 / (2 m L^2).
    pub fn continuum_level(&self, i: usize) -> f64 {
        let k = (i + 1) as f64;
        self.hbar * self.hbar * PI * PI * k * k / (2.0 * self.mass * self.length * self.length)
    }

    /// Exact eigenvalue i of the discrete operator,
    /// (hbar^2 / (m h^2)) (1 - cos(pi (i+1) h / L)).
    pub fn discrete_level(&self, i: usize) -> f64 {
        let theta = PI * (i + 1) as f64 / (self.grid_points + 1) as f64;
        // 1 - cos = 2 sin^2(theta/2), without cancellation
        4.0 * self.hopping() * (0.5 * theta).sin().powi(2)
    }

    /// 0-based grid indices strictly inside subset j (1-based) of a split
    /// into `cuts` equal ranges. Grid points that fall exactly on a subset
    /// edge belong to the wall.
    pub fn subset_indices(&self, cuts: usize, j: usize) -> Result<RangeInclusive<usize>> {
        if cuts == 0 || j == 0 || j > cuts {
            return Err(domain(format!("subset {j} of {cuts} does not exist")));
        }
        let cells = self.grid_points + 1;
        // (j-1) cells / M < i < j cells / M, i 1-based
        let first = (j - 1) * cells / cuts + 1;
        let last = (j * cells).div_ceil(cuts) - 1;
        let points = (last + 1).saturating_sub(first);
        if points < MIN_POINTS {
            return Err(Error::TooCoarse { points });
        }
        Ok(first - 1..=last - 1)
    }
}
