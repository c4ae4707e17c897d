//! Numerical solution of U(T) = E_lowest(M).

use crate::error::{Error, Result};
use crate::gas::{internal_energy, internal_energy_condensed, GasSpec};
use crate::witness::{lowest_separable_energy, Partition};

/// Default temperature search bracket in K.
pub const SEARCH_BRACKET: (f64, f64) = (1e-12, 1e6);

/// Bisection stops once the bracket is narrower than this fraction of T.
const RELATIVE_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossings {
    /// Root of the condensed-branch U(T) = E_lowest; the closed-form
    /// transition temperature solves the same equation.
    pub condensed: f64,
    /// Root of the phase-aware U(T) = E_lowest.
    pub piecewise: f64,
}

pub fn crossing_temperature(spec: &GasSpec, part: Partition) -> Result<Crossings> {
    crossing_temperature_within(spec, part, SEARCH_BRACKET)
}

pub fn crossing_temperature_within(
    spec: &GasSpec,
    part: Partition,
    bracket: (f64, f64),
) -> Result<Crossings> {
    let target = lowest_separable_energy(spec, part);
    Ok(Crossings {
        condensed: bisect_energy(|t| internal_energy_condensed(spec, t), target, bracket)?,
        piecewise: bisect_energy(|t| internal_energy(spec, t), target, bracket)?,
    })
}

/// Geometric bisection for an increasing energy function.
fn bisect_energy(
    energy: impl Fn(f64) -> Result<f64>,
    target: f64,
    (lo, hi): (f64, f64),
) -> Result<f64> {
    let no_crossing = Error::NoCrossing { lo, hi };
    if !(lo > 0.0 && hi > lo) || energy(lo)? > target || energy(hi)? < target {
        return Err(no_crossing);
    }
    let (mut lo, mut hi) = (lo, hi);
    for _ in 0..500 {
        if hi - lo <= RELATIVE_TOLERANCE * lo {
            break;
        }
        let mid = (lo * hi).sqrt();
        if energy(mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::lookup_species;
    use crate::gas::critical_temperature;
    use crate::witness::transition_temperature;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    fn ketterle(n: f64) -> GasSpec {
        GasSpec::new(3, 1e-5, lookup_species("sodium-23").unwrap().mass, n).unwrap()
    }

    #[test]
    fn ketterle_condensed_crossing() {
        let spec = ketterle(7e5);
        let p = Partition::new(185).unwrap();
        let c = crossing_temperature(&spec, p).unwrap();
        assert!(rel(c.condensed, transition_temperature(&spec, p)) < 1e-10);
        assert!(rel(c.condensed, 2e-5) < 0.01);
    }

    #[test]
    fn piecewise_crossing_above_condensed_at_unit_filling() {
        // M^3 = N puts the crossing near 2 T_crit, in the normal phase where
        // Li_{5/2}(z) < zeta(5/2) lowers U below the condensed extrapolation
        let spec = ketterle(64_000.0);
        let p = Partition::new(40).unwrap();
        let c = crossing_temperature(&spec, p).unwrap();
        let tc = critical_temperature(&spec).unwrap();
        assert!(c.condensed > tc);
        assert!(c.piecewise > c.condensed);
        assert!(internal_energy(&spec, c.piecewise).unwrap() > 0.0);
        assert!(rel(internal_energy(&spec, c.piecewise).unwrap(), lowest_separable_energy(&spec, p)) < 1e-9);
    }

    #[test]
    fn crossing_below_condensation_agrees() {
        // small M: crossing sits below T_crit, where both U models coincide
        let spec = ketterle(7e5);
        let p = Partition::new(10).unwrap();
        let c = crossing_temperature(&spec, p).unwrap();
        assert!(c.condensed < critical_temperature(&spec).unwrap());
        assert!(rel(c.condensed, c.piecewise) < 1e-10);
    }

    #[test]
    fn no_crossing_outside_bracket() {
        let spec = ketterle(7e5);
        let p = Partition::new(185).unwrap();
        assert!(matches!(
            crossing_temperature_within(&spec, p, (1.0, 10.0)),
            Err(Error::NoCrossing { .. })
        ));
    }
}
