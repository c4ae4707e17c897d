use super::grid::DiscreteBox;
use super::tridiag::SymTridiagonal;
use crate::error::{domain, Error, Result};

/// Residual ceiling for a reported eigenpair.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ascending, in J (or reduced energy units).
    pub eigenvalues: Vec<f64>,
    /// ||H v - lambda v|| / (||H|| ||v||) per eigenpair.
    pub residuals: Vec<f64>,
    pub eigenvectors: Vec<Vec<f64>>,
}

/// The `k` lowest levels of the discretized box.
pub fn box_spectrum(grid: &DiscreteBox, k: usize) -> Result<SpectrumResult> {
    if k == 0 || k > grid.grid_points() / 4 {
        return Err(domain(format!(
            "requested {k} levels, at most n/4 = {} are resolved",
            grid.grid_points() / 4
        )));
    }
    lowest_eigenpairs(&grid.operator(), k)
}

pub(crate) fn lowest_eigenpairs(op: &SymTridiagonal, k: usize) -> Result<SpectrumResult> {
    let mut result = SpectrumResult {
        eigenvalues: Vec::with_capacity(k),
        residuals: Vec::with_capacity(k),
        eigenvectors: Vec::with_capacity(k),
    };
    for i in 0..k {
        let lambda = op.eigenvalue(i);
        let v = op.eigenvector(lambda)?;
        let residual = op.relative_residual(lambda, &v);
        if residual >= RESIDUAL_TOLERANCE {
            return Err(Error::ConvergenceFailure { residual });
        }
        result.eigenvalues.push(lambda);
        result.residuals.push(residual);
        result.eigenvectors.push(v);
    }
    Ok(result)
}

/// Ground energy of the operator restricted to subset `j` (1-based) of a
/// split into `cuts` equal ranges.
pub fn subbox_ground_energy(grid: &DiscreteBox, cuts: usize, j: usize) -> Result<f64> {
    let indices = grid.subset_indices(cuts, j)?;
    Ok(grid.restricted(indices).eigenvalue(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn ground_energy_at_2000_points() {
        let grid = DiscreteBox::reduced(2000).unwrap();
        let s = box_spectrum(&grid, 3).unwrap();
        assert!(rel(s.eigenvalues[0], PI * PI / 2.0) < 1e-5);
        assert!(s.residuals.iter().all(|&r| r < RESIDUAL_TOLERANCE));
        assert!(s.eigenvalues.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn matches_exact_discrete_spectrum() {
        // bisection resolves eigenvalues to ~eps ||H||, so the relative
        // comparison is made on a grid where ||H|| / lambda_0 is modest
        let grid = DiscreteBox::reduced(64).unwrap();
        let s = box_spectrum(&grid, 16).unwrap();
        for (i, &lam) in s.eigenvalues.iter().enumerate() {
            assert!(rel(lam, grid.discrete_level(i)) < 1e-12, "level {i}");
        }
        let grid = DiscreteBox::reduced(2000).unwrap();
        let norm = grid.operator().norm();
        let s = box_spectrum(&grid, 5).unwrap();
        for (i, &lam) in s.eigenvalues.iter().enumerate() {
            assert!((lam - grid.discrete_level(i)).abs() < 1e-12 * norm);
        }
    }

    #[test]
    fn second_order_convergence() {
        // halve h: n + 1 -> 2 (n + 1)
        let coarse = DiscreteBox::reduced(999).unwrap();
        let fine = DiscreteBox::reduced(1999).unwrap();
        let gap = |g: &DiscreteBox| (g.continuum_level(0) - box_spectrum(g, 1).unwrap().eigenvalues[0]).abs();
        let ratio = gap(&coarse) / gap(&fine);
        assert!((3.5..=4.5).contains(&ratio), "{ratio}");
    }

    #[test]
    fn eigenvector_is_a_sine() {
        let grid = DiscreteBox::reduced(63).unwrap();
        let s = box_spectrum(&grid, 1).unwrap();
        let v = &s.eigenvectors[0];
        let sign = v[0].signum();
        let norm = (2.0 / 64.0f64).sqrt();
        for (i, x) in v.iter().enumerate() {
            let expected = norm * (PI * (i + 1) as f64 / 64.0).sin();
            assert!((sign * x - expected).abs() < 1e-10);
        }
    }

    #[test]
    fn spectrum_request_limits() {
        let grid = DiscreteBox::reduced(64).unwrap();
        assert!(box_spectrum(&grid, 17).is_err());
        assert!(box_spectrum(&grid, 0).is_err());
    }

    #[test]
    fn subbox_examples() {
        let grid = DiscreteBox::reduced(1999).unwrap();
        let full = box_spectrum(&grid, 1).unwrap().eigenvalues[0];
        assert_eq!(subbox_ground_energy(&grid, 1, 1).unwrap(), full);
        let quarter = subbox_ground_energy(&grid, 4, 2).unwrap();
        assert!(rel(quarter, 16.0 * PI * PI / 2.0) < 1e-4);
        let first = subbox_ground_energy(&grid, 7, 1).unwrap();
        let last = subbox_ground_energy(&grid, 7, 7).unwrap();
        assert!(rel(first, last) < 1e-12);
        let coarse = DiscreteBox::reduced(100).unwrap();
        assert!(matches!(subbox_ground_energy(&coarse, 8, 1), Err(Error::TooCoarse { .. })));
    }
}
