//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, with
//! eigenvectors from inverse iteration.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off` holds the n - 1 sub-diagonal entries.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty() && off.len() + 1 == diag.len(), "malformed tridiagonal");
        SymTridiagonal { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Infinity norm.
    pub fn norm(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// Number of eigenvalues strictly below `lambda` (negative LDL^T pivots).
    pub fn sturm_count(&self, lambda: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt() * self.norm().max(1.0);
        let mut count = 0;
        let mut q = self.diag[0] - lambda;
        for i in 0..self.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = (self.diag[i] - lambda) - e * e / q;
            }
            if q == 0.0 {
                q = -guard;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// k-th smallest eigenvalue (0-based), bisected to floating-point
    /// resolution.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.off[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Rayleigh quotient x^T A x / x^T x.
    pub fn rayleigh_quotient(&self, x: &[f64]) -> f64 {
        let ax = self.apply(x);
        dot(x, &ax) / dot(x, x)
    }

    /// ||A x - lambda x|| / (||A|| ||x||).
    pub fn relative_residual(&self, lambda: f64, x: &[f64]) -> f64 {
        let ax = self.apply(x);
        let r: f64 = ax
            .iter()
            .zip(x)
            .map(|(a, v)| (a - lambda * v).powi(2))
            .sum::<f64>()
            .sqrt();
        r / (self.norm() * dot(x, x).sqrt())
    }

    /// Unit eigenvector for an (already accurate) eigenvalue.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        let norm = self.norm();
        // keep the shifted matrix numerically nonsingular
        let shift = lambda - 4.0 * f64::EPSILON * norm.max(lambda.abs());
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64).collect();
        normalize(&mut x);
        let mut residual = f64::INFINITY;
        for _ in 0..8 {
            x = self.solve_shifted(shift, &x);
            normalize(&mut x);
            residual = self.relative_residual(lambda, &x);
            if residual < 1e-13 {
                break;
            }
        }
        if residual < 1e-10 {
            Ok(x)
        } else {
            Err(Error::ConvergenceFailure { residual })
        }
    }

    /// Solve (A - shift I) x = b by Gaussian elimination with partial
    /// pivoting.
    fn solve_shifted(&self, shift: f64, b: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = f64::EPSILON * self.norm().max(f64::MIN_POSITIVE);
        // rows carry (main, first super, second super) after elimination
        let mut main: Vec<f64> = self.diag.iter().map(|d| d - shift).collect();
        let mut sup1: Vec<f64> = self.off.clone();
        sup1.push(0.0);
        let mut sup2 = vec![0.0; n];
        let mut sub: Vec<f64> = self.off.clone();
        let mut rhs = b.to_vec();

        for i in 0..n.saturating_sub(1) {
            if sub[i].abs() > main[i].abs() {
                // swap rows i and i+1
                std::mem::swap(&mut main[i], &mut sub[i]);
                std::mem::swap(&mut main[i + 1], &mut sup1[i]);
                if i + 1 < n - 1 {
                    sup2[i] = sup1[i + 1];
                    sup1[i + 1] = 0.0;
                }
                rhs.swap(i, i + 1);
            }
            if main[i] == 0.0 {
                main[i] = tiny;
            }
            let factor = sub[i] / main[i];
            main[i + 1] -= factor * sup1[i];
            if i + 1 < n - 1 {
                sup1[i + 1] -= factor * sup2[i];
            }
            rhs[i + 1] -= factor * rhs[i];
        }
        if main[n - 1] == 0.0 {
            main[n - 1] = tiny;
        }

        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut v = rhs[i];
            if i + 1 < n {
                v -= sup1[i] * x[i + 1];
            }
            if i + 2 < n {
                v -= sup2[i] * x[i + 2];
            }
            x[i] = v / main[i];
        }
        x
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn normalize(x: &mut [f64]) {
    let n = dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= n);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn sturm_count_brackets_known_spectrum() {
        // eigenvalues 2 - 2 cos(k pi / (n + 1))
        let a = laplacian(10);
        let exact: Vec<f64> = (1..=10)
            .map(|k| 2.0 - 2.0 * (k as f64 * std::f64::consts::PI / 11.0).cos())
            .collect();
        for (k, &lam) in exact.iter().enumerate() {
            assert_eq!(a.sturm_count(lam - 1e-9), k);
            assert_eq!(a.sturm_count(lam + 1e-9), k + 1);
            assert!((a.eigenvalue(k) - lam).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvectors_have_small_residuals() {
        let a = SymTridiagonal::new(vec![4.0, 1.0, 3.0, -2.0, 0.5], vec![1.0, -0.5, 2.0, 0.3]);
        for k in 0..5 {
            let lam = a.eigenvalue(k);
            let v = a.eigenvector(lam).unwrap();
            assert!(a.relative_residual(lam, &v) < 1e-12);
            assert!((a.rayleigh_quotient(&v) - lam).abs() < 1e-12);
        }
    }

    #[test]
    fn pivoting_solver_matches_dense_product() {
        let a = SymTridiagonal::new(vec![0.1, 5.0, -3.0, 2.0], vec![4.0, 1.0, -2.0]);
        let b = vec![1.0, -2.0, 0.5, 3.0];
        let x = a.solve_shifted(0.7, &b);
        let ax = a.apply(&x);
        for i in 0..4 {
            assert!((ax[i] - 0.7 * x[i] - b[i]).abs() < 1e-12);
        }
    }
}
