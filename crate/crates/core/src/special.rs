//! Real-argument Riemann zeta and polylogarithm.
//!
//! `zeta` uses Euler-Maclaurin summation. `polylog` sums its defining series
//! directly while that converges quickly (z <= 0.99) and switches to the
//! expansion of Li_s(e^mu) in powers of mu near z = 1, where the direct
//! series would need millions of terms.

use std::f64::consts::PI;

use statrs::function::gamma::gamma;

use crate::error::{domain, Error, Result};

/// Direct terms summed before the Euler-Maclaurin tail.
const EM_DIRECT_TERMS: usize = 50;

/// B_2, B_4, ..., B_20.
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Above this fugacity the series in mu = ln z is used instead of the
/// direct sum.
const DIRECT_SUM_LIMIT: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesTolerance {
    pub relative_epsilon: f64,
    pub max_terms: usize,
}

impl Default for SeriesTolerance {
    fn default() -> Self {
        SeriesTolerance {
            relative_epsilon: 1e-16,
            max_terms: 1_000_000,
        }
    }
}

impl SeriesTolerance {
    pub fn new(relative_epsilon: f64, max_terms: usize) -> Result<Self> {
        if !(relative_epsilon > 0.0 && relative_epsilon < 1e-6) {
            return Err(domain(format!(
                "relative_epsilon must lie in (0, 1e-6), got {relative_epsilon}"
            )));
        }
        if max_terms < 10_000 {
            return Err(domain(format!("max_terms must be at least 1e4, got {max_terms}")));
        }
        Ok(SeriesTolerance {
            relative_epsilon,
            max_terms,
        })
    }
}

/// A series value together with a bound on the truncated tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Riemann zeta for real s > 1.
pub fn zeta(s: f64) -> Result<f64> {
    if s.is_nan() {
        return Err(domain("zeta argument is NaN"));
    }
    if s <= 1.0 {
        return Err(Error::DivergentZeta(s));
    }
    Ok(zeta_continued(s))
}

/// Zeta on the whole real line except the pole at s = 1.
fn zeta_continued(s: f64) -> f64 {
    if s < 0.0 {
        // Functional equation
        let t = 1.0 - s;
        2f64.powf(s) * PI.powf(s - 1.0) * (PI * s / 2.0).sin() * gamma(t) * euler_maclaurin(t)
    } else {
        euler_maclaurin(s)
    }
}

fn euler_maclaurin(s: f64) -> f64 {
    let n = EM_DIRECT_TERMS as f64;
    let mut sum = NeumaierSum::default();
    // smallest terms first
    for k in (1..EM_DIRECT_TERMS).rev() {
        sum.add((k as f64).powf(-s));
    }
    sum.add(n.powf(1.0 - s) / (s - 1.0));
    sum.add(0.5 * n.powf(-s));

    // B_2j / (2j)! * s (s+1) ... (s+2j-2) * n^(-s-2j+1)
    let mut rising = s;
    let mut factorial = 2.0;
    let mut npow = n.powf(-s - 1.0);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        if j > 0 {
            let m = 2.0 * j as f64;
            rising *= (s + m - 1.0) * (s + m);
            factorial *= (m + 1.0) * (m + 2.0);
            npow /= n * n;
        }
        sum.add(b / factorial * rising * npow);
    }
    sum.total()
}

/// Polylogarithm Li_s(z) for real s > 0 and z in [0, 1].
pub fn polylog(s: f64, z: f64) -> Result<f64> {
    polylog_with(s, z, &SeriesTolerance::default()).map(|v| v.value)
}

pub fn polylog_with(s: f64, z: f64, tol: &SeriesTolerance) -> Result<SeriesValue> {
    if !(s > 0.0) {
        return Err(domain(format!("polylog order must be positive, got {s}")));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(domain(format!("polylog argument must lie in [0, 1], got {z}")));
    }
    if z == 0.0 {
        return Ok(SeriesValue {
            value: 0.0,
            error_bound: 0.0,
        });
    }
    if z == 1.0 {
        return zeta_at_unit_fugacity(s);
    }
    if z <= DIRECT_SUM_LIMIT {
        Ok(direct_series(s, z.ln(), tol))
    } else {
        Ok(exact(near_unit_fugacity(s, z.ln())))
    }
}

/// Li_s(e^log_z) for log_z <= 0.
///
/// Parametrising by ln z keeps full resolution when the fugacity is closer
/// to one than f64 can represent, which happens just above condensation.
pub fn polylog_of_log(s: f64, log_z: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(domain(format!("polylog order must be positive, got {s}")));
    }
    if log_z.is_nan() || log_z > 0.0 {
        return Err(domain(format!("ln z must be <= 0, got {log_z}")));
    }
    if log_z == f64::NEG_INFINITY {
        return Ok(0.0);
    }
    if log_z == 0.0 {
        return zeta_at_unit_fugacity(s).map(|v| v.value);
    }
    if log_z <= DIRECT_SUM_LIMIT.ln() {
        Ok(direct_series(s, log_z, &SeriesTolerance::default()).value)
    } else {
        Ok(near_unit_fugacity(s, log_z))
    }
}

fn zeta_at_unit_fugacity(s: f64) -> Result<SeriesValue> {
    if s <= 1.0 {
        return Err(domain(format!("Li_{s}(1) diverges")));
    }
    zeta(s).map(exact)
}

fn exact(value: f64) -> SeriesValue {
    SeriesValue {
        value,
        error_bound: value.abs() * f64::EPSILON,
    }
}

/// Sum z^k / k^s term by term. Terms decrease at least geometrically with
/// ratio z, so the tail after term t is bounded by t z / (1 - z).
fn direct_series(s: f64, log_z: f64, tol: &SeriesTolerance) -> SeriesValue {
    let z = log_z.exp();
    let tail_factor = z / -log_z.exp_m1();
    let mut sum = NeumaierSum::default();
    let mut tail = f64::INFINITY;
    for k in 1..=tol.max_terms {
        let kf = k as f64;
        let term = (kf * log_z - s * kf.ln()).exp();
        sum.add(term);
        tail = term * tail_factor;
        if tail <= tol.relative_epsilon * sum.total() {
            break;
        }
    }
    SeriesValue {
        value: sum.total(),
        error_bound: tail,
    }
}

/// Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!
/// for non-integer s, with the k = n-1 term replaced by
/// mu^(n-1)/(n-1)! (H_(n-1) - ln(-mu)) when s = n is a positive integer.
/// Converges for |mu| < 2 pi; used here only for |mu| < 0.0101.
fn near_unit_fugacity(s: f64, mu: f64) -> f64 {
    const TERMS: usize = 18;
    let integer_order = s == s.round();
    let mut sum = NeumaierSum::default();
    if !integer_order {
        sum.add(gamma(1.0 - s) * (-mu).powf(s - 1.0));
    }
    let mut coeff = 1.0; // mu^k / k!
    for k in 0..TERMS {
        if k > 0 {
            coeff *= mu / k as f64;
        }
        let order = s - k as f64;
        if integer_order && order == 1.0 {
            let harmonic: f64 = (1..k + 1).map(|j| 1.0 / j as f64).sum();
            sum.add(coeff * (harmonic - (-mu).ln()));
        } else {
            sum.add(coeff * zeta_continued(order));
        }
    }
    sum.total()
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
struct NeumaierSum {
    sum: f64,
    compensation: f64,
}

impl NeumaierSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn zeta_known_values() {
        assert!(rel(zeta(2.0).unwrap(), PI * PI / 6.0) < 1e-14);
        assert!(rel(zeta(4.0).unwrap(), PI.powi(4) / 90.0) < 1e-14);
        assert!(rel(zeta(1.5).unwrap(), 2.612_375_348_685_488) < 1e-13);
        assert!(rel(zeta(2.5).unwrap(), 1.341_487_257_250_917) < 1e-13);
    }

    #[test]
    fn zeta_rejects_divergent_arguments() {
        assert_eq!(zeta(1.0), Err(Error::DivergentZeta(1.0)));
        assert_eq!(zeta(0.5), Err(Error::DivergentZeta(0.5)));
        assert!(zeta(f64::NAN).is_err());
    }

    #[test]
    fn zeta_continuation() {
        assert!((zeta_continued(0.0) + 0.5).abs() < 1e-14);
        assert!(rel(zeta_continued(-1.0), -1.0 / 12.0) < 1e-12);
        assert!(rel(zeta_continued(-3.0), 1.0 / 120.0) < 1e-12);
        assert!(zeta_continued(-2.0).abs() < 1e-15);
        assert!(rel(zeta_continued(0.5), -1.460_354_508_809_586_8) < 1e-13);
        assert!(rel(zeta_continued(-0.5), -0.207_886_224_977_354_6) < 1e-12);
    }

    #[test]
    fn polylog_edges() {
        assert_eq!(polylog(2.0, 0.0).unwrap(), 0.0);
        assert!(rel(polylog(1.0, 0.5).unwrap(), 2f64.ln()) < 1e-14);
        assert_eq!(polylog(1.5, 1.0).unwrap(), zeta(1.5).unwrap());
        assert!(polylog(1.0, 1.0).is_err());
        assert!(polylog(0.5, 1.0).is_err());
        assert!(polylog(2.0, 1.1).is_err());
        assert!(polylog(2.0, -0.1).is_err());
        assert!(polylog(0.0, 0.5).is_err());
    }

    #[test]
    fn branches_agree_at_switch_point() {
        for s in [0.5, 1.0, 1.5, 2.0, 2.5, 3.7] {
            let mu = DIRECT_SUM_LIMIT.ln();
            let direct = direct_series(s, mu, &SeriesTolerance::default()).value;
            let expanded = near_unit_fugacity(s, mu);
            assert!(rel(direct, expanded) < 1e-13, "s={s}: {direct} vs {expanded}");
        }
    }

    #[test]
    fn polylog_of_log_resolves_fugacity_near_one() {
        // Li_1(e^mu) = -ln(1 - e^mu) = -ln(-expm1(mu))
        for mu in [-1e-3, -1e-9, -1e-18] {
            let expected = -(-f64::exp_m1(mu)).ln();
            assert!(rel(polylog_of_log(1.0, mu).unwrap(), expected) < 1e-13);
        }
        // leading behaviour zeta(3/2) - 2 sqrt(pi) sqrt(-mu)
        let mu = -1e-16;
        let v = polylog_of_log(1.5, mu).unwrap();
        let approx = zeta(1.5).unwrap() - 2.0 * PI.sqrt() * (-mu).sqrt();
        assert!((v - approx).abs() < 1e-14);
    }

    #[test]
    fn tolerance_validation() {
        assert!(SeriesTolerance::new(1e-12, 10_000).is_ok());
        assert!(SeriesTolerance::new(1e-5, 10_000).is_err());
        assert!(SeriesTolerance::new(1e-12, 100).is_err());
    }

    #[test]
    fn truncated_series_reports_tail_bound() {
        let tol = SeriesTolerance {
            relative_epsilon: 1e-16,
            max_terms: 10,
        };
        let v = polylog_with(2.0, 0.9, &tol).unwrap();
        let full = polylog(2.0, 0.9).unwrap();
        assert!(v.error_bound > 0.0);
        assert!(full - v.value <= v.error_bound);
    }
}
