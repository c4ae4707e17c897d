//! The `verify` subcommand: closed forms checked against the numerical
//! oracles, one pass/fail line per check.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thermowit::constants::lookup_species;
use thermowit::gas::{critical_temperature, GasSpec};
use thermowit::oracle::{
    box_spectrum, crossing_temperature, separable_minimum_bruteforce, subbox_ground_energy,
    witness_gap_demo, DiscreteBox,
};
use thermowit::special::{polylog, zeta};
use thermowit::witness::{
    max_witnessed_partition, transition_temperature, transition_temperature_fixed_density, Partition,
};

use crate::record::{Column, Table, Value};
use crate::reproduce::{ketterle_gas, planck_gas, KETTERLE_T, PLANCK_PARTITION};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

type Outcome = Result<(bool, String), thermowit::Error>;

fn run_check(name: &'static str, body: impl FnOnce() -> Outcome) -> Check {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    Check {
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn run_all() -> Vec<Check> {
    vec![
        run_check("ketterle-partition", || {
            let spec = ketterle_gas();
            let m = max_witnessed_partition(&spec, KETTERLE_T)?;
            let t = transition_temperature(&spec, Partition::new(m.nearest)?);
            Ok((
                m.nearest == 185 && (1.9e-5..=2.1e-5).contains(&t),
                format!("M = {:.3} -> {}, T_trans = {t:.4e} K", m.real, m.nearest),
            ))
        }),
        run_check("fixed-density-ratio", || {
            let spec = ketterle_gas();
            let ratio = transition_temperature_fixed_density(&spec) / critical_temperature(&spec)?;
            Ok(((ratio - 2.02).abs() <= 0.02, format!("T_trans/T_crit = {ratio:.5}")))
        }),
        run_check("planck-scale", || {
            let t = transition_temperature(&planck_gas(), Partition::new(PLANCK_PARTITION)?);
            Ok(((1e30..=1e34).contains(&t), format!("T_trans = {t:.4e} K")))
        }),
        run_check("zeta-two", || {
            let err = rel(zeta(2.0)?, PI * PI / 6.0);
            Ok((err <= 1e-12, format!("relative error {err:.2e}")))
        }),
        run_check("polylog-order-one", || {
            let mut worst: f64 = 0.0;
            for i in 0..20 {
                let z = 0.02 + 0.97 * i as f64 / 19.0;
                worst = worst.max(rel(polylog(1.0, z)?, -(-z).ln_1p()));
            }
            Ok((worst <= 1e-12, format!("worst relative error {worst:.2e}")))
        }),
        run_check("crossing-vs-closed-form", || {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mass = lookup_species("rubidium-87")?.mass;
            let mut worst: f64 = 0.0;
            for _ in 0..20 {
                let spec = GasSpec::new(
                    rng.random_range(1..=3),
                    10f64.powf(rng.random_range(-6.0..-5.0)),
                    mass * rng.random_range(0.1..10.0),
                    10f64.powf(rng.random_range(3.0..7.0)).round(),
                )?;
                let part = Partition::new(rng.random_range(1..=1000))?;
                let c = crossing_temperature(&spec, part)?;
                worst = worst.max(rel(c.condensed, transition_temperature(&spec, part)));
            }
            Ok((worst <= 1e-10, format!("worst relative gap {worst:.2e} over 20 gases")))
        }),
        run_check("box-ground-energy", || {
            let grid = DiscreteBox::reduced(2000)?;
            let e = box_spectrum(&grid, 1)?.eigenvalues[0];
            let err = rel(e, grid.continuum_level(0));
            Ok((err <= 1e-5, format!("relative error {err:.2e} at 2000 points")))
        }),
        run_check("subbox-scaling", || {
            let grid = DiscreteBox::reduced(2519)?;
            let full = grid.continuum_level(0);
            let mut worst: f64 = 0.0;
            for m in 1..=8 {
                worst = worst.max(rel(subbox_ground_energy(&grid, m, 1)?, (m * m) as f64 * full));
            }
            Ok((worst <= 1e-3, format!("worst deviation from M^2 {worst:.2e}")))
        }),
        run_check("separable-bound", || {
            let grid = DiscreteBox::reduced(33 * 4 - 1)?;
            let s = separable_minimum_bruteforce(&grid, 4, 6, 1000, 11)?;
            Ok((
                s.violations == 0 && s.relative_excess() <= 1e-6,
                format!(
                    "{} samples, {} violations, refined excess {:.2e}",
                    s.samples,
                    s.violations,
                    s.relative_excess()
                ),
            ))
        }),
        run_check("witness-gap", || {
            let grid = DiscreteBox::reduced(2999)?;
            let ratio = witness_gap_demo(&grid, 3, 5)?.ratio();
            Ok((rel(ratio, 9.0) <= 1e-3, format!("gap ratio {ratio:.6} (M = 3)")))
        }),
        run_check("low-dimension", || {
            let spec = ketterle_gas();
            let mut ok = true;
            for d in 1..=2 {
                let s = spec.with_dimension(d)?;
                let no_tc = matches!(critical_temperature(&s), Err(thermowit::Error::NoFiniteCondensation(_)));
                let t = transition_temperature(&s, Partition::new(185)?);
                ok &= no_tc && t.is_finite() && t > 0.0;
            }
            Ok((ok, "d = 1, 2: no T_crit, finite T_trans".to_string()))
        }),
    ]
}

pub fn report(checks: &[Check]) -> Table {
    let mut table = Table::new(vec![
        Column::new("check", ""),
        Column::new("status", ""),
        Column::new("detail", ""),
    ]);
    for c in checks {
        table.push(vec![
            Value::text(c.name),
            Value::text(if c.passed { "pass" } else { "fail" }),
            Value::text(&c.detail),
        ]);
    }
    table
}
