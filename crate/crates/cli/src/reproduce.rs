//! Compiled-in reproductions: `ketterle`, `planck` and `dimensions-table`.

use thermowit::constants::{lookup_species, planck_units, CODATA_2018};
use thermowit::gas::{critical_temperature, GasSpec};
use thermowit::special::zeta;
use thermowit::witness::{
    lowest_separable_energy, max_witnessed_partition, transition_temperature,
    transition_temperature_at, transition_temperature_fixed_density, Partition,
};

use crate::error::CliError;
use crate::record::{Column, Table, Value};

pub const NAMES: [&str; 3] = ["ketterle", "planck", "dimensions-table"];

/// Sodium-23 condensate: N = 7e5 atoms in a 10 um box.
pub const KETTERLE_N: f64 = 7e5;
pub const KETTERLE_L: f64 = 1e-5;
pub const KETTERLE_T: f64 = 2e-5;

pub fn ketterle_gas() -> GasSpec {
    let mass = lookup_species("sodium-23").expect("registered species").mass;
    GasSpec::new(3, KETTERLE_L, mass, KETTERLE_N).expect("valid gas")
}

/// Planck-mass bosons at one particle per Planck volume, with M^3 = N.
pub fn planck_gas() -> GasSpec {
    let p = planck_units();
    GasSpec::new(3, 100.0 * p.length, p.mass, 1e6).expect("valid gas")
}

pub const PLANCK_PARTITION: u64 = 100;

pub fn run(name: &str) -> Result<Table, CliError> {
    match name {
        "ketterle" => ketterle(),
        "planck" => planck(),
        "dimensions-table" => dimensions_table(),
        other => Err(CliError::Usage(format!(
            "unknown reproduction `{other}`; choose one of {}",
            NAMES.join(", ")
        ))),
    }
}

fn ctx(name: &'static str) -> impl Fn(thermowit::Error) -> CliError {
    move |e| CliError::domain(format!("reproduce {name}"), e)
}

pub fn ketterle() -> Result<Table, CliError> {
    let spec = ketterle_gas();
    let err = ctx("ketterle");
    let estimate = max_witnessed_partition(&spec, KETTERLE_T).map_err(&err)?;
    let part = Partition::new(estimate.nearest).map_err(&err)?;
    let t_crit = critical_temperature(&spec).map_err(&err)?;
    let fixed = transition_temperature_fixed_density(&spec);
    let mut table = Table::new(vec![
        Column::new("particle_number", "1"),
        Column::new("box_length", "m"),
        Column::new("mass", "kg"),
        Column::new("temperature", "K"),
        Column::new("partition_real", "1"),
        Column::new("partition_m", "1"),
        Column::new("t_trans", "K"),
        Column::new("e_lowest", "J"),
        Column::new("entanglement_length", "m"),
        Column::new("mean_spacing", "m"),
        Column::new("t_crit", "K"),
        Column::new("t_trans_fixed_density", "K"),
        Column::new("fixed_density_ratio", "1"),
    ]);
    table.push(vec![
        Value::Number(spec.particle_number()),
        Value::Number(spec.box_length()),
        Value::Number(spec.mass()),
        Value::Number(KETTERLE_T),
        Value::Number(estimate.real),
        Value::Integer(estimate.nearest as i64),
        Value::Number(transition_temperature(&spec, part)),
        Value::Number(lowest_separable_energy(&spec, part)),
        Value::Number(spec.box_length() / estimate.nearest as f64),
        Value::Number(spec.density().powf(-1.0 / 3.0)),
        Value::Number(t_crit),
        Value::Number(fixed),
        Value::Number(fixed / t_crit),
    ]);
    Ok(table)
}

pub fn planck() -> Result<Table, CliError> {
    let spec = planck_gas();
    let p = planck_units();
    let part = Partition::new(PLANCK_PARTITION).map_err(ctx("planck"))?;
    let t_trans = transition_temperature(&spec, part);
    let mut table = Table::new(vec![
        Column::new("planck_mass", "kg"),
        Column::new("planck_length", "m"),
        Column::new("planck_temperature", "K"),
        Column::new("particle_number", "1"),
        Column::new("box_length", "m"),
        Column::new("partition_m", "1"),
        Column::new("t_trans", "K"),
        Column::new("t_trans_over_planck", "1"),
    ]);
    table.push(vec![
        Value::Number(p.mass),
        Value::Number(p.length),
        Value::Number(p.temperature),
        Value::Number(spec.particle_number()),
        Value::Number(spec.box_length()),
        Value::Integer(PLANCK_PARTITION as i64),
        Value::Number(t_trans),
        Value::Number(t_trans / p.temperature),
    ]);
    Ok(table)
}

/// The Ketterle gas and partition M = 185 in one, two and three dimensions.
pub fn dimensions_table() -> Result<Table, CliError> {
    let err = ctx("dimensions-table");
    let base = ketterle_gas();
    let mut table = Table::new(vec![
        Column::new("dimension", "1"),
        Column::new("zeta_one_plus_half_d", "1"),
        Column::new("partition_m", "1"),
        Column::new("e_lowest", "J"),
        Column::new("t_trans", "K"),
        Column::new("t_trans_fixed_density", "K"),
        Column::new("t_crit", "K"),
    ]);
    for d in 1..=3 {
        let spec = base.with_dimension(d).map_err(&err)?;
        let t_crit = match critical_temperature(&spec) {
            Ok(t) => Value::Number(t),
            Err(thermowit::Error::NoFiniteCondensation(_)) => Value::Missing,
            Err(e) => return Err(err(e)),
        };
        let cuts = 185.0;
        table.push(vec![
            Value::Integer(d as i64),
            Value::Number(zeta(1.0 + d as f64 / 2.0).map_err(&err)?),
            Value::Integer(cuts as i64),
            Value::Number(thermowit::witness::lowest_separable_energy_at(&spec, cuts)),
            Value::Number(transition_temperature_at(&spec, cuts)),
            Value::Number(transition_temperature_fixed_density(&spec)),
            t_crit,
        ]);
    }
    Ok(table)
}

/// CODATA values, the derived Planck units and the species masses as one row.
pub fn constants_table() -> Table {
    let c = CODATA_2018;
    let p = planck_units();
    let mut columns = vec![
        Column::new("hbar", "J s"),
        Column::new("boltzmann", "J/K"),
        Column::new("atomic_mass_unit", "kg"),
        Column::new("speed_of_light", "m/s"),
        Column::new("gravitational_constant", "m^3/(kg s^2)"),
        Column::new("planck_mass", "kg"),
        Column::new("planck_length", "m"),
        Column::new("planck_temperature", "K"),
    ];
    let mut row: Vec<Value> = [
        c.hbar,
        c.boltzmann,
        c.atomic_mass_unit,
        c.speed_of_light,
        c.gravitational_constant,
        p.mass,
        p.length,
        p.temperature,
    ]
    .into_iter()
    .map(Value::Number)
    .collect();
    for name in thermowit::constants::species_names() {
        columns.push(Column::new(format!("mass_{name}"), "kg"));
        row.push(Value::Number(lookup_species(name).expect("registered species").mass));
    }
    let mut table = Table::new(columns);
    table.push(row);
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ketterle_row() {
        let t = ketterle().unwrap();
        assert_eq!(t.get(0, "partition_m"), Some(&Value::Integer(185)));
        let t_trans = t.number(0, "t_trans").unwrap();
        assert!((1.9e-5..=2.1e-5).contains(&t_trans));
        let dl = t.number(0, "entanglement_length").unwrap();
        assert!((dl / 5e-8 - 1.0).abs() < 0.1);
        let ratio = t.number(0, "fixed_density_ratio").unwrap();
        assert!((ratio - 2.02).abs() < 0.02);
    }

    #[test]
    fn planck_order_of_magnitude() {
        let t = planck().unwrap().number(0, "t_trans").unwrap();
        assert!((1e30..=1e34).contains(&t));
    }

    #[test]
    fn dimensions_table_rows() {
        let t = dimensions_table().unwrap();
        assert_eq!(t.rows.len(), 3);
        assert_eq!(t.get(0, "t_crit"), Some(&Value::Missing));
        assert!(t.number(2, "t_crit").unwrap() > 0.0);
    }

    #[test]
    fn unknown_name_is_usage_error() {
        assert_eq!(run("moon").unwrap_err().exit_code(), 2);
    }
}
