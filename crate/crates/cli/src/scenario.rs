//! Scenario files: one JSON object describing a gas, a partition, an
//! optional measurement and an optional parameter sweep.
//!
//! ```json
//! {
//!   "gas": { "dimension": 3, "box_length": "10um", "species": "sodium-23", "particle_number": 7e5 },
//!   "partition": 185,
//!   "measurement": { "temperature": "20uK" },
//!   "sweep": { "variable": "M", "from": 1, "to": 400, "points": 400, "scale": "linear" }
//! }
//! ```
//!
//! Quantities are JSON numbers in SI base units or strings with a unit
//! suffix. `"partition": "auto"` selects M = N^(1/d).

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value as Json;
use thermowit::constants::lookup_species;
use thermowit::gas::GasSpec;
use thermowit::witness::{
    lowest_separable_energy_at, transition_temperature_at, transition_temperature_fixed_density,
    verdict_at, Measurement, Verdict,
};

use crate::error::{CliError, ParseError};
use crate::record::{Column, Table, Value};
use crate::units::{parse_quantity, Quantity};

#[derive(Debug, Clone, PartialEq)]
pub enum MassSource {
    Species(String),
    Explicit(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GasInput {
    pub dimension: u32,
    pub box_length: f64,
    pub mass: MassSource,
    pub particle_number: f64,
}

impl GasInput {
    pub fn resolve(&self) -> Result<GasSpec, CliError> {
        let mass = match &self.mass {
            MassSource::Explicit(m) => *m,
            MassSource::Species(name) => {
                lookup_species(name).map_err(|e| CliError::domain("gas.species", e))?.mass
            }
        };
        GasSpec::new(self.dimension, self.box_length, mass, self.particle_number)
            .map_err(|e| CliError::domain("gas", e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PartitionChoice {
    Cuts(u64),
    /// M^d = N.
    Auto,
}

impl PartitionChoice {
    pub fn cuts(self, spec: &GasSpec) -> f64 {
        match self {
            PartitionChoice::Cuts(m) => m as f64,
            PartitionChoice::Auto => spec.particle_number().powf(1.0 / spec.dimension() as f64),
        }
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        if text.eq_ignore_ascii_case("auto") {
            return Ok(PartitionChoice::Auto);
        }
        match text.parse::<u64>() {
            Ok(m) if m >= 1 => Ok(PartitionChoice::Cuts(m)),
            _ => Err(format!("partition must be a positive integer or `auto`, got `{text}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepVariable {
    #[value(name = "M")]
    Partition,
    #[value(name = "T")]
    Temperature,
    #[value(name = "N")]
    ParticleNumber,
    #[value(name = "L")]
    BoxLength,
    #[value(name = "m")]
    Mass,
    #[value(name = "d")]
    Dimension,
}

impl SweepVariable {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "M" => SweepVariable::Partition,
            "T" => SweepVariable::Temperature,
            "N" => SweepVariable::ParticleNumber,
            "L" => SweepVariable::BoxLength,
            "m" => SweepVariable::Mass,
            "d" => SweepVariable::Dimension,
            _ => return None,
        })
    }

    pub fn quantity(self) -> Option<Quantity> {
        match self {
            SweepVariable::Temperature => Some(Quantity::Temperature),
            SweepVariable::BoxLength => Some(Quantity::Length),
            SweepVariable::Mass => Some(Quantity::Mass),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum SweepScale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub scale: SweepScale,
}

impl Sweep {
    pub fn validate(&self) -> Result<(), String> {
        if self.points == 0 {
            return Err("points must be at least 1".into());
        }
        if !(self.from.is_finite() && self.to.is_finite()) {
            return Err("sweep bounds must be finite".into());
        }
        if self.scale == SweepScale::Log && !(self.from > 0.0 && self.to > 0.0) {
            return Err("log sweeps need positive bounds".into());
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if n == 1 {
                    return self.from;
                }
                let f = i as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.from + (self.to - self.from) * f,
                    SweepScale::Log => self.from * (self.to / self.from).powf(f),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub gas: GasInput,
    pub partition: PartitionChoice,
    pub measurement: Option<Measurement>,
    pub sweep: Option<Sweep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    gas: Option<RawGas>,
    partition: Option<Json>,
    measurement: Option<RawMeasurement>,
    sweep: Option<RawSweep>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGas {
    dimension: Option<Json>,
    box_length: Option<Json>,
    species: Option<String>,
    mass: Option<Json>,
    particle_number: Option<Json>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMeasurement {
    temperature: Option<Json>,
    energy: Option<Json>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    variable: Option<String>,
    from: Option<Json>,
    to: Option<Json>,
    points: Option<Json>,
    scale: Option<String>,
}

fn required<T>(value: Option<T>, field: &str) -> Result<T, ParseError> {
    value.ok_or_else(|| ParseError::field(field, "missing required field"))
}

fn quantity(value: &Json, kind: Quantity, field: &str) -> Result<f64, ParseError> {
    match value {
        Json::Number(n) => n
            .as_f64()
            .ok_or_else(|| ParseError::field(field, "number out of range")),
        Json::String(s) => parse_quantity(s, kind).map_err(|m| ParseError::field(field, m)),
        _ => Err(ParseError::field(field, format!("expected a {kind}, got {value}"))),
    }
}

fn plain_number(value: &Json, field: &str) -> Result<f64, ParseError> {
    match value {
        Json::Number(n) => n.as_f64().ok_or_else(|| ParseError::field(field, "number out of range")),
        Json::String(s) => s
            .trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| ParseError::field(field, format!("`{s}` is not a number"))),
        _ => Err(ParseError::field(field, format!("expected a number, got {value}"))),
    }
}

fn positive_integer(value: &Json, field: &str) -> Result<u64, ParseError> {
    value
        .as_u64()
        .filter(|&v| v >= 1)
        .ok_or_else(|| ParseError::field(field, format!("expected a positive integer, got {value}")))
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, ParseError> {
        let raw: RawScenario = serde_json::from_str(text)?;
        let gas = required(raw.gas, "gas")?;

        let dimension = match &gas.dimension {
            Some(v) => positive_integer(v, "gas.dimension")? as u32,
            None => 3,
        };
        let box_length = quantity(&required(gas.box_length, "gas.box_length")?, Quantity::Length, "gas.box_length")?;
        let mass = match (gas.species, gas.mass) {
            (Some(name), None) => MassSource::Species(name),
            (None, Some(m)) => MassSource::Explicit(quantity(&m, Quantity::Mass, "gas.mass")?),
            (Some(_), Some(_)) => {
                return Err(ParseError::field("gas.mass", "give either `mass` or `species`, not both"))
            }
            (None, None) => return Err(ParseError::field("gas.mass", "missing: give `mass` or `species`")),
        };
        let particle_number = plain_number(&required(gas.particle_number, "gas.particle_number")?, "gas.particle_number")?;

        let partition = match raw.partition {
            None => return Err(ParseError::field("partition", "missing required field")),
            Some(Json::String(s)) => PartitionChoice::parse(&s).map_err(|m| ParseError::field("partition", m))?,
            Some(v) => PartitionChoice::Cuts(positive_integer(&v, "partition")?),
        };

        let measurement = match raw.measurement {
            None => None,
            Some(RawMeasurement {
                temperature: Some(t),
                energy: None,
            }) => Some(Measurement::Temperature(quantity(&t, Quantity::Temperature, "measurement.temperature")?)),
            Some(RawMeasurement {
                temperature: None,
                energy: Some(e),
            }) => Some(Measurement::Energy(quantity(&e, Quantity::Energy, "measurement.energy")?)),
            Some(_) => {
                return Err(ParseError::field(
                    "measurement",
                    "give exactly one of `temperature` or `energy`",
                ))
            }
        };

        let sweep = match raw.sweep {
            None => None,
            Some(s) => {
                let name = required(s.variable, "sweep.variable")?;
                let variable = SweepVariable::parse(&name).ok_or_else(|| {
                    ParseError::field("sweep.variable", format!("`{name}` is not one of M, T, N, L, m, d"))
                })?;
                let bound = |v: Option<Json>, field: &str| -> Result<f64, ParseError> {
                    let v = required(v, field)?;
                    match variable.quantity() {
                        Some(kind) => quantity(&v, kind, field),
                        None => plain_number(&v, field),
                    }
                };
                let from = bound(s.from, "sweep.from")?;
                let to = bound(s.to, "sweep.to")?;
                let points = positive_integer(&required(s.points, "sweep.points")?, "sweep.points")? as usize;
                let scale = match s.scale.as_deref() {
                    None | Some("linear") => SweepScale::Linear,
                    Some("log") => SweepScale::Log,
                    Some(other) => {
                        return Err(ParseError::field("sweep.scale", format!("`{other}` is not linear or log")))
                    }
                };
                let sweep = Sweep {
                    variable,
                    from,
                    to,
                    points,
                    scale,
                };
                sweep.validate().map_err(|m| ParseError::field("sweep", m))?;
                Some(sweep)
            }
        };

        Ok(Scenario {
            gas: GasInput {
                dimension,
                box_length,
                mass,
                particle_number,
            },
            partition,
            measurement,
            sweep,
        })
    }

    /// One witness row, or one row per sweep point in sweep order.
    pub fn evaluate(&self) -> Result<Table, CliError> {
        let base = self.gas.resolve()?;
        let mut table = Table::new(witness_columns());
        match &self.sweep {
            None => table.push(witness_row(&base, self.partition.cuts(&base), self.measurement, "scenario")?),
            Some(sweep) => {
                let rows = sweep
                    .values()
                    .par_iter()
                    .enumerate()
                    .map(|(i, &v)| self.sweep_row(&base, sweep.variable, v, i))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.into_iter().for_each(|r| table.push(r));
            }
        }
        Ok(table)
    }

    fn sweep_row(&self, base: &GasSpec, variable: SweepVariable, v: f64, index: usize) -> Result<Vec<Value>, CliError> {
        let context = format!("sweep row {index} ({variable:?} = {v})");
        let domain = |e| CliError::domain(context.clone(), e);
        let mut spec = *base;
        let mut cuts = None;
        let mut measurement = self.measurement;
        match variable {
            SweepVariable::Partition => cuts = Some(v.round().max(1.0)),
            SweepVariable::Temperature => measurement = Some(Measurement::Temperature(v)),
            SweepVariable::ParticleNumber => spec = spec.with_particle_number(v).map_err(domain)?,
            SweepVariable::BoxLength => spec = spec.with_box_length(v).map_err(domain)?,
            SweepVariable::Mass => spec = spec.with_mass(v).map_err(domain)?,
            SweepVariable::Dimension => spec = spec.with_dimension(v.round() as u32).map_err(domain)?,
        }
        let cuts = cuts.unwrap_or_else(|| self.partition.cuts(&spec));
        witness_row(&spec, cuts, measurement, &context)
    }
}

/// Read, validate and evaluate the scenario file at `path`.
pub fn run_scenario(path: &std::path::Path) -> Result<Table, CliError> {
    let text = std::fs::read_to_string(path)?;
    Scenario::from_json(&text)?.evaluate()
}

pub fn witness_columns() -> Vec<Column> {
    vec![
        Column::new("dimension", "1"),
        Column::new("box_length", "m"),
        Column::new("mass", "kg"),
        Column::new("particle_number", "1"),
        Column::new("partition_m", "1"),
        Column::new("e_lowest", "J"),
        Column::new("t_trans", "K"),
        Column::new("t_crit", "K"),
        Column::new("t_trans_fixed_density", "K"),
        Column::new("entanglement_length", "m"),
        Column::new("measured_temperature", "K"),
        Column::new("measured_energy", "J"),
        Column::new("equivalent_energy", "J"),
        Column::new("margin", "1"),
        Column::new("verdict", ""),
    ]
}

/// Witness quantities for one gas and partition, with the verdict columns
/// left empty when there is no measurement.
pub fn witness_row(
    spec: &GasSpec,
    cuts: f64,
    measurement: Option<Measurement>,
    context: &str,
) -> Result<Vec<Value>, CliError> {
    let t_crit = match thermowit::gas::critical_temperature(spec) {
        Ok(t) => Value::Number(t),
        Err(thermowit::Error::NoFiniteCondensation(_)) => Value::Missing,
        Err(e) => return Err(CliError::domain(context, e)),
    };
    let mut row = vec![
        Value::Integer(spec.dimension() as i64),
        Value::Number(spec.box_length()),
        Value::Number(spec.mass()),
        Value::Number(spec.particle_number()),
        Value::Number(cuts),
        Value::Number(lowest_separable_energy_at(spec, cuts)),
        Value::Number(transition_temperature_at(spec, cuts)),
        t_crit,
        Value::Number(transition_temperature_fixed_density(spec)),
        Value::Number(spec.box_length() / cuts),
    ];
    match measurement {
        None => row.extend(std::iter::repeat_n(Value::Missing, 5)),
        Some(m) => {
            let report = verdict_at(spec, cuts, m).map_err(|e| CliError::domain(context, e))?;
            let (t, e) = match m {
                Measurement::Temperature(t) => (Value::Number(t), Value::Missing),
                Measurement::Energy(e) => (Value::Missing, Value::Number(e)),
            };
            row.extend([
                t,
                e,
                Value::Number(report.equivalent_energy),
                Value::Number(report.margin),
                Value::text(verdict_name(report.verdict)),
            ]);
        }
    }
    Ok(row)
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Entangled => "Entangled",
        Verdict::Inconclusive => "Inconclusive",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KETTERLE: &str = r#"{
        "gas": { "dimension": 3, "box_length": "10um", "species": "sodium-23", "particle_number": 7e5 },
        "partition": 185,
        "measurement": { "temperature": "10uK" }
    }"#;

    #[test]
    fn parses_full_scenario() {
        let s = Scenario::from_json(KETTERLE).unwrap();
        assert_eq!(s.gas.dimension, 3);
        assert!((s.gas.box_length - 1e-5).abs() < 1e-20);
        assert_eq!(s.gas.mass, MassSource::Species("sodium-23".into()));
        assert_eq!(s.partition, PartitionChoice::Cuts(185));
        assert_eq!(s.measurement, Some(Measurement::Temperature(1e-5)));
        let table = s.evaluate().unwrap();
        assert_eq!(table.get(0, "verdict"), Some(&Value::text("Entangled")));
    }

    #[test]
    fn missing_mass_names_the_field() {
        let text = r#"{ "gas": { "box_length": 1e-5, "particle_number": 10 }, "partition": 2 }"#;
        let err = Scenario::from_json(text).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("gas.mass"));
    }

    #[test]
    fn both_mass_sources_rejected() {
        let text = r#"{ "gas": { "box_length": 1e-5, "particle_number": 10, "mass": 1e-26, "species": "rubidium-87" }, "partition": 2 }"#;
        assert_eq!(Scenario::from_json(text).unwrap_err().field.as_deref(), Some("gas.mass"));
    }

    #[test]
    fn syntax_errors_carry_line() {
        let text = "{\n  \"gas\": {\n    \"box_length\": ,\n  }\n}";
        let err = Scenario::from_json(text).unwrap_err();
        assert_eq!(err.line, Some(3));
    }

    #[test]
    fn unknown_fields_and_bad_sweeps() {
        assert!(Scenario::from_json(r#"{ "gass": {} }"#).is_err());
        let text = r#"{ "gas": { "box_length": 1e-5, "particle_number": 10, "mass": 1e-26 }, "partition": 2,
                       "sweep": { "variable": "Q", "from": 1, "to": 2, "points": 3 } }"#;
        assert_eq!(Scenario::from_json(text).unwrap_err().field.as_deref(), Some("sweep.variable"));
        let text = r#"{ "gas": { "box_length": 1e-5, "particle_number": 10, "mass": 1e-26 }, "partition": 2,
                       "sweep": { "variable": "T", "from": 0, "to": 2, "points": 3, "scale": "log" } }"#;
        assert_eq!(Scenario::from_json(text).unwrap_err().field.as_deref(), Some("sweep"));
    }

    #[test]
    fn auto_partition_uses_cube_root() {
        let text = r#"{ "gas": { "box_length": "10um", "species": "sodium-23", "particle_number": 64000 }, "partition": "auto" }"#;
        let table = Scenario::from_json(text).unwrap().evaluate().unwrap();
        assert!((table.number(0, "partition_m").unwrap() - 40.0).abs() < 1e-9);
        let a = table.number(0, "t_trans").unwrap();
        let b = table.number(0, "t_trans_fixed_density").unwrap();
        assert!(((a - b) / b).abs() < 1e-12);
    }

    #[test]
    fn sweep_values() {
        let s = Sweep {
            variable: SweepVariable::Partition,
            from: 1.0,
            to: 400.0,
            points: 400,
            scale: SweepScale::Linear,
        };
        let v = s.values();
        assert_eq!(v.len(), 400);
        assert_eq!(v[0], 1.0);
        assert_eq!(v[399], 400.0);
        let log = Sweep {
            scale: SweepScale::Log,
            from: 1e-6,
            to: 1e-3,
            points: 4,
            ..s
        };
        let v = log.values();
        assert!((v[1] / 1e-5 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_sweep_leaves_t_crit_empty_below_three() {
        let text = r#"{ "gas": { "box_length": "10um", "species": "sodium-23", "particle_number": 7e5 }, "partition": 185,
                       "sweep": { "variable": "d", "from": 1, "to": 3, "points": 3 } }"#;
        let table = Scenario::from_json(text).unwrap().evaluate().unwrap();
        assert_eq!(table.get(0, "t_crit"), Some(&Value::Missing));
        assert_eq!(table.get(1, "t_crit"), Some(&Value::Missing));
        assert!(table.number(2, "t_crit").is_some());
        assert!(table.column_numbers("t_trans").iter().all(|t| t.unwrap() > 0.0));
    }
}
