use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};
use thermowit::gas::critical_temperature;
use thermowit::witness::{max_witnessed_partition, transition_temperature, Measurement, Partition, Verdict};
use thermowit_cli::error::CliError;
use thermowit_cli::record::{write_table, Column, Format, Meta, Table, Value};
use thermowit_cli::scenario::{
    run_scenario, verdict_name, witness_columns, witness_row, GasInput, MassSource, PartitionChoice, Scenario, Sweep,
    SweepScale, SweepVariable,
};
use thermowit_cli::units::{parse_quantity, Quantity};
use thermowit_cli::{reproduce, verify};

#[derive(Parser)]
#[command(name = "thermowit", version, about = "Entanglement witness temperatures for ideal Bose gases")]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Omit the timestamp header from CSV and JSON output.
    #[arg(long, global = true)]
    no_meta: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Physical constants, Planck units and species masses.
    Constants,
    /// Bose-Einstein condensation temperature (three dimensions only).
    Tcrit(GasArgs),
    /// Temperature below which the witness detects entanglement.
    Ttrans(PartitionedGas),
    /// Lowest energy reachable by states separable over M^d subsets.
    Elowest(PartitionedGas),
    /// Largest partition witnessed at a given temperature.
    InvertM {
        #[command(flatten)]
        gas: GasArgs,
        /// Measured temperature, e.g. 20uK.
        #[arg(long = "t", value_parser = temperature)]
        temperature: f64,
    },
    /// Compare a measured temperature or energy against the witness.
    Verdict {
        #[command(flatten)]
        gas: PartitionedGas,
        #[command(flatten)]
        measurement: MeasurementArgs,
        /// Exit with 0 for Entangled and 3 for Inconclusive.
        #[arg(long)]
        exit_on_verdict: bool,
    },
    /// Sweep one parameter and emit one witness row per point.
    Scan {
        #[command(flatten)]
        gas: PartitionedGas,
        #[command(flatten)]
        measurement: OptionalMeasurement,
        /// Swept variable.
        #[arg(long, value_enum)]
        var: SweepVariable,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, default_value_t = 50)]
        points: usize,
        #[arg(long, value_enum, default_value_t = SweepScale::Linear)]
        scale: SweepScale,
    },
    /// Run the oracle suite; exits 1 if any check fails.
    Verify,
    /// Compiled-in reproductions.
    Reproduce {
        #[arg(value_parser = reproduce::NAMES)]
        name: String,
    },
    /// Evaluate a JSON scenario file.
    Run { path: PathBuf },
}

#[derive(Args, Clone)]
struct GasArgs {
    /// Spatial dimension.
    #[arg(long = "d", default_value_t = 3)]
    dimension: u32,
    /// Box side length, e.g. 10um.
    #[arg(long, value_parser = length)]
    length: f64,
    /// Registered species name, e.g. sodium-23.
    #[arg(long, conflicts_with = "mass", required_unless_present = "mass")]
    species: Option<String>,
    /// Particle mass, e.g. 3.8e-26kg or 23u.
    #[arg(long, value_parser = mass)]
    mass: Option<f64>,
    /// Particle number.
    #[arg(long = "n")]
    particles: f64,
}

#[derive(Args, Clone)]
struct PartitionedGas {
    #[command(flatten)]
    gas: GasArgs,
    /// Cuts per axis, or `auto` for M^d = N.
    #[arg(long = "m", default_value = "auto", value_parser = PartitionChoice::parse)]
    partition: PartitionChoice,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct MeasurementArgs {
    /// Measured temperature.
    #[arg(long = "t", value_parser = temperature)]
    temperature: Option<f64>,
    /// Measured mean energy.
    #[arg(long, value_parser = energy)]
    energy: Option<f64>,
}

#[derive(Args, Clone)]
#[group(required = false, multiple = false)]
struct OptionalMeasurement {
    #[arg(long = "t", value_parser = temperature)]
    temperature: Option<f64>,
    #[arg(long, value_parser = energy)]
    energy: Option<f64>,
}

fn length(s: &str) -> Result<f64, String> {
    parse_quantity(s, Quantity::Length)
}
fn mass(s: &str) -> Result<f64, String> {
    parse_quantity(s, Quantity::Mass)
}
fn temperature(s: &str) -> Result<f64, String> {
    parse_quantity(s, Quantity::Temperature)
}
fn energy(s: &str) -> Result<f64, String> {
    parse_quantity(s, Quantity::Energy)
}

fn measurement(temperature: Option<f64>, energy: Option<f64>) -> Option<Measurement> {
    temperature
        .map(Measurement::Temperature)
        .or(energy.map(Measurement::Energy))
}

impl GasArgs {
    fn input(&self) -> GasInput {
        GasInput {
            dimension: self.dimension,
            box_length: self.length,
            mass: match (&self.species, self.mass) {
                (_, Some(m)) => MassSource::Explicit(m),
                (Some(s), None) => MassSource::Species(s.clone()),
                (None, None) => unreachable!("clap requires one of --species, --mass"),
            },
            particle_number: self.particles,
        }
    }
}

impl PartitionedGas {
    fn scenario(&self, measurement: Option<Measurement>, sweep: Option<Sweep>) -> Scenario {
        Scenario {
            gas: self.gas.input(),
            partition: self.partition,
            measurement,
            sweep,
        }
    }
}

struct Outcome {
    table: Table,
    exit: u8,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome { table, exit: 0 }
    }
}

fn sweep_bound(text: &str, variable: SweepVariable) -> Result<f64, CliError> {
    let parsed = match variable.quantity() {
        Some(kind) => parse_quantity(text, kind),
        None => text.trim().parse::<f64>().map_err(|e| format!("`{text}`: {e}")),
    };
    parsed.map_err(CliError::Usage)
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    let outcome = match command {
        Command::Constants => reproduce::constants_table().into(),
        Command::Tcrit(gas) => {
            let spec = gas.input().resolve()?;
            let t = critical_temperature(&spec).map_err(|e| CliError::domain("tcrit", e))?;
            let mut table = Table::new(vec![
                Column::new("dimension", "1"),
                Column::new("box_length", "m"),
                Column::new("mass", "kg"),
                Column::new("particle_number", "1"),
                Column::new("density", "m^-d"),
                Column::new("t_crit", "K"),
            ]);
            table.push(vec![
                Value::Integer(spec.dimension() as i64),
                Value::Number(spec.box_length()),
                Value::Number(spec.mass()),
                Value::Number(spec.particle_number()),
                Value::Number(spec.density()),
                Value::Number(t),
            ]);
            table.into()
        }
        Command::Ttrans(gas) => gas.scenario(None, None).evaluate()?.select(&[
            "dimension",
            "box_length",
            "mass",
            "particle_number",
            "partition_m",
            "t_trans",
            "t_trans_fixed_density",
            "t_crit",
        ])
        .into(),
        Command::Elowest(gas) => gas.scenario(None, None).evaluate()?.select(&[
            "dimension",
            "box_length",
            "mass",
            "particle_number",
            "partition_m",
            "e_lowest",
            "entanglement_length",
        ])
        .into(),
        Command::InvertM { gas, temperature } => {
            let spec = gas.input().resolve()?;
            let err = |e| CliError::domain("invert-m", e);
            let est = max_witnessed_partition(&spec, *temperature).map_err(err)?;
            let nearest = Partition::new(est.nearest.max(1)).map_err(err)?;
            let mut table = Table::new(vec![
                Column::new("dimension", "1"),
                Column::new("particle_number", "1"),
                Column::new("temperature", "K"),
                Column::new("partition_real", "1"),
                Column::new("partition_floor", "1"),
                Column::new("partition_nearest", "1"),
                Column::new("t_trans_nearest", "K"),
                Column::new("entanglement_length_nearest", "m"),
            ]);
            table.push(vec![
                Value::Integer(spec.dimension() as i64),
                Value::Number(spec.particle_number()),
                Value::Number(*temperature),
                Value::Number(est.real),
                Value::Integer(est.floor as i64),
                Value::Integer(est.nearest as i64),
                Value::Number(transition_temperature(&spec, nearest)),
                Value::Number(spec.box_length() / nearest.cuts() as f64),
            ]);
            table.into()
        }
        Command::Verdict {
            gas,
            measurement: m,
            exit_on_verdict: flag,
        } => {
            let spec = gas.gas.input().resolve()?;
            let measured = measurement(m.temperature, m.energy).expect("clap requires a measurement");
            let mut table = Table::new(witness_columns());
            table.push(witness_row(&spec, gas.partition.cuts(&spec), Some(measured), "verdict")?);
            let inconclusive = table.get(0, "verdict") == Some(&Value::text(verdict_name(Verdict::Inconclusive)));
            Outcome {
                table,
                exit: if *flag && inconclusive { 3 } else { 0 },
            }
        }
        Command::Scan {
            gas,
            measurement: m,
            var,
            from,
            to,
            points,
            scale,
        } => {
            let sweep = Sweep {
                variable: *var,
                from: sweep_bound(from, *var)?,
                to: sweep_bound(to, *var)?,
                points: *points,
                scale: *scale,
            };
            sweep.validate().map_err(CliError::Usage)?;
            gas.scenario(measurement(m.temperature, m.energy), Some(sweep)).evaluate()?.into()
        }
        Command::Verify => {
            let checks = verify::run_all();
            let failed = checks.iter().any(|c| !c.passed);
            Outcome {
                table: verify::report(&checks),
                exit: u8::from(failed),
            }
        }
        Command::Reproduce { name } => reproduce::run(name)?.into(),
        Command::Run { path } => run_scenario(path)?.into(),
    };
    Ok(outcome)
}

fn emit(cli: &Cli, table: &Table) -> io::Result<()> {
    let command = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    let meta = Meta::new(command, !cli.no_meta);
    match &cli.out {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            write_table(&mut out, table, cli.format, &meta)?;
            out.flush()
        }
        None => {
            let mut out = io::stdout().lock();
            write_table(&mut out, table, cli.format, &meta)?;
            out.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = execute(&cli.command)
        .and_then(|o| emit(&cli, &o.table).map(|_| o.exit).map_err(CliError::from));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, CliError::Usage(_)) {
                eprintln!();
                eprintln!("{}", Cli::command().render_usage());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
