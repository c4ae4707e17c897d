//! Flat output tables and their CSV, JSON and plain-text encodings.

use std::io::{self, Write};

use serde_json::{json, Map, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    /// SI unit, "1" for dimensionless numbers, empty for text.
    pub unit: &'static str,
}

impl Column {
    pub fn new(name: impl Into<String>, unit: &'static str) -> Self {
        Column { name: name.into(), unit }
    }

    /// `name(unit)`, or just `name` for text columns.
    pub fn header(&self) -> String {
        if self.unit.is_empty() {
            self.name.clone()
        } else {
            format!("{}({})", self.name, self.unit)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Integer(i64),
    Text(String),
    Missing,
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Number(v) => Some(*v),
            Value::Integer(v) => Some(*v as f64),
            _ => None,
        }
    }

    /// Canonical text form; numbers carry 12 significant digits.
    pub fn render(&self) -> String {
        match self {
            Value::Number(v) => format_significant(*v),
            Value::Integer(v) => v.to_string(),
            Value::Text(s) => s.clone(),
            Value::Missing => String::new(),
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Value::Number(v) => {
                // round-trip through the 12-digit text so CSV and JSON agree
                let rounded: f64 = format_significant(*v).parse().unwrap_or(*v);
                json!(rounded)
            }
            Value::Integer(v) => json!(v),
            Value::Text(s) => json!(s),
            Value::Missing => Json::Null,
        }
    }
}

pub fn format_significant(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:.11e}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    /// Value of column `name` in row `row`.
    pub fn get(&self, row: usize, name: &str) -> Option<&Value> {
        self.column_index(name).and_then(|i| self.rows.get(row).map(|r| &r[i]))
    }

    pub fn number(&self, row: usize, name: &str) -> Option<f64> {
        self.get(row, name).and_then(Value::as_f64)
    }

    /// Copy of the table restricted to the named columns, in that order.
    pub fn select(&self, names: &[&str]) -> Table {
        let idx: Vec<usize> = names
            .iter()
            .map(|n| self.column_index(n).unwrap_or_else(|| panic!("no column `{n}`")))
            .collect();
        Table {
            columns: idx.iter().map(|&i| self.columns[i].clone()).collect(),
            rows: self
                .rows
                .iter()
                .map(|r| idx.iter().map(|&i| r[i].clone()).collect())
                .collect(),
        }
    }

    pub fn column_numbers(&self, name: &str) -> Vec<Option<f64>> {
        (0..self.rows.len()).map(|r| self.number(r, name)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Metadata written ahead of the data.
#[derive(Debug, Clone, PartialEq)]
pub struct Meta {
    pub command: String,
    /// Unix time of the run; omitted under --no-meta.
    pub generated_unix: Option<u64>,
}

impl Meta {
    pub fn new(command: impl Into<String>, with_timestamp: bool) -> Self {
        let generated_unix = with_timestamp.then(|| {
            std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        });
        Meta {
            command: command.into(),
            generated_unix,
        }
    }
}

pub fn write_table(out: &mut dyn Write, table: &Table, format: Format, meta: &Meta) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, table, meta),
        Format::Json => write_json(out, table, meta),
        Format::Table => write_plain(out, table),
    }
}

pub fn write_csv(out: &mut dyn Write, table: &Table, meta: &Meta) -> io::Result<()> {
    if let Some(ts) = meta.generated_unix {
        writeln!(
            out,
            "# thermowit {} command={} generated_unix={ts}",
            env!("CARGO_PKG_VERSION"),
            meta.command
        )?;
    }
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(table.columns.iter().map(Column::header))?;
    for row in &table.rows {
        writer.write_record(row.iter().map(Value::render))?;
    }
    writer.flush()
}

pub fn to_json(table: &Table, meta: &Meta) -> Json {
    let columns: Vec<Json> = table
        .columns
        .iter()
        .map(|c| json!({ "name": c.name, "unit": c.unit }))
        .collect();
    let mut meta_obj = Map::new();
    meta_obj.insert("tool".into(), json!("thermowit"));
    meta_obj.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    meta_obj.insert("command".into(), json!(meta.command));
    meta_obj.insert("columns".into(), Json::Array(columns));
    if let Some(ts) = meta.generated_unix {
        meta_obj.insert("generated_unix".into(), json!(ts));
    }
    let rows: Vec<Json> = table
        .rows
        .iter()
        .map(|row| {
            let obj: Map<String, Json> = table
                .columns
                .iter()
                .zip(row)
                .map(|(c, v)| (c.name.to_string(), v.to_json()))
                .collect();
            Json::Object(obj)
        })
        .collect();
    json!({ "meta": meta_obj, "rows": rows })
}

pub fn write_json(out: &mut dyn Write, table: &Table, meta: &Meta) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &to_json(table, meta))?;
    writeln!(out)
}

/// Aligned `name(unit)  value` lines, one block per row.
fn write_plain(out: &mut dyn Write, table: &Table) -> io::Result<()> {
    let headers: Vec<String> = table.columns.iter().map(Column::header).collect();
    let width = headers.iter().map(|h| h.chars().count()).max().unwrap_or(0);
    for (i, row) in table.rows.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        for (h, v) in headers.iter().zip(row) {
            writeln!(out, "{h:<width$}  {}", v.render())?;
        }
    }
    Ok(())
}

/// Parse CSV produced by [`write_csv`] back into header strings and cells.
pub fn read_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), csv::Error> {
    let body: String = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect();
    let mut reader = csv::Reader::from_reader(body.as_bytes());
    let headers = reader.headers()?.iter().map(str::to_string).collect();
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
        .collect::<Result<_, _>>()?;
    Ok((headers, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec![
            Column::new("dimension", "1"),
            Column::new("t_trans", "K"),
            Column::new("t_crit", "K"),
            Column::new("verdict", ""),
        ]);
        t.push(vec![
            Value::Integer(3),
            Value::Number(2.002880841259e-5),
            Value::Number(5.5102777723e-6),
            Value::text("Entangled, strongly"),
        ]);
        t.push(vec![Value::Integer(1), Value::Number(1.0 / 3.0), Value::Missing, Value::text("Inconclusive")]);
        t
    }

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_significant(1.0 / 3.0), "3.33333333333e-1");
        assert_eq!(format_significant(2e-5), "2.00000000000e-5");
        assert_eq!(format_significant(0.0), "0");
    }

    #[test]
    fn csv_quotes_and_headers() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sample(), &Meta::new("test", false)).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let first = text.lines().next().unwrap();
        assert_eq!(first, "dimension(1),t_trans(K),t_crit(K),verdict");
        assert!(text.contains("\"Entangled, strongly\""));
        let (headers, rows) = read_csv(&text).unwrap();
        assert_eq!(headers.len(), 4);
        assert_eq!(rows[1][2], "");
    }

    #[test]
    fn csv_and_json_agree() {
        let table = sample();
        let meta = Meta::new("test", false);
        let mut buf = Vec::new();
        write_csv(&mut buf, &table, &meta).unwrap();
        let (_, csv_rows) = read_csv(std::str::from_utf8(&buf).unwrap()).unwrap();
        let json = to_json(&table, &meta);
        let json_rows = json["rows"].as_array().unwrap();
        for (c, j) in csv_rows.iter().zip(json_rows) {
            let from_csv: f64 = c[1].parse().unwrap();
            assert_eq!(from_csv, j["t_trans"].as_f64().unwrap());
        }
        assert!(json_rows[1]["t_crit"].is_null());
    }

    #[test]
    fn meta_timestamp_is_optional() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &sample(), &Meta::new("x", true)).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("# thermowit"));
        let json = to_json(&sample(), &Meta::new("x", false));
        assert!(json["meta"].get("generated_unix").is_none());
    }
}
