//! Table rendering. Every number is printed once with `{:.14e}` (15
//! significant digits) and the same text is placed in CSV and JSON.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::value::RawValue;

use crate::config::ConfigEcho;
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Missing,
}

impl Cell {
    pub fn opt(v: Option<f64>) -> Cell {
        v.map_or(Cell::Missing, Cell::Num)
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Num(x) => format_number(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }
}

/// Fixed scientific notation; non-finite values print as `nan`, `inf`, `-inf`
/// in CSV and as `null` in JSON.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.14e}")
    } else {
        x.to_string().to_lowercase()
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(x) if x.is_finite() => {
                let raw = RawValue::from_string(format_number(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Cell::Int(n) => s.serialize_u64(*n),
            Cell::Text(t) => s.serialize_str(t),
            _ => s.serialize_none(),
        }
    }
}

/// Ordered `name → cell` pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Cell)>);

impl Record {
    pub fn push(&mut self, key: &str, cell: Cell) {
        self.0.push((key.to_string(), cell));
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// Free-form run diagnostics.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub fields: Record,
    /// `(alpha or method, message)` for every failed evaluation.
    pub errors: Vec<Record>,
}

impl Serialize for Diagnostics {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.fields.0.len() + 1))?;
        for (k, v) in &self.fields.0 {
            m.serialize_entry(k, v)?;
        }
        m.serialize_entry("errors", &self.errors)?;
        m.end()
    }
}

/// Columns plus rows of cells, in column order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn records(&self) -> Vec<Record> {
        self.rows
            .iter()
            .map(|r| {
                Record(
                    self.columns
                        .iter()
                        .map(|c| c.to_string())
                        .zip(r.iter().cloned())
                        .collect(),
                )
            })
            .collect()
    }
}

pub fn render_csv(table: &Table) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns).map_err(CliError::output)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::csv_text))
            .map_err(CliError::output)?;
    }
    let bytes = w.into_inner().map_err(CliError::output)?;
    String::from_utf8(bytes).map_err(CliError::output)
}

#[derive(Serialize)]
struct JsonRun<'a> {
    config: &'a ConfigEcho,
    rows: Vec<Record>,
    diagnostics: &'a Diagnostics,
}

pub fn render_json(table: &Table, config: &ConfigEcho, diagnostics: &Diagnostics) -> Result<String, CliError> {
    let run = JsonRun {
        config,
        rows: table.records(),
        diagnostics,
    };
    let mut s = serde_json::to_string_pretty(&run).map_err(CliError::output)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_has_fifteen_significant_digits() {
        assert_eq!(format_number(0.121_805), "1.21805000000000e-1");
        assert_eq!(format_number(-3.0), "-3.00000000000000e0");
        assert_eq!(format_number(f64::NAN), "nan");
    }

    #[test]
    fn csv_and_json_share_numeric_text() {
        let mut t = Table::new(vec!["alpha", "eps_sem", "method"]);
        t.push(vec![Cell::Num(2.0), Cell::Num(1.0 / 3.0), Cell::Text("sem".into())]);
        t.push(vec![Cell::Num(2.5), Cell::Missing, Cell::Text("a,b".into())]);
        let csv = render_csv(&t).unwrap();
        assert_eq!(
            csv,
            "alpha,eps_sem,method\n2.00000000000000e0,3.33333333333333e-1,sem\n2.50000000000000e0,,\"a,b\"\n"
        );
        let diag = Diagnostics::default();
        let echo = crate::config::RunConfig::resolve_with(
            <crate::config::Cli as clap::Parser>::try_parse_from(["x", "selftest"]).unwrap(),
            &Default::default(),
        )
        .unwrap()
        .echo();
        let json = render_json(&t, &echo, &diag).unwrap();
        assert!(json.contains("\"eps_sem\": 3.33333333333333e-1"));
        assert!(json.contains("\"eps_sem\": null"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["rows"][0]["alpha"], 2.0);
    }
}
