//! Deterministic rendering: 9 significant digits, fixed column order,
//! `#` provenance header.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Number, Value as Json};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    /// Human-readable `key = value` report (tables fall back to CSV).
    Text,
}

/// Scientific notation with 9 significant digits; `-0` prints as `0`.
pub fn fmt_num(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if v == 0.0 {
        format!("{:.8e}", 0.0)
    } else {
        format!("{v:.8e}")
    }
}

fn json_num(v: f64) -> Json {
    // round-trip through the printed form so JSON and CSV agree digit for digit
    let printed: f64 = fmt_num(v).parse().unwrap_or(v);
    Number::from_f64(printed).map(Json::Number).unwrap_or(Json::Null)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Missing,
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Num(v) => fmt_num(*v),
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Missing => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Num(v) => json_num(*v),
            Value::Int(i) => json!(i),
            Value::Text(s) => json!(s),
            Value::Bool(b) => json!(b),
            Value::Missing => Json::Null,
        }
    }
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Num(v)
    }
}

impl From<Option<f64>> for Value {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Value::Missing, Value::Num)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Text(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Text(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

#[derive(Debug, Clone)]
pub struct Provenance {
    pub config_hash: String,
    pub tables: Vec<String>,
}

impl Provenance {
    fn header(&self) -> String {
        let mut s = format!("# {} {}\n# config-sha256: {}\n", env!("CARGO_BIN_NAME"), env!("CARGO_PKG_VERSION"), self.config_hash);
        if self.tables.is_empty() {
            s.push_str("# table: none\n");
        }
        for t in &self.tables {
            let _ = writeln!(s, "# table: {t}");
        }
        s
    }

    fn json(&self) -> Json {
        json!({
            "tool": env!("CARGO_BIN_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "config_sha256": self.config_hash,
            "tables": self.tables,
        })
    }
}

/// Named scalar results.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub entries: Vec<(String, Value)>,
}

impl Report {
    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format, prov: &Provenance) -> String {
        match format {
            Format::Csv => {
                let mut s = prov.header();
                s.push_str("key,value\n");
                for (k, v) in &self.entries {
                    let _ = writeln!(s, "{k},{}", v.csv());
                }
                s
            }
            Format::Text => {
                let mut s = prov.header();
                let width = self.entries.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.entries {
                    let shown = match v {
                        Value::Missing => "-".to_string(),
                        v => v.csv(),
                    };
                    let _ = writeln!(s, "{k:<width$} = {shown}");
                }
                s
            }
            Format::Json => {
                let mut m = Map::new();
                m.insert("provenance".into(), prov.json());
                let mut body = Map::new();
                for (k, v) in &self.entries {
                    body.insert(k.clone(), v.json());
                }
                m.insert("report".into(), Json::Object(body));
                pretty(Json::Object(m))
            }
        }
    }
}

/// Column-oriented data series.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
    /// Extra `#` lines after the data (CSV) or a `summary` object (JSON).
    pub footer: Vec<(String, Value)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Self::default()
        }
    }

    pub fn render(&self, format: Format, prov: &Provenance) -> String {
        match format {
            Format::Csv | Format::Text => {
                let mut s = prov.header();
                s.push_str(&self.columns.join(","));
                s.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Value::csv).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                if !self.footer.is_empty() {
                    let parts: Vec<String> = self.footer.iter().map(|(k, v)| format!("{k}={}", v.csv())).collect();
                    let _ = writeln!(s, "# {}", parts.join(" "));
                }
                s
            }
            Format::Json => {
                let rows: Vec<Json> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        for (c, v) in self.columns.iter().zip(r) {
                            m.insert(c.clone(), v.json());
                        }
                        Json::Object(m)
                    })
                    .collect();
                let mut m = Map::new();
                m.insert("provenance".into(), prov.json());
                m.insert("columns".into(), json!(self.columns));
                m.insert("rows".into(), Json::Array(rows));
                if !self.footer.is_empty() {
                    let mut f = Map::new();
                    for (k, v) in &self.footer {
                        f.insert(k.clone(), v.json());
                    }
                    m.insert("summary".into(), Json::Object(f));
                }
                pretty(Json::Object(m))
            }
        }
    }
}

fn pretty(v: Json) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialise");
    s.push('\n');
    s
}
