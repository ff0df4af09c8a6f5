use serde_json::{json, Map, Value as Json};

use crate::grid::{Grid, Spacing};

pub const UNITS: &str = "atomic units: hbar = m = 1, reduced mass 1/2, E = k^2, angles in radians";

/// A single table entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Blank,
}

/// A header or summary value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Grid(Grid),
    Null,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_string())
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<Grid> for Value {
    fn from(g: Grid) -> Self {
        Value::Grid(g)
    }
}

/// The complete result of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub command: &'static str,
    pub params: Vec<(String, Value)>,
    /// Truncation levels and numerical diagnostics.
    pub diagnostics: Vec<(String, Value)>,
    /// Verbatim input echoed for provenance, such as a potential table.
    pub source: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Value)>,
}

impl Document {
    pub fn new(command: &'static str, columns: &[&str]) -> Self {
        Document {
            command,
            params: Vec::new(),
            diagnostics: Vec::new(),
            source: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) {
        self.params.push((key.to_string(), v.into()));
    }

    pub fn diagnostic(&mut self, key: &str, v: impl Into<Value>) {
        self.diagnostics.push((key.to_string(), v.into()));
    }
}

/// Scientific notation with 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{:.16e}", x + 0.0)
    }
}

fn grid_text(g: &Grid) -> String {
    match g {
        Grid::Range { start, stop, count, spacing } => {
            let kind = match spacing {
                Spacing::Linear => "linear",
                Spacing::Log => "log",
            };
            format!("{kind} {} .. {}, {count} points", num(*start), num(*stop))
        }
        Grid::List(v) => format!("[{}]", v.iter().map(|x| num(*x)).collect::<Vec<_>>().join(", ")),
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::Num(x) => num(*x),
        Value::Int(i) => i.to_string(),
        Value::Text(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Grid(g) => grid_text(g),
        Value::Null => "none".into(),
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Num(x) => num(*x),
        Cell::Int(i) => i.to_string(),
        Cell::Text(s) => s.clone(),
        Cell::Blank => String::new(),
    }
}

pub fn render_csv(doc: &Document) -> String {
    let mut out = String::new();
    out.push_str(&format!("# anyon {}\n", env!("CARGO_PKG_VERSION")));
    out.push_str(&format!("# command: {}\n", doc.command));
    out.push_str(&format!("# units: {UNITS}\n"));
    for (k, v) in &doc.params {
        out.push_str(&format!("# parameter {k} = {}\n", value_text(v)));
    }
    for (k, v) in &doc.diagnostics {
        out.push_str(&format!("# diagnostic {k} = {}\n", value_text(v)));
    }
    for line in &doc.source {
        out.push_str(&format!("# source | {line}\n"));
    }
    out.push_str(&doc.columns.join(","));
    out.push('\n');
    for row in &doc.rows {
        out.push_str(&row.iter().map(cell_text).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    for (k, v) in &doc.summary {
        out.push_str(&format!("# summary {k} = {}\n", value_text(v)));
    }
    out
}

fn num_json(x: f64) -> Json {
    if x.is_finite() {
        json!(x)
    } else {
        json!(num(x))
    }
}

fn value_json(v: &Value) -> Json {
    match v {
        Value::Num(x) => num_json(*x),
        Value::Int(i) => json!(i),
        Value::Text(s) => json!(s),
        Value::Bool(b) => json!(b),
        Value::Grid(Grid::Range { start, stop, count, spacing }) => json!({
            "spacing": if *spacing == Spacing::Log { "log" } else { "linear" },
            "start": num_json(*start),
            "stop": num_json(*stop),
            "count": count,
        }),
        Value::Grid(Grid::List(v)) => Json::Array(v.iter().map(|x| num_json(*x)).collect()),
        Value::Null => Json::Null,
    }
}

fn object(pairs: &[(String, Value)]) -> Json {
    Json::Object(pairs.iter().map(|(k, v)| (k.clone(), value_json(v))).collect::<Map<_, _>>())
}

pub fn render_json(doc: &Document) -> String {
    let rows: Vec<Json> = doc
        .rows
        .iter()
        .map(|r| {
            Json::Array(
                r.iter()
                    .map(|c| match c {
                        Cell::Num(x) => num_json(*x),
                        Cell::Int(i) => json!(i),
                        Cell::Text(s) => json!(s),
                        Cell::Blank => Json::Null,
                    })
                    .collect(),
            )
        })
        .collect();
    let mut top = Map::new();
    top.insert("program".into(), json!("anyon"));
    top.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    top.insert("command".into(), json!(doc.command));
    top.insert("units".into(), json!(UNITS));
    top.insert("parameters".into(), object(&doc.params));
    top.insert("diagnostics".into(), object(&doc.diagnostics));
    if !doc.source.is_empty() {
        top.insert("source".into(), json!(doc.source));
    }
    top.insert("columns".into(), json!(doc.columns));
    top.insert("rows".into(), Json::Array(rows));
    if !doc.summary.is_empty() {
        top.insert("summary".into(), object(&doc.summary));
    }
    let mut s = serde_json::to_string_pretty(&Json::Object(top)).expect("JSON values are always serializable");
    s.push('\n');
    s
}
