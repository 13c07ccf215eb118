//! Result tables and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Finite(usize),
    Infinite,
}

impl Dim {
    fn to_json(self) -> Value {
        match self {
            Dim::Finite(d) => Value::from(d),
            Dim::Infinite => Value::from("inf"),
        }
    }

    fn render(self) -> String {
        match self {
            Dim::Finite(d) => d.to_string(),
            Dim::Infinite => "inf".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub degree: usize,
    pub dim: Dim,
    pub inv: Option<usize>,
    pub coinv: Option<usize>,
    pub method: String,
    /// Additional columns, in output order.
    pub extra: Vec<(String, Value)>,
}

impl Row {
    pub fn new(degree: usize, dim: usize, method: &str) -> Self {
        Row {
            degree,
            dim: Dim::Finite(dim),
            inv: None,
            coinv: None,
            method: method.to_string(),
            extra: Vec::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.push((key.to_string(), value.into()));
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("j".into(), Value::from(self.degree));
        obj.insert("dim".into(), self.dim.to_json());
        obj.insert("inv".into(), self.inv.map_or(Value::Null, Value::from));
        obj.insert("coinv".into(), self.coinv.map_or(Value::Null, Value::from));
        obj.insert("method".into(), Value::from(self.method.clone()));
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        Value::Object(obj)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ReportTable {
    pub title: String,
    /// `(key, value)` lines printed above the text table.
    pub metadata: Vec<(String, String)>,
    pub rows: Vec<Row>,
    pub notes: Vec<String>,
}

impl ReportTable {
    pub fn new(title: impl Into<String>) -> Self {
        ReportTable {
            title: title.into(),
            ..Default::default()
        }
    }

    pub fn meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn dims(&self) -> Vec<Dim> {
        self.rows.iter().map(|r| r.dim).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

pub fn emit(table: &ReportTable, format: Format) -> String {
    match format {
        Format::Json => emit_json(table),
        Format::Csv => emit_csv(table),
        Format::Text => emit_text(table),
    }
}

fn emit_json(table: &ReportTable) -> String {
    let rows: Vec<Value> = table.rows.iter().map(Row::to_json).collect();
    let mut out = serde_json::to_string_pretty(&Value::Array(rows)).expect("rows serialize");
    out.push('\n');
    out
}

fn opt(v: Option<usize>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn emit_csv(table: &ReportTable) -> String {
    let mut out = String::from("degree,dim,inv,coinv,method\n");
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.degree,
            r.dim.render(),
            opt(r.inv),
            opt(r.coinv),
            r.method
        );
    }
    out
}

fn render_value(v: &Value) -> String {
    match v {
        Value::Null => "-".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn emit_text(table: &ReportTable) -> String {
    let mut out = String::new();
    if !table.title.is_empty() {
        let _ = writeln!(out, "{}", table.title);
    }
    for (k, v) in &table.metadata {
        let _ = writeln!(out, "{k}: {v}");
    }
    if !table.rows.is_empty() {
        let mut header = vec!["degree".to_string(), "dim".into(), "inv".into(), "coinv".into()];
        let mut extra_keys: Vec<&str> = Vec::new();
        for r in &table.rows {
            for (k, _) in &r.extra {
                if !extra_keys.contains(&k.as_str()) {
                    extra_keys.push(k);
                }
            }
        }
        header.extend(extra_keys.iter().map(|k| k.to_string()));
        header.push("method".into());
        let cells: Vec<Vec<String>> = table
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.degree.to_string(),
                    r.dim.render(),
                    r.inv.map_or("-".into(), |x| x.to_string()),
                    r.coinv.map_or("-".into(), |x| x.to_string()),
                ];
                for k in &extra_keys {
                    let v = r.extra.iter().find(|(key, _)| key == k).map(|(_, v)| v);
                    row.push(v.map_or("-".into(), render_value));
                }
                row.push(r.method.clone());
                row
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].chars().count())
                    .chain([header[c].chars().count()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |row: &[String]| {
            let parts: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(cell, &w)| format!("{cell:>w$}"))
                .collect();
            parts.join("  ")
        };
        let _ = writeln!(out, "{}", line(&header));
        for row in &cells {
            let _ = writeln!(out, "{}", line(row));
        }
    }
    for n in &table.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            emit(&ReportTable::new("x"), Format::Csv),
            "degree,dim,inv,coinv,method\n"
        );
    }

    #[test]
    fn infinite_dims_render_as_inf() {
        let mut t = ReportTable::new("t");
        t.rows.push(Row {
            dim: Dim::Infinite,
            ..Row::new(3, 0, "orbits")
        });
        assert!(emit(&t, Format::Csv).contains("3,inf,,,orbits"));
        assert!(emit(&t, Format::Json).contains("\"dim\": \"inf\""));
    }

    #[test]
    fn text_right_aligns() {
        let mut t = ReportTable::new("t").meta("group", "Z/3, sigma(x) = 2x");
        t.rows.push(Row::new(0, 1, "ses"));
        t.rows.push(Row::new(10, 12, "ses"));
        let text = emit(&t, Format::Text);
        assert!(text.contains("group: Z/3, sigma(x) = 2x"));
        assert!(text.contains("\n     0    1"), "{text}");
        assert!(text.contains("\n    10   12"), "{text}");
    }
}
