use std::collections::BTreeMap;
use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }
}

/// Everything a command produces; rendered once in the requested format.
pub struct Output {
    pub command: &'static str,
    pub params: BTreeMap<String, Value>,
    pub result: Value,
    pub tables: Vec<Table>,
    /// Extra lines shown after the tables in `table` format only.
    pub notes: Vec<String>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    format_version: &'a str,
    params: &'a BTreeMap<String, Value>,
    result: &'a Value,
}

impl Output {
    pub fn new(command: &'static str) -> Self {
        Output {
            command,
            params: BTreeMap::new(),
            result: Value::Null,
            tables: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let env = Envelope {
                    command: self.command,
                    format_version: FORMAT_VERSION,
                    params: &self.params,
                    result: &self.result,
                };
                let mut s = serde_json::to_string_pretty(&env).expect("plain JSON values");
                s.push('\n');
                s
            }
            Format::Csv => {
                let sections: Vec<String> = self.tables.iter().map(render_csv).collect();
                sections.join("\n")
            }
            Format::Table => {
                let mut sections: Vec<String> = self.tables.iter().map(render_text).collect();
                if !self.notes.is_empty() {
                    sections.push(self.notes.iter().map(|n| format!("{n}\n")).collect());
                }
                sections.join("\n")
            }
        }
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn render_csv(t: &Table) -> String {
    let mut out = String::new();
    let line = |cells: &[String]| cells.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",");
    out.push_str(&line(&t.columns));
    out.push('\n');
    for row in &t.rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

fn is_numeric(cell: &str) -> bool {
    !cell.is_empty() && cell.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/')
}

/// Numeric columns right-aligned, everything else left-aligned.
fn render_text(t: &Table) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let right: Vec<bool> = (0..t.columns.len())
        .map(|i| t.rows.iter().all(|r| is_numeric(&r[i])))
        .collect();
    let mut out = String::new();
    let mut line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(widths.iter().zip(&right))
            .map(|(c, (&w, &r))| if r { format!("{c:>w$}") } else { format!("{c:<w$}") })
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(&t.columns);
    line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>());
    for row in &t.rows {
        line(row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Output {
        let mut t = Table::new(&["g", "N_g"]);
        t.row(vec!["0".into(), "1".into()]);
        t.row(vec!["1".into(), "24".into()]);
        let mut o = Output::new("yau-zaslow").param("max_g", 1);
        o.result = serde_json::json!([{"g": 0, "n_g": "1"}]);
        o.tables.push(t);
        o
    }

    #[test]
    fn csv_has_header_and_lf() {
        assert_eq!(sample().render(Format::Csv), "g,N_g\n0,1\n1,24\n");
    }

    #[test]
    fn csv_quotes_commas() {
        let mut t = Table::new(&["values"]);
        t.row(vec!["1,2,1".into()]);
        assert_eq!(render_csv(&t), "values\n\"1,2,1\"\n");
    }

    #[test]
    fn text_aligns_numbers_right() {
        assert_eq!(sample().render(Format::Table), "g  N_g\n-  ---\n0    1\n1   24\n");
        let mut t = Table::new(&["name", "n"]);
        t.row(vec!["ab".into(), "7".into()]);
        t.row(vec!["abcd".into(), "10".into()]);
        assert_eq!(render_text(&t), "name   n\n----  --\nab     7\nabcd  10\n");
    }

    #[test]
    fn json_envelope_keys() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["command"], "yau-zaslow");
        assert_eq!(v["format_version"], FORMAT_VERSION);
        assert_eq!(v["params"]["max_g"], 1);
    }
}
