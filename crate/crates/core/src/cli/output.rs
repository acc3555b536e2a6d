//! CSV with a `#`-prefixed metadata block.

use std::fmt::Write as _;

use super::config::{RunConfig, HEADER_PREFIX};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.11e}"),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub units: String,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
    /// Comment lines after the data, e.g. a PASS/FAIL verdict.
    pub trailer: Vec<String>,
}

impl Table {
    pub fn new(columns: &[&'static str], units: &str) -> Self {
        Self {
            columns: columns.to_vec(),
            units: units.into(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        let line = line.into();
        if !self.notes.contains(&line) {
            self.notes.push(line);
        }
    }

    pub fn render(&self, cfg: &RunConfig) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# casimir-drift {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(out, "# config-sha256: {}", cfg.hash());
        let _ = writeln!(out, "# units: {}", self.units);
        for line in cfg.to_toml().lines() {
            let _ = writeln!(out, "{HEADER_PREFIX}{line}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "# note: {n}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        for t in &self.trailer {
            let _ = writeln!(out, "# {t}");
        }
        out
    }
}
