use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

use crate::{CliError, Format};

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Int(u64),
    Float(f64),
}

/// Rows under a fixed header, rendered as CSV or as a JSON array of objects.
pub struct Table {
    header: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &'static [&'static str]) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => {
                let rows: Vec<Value> = self.rows.iter().map(|r| self.object(r)).collect();
                let mut s = serde_json::to_string_pretty(&rows).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }

    fn csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(*c)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    fn object(&self, row: &[Cell]) -> Value {
        let mut m = Map::new();
        for (name, cell) in self.header.iter().zip(row) {
            let v = match *cell {
                Cell::Int(i) => Value::from(i),
                Cell::Float(x) => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
            };
            m.insert((*name).to_owned(), v);
        }
        Value::Object(m)
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
fn csv_cell(c: Cell) -> String {
    match c {
        Cell::Int(i) => i.to_string(),
        Cell::Float(x) => format!("{x:.16e}"),
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            context: format!("writing {}", p.display()),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    context: "writing to stdout".into(),
                    source,
                })
        }
    }
}
