//! Serialization of command results: pretty JSON or flat CSV.
//!
//! JSON numbers go through the shortest round-trip representation, so a
//! reader recovers the exact `f64` bit pattern. CSV uses scientific notation
//! with a configurable number of significant digits (12 unless overridden),
//! '.' decimals, ',' separators, '\n' line ends, and always a header row.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// Parse a config-file spelling of the format.
    pub fn from_name(name: &str) -> Result<Format, CliError> {
        match name {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(CliError::Config(format!(
                "unknown format {other:?} (expected \"json\" or \"csv\")"
            ))),
        }
    }
}

/// Where a rendered document goes: a file when `--output` was given,
/// standard output otherwise.
pub struct Sink {
    target: Option<PathBuf>,
}

impl Sink {
    pub fn new(target: Option<PathBuf>) -> Self {
        Sink { target }
    }

    pub fn write(&self, body: &str) -> Result<(), CliError> {
        match &self.target {
            Some(path) => fs::write(path, body)
                .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display()))),
            None => io::stdout()
                .write_all(body.as_bytes())
                .map_err(|e| CliError::Io(format!("writing standard output: {e}"))),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut body = serde_json::to_string_pretty(value).expect("serializable report");
    body.push('\n');
    body
}

/// One CSV cell; numbers keep their kind so integers never grow exponents.
pub enum Cell {
    Uint(u64),
    Float(f64),
    Str(String),
    Bool(bool),
    Empty,
}

pub struct Csv {
    precision: usize,
    lines: Vec<String>,
}

impl Csv {
    pub fn new(header: &[&str], precision: usize) -> Self {
        Csv {
            precision,
            lines: vec![header.join(",")],
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        let rendered: Vec<String> = row
            .into_iter()
            .map(|cell| match cell {
                Cell::Uint(u) => u.to_string(),
                Cell::Float(v) => format_float(v, self.precision),
                Cell::Str(s) => {
                    debug_assert!(
                        !s.contains(',') && !s.contains('\n'),
                        "CSV fields stay unquoted"
                    );
                    s
                }
                Cell::Bool(b) => b.to_string(),
                Cell::Empty => String::new(),
            })
            .collect();
        self.lines.push(rendered.join(","));
    }

    pub fn render(self) -> String {
        let mut body = self.lines.join("\n");
        body.push('\n');
        body
    }
}

/// Scientific notation with `precision` significant digits.
pub fn format_float(v: f64, precision: usize) -> String {
    format!("{:.*e}", precision.saturating_sub(1), v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_keeps_significant_digits() {
        assert_eq!(format_float(0.5524937810560445, 12), "5.52493781056e-1");
        assert_eq!(format_float(-3.0, 12), "-3.00000000000e0");
        assert_eq!(format_float(0.0, 3), "0.00e0");
    }

    #[test]
    fn csv_rows_render_flat() {
        let mut t = Csv::new(&["n", "e"], 6);
        t.push(vec![Cell::Uint(0), Cell::Float(0.5)]);
        t.push(vec![Cell::Str("x".into()), Cell::Empty]);
        assert_eq!(t.render(), "n,e\n0,5.00000e-1\nx,\n");
    }
}
