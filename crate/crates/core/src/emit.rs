//! Result serialization.
//!
//! Rows go out as RFC-4180 CSV (header row, minimal quoting) or as a JSON
//! array of flat objects. Floating-point numbers are printed with 17
//! significant digits, which round-trips every finite f64 exactly: re-reading
//! an emitted file yields bit-identical values. Output is deterministic, so
//! identical rows produce byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use crate::report::{CellValue, Row};

#[derive(Debug, thiserror::Error)]
pub enum EmitError {
    #[error("unknown output format `{0}`; expected csv or json")]
    UnknownFormat(String),
    #[error("cannot write `{path}`: {source}")]
    Io {
        path: String,
        source: io::Error,
    },
    #[error(transparent)]
    Stream(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("row {row} has columns ({found}) but the header is ({expected})")]
    InconsistentRow {
        row: usize,
        expected: String,
        found: String,
    },
    #[error("cannot parse `{path}`: {reason}")]
    Parse { path: String, reason: String },
}

/// Output format selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = EmitError;

    fn from_str(token: &str) -> Result<Self, Self::Err> {
        match token.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(EmitError::UnknownFormat(token.to_string())),
        }
    }
}

/// 17-significant-digit rendering; parses back to the identical f64.
pub fn format_number(value: f64) -> String {
    format!("{value:.16e}")
}

fn check_schema(rows: &[Row]) -> Result<(), EmitError> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let expected = first.column_names();
    for (index, row) in rows.iter().enumerate().skip(1) {
        let found = row.column_names();
        if found != expected {
            return Err(EmitError::InconsistentRow {
                row: index,
                expected: expected.join(", "),
                found: found.join(", "),
            });
        }
    }
    Ok(())
}

/// Writes rows in the chosen format to any writer.
pub fn write_rows<W: Write>(rows: &[Row], format: OutputFormat, writer: W) -> Result<(), EmitError> {
    check_schema(rows)?;
    match format {
        OutputFormat::Csv => write_csv(rows, writer),
        OutputFormat::Json => write_json(rows, writer),
    }
}

/// Writes rows to a file, creating or truncating it.
pub fn emit(rows: &[Row], format: OutputFormat, destination: &Path) -> Result<(), EmitError> {
    let file = File::create(destination).map_err(|source| EmitError::Io {
        path: destination.display().to_string(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    write_rows(rows, format, &mut writer)?;
    writer.flush().map_err(|source| EmitError::Io {
        path: destination.display().to_string(),
        source,
    })
}

fn csv_field(value: &CellValue) -> String {
    match value {
        CellValue::Number(x) => format_number(*x),
        CellValue::Integer(i) => i.to_string(),
        CellValue::Bool(b) => b.to_string(),
        CellValue::Text(s) => s.clone(),
        CellValue::Empty => String::new(),
    }
}

fn write_csv<W: Write>(rows: &[Row], writer: W) -> Result<(), EmitError> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let mut csv_writer = csv::Writer::from_writer(writer);
    csv_writer.write_record(first.column_names())?;
    for row in rows {
        csv_writer.write_record(row.cells().iter().map(|(_, value)| csv_field(value)))?;
    }
    csv_writer.flush()?;
    Ok(())
}

fn escape_json(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 2);
    for c in text.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

fn json_value(value: &CellValue) -> String {
    match value {
        CellValue::Number(x) => format_number(*x),
        CellValue::Integer(i) => i.to_string(),
        CellValue::Bool(b) => b.to_string(),
        CellValue::Text(s) => format!("\"{}\"", escape_json(s)),
        CellValue::Empty => "null".to_string(),
    }
}

fn write_json<W: Write>(rows: &[Row], mut writer: W) -> Result<(), EmitError> {
    writeln!(writer, "[")?;
    for (index, row) in rows.iter().enumerate() {
        let fields: Vec<String> = row
            .cells()
            .iter()
            .map(|(name, value)| format!("\"{}\": {}", escape_json(name), json_value(value)))
            .collect();
        let comma = if index + 1 < rows.len() { "," } else { "" };
        writeln!(writer, "  {{{}}}{comma}", fields.join(", "))?;
    }
    writeln!(writer, "]")?;
    Ok(())
}

fn infer_csv_cell(field: &str) -> CellValue {
    if field.is_empty() {
        return CellValue::Empty;
    }
    if field == "true" {
        return CellValue::Bool(true);
    }
    if field == "false" {
        return CellValue::Bool(false);
    }
    let is_integer = {
        let digits = field.strip_prefix('-').unwrap_or(field);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if is_integer {
        if let Ok(i) = field.parse::<i64>() {
            return CellValue::Integer(i);
        }
    }
    if let Ok(x) = field.parse::<f64>() {
        if field.contains(['.', 'e', 'E']) {
            return CellValue::Number(x);
        }
    }
    CellValue::Text(field.to_string())
}

/// Reads a CSV file back into rows, inferring cell types from the lexical
/// shape of each field (the inverse of [`emit`] for files this module wrote).
pub fn parse_csv_rows(path: &Path) -> Result<Vec<Row>, EmitError> {
    let file = File::open(path).map_err(|source| EmitError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut reader = csv::Reader::from_reader(file);
    let headers = reader.headers()?.clone();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let mut row = Row::new();
        for (name, field) in headers.iter().zip(record.iter()) {
            row.push(name, infer_csv_cell(field));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Reads a JSON array of flat objects back into rows.
pub fn parse_json_rows(path: &Path) -> Result<Vec<Row>, EmitError> {
    let content = std::fs::read_to_string(path).map_err(|source| EmitError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let parse_error = |reason: String| EmitError::Parse {
        path: path.display().to_string(),
        reason,
    };
    let value: serde_json::Value =
        serde_json::from_str(&content).map_err(|err| parse_error(err.to_string()))?;
    let array = value
        .as_array()
        .ok_or_else(|| parse_error("expected a top-level array".to_string()))?;
    let mut rows = Vec::with_capacity(array.len());
    for entry in array {
        let object = entry
            .as_object()
            .ok_or_else(|| parse_error("expected an array of objects".to_string()))?;
        let mut row = Row::new();
        for (name, value) in object {
            let cell = match value {
                serde_json::Value::Null => CellValue::Empty,
                serde_json::Value::Bool(b) => CellValue::Bool(*b),
                serde_json::Value::Number(number) => {
                    if let Some(i) = number.as_i64() {
                        CellValue::Integer(i)
                    } else {
                        CellValue::Number(number.as_f64().ok_or_else(|| {
                            parse_error(format!("number {number} does not fit in f64"))
                        })?)
                    }
                }
                serde_json::Value::String(s) => CellValue::Text(s.clone()),
                other => return Err(parse_error(format!("nested value {other} in a flat row"))),
            };
            row.push(name, cell);
        }
        rows.push(row);
    }
    Ok(rows)
}
