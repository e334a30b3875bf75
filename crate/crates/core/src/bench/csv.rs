//! CSV exchange format for test vectors.
//!
//! Header: variable names, then `decision`. One row per test, cells `0`/`1`,
//! LF line endings, no quoting.

use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::expr::{Assignment, EvalError, Expr, VarOrder};

pub const DECISION_COLUMN: &str = "decision";

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("malformed CSV: {0}")]
    Malformed(String),
    #[error("header is missing variable(s): {}", .missing.join(", "))]
    HeaderMismatch { missing: Vec<String> },
    #[error("row {row}, column `{column}`: `{value}` is not 0 or 1")]
    NonBooleanCell { row: usize, column: String, value: String },
    #[error("row {row}: decision column says {expected}, expression evaluates to {actual}")]
    DecisionMismatch { row: usize, expected: bool, actual: bool },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

fn bit(v: bool) -> &'static str {
    if v {
        "1"
    } else {
        "0"
    }
}

pub fn write_csv<W: Write>(out: W, expr: &Expr, order: &VarOrder, tests: &[Assignment]) -> Result<(), CsvError> {
    let mut w = ::csv::WriterBuilder::new()
        .terminator(::csv::Terminator::Any(b'\n'))
        .quote_style(::csv::QuoteStyle::Never)
        .from_writer(out);
    let malformed = |e: ::csv::Error| CsvError::Malformed(e.to_string());
    w.write_record(order.iter().chain([DECISION_COLUMN])).map_err(malformed)?;
    for t in tests {
        let values = order
            .iter()
            .map(|n| t.get(n).ok_or_else(|| EvalError::MissingVariable(n.to_string())))
            .collect::<Result<Vec<bool>, _>>()?;
        let decision = expr.evaluate(t)?;
        w.write_record(values.iter().map(|&v| bit(v)).chain([bit(decision)])).map_err(malformed)?;
    }
    w.flush().map_err(|source| CsvError::Io { path: "<output>".into(), source })
}

pub fn to_csv_string(expr: &Expr, order: &VarOrder, tests: &[Assignment]) -> Result<String, CsvError> {
    let mut buf = Vec::new();
    write_csv(&mut buf, expr, order, tests)?;
    Ok(String::from_utf8(buf).expect("CSV output is ASCII"))
}

pub fn emit_csv(expr: &Expr, order: &VarOrder, tests: &[Assignment], path: &Path) -> Result<(), CsvError> {
    let io_err = |source| CsvError::Io { path: path.display().to_string(), source };
    let file = File::create(path).map_err(io_err)?;
    write_csv(io::BufWriter::new(file), expr, order, tests).map_err(|e| match e {
        CsvError::Io { source, .. } => io_err(source),
        other => other,
    })
}

/// Reads test vectors for `expr`. Extra columns are ignored; a `decision`
/// column, when present, must agree with the expression.
pub fn read_csv<R: Read>(input: R, expr: &Expr) -> Result<Vec<Assignment>, CsvError> {
    let mut reader = ::csv::ReaderBuilder::new().trim(::csv::Trim::All).from_reader(input);
    let malformed = |e: ::csv::Error| CsvError::Malformed(e.to_string());
    let header: Vec<String> = reader.headers().map_err(malformed)?.iter().map(String::from).collect();

    let order = expr.variables();
    let missing: Vec<String> = order.iter().filter(|v| !header.iter().any(|h| h == v)).map(String::from).collect();
    if !missing.is_empty() {
        return Err(CsvError::HeaderMismatch { missing });
    }
    let decision_col = header.iter().position(|h| h == DECISION_COLUMN);

    let parse_cell = |row: usize, col: usize, value: &str| match value {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(CsvError::NonBooleanCell { row, column: header[col].clone(), value: value.to_string() }),
    };

    let mut tests = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(malformed)?;
        let mut assignment = Assignment::new();
        for (col, name) in header.iter().enumerate() {
            if Some(col) == decision_col || order.index_of(name).is_none() {
                continue;
            }
            let value = record.get(col).unwrap_or("");
            assignment.set(name.clone(), parse_cell(row, col, value)?);
        }
        if let Some(col) = decision_col {
            let expected = parse_cell(row, col, record.get(col).unwrap_or(""))?;
            let actual = expr.evaluate(&assignment)?;
            if expected != actual {
                return Err(CsvError::DecisionMismatch { row, expected, actual });
            }
        }
        tests.push(assignment);
    }
    Ok(tests)
}

pub fn import_csv(path: &Path, expr: &Expr) -> Result<Vec<Assignment>, CsvError> {
    let file = File::open(path).map_err(|source| CsvError::Io { path: path.display().to_string(), source })?;
    read_csv(io::BufReader::new(file), expr)
}
