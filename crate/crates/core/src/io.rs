//! Text formats for matrices and fooling sets.
//!
//! Matrix JSON: `{"rows": R, "cols": C, "entries": [["1", "-2"], ...]}` with
//! every entry a decimal string, so arbitrarily large values survive any
//! JSON parser. Matrix CSV: bare decimal integers, comma separated, one row
//! per `\n`-terminated line, no header. Pairs: one `i j` line per pair,
//! 0-based.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use thiserror::Error;

use crate::error::Error as MatrixError;
use crate::exact::Matrix;
use crate::verify::FoolingSet;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON matrix: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid CSV matrix: {0}")]
    Csv(#[from] csv::Error),
    #[error("entry ({row}, {col}) is not a valid number: {text:?}")]
    BadEntry {
        row: usize,
        col: usize,
        text: String,
    },
    #[error("header declares {declared} {axis} but {found} are present")]
    Dimension {
        axis: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("pairs line {line}: {message}")]
    Pairs { line: usize, message: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// `.csv` paths are CSV, everything else JSON.
    pub fn for_path(path: &str) -> Format {
        if path.to_ascii_lowercase().ends_with(".csv") {
            Format::Csv
        } else {
            Format::Json
        }
    }

    /// JSON documents start with `{`; anything else is read as CSV.
    pub fn sniff(text: &str) -> Format {
        if text.trim_start().starts_with('{') {
            Format::Json
        } else {
            Format::Csv
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}, expected json or csv")),
        }
    }
}

/// Numbers accepted as matrix entries.
pub trait EntryText: Sized {
    fn parse_entry(text: &str) -> Option<Self>;
}

fn is_decimal(text: &str) -> bool {
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

impl EntryText for BigInt {
    fn parse_entry(text: &str) -> Option<Self> {
        is_decimal(text).then(|| text.parse().ok()).flatten()
    }
}

/// Integers, or `p/q` with `q != 0`.
impl EntryText for BigRational {
    fn parse_entry(text: &str) -> Option<Self> {
        match text.split_once('/') {
            None => BigInt::parse_entry(text).map(BigRational::from_integer),
            Some((p, q)) => {
                let p = BigInt::parse_entry(p)?;
                let q = BigInt::parse_entry(q)?;
                (!q.is_zero()).then(|| BigRational::new(p, q))
            }
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

fn parse_cells<T: EntryText>(rows: Vec<Vec<String>>) -> Result<Vec<Vec<T>>, IoError> {
    rows.into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, text)| {
                    T::parse_entry(text.trim()).ok_or(IoError::BadEntry {
                        row: i,
                        col: j,
                        text,
                    })
                })
                .collect()
        })
        .collect()
}

pub fn parse_json<T: EntryText>(text: &str) -> Result<Matrix<T>, IoError> {
    let raw: JsonMatrix = serde_json::from_str(text)?;
    if raw.entries.len() != raw.rows {
        return Err(IoError::Dimension {
            axis: "rows",
            declared: raw.rows,
            found: raw.entries.len(),
        });
    }
    if let Some(row) = raw.entries.iter().find(|r| r.len() != raw.cols) {
        return Err(IoError::Dimension {
            axis: "cols",
            declared: raw.cols,
            found: row.len(),
        });
    }
    let cells = parse_cells(raw.entries)?;
    let data = cells.into_iter().flatten().collect();
    Ok(Matrix::from_vec(raw.rows, raw.cols, data)?)
}

pub fn parse_csv<T: EntryText>(text: &str) -> Result<Matrix<T>, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let rows = reader
        .records()
        .map(|r| r.map(|rec| rec.iter().map(str::to_owned).collect()))
        .collect::<Result<Vec<Vec<String>>, _>>()?;
    Ok(Matrix::from_rows(parse_cells(rows)?)?)
}

/// Parses either format, detected with [`Format::sniff`].
pub fn parse_matrix<T: EntryText>(text: &str) -> Result<Matrix<T>, IoError> {
    match Format::sniff(text) {
        Format::Json => parse_json(text),
        Format::Csv => parse_csv(text),
    }
}

pub fn write_json(m: &Matrix) -> String {
    let mut out = format!(
        "{{\"rows\": {}, \"cols\": {}, \"entries\": [",
        m.rows(),
        m.cols()
    );
    for (i, row) in m.row_iter().enumerate() {
        out.push_str(if i == 0 { "\n  [" } else { ",\n  [" });
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push_str(", ");
            }
            write!(out, "\"{v}\"").expect("writing to a String");
        }
        out.push(']');
    }
    if m.rows() > 0 {
        out.push('\n');
    }
    out.push_str("]}\n");
    out
}

/// Matrices with no rows or no columns are written as an empty file, which
/// reads back as 0x0.
pub fn write_csv(m: &Matrix) -> String {
    let mut out = String::new();
    if m.cols() == 0 {
        return out;
    }
    for row in m.row_iter() {
        for (j, v) in row.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

pub fn write_matrix(m: &Matrix, format: Format) -> String {
    match format {
        Format::Json => write_json(m),
        Format::Csv => write_csv(m),
    }
}

pub fn parse_pairs(text: &str) -> Result<FoolingSet, IoError> {
    let mut pairs = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = |message: &str| IoError::Pairs {
            line: n + 1,
            message: format!("{message}: {line:?}"),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [i, j] = fields[..] else {
            return Err(bad("expected two indices"));
        };
        let index = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| bad("indices must be nonnegative integers"))
        };
        pairs.push((index(i)?, index(j)?));
    }
    Ok(FoolingSet::new(pairs)?)
}

pub fn write_pairs(fs: &FoolingSet) -> String {
    fs.pairs()
        .iter()
        .map(|(i, j)| format!("{i} {j}\n"))
        .collect()
}
