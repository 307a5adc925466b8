//! Text file formats for matrices and parameter sets.
//!
//! Both are JSON documents tagged by a `"type"` field. Complex numbers are
//! `[re, im]` pairs. Reals are written in shortest round-trip form, so a
//! write followed by a read reproduces every value bit for bit.
//!
//! ```text
//! {
//!   "type": "cmatrix",
//!   "n": 2,
//!   "rows": [
//!     [[0.0, 0.0], [1.0, 0.0]],
//!     [[-1.0, 0.0], [0.0, 0.0]]
//!   ]
//! }
//! ```
//!
//! ```text
//! {
//!   "type": "ccsk_params",
//!   "n": 3,
//!   "thetas": [0.1, -0.2, 0.3],
//!   "z": [
//!     [[1.5707963267948966, 0.0]],
//!     [[0.0, 0.0], [0.0, 0.25]]
//!   ]
//! }
//! ```
//!
//! In a params file, `z[k]` holds the `k + 1` entries of `z_{k+2}`.

use std::fmt::{self, Write as _};
use std::path::Path;

use ccsk_core::{CcskParams, Complex64, ComplexMatrix, ComplexVector};
use serde::Deserialize;

pub const MATRIX_TAG: &str = "cmatrix";
pub const PARAMS_TAG: &str = "ccsk_params";

/// A malformed or invalid input file.
#[derive(Debug, Clone, PartialEq)]
pub struct FormatError {
    /// Dotted/indexed path to the offending field, or `line L column C`.
    pub location: String,
    pub message: String,
}

impl FormatError {
    fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for FormatError {}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMatrix {
    #[serde(rename = "type")]
    tag: String,
    n: usize,
    rows: Vec<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    #[serde(rename = "type")]
    tag: String,
    n: usize,
    thetas: Vec<f64>,
    z: Vec<Vec<[f64; 2]>>,
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| {
        FormatError::at(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

fn check_tag(found: &str, expected: &str) -> Result<(), FormatError> {
    if found != expected {
        return Err(FormatError::at(
            "type",
            format!("expected \"{expected}\", found \"{found}\""),
        ));
    }
    Ok(())
}

fn pair_to_complex(
    pair: &[f64; 2],
    location: impl Fn() -> String,
) -> Result<Complex64, FormatError> {
    if !pair[0].is_finite() || !pair[1].is_finite() {
        return Err(FormatError::at(location(), "non-finite value"));
    }
    Ok(Complex64::new(pair[0], pair[1]))
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, FormatError> {
    let raw: RawMatrix = parse_json(text)?;
    check_tag(&raw.tag, MATRIX_TAG)?;
    let n = raw.n;
    if n == 0 {
        return Err(FormatError::at("n", "must be at least 1"));
    }
    if raw.rows.len() != n {
        return Err(FormatError::at(
            "rows",
            format!("expected {n} rows, found {}", raw.rows.len()),
        ));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in raw.rows.iter().enumerate() {
        if row.len() != n {
            return Err(FormatError::at(
                format!("rows[{i}]"),
                format!("expected {n} entries, found {}", row.len()),
            ));
        }
        for (j, pair) in row.iter().enumerate() {
            data.push(pair_to_complex(pair, || format!("rows[{i}][{j}]"))?);
        }
    }
    ComplexMatrix::new(n, n, data).map_err(|e| FormatError::at("rows", e.to_string()))
}

pub fn parse_params(text: &str) -> Result<CcskParams, FormatError> {
    let raw: RawParams = parse_json(text)?;
    check_tag(&raw.tag, PARAMS_TAG)?;
    let n = raw.n;
    if n == 0 {
        return Err(FormatError::at("n", "must be at least 1"));
    }
    if raw.thetas.len() != n {
        return Err(FormatError::at(
            "thetas",
            format!("expected {n} values, found {}", raw.thetas.len()),
        ));
    }
    if let Some(k) = raw.thetas.iter().position(|t| !t.is_finite()) {
        return Err(FormatError::at(format!("thetas[{k}]"), "non-finite value"));
    }
    if raw.z.len() != n - 1 {
        return Err(FormatError::at(
            "z",
            format!("expected {} columns, found {}", n - 1, raw.z.len()),
        ));
    }
    let mut columns = Vec::with_capacity(n - 1);
    for (k, col) in raw.z.iter().enumerate() {
        if col.len() != k + 1 {
            return Err(FormatError::at(
                format!("z[{k}]"),
                format!("z_{} needs {} entries, found {}", k + 2, k + 1, col.len()),
            ));
        }
        let entries = col
            .iter()
            .enumerate()
            .map(|(r, pair)| pair_to_complex(pair, || format!("z[{k}][{r}]")))
            .collect::<Result<Vec<_>, _>>()?;
        columns.push(
            ComplexVector::new(entries)
                .map_err(|e| FormatError::at(format!("z[{k}]"), e.to_string()))?,
        );
    }
    CcskParams::new(raw.thetas, columns).map_err(|e| FormatError::at("z", e.to_string()))
}

fn real(x: f64) -> String {
    // serde_json prints the shortest string that parses back to `x`.
    serde_json::to_string(&x).expect("finite reals serialise")
}

fn pair(c: &Complex64) -> String {
    format!("[{}, {}]", real(c.re), real(c.im))
}

fn pair_list<'a>(entries: impl Iterator<Item = &'a Complex64>) -> String {
    let items: Vec<String> = entries.map(pair).collect();
    format!("[{}]", items.join(", "))
}

fn nested_block(out: &mut String, key: &str, lines: &[String]) {
    if lines.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []");
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, line) in lines.iter().enumerate() {
        let sep = if i + 1 == lines.len() { "" } else { "," };
        let _ = writeln!(out, "    {line}{sep}");
    }
    out.push_str("  ]\n");
}

pub fn write_matrix(m: &ComplexMatrix) -> String {
    assert!(m.is_square(), "matrix files hold square matrices");
    let rows: Vec<String> = m.rows_iter().map(|r| pair_list(r.iter())).collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"type\": \"{MATRIX_TAG}\",");
    let _ = writeln!(out, "  \"n\": {},", m.n_rows());
    nested_block(&mut out, "rows", &rows);
    out.push_str("}\n");
    out
}

pub fn write_params(p: &CcskParams) -> String {
    let thetas: Vec<String> = p.thetas().iter().map(|t| real(*t)).collect();
    let z: Vec<String> = p.z_columns().iter().map(|c| pair_list(c.iter())).collect();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"type\": \"{PARAMS_TAG}\",");
    let _ = writeln!(out, "  \"n\": {},", p.n());
    let _ = writeln!(out, "  \"thetas\": [{}],", thetas.join(", "));
    nested_block(&mut out, "z", &z);
    out.push_str("}\n");
    out
}

#[derive(Debug)]
pub enum ReadError {
    Io(std::io::Error),
    Format(FormatError),
}

impl fmt::Display for ReadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReadError::Io(e) => write!(f, "{e}"),
            ReadError::Format(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ReadError {}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix, ReadError> {
    let text = std::fs::read_to_string(path).map_err(ReadError::Io)?;
    parse_matrix(&text).map_err(ReadError::Format)
}

pub fn read_params(path: &Path) -> Result<CcskParams, ReadError> {
    let text = std::fs::read_to_string(path).map_err(ReadError::Io)?;
    parse_params(&text).map_err(ReadError::Format)
}
