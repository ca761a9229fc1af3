//! Plain-text matrix files.
//!
//! ```text
//! shape 2 3
//! 1 0 0 0 0
//! 0 0 0 0 0
//! ...
//! ```
//!
//! A header `shape n1 n2 ...` followed by one line per row of the full
//! block-diagonal matrix. Values are written with 17 significant digits,
//! so a file round-trips exactly. Blank lines and `#` comments are
//! ignored.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::shape::ModelShape;
use crate::tol::Tolerances;

pub fn parse_element(text: &str, tol: &Tolerances) -> Result<Element> {
    let mut shape: Option<ModelShape> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("shape") {
            if shape.is_some() {
                return Err(Error::parse(line, "second `shape` header"));
            }
            let blocks: Vec<usize> = rest
                .split_whitespace()
                .map(|w| w.parse().map_err(|_| Error::parse(line, format!("bad block size `{w}`"))))
                .collect::<Result<_>>()?;
            shape = Some(ModelShape::new(&blocks).map_err(|e| Error::parse(line, e.to_string()))?);
            continue;
        }
        let Some(s) = &shape else {
            return Err(Error::parse(line, "missing `shape` header"));
        };
        let row: Vec<f64> = content
            .split_whitespace()
            .map(|w| w.parse().map_err(|_| Error::parse(line, format!("bad number `{w}`"))))
            .collect::<Result<_>>()?;
        if row.len() != s.dim() {
            return Err(Error::parse(line, format!("row has {} entries, expected {}", row.len(), s.dim())));
        }
        rows.push(row);
    }
    let shape = shape.ok_or_else(|| Error::parse(0, "empty file"))?;
    let n = shape.dim();
    if rows.len() != n {
        return Err(Error::parse(0, format!("{} rows, expected {n}", rows.len())));
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    Element::from_matrix(shape, m, tol.sym)
}

pub fn format_element(a: &Element) -> String {
    let mut out = String::new();
    let blocks: Vec<String> = a.shape().blocks().iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "shape {}", blocks.join(" "));
    let m = a.matrix();
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| format_value(m[(i, j)])).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

/// 17 significant digits, with plain zeros.
fn format_value(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        format!("{x:.16e}")
    }
}

pub fn read_element(path: impl AsRef<Path>, tol: &Tolerances) -> Result<Element> {
    parse_element(&std::fs::read_to_string(path)?, tol)
}

pub fn write_element(path: impl AsRef<Path>, a: &Element) -> Result<()> {
    std::fs::write(path, format_element(a))?;
    Ok(())
}
