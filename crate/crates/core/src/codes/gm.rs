//! The `.gm` generator-matrix text format.
//!
//! ```text
//! # optional comments, anywhere
//! 7 4
//! 1000110
//! 0100011
//! 0010111
//! 0001101
//! ```
//!
//! Line 1 (ignoring comments) is `n k`; then exactly `k` rows of exactly `n`
//! characters from `{0, 1}`. Lines starting with `#` are comments.

use std::path::Path;

use crate::error::{Error, Result};
use crate::gf2::{BinaryMatrix, BinaryVector};

pub fn parse(text: &str) -> Result<BinaryMatrix> {
    let mut header: Option<(usize, usize)> = None;
    let mut rows: Vec<BinaryVector> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        match header {
            None => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err(format!("expected header `n k`, found {line:?}")));
                }
                let n: usize = parts[0]
                    .parse()
                    .map_err(|_| err(format!("bad length {:?}", parts[0])))?;
                let k: usize = parts[1]
                    .parse()
                    .map_err(|_| err(format!("bad dimension {:?}", parts[1])))?;
                if n == 0 || k == 0 {
                    return Err(err("n and k must be positive".into()));
                }
                header = Some((n, k));
            }
            Some((n, k)) => {
                if rows.len() == k {
                    return Err(err(format!("more than {k} rows")));
                }
                if line.chars().count() != n {
                    return Err(err(format!(
                        "row has {} characters, expected {n}",
                        line.chars().count()
                    )));
                }
                let mut row = BinaryVector::zeros(n);
                for (j, ch) in line.chars().enumerate() {
                    match ch {
                        '0' => {}
                        '1' => row.set(j, true),
                        other => {
                            return Err(err(format!("unexpected character {other:?} in column {}", j + 1)))
                        }
                    }
                }
                rows.push(row);
            }
        }
    }
    match header {
        None => Err(Error::Parse {
            line: last_line.max(1),
            message: "missing `n k` header".into(),
        }),
        Some((_, k)) if rows.len() < k => Err(Error::Parse {
            line: last_line.max(1),
            message: format!("expected {k} rows, found {}", rows.len()),
        }),
        Some(_) => BinaryMatrix::from_rows(rows),
    }
}

/// Canonical rendering: header line, then one row per line, each
/// newline-terminated, no comments.
pub fn render(m: &BinaryMatrix) -> String {
    let mut out = format!("{} {}\n", m.cols(), m.rows());
    for row in m.row_vectors() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

pub fn read(path: &Path) -> Result<BinaryMatrix> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: &Path, m: &BinaryMatrix) -> Result<()> {
    std::fs::write(path, render(m))?;
    Ok(())
}
