//! The `INCIDENCE v1` text format.
//!
//! ```text
//! INCIDENCE v1
//! points <n>
//! planes <m>
//! <n rows of m characters over {0,1}; row i, column j is '1' iff point i ⊣ plane j>
//! ```
//!
//! Every line ends in a single `\n`. Rows are always points. Parsing accepts
//! exactly the documents [`serialize_structure`] produces, so both round
//! trips are byte-exact.

use std::fmt::Write as _;

use thiserror::Error;

use crate::incidence::{IncidenceStructure, PlaneId, PointId};

const MAGIC: &str = "INCIDENCE";
const VERSION: &str = "v1";

/// Parse failures, with 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("line {line}: expected {expected}, found {found}")]
    Shape {
        line: usize,
        expected: String,
        found: String,
    },

    #[error("line {line}, column {column}: unexpected character {found:?}")]
    Content {
        line: usize,
        column: usize,
        found: char,
    },
}

fn format_err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Format {
        line,
        message: message.into(),
    }
}

/// Canonical decimal: digits only, no leading zeros except "0" itself.
fn parse_count(text: &str) -> Option<usize> {
    let canonical = !text.is_empty()
        && text.bytes().all(|b| b.is_ascii_digit())
        && (text == "0" || !text.starts_with('0'));
    canonical.then(|| text.parse().ok()).flatten()
}

fn header_count(line_no: usize, line: Option<&str>, key: &str) -> Result<usize, ParseError> {
    let line =
        line.ok_or_else(|| format_err(line_no, format!("missing \"{key} <count>\" line")))?;
    let value = line
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| format_err(line_no, format!("expected \"{key} <count>\"")))?;
    parse_count(value).ok_or_else(|| format_err(line_no, format!("invalid {key} count {value:?}")))
}

pub fn parse_structure(text: &str) -> Result<IncidenceStructure, ParseError> {
    let body = text.strip_suffix('\n').ok_or_else(|| {
        let last = text.split('\n').count();
        format_err(last, "document must end with a newline")
    })?;
    let mut lines = body.split('\n');

    match lines.next() {
        Some(l) if l == format!("{MAGIC} {VERSION}") => {}
        Some(l) if l.starts_with(&format!("{MAGIC} ")) => {
            return Err(format_err(
                1,
                format!("unsupported version {:?}", &l[MAGIC.len() + 1..]),
            ))
        }
        _ => return Err(format_err(1, format!("expected \"{MAGIC} {VERSION}\""))),
    }
    let n_points = header_count(2, lines.next(), "points")?;
    let n_planes = header_count(3, lines.next(), "planes")?;

    let mut incident = Vec::with_capacity(n_points);
    for i in 0..n_points {
        let line_no = i + 4;
        let row = lines.next().ok_or_else(|| ParseError::Shape {
            line: line_no,
            expected: format!("{n_points} rows"),
            found: format!("{i} rows"),
        })?;
        let len = row.chars().count();
        if len != n_planes {
            return Err(ParseError::Shape {
                line: line_no,
                expected: format!("a row of {n_planes} characters"),
                found: format!("{len} characters"),
            });
        }
        let mut cells = Vec::with_capacity(n_planes);
        for (j, c) in row.chars().enumerate() {
            match c {
                '0' => cells.push(false),
                '1' => cells.push(true),
                other => {
                    return Err(ParseError::Content {
                        line: line_no,
                        column: j + 1,
                        found: other,
                    })
                }
            }
        }
        incident.push(cells);
    }
    if let Some(extra) = lines.next() {
        return Err(ParseError::Shape {
            line: n_points + 4,
            expected: "end of document".to_string(),
            found: format!("{extra:?}"),
        });
    }
    Ok(IncidenceStructure::from_fn(n_points, n_planes, |p, h| {
        incident[p][h]
    }))
}

pub fn serialize_structure(s: &IncidenceStructure) -> String {
    let mut out = String::with_capacity(32 + s.n_points() * (s.n_planes() + 1));
    let _ = writeln!(out, "{MAGIC} {VERSION}");
    let _ = writeln!(out, "points {}", s.n_points());
    let _ = writeln!(out, "planes {}", s.n_planes());
    for p in 0..s.n_points() {
        let row = s.planes_through(PointId(p)).expect("index in range");
        out.extend((0..s.n_planes()).map(|h| if row.contains(PlaneId(h)) { '1' } else { '0' }));
        out.push('\n');
    }
    out
}
