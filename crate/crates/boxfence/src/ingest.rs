//! CSV ingestion. Deliberately strict: comma-separated, decimal points only,
//! optional single header row, blank lines skipped, and anything else is a
//! hard error carrying its 1-based line number. Silent coercion has no place
//! in outlier analysis; a value that does not parse is itself an anomaly the
//! user must see.

use crate::error::{Error, Result};

/// Which CSV column to extract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Column {
    /// Match against a header row (required to exist).
    Name(String),
    /// Zero-based position; a non-numeric first row is treated as a header.
    Index(usize),
}

impl Column {
    /// Parses a CLI-style selector: digits mean an index, anything else a name.
    pub fn parse(selector: &str) -> Column {
        match selector.parse::<usize>() {
            Ok(i) => Column::Index(i),
            Err(_) => Column::Name(selector.to_string()),
        }
    }
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split(',').map(str::trim).collect()
}

fn parse_value(field: &str, line_no: usize) -> Result<f64> {
    let value: f64 = field.parse().map_err(|_| Error::Parse {
        line: line_no,
        what: format!("{field:?} is not a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            line: line_no,
            what: format!("{field:?} is not finite"),
        });
    }
    Ok(value)
}

/// Extracts one numeric column from CSV text.
///
/// Rows are (line_number, fields) with blank lines skipped. With a named
/// column the first data row is the header; with an index the first row is
/// consumed as a header only when its selected field is non-numeric. Every
/// remaining row must have the same field count as the first and a finite
/// numeric value in the selected column.
pub fn read_column(text: &str, column: &Column) -> Result<Vec<f64>> {
    let rows: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(no, l)| (no, split_fields(l)))
        .collect();
    let Some((first_no, first)) = rows.first() else {
        return Err(Error::EmptyInput);
    };
    let width = first.len();

    let (col, skip_header) = match column {
        Column::Name(name) => {
            let Some(pos) = first.iter().position(|f| f == name) else {
                return Err(Error::Parse {
                    line: *first_no,
                    what: format!("no column named {name:?} in header {first:?}"),
                });
            };
            (pos, true)
        }
        Column::Index(i) => {
            if *i >= width {
                return Err(Error::Parse {
                    line: *first_no,
                    what: format!("column index {i} out of range: rows have {width} fields"),
                });
            }
            // a header is present exactly when the first row's field is text
            (*i, first[*i].parse::<f64>().is_err())
        }
    };

    let mut values = Vec::with_capacity(rows.len());
    for (line_no, fields) in rows.iter().skip(if skip_header { 1 } else { 0 }) {
        if fields.len() != width {
            return Err(Error::Parse {
                line: *line_no,
                what: format!("expected {width} fields, found {}", fields.len()),
            });
        }
        values.push(parse_value(fields[col], *line_no)?);
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(values)
}

/// Parses inline data: numbers separated by commas and/or whitespace.
pub fn parse_inline(text: &str) -> Result<Vec<f64>> {
    let mut values = Vec::new();
    for piece in text.split(|c: char| c == ',' || c.is_whitespace()) {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        values.push(parse_value(piece, 1)?);
    }
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(values)
}
