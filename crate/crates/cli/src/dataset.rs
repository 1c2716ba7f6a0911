//! Minimal numeric CSV: header row, comma separator, no quoting.

use std::fmt;

use thiserror::Error;

use crate::format::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SyntaxReason {
    NonNumeric,
    NonFinite,
    EmptyCell,
    Quoted,
    EmptyName,
    DuplicateName,
    InvalidUtf8,
}

impl fmt::Display for SyntaxReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SyntaxReason::NonNumeric => "non-numeric",
            SyntaxReason::NonFinite => "non-finite value",
            SyntaxReason::EmptyCell => "empty cell",
            SyntaxReason::Quoted => "quoted fields are not supported",
            SyntaxReason::EmptyName => "empty column name",
            SyntaxReason::DuplicateName => "duplicate column name",
            SyntaxReason::InvalidUtf8 => "invalid UTF-8",
        })
    }
}

/// Rows and columns are 1-based; the header is row 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CsvError {
    #[error("row {row}, column {col}: {reason}")]
    CsvSyntax {
        row: usize,
        col: usize,
        reason: SyntaxReason,
    },
    #[error("row {row}: wrong number of fields")]
    RaggedRow { row: usize },
    #[error("empty file: no header row")]
    EmptyFile,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DatasetError {
    #[error("{names} column names for {columns} columns")]
    NameCount { names: usize, columns: usize },
    #[error("column '{0}' has a different length from the others")]
    Length(String),
    #[error("column names must be non-empty and unique: '{0}'")]
    BadName(String),
    #[error("column '{0}' contains a non-finite value")]
    NonFinite(String),
}

/// Named numeric columns of equal length.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    column_names: Vec<String>,
    columns: Vec<Vec<f64>>,
    n_rows: usize,
}

impl Dataset {
    pub fn new(column_names: Vec<String>, columns: Vec<Vec<f64>>) -> Result<Self, DatasetError> {
        if column_names.len() != columns.len() {
            return Err(DatasetError::NameCount {
                names: column_names.len(),
                columns: columns.len(),
            });
        }
        for (i, name) in column_names.iter().enumerate() {
            if !valid_name(name) || column_names[..i].contains(name) {
                return Err(DatasetError::BadName(name.clone()));
            }
        }
        let n_rows = columns.first().map_or(0, Vec::len);
        for (name, col) in column_names.iter().zip(&columns) {
            if col.len() != n_rows {
                return Err(DatasetError::Length(name.clone()));
            }
            if col.iter().any(|v| !v.is_finite()) {
                return Err(DatasetError::NonFinite(name.clone()));
            }
        }
        Ok(Dataset {
            column_names,
            columns,
            n_rows,
        })
    }

    pub fn column_names(&self) -> &[String] {
        &self.column_names
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.column_names
            .iter()
            .position(|n| n == name)
            .map(|i| self.columns[i].as_slice())
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn push_column(&mut self, name: &str, values: Vec<f64>) -> Result<(), DatasetError> {
        let mut names = self.column_names.clone();
        names.push(name.to_string());
        let mut columns = self.columns.clone();
        columns.push(values);
        *self = Dataset::new(names, columns)?;
        Ok(())
    }

    /// Header plus one line per row, `\n` terminated, floats in shortest
    /// round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = self.column_names.join(",");
        out.push('\n');
        for i in 0..self.n_rows {
            let cells: Vec<String> = self.columns.iter().map(|c| fmt_f64(c[i])).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.trim() == name && !name.contains([',', '"', '\n', '\r'])
}

pub fn parse_csv(bytes: &[u8]) -> Result<Dataset, CsvError> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let prefix = &bytes[..e.valid_up_to()];
        let row = prefix.iter().filter(|&&b| b == b'\n').count() + 1;
        let line_start = prefix
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |p| p + 1);
        let col = prefix[line_start..].iter().filter(|&&b| b == b',').count() + 1;
        CsvError::CsvSyntax {
            row,
            col,
            reason: SyntaxReason::InvalidUtf8,
        }
    })?;
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);

    let mut lines = text
        .split('\n')
        .map(|l| l.strip_suffix('\r').unwrap_or(l))
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());

    let (header_row, header) = lines.next().ok_or(CsvError::EmptyFile)?;
    let mut names: Vec<String> = Vec::new();
    for (j, cell) in header.split(',').enumerate() {
        let syntax = |reason| CsvError::CsvSyntax {
            row: header_row,
            col: j + 1,
            reason,
        };
        if cell.contains('"') {
            return Err(syntax(SyntaxReason::Quoted));
        }
        let name = cell.trim();
        if name.is_empty() {
            return Err(syntax(SyntaxReason::EmptyName));
        }
        if names.iter().any(|n| n == name) {
            return Err(syntax(SyntaxReason::DuplicateName));
        }
        names.push(name.to_string());
    }

    let mut columns = vec![Vec::new(); names.len()];
    for (row, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != names.len() {
            return Err(CsvError::RaggedRow { row });
        }
        for (j, cell) in cells.iter().enumerate() {
            columns[j].push(parse_cell(cell).map_err(|reason| CsvError::CsvSyntax {
                row,
                col: j + 1,
                reason,
            })?);
        }
    }
    let n_rows = columns.first().map_or(0, Vec::len);
    Ok(Dataset {
        column_names: names,
        columns,
        n_rows,
    })
}

fn parse_cell(cell: &str) -> Result<f64, SyntaxReason> {
    if cell.contains('"') {
        return Err(SyntaxReason::Quoted);
    }
    let cell = cell.trim();
    if cell.is_empty() {
        return Err(SyntaxReason::EmptyCell);
    }
    let v: f64 = cell.parse().map_err(|_| SyntaxReason::NonNumeric)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(SyntaxReason::NonFinite)
    }
}
