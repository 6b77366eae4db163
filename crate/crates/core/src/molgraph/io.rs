//! Molecule list files: UTF-8, one `SMILES[<TAB>property]` record per line.
//! Blank lines and lines starting with `#` are skipped.

use std::io::BufRead;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeRecord {
    /// 1-based line number in the source file.
    pub line: usize,
    pub smiles: String,
    pub property: Option<f64>,
}

#[derive(Debug, Error)]
pub enum ListError {
    #[error("line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: property '{value}' is not a number")]
    BadProperty { line: usize, value: String },
}

/// Parses one line. Returns `Ok(None)` for comments and blank lines.
pub fn parse_line(line_no: usize, line: &str) -> Result<Option<MoleculeRecord>, ListError> {
    let line = line.trim_end_matches(['\r', '\n']);
    if line.trim().is_empty() || line.starts_with('#') {
        return Ok(None);
    }
    let mut fields = line.split('\t');
    let smiles = fields.next().unwrap_or_default().trim().to_string();
    let property = match fields.next().map(str::trim) {
        None | Some("") => None,
        Some(value) => Some(value.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
            ListError::BadProperty {
                line: line_no,
                value: value.to_string(),
            }
        })?),
    };
    Ok(Some(MoleculeRecord {
        line: line_no,
        smiles,
        property,
    }))
}

/// Streams records from a reader without buffering the whole file.
pub fn records<R: BufRead>(reader: R) -> impl Iterator<Item = Result<MoleculeRecord, ListError>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        match line {
            Ok(text) => parse_line(line_no, &text).transpose(),
            Err(source) => Some(Err(ListError::Io { line: line_no, source })),
        }
    })
}
