use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use simplex_proj::extensions::CsrMatrix;

use crate::error::{BenchError, Result};

/// Rows of a LIBSVM file: a label per row and a sparse feature matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct LibsvmData {
    pub matrix: CsrMatrix,
    pub labels: Vec<f64>,
}

/// Read `label idx:val idx:val ...` lines with 1-based feature indices.
/// The column count is the largest index unless `cols` is given.
pub fn read_libsvm(path: &Path, cols: Option<usize>) -> Result<LibsvmData> {
    parse_libsvm(BufReader::new(File::open(path)?), cols)
}

pub fn parse_libsvm(reader: impl BufRead, cols: Option<usize>) -> Result<LibsvmData> {
    let mut labels = Vec::new();
    let mut rows: Vec<Vec<(usize, f64)>> = Vec::new();
    let mut max_col = 0usize;
    for (no, line) in reader.lines().enumerate() {
        let line = line?;
        let line_no = no + 1;
        let err = |msg: String| BenchError::Libsvm { line: line_no, msg };
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let label_tok = tokens.next().expect("non-empty line");
        let label: f64 = label_tok.parse().map_err(|_| err(format!("bad label '{label_tok}'")))?;
        let mut row = Vec::new();
        for tok in tokens {
            let (idx, val) = tok.split_once(':').ok_or_else(|| err(format!("expected index:value, got '{tok}'")))?;
            let idx: usize = idx.parse().map_err(|_| err(format!("bad index '{idx}'")))?;
            if idx == 0 {
                return Err(err("feature indices are 1-based".into()));
            }
            let val: f64 = val.parse().map_err(|_| err(format!("bad value '{val}'")))?;
            if !val.is_finite() {
                return Err(err(format!("non-finite value '{val}'")));
            }
            max_col = max_col.max(idx);
            row.push((idx - 1, val));
        }
        labels.push(label);
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(BenchError::Libsvm { line: 0, msg: "file has no samples".into() });
    }
    let cols = match cols {
        Some(c) if c < max_col => {
            return Err(BenchError::Config(format!("column override {c} is below the largest index {max_col}")))
        }
        Some(c) => c,
        None => max_col,
    };
    Ok(LibsvmData { matrix: CsrMatrix::from_rows(cols, &rows)?, labels })
}

/// Write in LIBSVM format; values use the shortest text that reads back to
/// the same double.
pub fn write_libsvm(path: &Path, data: &LibsvmData) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    for (r, label) in data.labels.iter().enumerate() {
        write!(out, "{label}")?;
        let (cols, vals) = data.matrix.row(r);
        for (c, v) in cols.iter().zip(vals) {
            write!(out, " {}:{v}", c + 1)?;
        }
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}
