//! File formats: matrices as CSV rows or JSON objects, operator pairs as
//! JSON, sampled gauges as two-column CSV.
//!
//! * Matrix CSV: one row per line, comma-separated reals, square.
//! * Matrix JSON: `{"dim": n, "entries": [[…], …]}` with nested rows.
//! * Pair JSON: `{"t1": <matrix>, "t2": <matrix>}`; slot dimensions may
//!   differ.
//! * Gauge CSV: header `u,phi`, then one `node,value` row per sample.  A
//!   missing origin row is supplied automatically, since every gauge passes
//!   through `(0, 0)`.
//!
//! Numbers are written with enough digits to round-trip exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functions::GridFunction;
use crate::spectral::CompactMatrix;
use crate::tuple::OperatorPair;

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    dim: usize,
    entries: Vec<Vec<f64>>,
}

impl MatrixFile {
    fn from_matrix(m: &CompactMatrix) -> Self {
        let dim = m.dim();
        let entries = (0..dim)
            .map(|i| (0..dim).map(|j| m.get(i, j)).collect())
            .collect();
        Self { dim, entries }
    }

    fn into_matrix(self) -> Result<CompactMatrix> {
        if self.entries.len() != self.dim || self.entries.iter().any(|r| r.len() != self.dim) {
            return Err(Error::DimensionMismatch(format!(
                "entries do not form a {0}x{0} matrix",
                self.dim
            )));
        }
        CompactMatrix::from_rows(self.entries)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct PairFile {
    t1: MatrixFile,
    t2: MatrixFile,
}

/// Read a square matrix, dispatching on the file extension: `.json` for the
/// object form, anything else for CSV rows.
pub fn read_matrix(path: impl AsRef<Path>) -> Result<CompactMatrix> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    if has_json_extension(path) {
        let file: MatrixFile = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        file.into_matrix()
    } else {
        parse_matrix_csv(&text, path)
    }
}

/// Read an operator pair from the JSON form `{"t1": …, "t2": …}`.
pub fn read_pair(path: impl AsRef<Path>) -> Result<OperatorPair> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let file: PairFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    Ok(OperatorPair::new(
        file.t1.into_matrix()?,
        file.t2.into_matrix()?,
    ))
}

/// Read a sampled gauge from CSV with header `u,phi`.  Rows must form a
/// convex, nondecreasing table; the origin row is optional.
pub fn read_grid_csv(path: impl AsRef<Path>) -> Result<GridFunction> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((_, header)) = lines.next() else {
        return Err(Error::Parse(format!("{}: empty file", path.display())));
    };
    let normalized: String = header.split(',').map(str::trim).collect::<Vec<_>>().join(",");
    if !normalized.eq_ignore_ascii_case("u,phi") {
        return Err(Error::Parse(format!(
            "{}: expected header `u,phi`, got `{header}`",
            path.display()
        )));
    }
    let mut us = Vec::new();
    let mut vs = Vec::new();
    for (idx, line) in lines {
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != 2 {
            return Err(Error::Parse(format!(
                "{}:{}: expected 2 columns, got {}",
                path.display(),
                idx + 1,
                cells.len()
            )));
        }
        us.push(parse_cell(cells[0], path, idx)?);
        vs.push(parse_cell(cells[1], path, idx)?);
    }
    if us.first().is_some_and(|&u| u > 0.0) {
        us.insert(0, 0.0);
        vs.insert(0, 0.0);
    }
    GridFunction::new(us, vs)
}

pub fn write_matrix_csv(path: impl AsRef<Path>, m: &CompactMatrix) -> Result<()> {
    fs::write(path, matrix_to_csv_string(m))?;
    Ok(())
}

pub fn write_matrix_json(path: impl AsRef<Path>, m: &CompactMatrix) -> Result<()> {
    let text = serde_json::to_string_pretty(&MatrixFile::from_matrix(m))
        .expect("matrix serialization cannot fail");
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn write_pair_json(path: impl AsRef<Path>, pair: &OperatorPair) -> Result<()> {
    let file = PairFile {
        t1: MatrixFile::from_matrix(&pair.first),
        t2: MatrixFile::from_matrix(&pair.second),
    };
    let text = serde_json::to_string_pretty(&file).expect("pair serialization cannot fail");
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn write_grid_csv(path: impl AsRef<Path>, grid: &GridFunction) -> Result<()> {
    fs::write(path, grid_to_csv_string(grid))?;
    Ok(())
}

pub fn matrix_to_csv_string(m: &CompactMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if j > 0 {
                out.push(',');
            }
            let _ = write!(out, "{:?}", m.get(i, j));
        }
        out.push('\n');
    }
    out
}

pub fn grid_to_csv_string(grid: &GridFunction) -> String {
    let mut out = String::from("u,phi\n");
    for (&u, &v) in grid.abscissas().iter().zip(grid.values()) {
        let _ = writeln!(out, "{u:?},{v:?}");
    }
    out
}

fn parse_matrix_csv(text: &str, path: &Path) -> Result<CompactMatrix> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let row: Result<Vec<f64>> = line
            .split(',')
            .map(|cell| parse_cell(cell, path, idx))
            .collect();
        rows.push(row?);
    }
    if rows.is_empty() {
        return Err(Error::Parse(format!("{}: empty file", path.display())));
    }
    CompactMatrix::from_rows(rows)
}

fn parse_cell(cell: &str, path: &Path, line_idx: usize) -> Result<f64> {
    cell.trim().parse::<f64>().map_err(|_| {
        Error::Parse(format!(
            "{}:{}: not a number: `{}`",
            path.display(),
            line_idx + 1,
            cell.trim()
        ))
    })
}

fn has_json_extension(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{GridSpec, OrliczFunction};
    use approx::assert_abs_diff_eq;

    fn sample_matrix() -> CompactMatrix {
        CompactMatrix::from_rows(vec![vec![1.0, -0.25], vec![0.125, 3.5]]).unwrap()
    }

    #[test]
    fn matrix_round_trips_through_csv() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.csv");
        let m = sample_matrix();
        write_matrix_csv(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(back.entries(), m.entries());
    }

    #[test]
    fn matrix_round_trips_through_json() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        let m = sample_matrix();
        write_matrix_json(&path, &m).unwrap();
        let back = read_matrix(&path).unwrap();
        assert_eq!(back.entries(), m.entries());
    }

    #[test]
    fn pair_round_trips_with_mixed_dimensions() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pair.json");
        let pair = OperatorPair::new(sample_matrix(), CompactMatrix::identity(3));
        write_pair_json(&path, &pair).unwrap();
        let back = read_pair(&path).unwrap();
        assert_eq!(back.first.dim(), 2);
        assert_eq!(back.second.dim(), 3);
        assert_eq!(back.first.entries(), pair.first.entries());
    }

    #[test]
    fn grid_round_trips_and_feeds_the_parser() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("square.csv");
        let spec = GridSpec::new(1e-4, 1e2, 64).unwrap();
        let grid = GridFunction::tabulate(|u| u * u, &spec).unwrap();
        write_grid_csv(&path, &grid).unwrap();

        let back = read_grid_csv(&path).unwrap();
        assert_eq!(back.abscissas(), grid.abscissas());
        assert_eq!(back.values(), grid.values());

        // 64 nodes is deliberately coarse; the chord error near u = 2 is
        // below a percent, which is all a round-trip check needs.
        let phi = OrliczFunction::parse(&format!("grid:{}", path.display())).unwrap();
        assert_abs_diff_eq!(phi.eval(2.0), 4.0, epsilon = 5e-2);
    }

    #[test]
    fn grid_reader_supplies_the_origin_row() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        fs::write(&path, "u,phi\n1.0,1.0\n2.0,4.0\n").unwrap();
        let grid = read_grid_csv(&path).unwrap();
        assert_eq!(grid.abscissas()[0], 0.0);
        assert_eq!(grid.len(), 3);
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        let dir = tempfile::tempdir().unwrap();

        let bad_cell = dir.path().join("bad.csv");
        fs::write(&bad_cell, "1.0,oops\n0.0,1.0\n").unwrap();
        assert!(matches!(read_matrix(&bad_cell), Err(Error::Parse(_))));

        let ragged = dir.path().join("ragged.csv");
        fs::write(&ragged, "1.0,2.0\n3.0\n").unwrap();
        assert!(matches!(
            read_matrix(&ragged),
            Err(Error::DimensionMismatch(_))
        ));

        let bad_json = dir.path().join("bad.json");
        fs::write(&bad_json, "{\"dim\": 2").unwrap();
        assert!(matches!(read_matrix(&bad_json), Err(Error::Parse(_))));

        let bad_header = dir.path().join("grid.csv");
        fs::write(&bad_header, "x,y\n1.0,1.0\n").unwrap();
        assert!(matches!(read_grid_csv(&bad_header), Err(Error::Parse(_))));

        let missing = dir.path().join("nope.csv");
        assert!(matches!(read_matrix(&missing), Err(Error::Io(_))));
    }

    #[test]
    fn json_shape_mismatch_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("shape.json");
        fs::write(&path, "{\"dim\": 3, \"entries\": [[1.0, 0.0], [0.0, 1.0]]}").unwrap();
        assert!(matches!(
            read_matrix(&path),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
