//! Parsers for the auxiliary input files, with line-numbered error messages.

use std::path::Path;

use pauli_core::domain::GridDomain;
use pauli_core::error::Error;
use pauli_core::field::BField;
use pauli_core::radial::RadialField;

use crate::CliError;

/// Radial field table: CSV with header `r,B`, strictly increasing r.
pub fn read_b_table(path: &Path) -> Result<RadialField, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if i == 0 {
            let header = line.replace(' ', "");
            if header != "r,B" {
                return Err(Error::Parse {
                    line: 1,
                    msg: format!("expected header `r,B`, got `{line}`"),
                }
                .into());
            }
            continue;
        }
        let mut parts = line.split(',');
        let (r, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(r), Some(b), None) => (r.trim(), b.trim()),
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "expected two comma-separated values".into(),
                }
                .into())
            }
        };
        let r: f64 = r.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("bad radius `{r}`"),
        })?;
        let b: f64 = b.parse().map_err(|_| Error::Parse {
            line: i + 1,
            msg: format!("bad field value `{b}`"),
        })?;
        entries.push((r, b));
    }
    Ok(RadialField::Table(entries))
}

/// Grid-sampled field matching the mask grid: CSV, row-major, nx columns,
/// ny rows (row j is y = y0 + j dx).
pub fn read_b_grid(path: &Path, domain: &GridDomain) -> Result<BField, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let (nx, ny) = (domain.nx(), domain.ny());
    let mut values = vec![0.0f64; nx * ny];
    let mut rows = 0usize;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if rows >= ny {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("expected {ny} rows, found extra content"),
            }
            .into());
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != nx {
            return Err(Error::Parse {
                line: i + 1,
                msg: format!("row has {} columns, expected nx = {nx}", cells.len()),
            }
            .into());
        }
        for (ix, cell) in cells.iter().enumerate() {
            values[rows * nx + ix] = cell.trim().parse().map_err(|_| Error::Parse {
                line: i + 1,
                msg: format!("bad value `{}` in column {}", cell.trim(), ix + 1),
            })?;
        }
        rows += 1;
    }
    if rows != ny {
        return Err(Error::Parse {
            line: rows + 1,
            msg: format!("expected {ny} rows, found {rows}"),
        }
        .into());
    }
    Ok(BField::PerNode(values))
}
