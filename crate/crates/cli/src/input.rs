//! Matrix files: `{"n": 3, "A": [[...], ...], "X": [[[re, im], ...], ...]}`.
//! `X` is optional.

use std::path::Path;

use choi_core::linalg::{ComplexMatrix, HermitianMatrix, C64};
use choi_core::maps::{validate_coefficients, CoefficientMatrix};
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "X", default)]
    x: Option<Vec<Vec<[f64; 2]>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatrixInput {
    pub a: CoefficientMatrix,
    pub x: Option<HermitianMatrix>,
}

fn check_shape(name: &str, n: usize, rows: usize, cols: impl Iterator<Item = usize>) -> Result<()> {
    if rows != n {
        return Err(CliError::Input(format!(
            "{name} has {rows} rows, expected n = {n}"
        )));
    }
    for (i, len) in cols.enumerate() {
        if len != n {
            return Err(CliError::Input(format!(
                "row {} of {name} has {len} entries, expected {n}",
                i + 1
            )));
        }
    }
    Ok(())
}

pub fn parse_input(text: &str) -> Result<MatrixInput> {
    let raw: RawInput =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let n = raw.n;
    if n < 2 {
        return Err(CliError::Input(format!("n must be at least 2, got {n}")));
    }
    check_shape("A", n, raw.a.len(), raw.a.iter().map(Vec::len))?;
    if raw.a.iter().flatten().any(|v| !v.is_finite()) {
        return Err(CliError::Input("A contains a non-finite entry".into()));
    }
    let a = validate_coefficients(&raw.a)?;

    let x = match raw.x {
        None => None,
        Some(rows) => {
            check_shape("X", n, rows.len(), rows.iter().map(Vec::len))?;
            if rows.iter().flatten().flatten().any(|v| !v.is_finite()) {
                return Err(CliError::Input("X contains a non-finite entry".into()));
            }
            let m = ComplexMatrix::from_fn(n, |i, j| C64::new(rows[i][j][0], rows[i][j][1]));
            Some(HermitianMatrix::new(m)?)
        }
    };
    Ok(MatrixInput { a, x })
}

pub fn load_input(path: &Path) -> Result<MatrixInput> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_input(&text)
}
