//! JSON density-matrix files.
//!
//! A file is one object whose `"rho"` key holds a 4×4 array of `[re, im]`
//! pairs, row-major, in basis order `|00⟩, |01⟩, |10⟩, |11⟩`:
//!
//! ```json
//! {"rho": [[[0.25, 0], [0, 0], [0, 0], [0, 0]], ...]}
//! ```

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::ComplexMatrix;
use crate::mixed::{validate_density_matrix, DensityMatrix, MixedError};

#[derive(Debug, Error)]
pub enum RhoFileError {
    #[error("cannot read {path}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed density-matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("\"rho\" must be 4 rows of 4 [re, im] pairs; row {row} has {len} entries")]
    Shape { row: usize, len: usize },
    #[error("\"rho\" must have 4 rows, found {0}")]
    RowCount(usize),
    #[error(transparent)]
    Invalid(#[from] MixedError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RhoFile {
    pub rho: Vec<Vec<[f64; 2]>>,
}

impl RhoFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rho: m
                .rows()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    /// Checks the shape only; physical validation is separate.
    pub fn to_matrix(&self) -> Result<ComplexMatrix, RhoFileError> {
        if self.rho.len() != 4 {
            return Err(RhoFileError::RowCount(self.rho.len()));
        }
        let mut data = Vec::with_capacity(16);
        for (row, entries) in self.rho.iter().enumerate() {
            if entries.len() != 4 {
                return Err(RhoFileError::Shape {
                    row,
                    len: entries.len(),
                });
            }
            data.extend(entries.iter().map(|&[re, im]| Complex64::new(re, im)));
        }
        ComplexMatrix::new(4, data).map_err(|e| MixedError::Linalg(e).into())
    }
}

pub fn parse_rho(json: &str) -> Result<DensityMatrix, RhoFileError> {
    let file: RhoFile = serde_json::from_str(json)?;
    Ok(validate_density_matrix(file.to_matrix()?)?)
}

pub fn read_rho(path: impl AsRef<Path>) -> Result<DensityMatrix, RhoFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RhoFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_rho(&text)
}

pub fn to_json(m: &ComplexMatrix) -> String {
    serde_json::to_string(&RhoFile::from_matrix(m)).expect("finite floats serialize")
}
