//! JSON matrix files: `{ "dim": n, "rows": [["p/q", ...], ...] }`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{DiscriminantError, SymMatrix};
use crate::rational::{format_rational, parse_rational, ParseRationalError};

#[derive(Debug, Error)]
pub enum MatrixFileError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Matrix(#[from] DiscriminantError),
    #[error("declared dim {declared} but found {found} rows")]
    DeclaredDim { declared: usize, found: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub dim: usize,
    pub rows: Vec<Vec<String>>,
}

impl TryFrom<MatrixFile> for SymMatrix {
    type Error = MatrixFileError;

    fn try_from(file: MatrixFile) -> Result<Self, Self::Error> {
        if file.rows.len() != file.dim {
            return Err(MatrixFileError::DeclaredDim { declared: file.dim, found: file.rows.len() });
        }
        let rows = file
            .rows
            .iter()
            .map(|r| r.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SymMatrix::new(rows)?)
    }
}

impl From<&SymMatrix> for MatrixFile {
    fn from(m: &SymMatrix) -> Self {
        Self { dim: m.dim(), rows: m.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect() }
    }
}

pub fn parse_matrix(json: &str) -> Result<SymMatrix, MatrixFileError> {
    let file: MatrixFile = serde_json::from_str(json)?;
    SymMatrix::try_from(file)
}

pub fn write_matrix(m: &SymMatrix) -> String {
    serde_json::to_string(&MatrixFile::from(m)).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_symmetry() {
        let m = parse_matrix(r#"{"dim":2,"rows":[["2/4","1"],["1","3"]]}"#).unwrap();
        assert_eq!(write_matrix(&m), r#"{"dim":2,"rows":[["1/2","1"],["1","3"]]}"#);
        assert!(matches!(
            parse_matrix(r#"{"dim":2,"rows":[["1","2"],["0","1"]]}"#),
            Err(MatrixFileError::Matrix(DiscriminantError::NotSymmetric { .. }))
        ));
        assert!(matches!(
            parse_matrix(r#"{"dim":3,"rows":[["1"]]}"#),
            Err(MatrixFileError::DeclaredDim { .. })
        ));
    }
}
