//! JSON polytope files: `{ "dim": n, "vertices": [["p/q", ...], ...] }`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{convex_hull, GeometryError, Point, VPolytope};
use crate::rational::{format_rational, parse_rational, ParseRationalError};

#[derive(Debug, Error)]
pub enum PolytopeFileError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("declared dim {declared} but a vertex has {found} coordinates")]
    DeclaredDim { declared: usize, found: usize },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

impl TryFrom<PolytopeFile> for VPolytope {
    type Error = PolytopeFileError;

    fn try_from(file: PolytopeFile) -> Result<Self, Self::Error> {
        let mut points = Vec::with_capacity(file.vertices.len());
        for row in &file.vertices {
            if row.len() != file.dim {
                return Err(PolytopeFileError::DeclaredDim { declared: file.dim, found: row.len() });
            }
            let coords = row.iter().map(|c| parse_rational(c)).collect::<Result<_, _>>()?;
            points.push(Point::new(coords));
        }
        Ok(convex_hull(&points)?)
    }
}

impl From<VPolytope> for PolytopeFile {
    fn from(p: VPolytope) -> Self {
        Self {
            dim: p.dim(),
            vertices: p
                .vertices()
                .iter()
                .map(|v| v.coords().iter().map(format_rational).collect())
                .collect(),
        }
    }
}

pub fn parse_polytope(json: &str) -> Result<VPolytope, PolytopeFileError> {
    let file: PolytopeFile = serde_json::from_str(json)?;
    VPolytope::try_from(file)
}

pub fn write_polytope(p: &VPolytope) -> String {
    serde_json::to_string(&PolytopeFile::from(p.clone())).expect("plain data serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_canonicalises_and_writes_lowest_terms() {
        let p = parse_polytope(r#"{"dim":2,"vertices":[["0","0"],["2/2","0"],["0","1"],["1/4","1/4"]]}"#)
            .unwrap();
        assert_eq!(p, VPolytope::standard_simplex(2));
        assert_eq!(write_polytope(&p), r#"{"dim":2,"vertices":[["0","0"],["0","1"],["1","0"]]}"#);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(matches!(
            parse_polytope(r#"{"dim":2,"vertices":[["0"]]}"#),
            Err(PolytopeFileError::DeclaredDim { .. })
        ));
        assert!(matches!(
            parse_polytope(r#"{"dim":1,"vertices":[["x"]]}"#),
            Err(PolytopeFileError::Rational(_))
        ));
        assert!(matches!(
            parse_polytope(r#"{"dim":1,"vertices":[]}"#),
            Err(PolytopeFileError::Geometry(GeometryError::Empty))
        ));
    }
}
