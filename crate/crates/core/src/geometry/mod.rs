//! Exact vertex-representation polytopes: hull, Minkowski sum, scaling,
//! facets, support function and volume over rational coordinates.

pub mod hull;
pub mod int;
pub mod io;
mod lattice;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{format_rational, int, Rational};
pub use lattice::LatticeSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("empty point set")]
    Empty,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("scale factor must be non-negative")]
    NegativeScale,
    #[error("polytope is not full-dimensional (affine dimension {affine_dim} in R^{dim})")]
    NotFullDimensional { affine_dim: usize, dim: usize },
    #[error("direction must be non-zero")]
    ZeroDirection,
    #[error("dimension must be at least 1")]
    ZeroDimension,
}

/// A point of Q^n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut p = Self::origin(dim);
        p.0[axis] = int(1);
        p
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn dot(&self, other: &Point) -> Rational {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, t: &Rational) -> Point {
        Point(self.0.iter().map(|x| x * t).collect())
    }
}

impl std::ops::Add for &Point {
    type Output = Point;
    fn add(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl std::ops::Sub for &Point {
    type Output = Point;
    fn sub(self, rhs: &Point) -> Point {
        Point(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// Convex polytope given by its vertices. The vertex list is always the
/// irredundant set of extreme points in lexicographic order, so equality is
/// equality of bodies (translates are distinct).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "io::PolytopeFile", into = "io::PolytopeFile")]
pub struct VPolytope {
    dim: usize,
    vertices: Vec<Point>,
}

/// Facet `normal . x <= offset` with a primitive integer normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Facet {
    pub fn evaluate(&self, p: &Point) -> Rational {
        self.normal
            .iter()
            .zip(p.coords())
            .map(|(a, x)| Rational::from_integer(a.clone()) * x)
            .sum()
    }

    pub fn normal_point(&self) -> Point {
        Point::new(self.normal.iter().cloned().map(Rational::from_integer).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolytope {
    pub dim: usize,
    pub facets: Vec<Facet>,
}

impl HPolytope {
    pub fn contains(&self, p: &Point) -> bool {
        self.facets.iter().all(|f| f.evaluate(p) <= f.offset)
    }
}

fn check_dims(points: &[Point]) -> Result<usize, GeometryError> {
    let dim = points.first().ok_or(GeometryError::Empty)?.dim();
    if dim == 0 {
        return Err(GeometryError::ZeroDimension);
    }
    if let Some(p) = points.iter().find(|p| p.dim() != dim) {
        return Err(GeometryError::DimensionMismatch { expected: dim, found: p.dim() });
    }
    Ok(dim)
}

/// Minimal vertex set of the convex hull of `points`, lexicographically ordered.
pub fn convex_hull(points: &[Point]) -> Result<VPolytope, GeometryError> {
    let dim = check_dims(points)?;
    let lattice = LatticeSet::from_points(points);
    let vertices = lattice.hull_vertices();
    let mut vertices: Vec<Point> = vertices.into_iter().map(|i| points[i].clone()).collect();
    vertices.sort();
    vertices.dedup();
    Ok(VPolytope { dim, vertices })
}

pub fn minkowski_sum(a: &VPolytope, b: &VPolytope) -> Result<VPolytope, GeometryError> {
    a.same_dim(b)?;
    let sums: Vec<Point> = a
        .vertices
        .iter()
        .flat_map(|p| b.vertices.iter().map(move |q| p + q))
        .collect();
    convex_hull(&sums)
}

pub fn scale(a: &VPolytope, t: &Rational) -> Result<VPolytope, GeometryError> {
    if t.is_negative() {
        return Err(GeometryError::NegativeScale);
    }
    if t.is_zero() {
        return Ok(VPolytope::point(Point::origin(a.dim)));
    }
    // Positive scaling preserves extremality and lexicographic order.
    Ok(VPolytope { dim: a.dim, vertices: a.vertices.iter().map(|v| v.scaled(t)).collect() })
}

pub fn translate(a: &VPolytope, v: &Point) -> Result<VPolytope, GeometryError> {
    if v.dim() != a.dim {
        return Err(GeometryError::DimensionMismatch { expected: a.dim, found: v.dim() });
    }
    Ok(VPolytope { dim: a.dim, vertices: a.vertices.iter().map(|p| p + v).collect() })
}

pub fn volume(a: &VPolytope) -> Rational {
    LatticeSet::from_points(&a.vertices).volume()
}

pub fn facet_enumeration(a: &VPolytope) -> Result<HPolytope, GeometryError> {
    let lattice = LatticeSet::from_points(&a.vertices);
    let affine_dim = lattice.affine_dim();
    if affine_dim < a.dim {
        return Err(GeometryError::NotFullDimensional { affine_dim, dim: a.dim });
    }
    Ok(HPolytope { dim: a.dim, facets: lattice.facets() })
}

pub fn support_function(a: &VPolytope, direction: &Point) -> Result<Rational, GeometryError> {
    if direction.dim() != a.dim {
        return Err(GeometryError::DimensionMismatch { expected: a.dim, found: direction.dim() });
    }
    if direction.is_zero() {
        return Err(GeometryError::ZeroDirection);
    }
    Ok(a.support(direction))
}

impl VPolytope {
    pub fn from_points(points: &[Point]) -> Result<Self, GeometryError> {
        convex_hull(points)
    }

    pub fn from_int_points(points: &[&[i64]]) -> Result<Self, GeometryError> {
        let pts: Vec<Point> = points.iter().map(|p| Point::from_ints(p)).collect();
        convex_hull(&pts)
    }

    pub fn point(p: Point) -> Self {
        Self { dim: p.dim(), vertices: vec![p] }
    }

    pub fn segment(a: Point, b: Point) -> Result<Self, GeometryError> {
        convex_hull(&[a, b])
    }

    /// conv{0, e_1, ..., e_n}.
    pub fn standard_simplex(dim: usize) -> Self {
        let mut pts = vec![Point::origin(dim)];
        pts.extend((0..dim).map(|i| Point::unit(dim, i)));
        pts.sort();
        Self { dim, vertices: pts }
    }

    pub fn unit_cube(dim: usize) -> Self {
        Self::cube_box(&vec![int(1); dim])
    }

    /// Axis-parallel box `[0, s_1] x ... x [0, s_n]` (sides positive).
    pub fn cube_box(sides: &[Rational]) -> Self {
        let dim = sides.len();
        let mut pts = Vec::with_capacity(1 << dim);
        for mask in 0..(1usize << dim) {
            pts.push(Point::new(
                (0..dim)
                    .map(|i| if mask >> i & 1 == 1 { sides[i].clone() } else { Rational::zero() })
                    .collect(),
            ));
        }
        pts.sort();
        pts.dedup();
        Self { dim, vertices: pts }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        LatticeSet::from_points(&self.vertices).affine_dim()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn support(&self, direction: &Point) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.dot(direction))
            .max()
            .expect("polytopes are non-empty")
    }

    /// True iff every vertex of `inner` lies in `self`.
    pub fn contains_polytope(&self, inner: &VPolytope) -> Result<bool, GeometryError> {
        self.same_dim(inner)?;
        if self.is_full_dimensional() {
            let h = facet_enumeration(self)?;
            return Ok(inner.vertices.iter().all(|v| h.contains(v)));
        }
        // Lower-dimensional container: a point is inside iff adding it keeps
        // the hull's vertex set unchanged.
        Ok(inner.vertices.iter().all(|v| {
            let mut pts = self.vertices.clone();
            pts.push(v.clone());
            convex_hull(&pts).map(|h| h == *self).unwrap_or(false)
        }))
    }

    fn same_dim(&self, other: &VPolytope) -> Result<(), GeometryError> {
        if self.dim != other.dim {
            return Err(GeometryError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

impl fmt::Display for VPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn square() -> VPolytope {
        VPolytope::unit_cube(2)
    }

    #[test]
    fn hull_drops_interior_point() {
        let k = VPolytope::from_points(&[
            Point::from_ints(&[0, 0]),
            Point::from_ints(&[1, 0]),
            Point::from_ints(&[0, 1]),
            Point::new(vec![ratio(1, 4), ratio(1, 4)]),
        ])
        .unwrap();
        assert_eq!(k, VPolytope::standard_simplex(2));
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(GeometryError::Empty));
        assert_eq!(
            convex_hull(&[Point::from_ints(&[0, 0]), Point::from_ints(&[1])]),
            Err(GeometryError::DimensionMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn square_corners_and_midpoints() {
        let mut pts = Vec::new();
        for x in 0..3 {
            for y in 0..3 {
                if x == 1 && y == 1 {
                    continue;
                }
                pts.push(Point::new(vec![ratio(x, 2), ratio(y, 2)]));
            }
        }
        assert_eq!(convex_hull(&pts).unwrap(), square());
    }

    #[test]
    fn minkowski_of_segments_is_square() {
        let a = VPolytope::from_int_points(&[&[0, 0], &[1, 0]]).unwrap();
        let b = VPolytope::from_int_points(&[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(minkowski_sum(&a, &b).unwrap(), square());
        let origin = VPolytope::point(Point::origin(2));
        assert_eq!(minkowski_sum(&square(), &origin).unwrap(), square());
        assert_eq!(minkowski_sum(&square(), &square()).unwrap(), scale(&square(), &int(2)).unwrap());
        let bad = VPolytope::unit_cube(3);
        assert!(matches!(minkowski_sum(&a, &bad), Err(GeometryError::DimensionMismatch { .. })));
    }

    #[test]
    fn scaling() {
        assert_eq!(scale(&square(), &int(1)).unwrap(), square());
        assert_eq!(volume(&scale(&square(), &int(3)).unwrap()), int(9));
        assert_eq!(scale(&square(), &int(0)).unwrap(), VPolytope::point(Point::origin(2)));
        assert_eq!(scale(&square(), &int(-1)), Err(GeometryError::NegativeScale));
    }

    #[test]
    fn volumes() {
        for n in 1..=4 {
            assert_eq!(volume(&VPolytope::unit_cube(n)), int(1));
        }
        let seg = VPolytope::from_int_points(&[&[0, 0], &[3, 2]]).unwrap();
        assert!(volume(&seg).is_zero());
    }

    #[test]
    fn facets_of_square_and_simplex() {
        let h = facet_enumeration(&square()).unwrap();
        assert_eq!(h.facets.len(), 4);
        let h3 = facet_enumeration(&VPolytope::standard_simplex(3)).unwrap();
        assert_eq!(h3.facets.len(), 4);
        let seg = VPolytope::from_int_points(&[&[0, 0], &[3, 2]]).unwrap();
        assert_eq!(
            facet_enumeration(&seg),
            Err(GeometryError::NotFullDimensional { affine_dim: 1, dim: 2 })
        );
    }

    #[test]
    fn support_values() {
        assert_eq!(support_function(&square(), &Point::from_ints(&[1, 0])).unwrap(), int(1));
        let p = VPolytope::point(Point::from_ints(&[2, -3]));
        assert_eq!(support_function(&p, &Point::from_ints(&[1, 1])).unwrap(), int(-1));
        assert_eq!(
            support_function(&square(), &Point::origin(2)),
            Err(GeometryError::ZeroDirection)
        );
    }

    #[test]
    fn containment() {
        let big = scale(&square(), &int(2)).unwrap();
        assert!(big.contains_polytope(&square()).unwrap());
        assert!(!square().contains_polytope(&big).unwrap());
        let seg = VPolytope::from_int_points(&[&[0, 0], &[2, 0]]).unwrap();
        let inner = VPolytope::from_int_points(&[&[1, 0], &[2, 0]]).unwrap();
        assert!(seg.contains_polytope(&inner).unwrap());
        assert!(!inner.contains_polytope(&seg).unwrap());
    }
}
