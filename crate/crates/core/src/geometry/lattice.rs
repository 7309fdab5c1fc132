use num_bigint::BigInt;
use num_traits::One;

use super::hull::{self, with_fallback};
use super::int::Int;
use super::{Facet, Point};
use crate::rational::{lcm_of_denominators, Rational};

/// A rational point set with denominators cleared: `points[i] / scale` are
/// the original coordinates.
#[derive(Debug, Clone)]
pub struct LatticeSet {
    pub scale: BigInt,
    pub points: Vec<Vec<BigInt>>,
}

impl LatticeSet {
    pub fn from_points(points: &[Point]) -> Self {
        let scale = lcm_of_denominators(points.iter().flat_map(|p| p.coords()));
        Self::with_scale(points, scale)
    }

    /// Clears denominators with a caller-chosen common multiple.
    pub fn with_scale(points: &[Point], scale: BigInt) -> Self {
        let s = Rational::from_integer(scale.clone());
        let points = points
            .iter()
            .map(|p| {
                p.coords()
                    .iter()
                    .map(|c| {
                        let v = c * &s;
                        debug_assert!(v.is_integer());
                        v.to_integer()
                    })
                    .collect()
            })
            .collect();
        Self { scale, points }
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    pub fn hull_vertices(&self) -> Vec<usize> {
        with_fallback(
            &self.points,
            |p| hull::hull(p).map(|h| h.vertices),
            |p| hull::hull(p).map(|h| h.vertices),
        )
    }

    pub fn affine_dim(&self) -> usize {
        with_fallback(
            &self.points,
            |p| super::int::affine_basis(p, &(0..p.len()).collect::<Vec<_>>()).map(|(b, _)| b.len() - 1),
            |p| super::int::affine_basis(p, &(0..p.len()).collect::<Vec<_>>()).map(|(b, _)| b.len() - 1),
        )
    }

    pub fn volume(&self) -> Rational {
        let raw = with_fallback(&self.points, hull::volume, hull::volume);
        raw / Rational::from_integer(num_traits::pow(self.scale.clone(), self.dim()))
    }

    /// Facets of a full-dimensional set, in original coordinates.
    pub fn facets(&self) -> Vec<Facet> {
        let raw: Vec<(Vec<BigInt>, BigInt)> = with_fallback(
            &self.points,
            |p| hull::hull(p).map(|h| to_big_facets(&h.facets)),
            |p| hull::hull(p).map(|h| to_big_facets(&h.facets)),
        );
        let s = Rational::from_integer(self.scale.clone());
        raw.into_iter()
            .map(|(normal, offset)| Facet {
                normal,
                offset: if self.scale.is_one() {
                    Rational::from_integer(offset)
                } else {
                    Rational::from_integer(offset) / &s
                },
            })
            .collect()
    }
}

fn to_big_facets<T: Int>(facets: &[hull::IntFacet<T>]) -> Vec<(Vec<BigInt>, BigInt)> {
    facets
        .iter()
        .map(|f| (f.normal.iter().map(Int::to_big).collect(), f.offset.to_big()))
        .collect()
}
