//! Mixed volumes `V(K_1^{a_1}, ..., K_r^{a_r})` of rational polytopes.
//!
//! Two interchangeable methods are registered by name:
//!
//! * `polarization` (default) expands the multilinear form over sub-sums,
//!   `V(L_1..L_n) = 1/n! * sum_{S != {}} (-1)^{n-|S|} vol(sum_{i in S} L_i)`.
//!   Repeated bodies make many sub-sums coincide, so the sum runs over
//!   count vectors `c <= a` with binomial weights and every Minkowski
//!   sub-sum is computed once.
//! * `interpolation` evaluates `vol(t_1 K_1 + ... + t_r K_r)` on a grid,
//!   solves for the coefficients of the homogeneous polynomial and reads off
//!   the requested one. It only uses the public geometry operations and
//!   serves as an independent oracle.

mod engine;
mod interpolation;

use thiserror::Error;

use crate::geometry::VPolytope;
use crate::rational::Rational;

pub use engine::MixedVolumeEngine;
pub use interpolation::mixed_volume_by_interpolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MixedVolumeError {
    #[error("query has no bodies")]
    Empty,
    #[error("body dimension {found} differs from query dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("multiplicities sum to {found}, expected the dimension {expected}")]
    MultiplicitySum { expected: usize, found: usize },
    #[error("body index {0} out of range")]
    UnknownBody(usize),
    #[error("interpolation system singular on both grids")]
    SingularInterpolation,
    #[error("unknown mixed volume method {0:?}")]
    UnknownMethod(String),
}

/// A well-formed mixed volume argument list: bodies with multiplicities
/// summing to the common dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedVolumeQuery {
    dim: usize,
    entries: Vec<(VPolytope, usize)>,
}

impl MixedVolumeQuery {
    pub fn new(entries: Vec<(VPolytope, usize)>) -> Result<Self, MixedVolumeError> {
        let dim = entries.first().ok_or(MixedVolumeError::Empty)?.0.dim();
        if let Some((k, _)) = entries.iter().find(|(k, _)| k.dim() != dim) {
            return Err(MixedVolumeError::DimensionMismatch { expected: dim, found: k.dim() });
        }
        let total: usize = entries.iter().map(|(_, m)| m).sum();
        if total != dim {
            return Err(MixedVolumeError::MultiplicitySum { expected: dim, found: total });
        }
        Ok(Self { dim, entries })
    }

    /// `V(L_1, ..., L_n)` with every body taken once.
    pub fn from_bodies(bodies: Vec<VPolytope>) -> Result<Self, MixedVolumeError> {
        Self::new(bodies.into_iter().map(|b| (b, 1)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[(VPolytope, usize)] {
        &self.entries
    }

    /// Equal bodies merged, zero multiplicities dropped; ordered by first
    /// appearance.
    pub fn grouped(&self) -> (Vec<VPolytope>, Vec<usize>) {
        let mut bodies: Vec<VPolytope> = Vec::new();
        let mut mults: Vec<usize> = Vec::new();
        for (body, m) in &self.entries {
            if *m == 0 {
                continue;
            }
            match bodies.iter().position(|b| b == body) {
                Some(i) => mults[i] += m,
                None => {
                    bodies.push(body.clone());
                    mults.push(*m);
                }
            }
        }
        (bodies, mults)
    }
}

/// A mixed volume algorithm selectable by name.
pub trait MixedVolumeMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn compute(&self, query: &MixedVolumeQuery) -> Result<Rational, MixedVolumeError>;
}

pub struct Polarization;

impl MixedVolumeMethod for Polarization {
    fn name(&self) -> &'static str {
        "polarization"
    }

    fn compute(&self, query: &MixedVolumeQuery) -> Result<Rational, MixedVolumeError> {
        let (bodies, mults) = query.grouped();
        MixedVolumeEngine::new(&bodies)?.mixed_volume(&mults)
    }
}

pub struct Interpolation;

impl MixedVolumeMethod for Interpolation {
    fn name(&self) -> &'static str {
        "interpolation"
    }

    fn compute(&self, query: &MixedVolumeQuery) -> Result<Rational, MixedVolumeError> {
        mixed_volume_by_interpolation(query)
    }
}

/// Name-indexed set of mixed volume methods.
pub struct MethodRegistry {
    methods: Vec<Box<dyn MixedVolumeMethod>>,
}

impl Default for MethodRegistry {
    fn default() -> Self {
        let mut r = Self { methods: Vec::new() };
        r.register(Box::new(Polarization));
        r.register(Box::new(Interpolation));
        r
    }
}

impl MethodRegistry {
    pub fn register(&mut self, method: Box<dyn MixedVolumeMethod>) {
        self.methods.retain(|m| m.name() != method.name());
        self.methods.push(method);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MixedVolumeMethod, MixedVolumeError> {
        self.methods
            .iter()
            .find(|m| m.name() == name)
            .map(|m| m.as_ref())
            .ok_or_else(|| MixedVolumeError::UnknownMethod(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.methods.iter().map(|m| m.name()).collect()
    }
}

pub fn mixed_volume(query: &MixedVolumeQuery) -> Result<Rational, MixedVolumeError> {
    Polarization.compute(query)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{minkowski_sum, scale, translate, Point};
    use crate::rational::{int, ratio};

    fn seg(a: &[i64], b: &[i64]) -> VPolytope {
        VPolytope::from_int_points(&[a, b]).unwrap()
    }

    #[test]
    fn single_body_is_volume() {
        let k = VPolytope::from_int_points(&[&[0, 0, 0], &[2, 0, 0], &[0, 3, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let q = MixedVolumeQuery::new(vec![(k.clone(), 3)]).unwrap();
        assert_eq!(mixed_volume(&q).unwrap(), crate::geometry::volume(&k));
        assert_eq!(mixed_volume_by_interpolation(&q).unwrap(), crate::geometry::volume(&k));
    }

    #[test]
    fn orthogonal_segments() {
        let q = MixedVolumeQuery::from_bodies(vec![seg(&[0, 0], &[1, 0]), seg(&[0, 0], &[0, 1])]).unwrap();
        assert_eq!(mixed_volume(&q).unwrap(), ratio(1, 2));
        assert_eq!(mixed_volume_by_interpolation(&q).unwrap(), ratio(1, 2));
    }

    #[test]
    fn square_and_simplex() {
        let q = MixedVolumeQuery::from_bodies(vec![VPolytope::unit_cube(2), VPolytope::standard_simplex(2)])
            .unwrap();
        assert_eq!(mixed_volume(&q).unwrap(), int(1));
        let q = MixedVolumeQuery::from_bodies(vec![VPolytope::standard_simplex(2), VPolytope::standard_simplex(2)])
            .unwrap();
        assert_eq!(mixed_volume_by_interpolation(&q).unwrap(), ratio(1, 2));
    }

    #[test]
    fn malformed_queries() {
        assert_eq!(MixedVolumeQuery::new(vec![]), Err(MixedVolumeError::Empty));
        assert_eq!(
            MixedVolumeQuery::new(vec![(VPolytope::unit_cube(2), 1)]),
            Err(MixedVolumeError::MultiplicitySum { expected: 2, found: 1 })
        );
        assert_eq!(
            MixedVolumeQuery::new(vec![(VPolytope::unit_cube(2), 1), (VPolytope::unit_cube(3), 1)]),
            Err(MixedVolumeError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn additivity_homogeneity_translation() {
        let k = VPolytope::from_int_points(&[&[0, 0], &[2, 1], &[1, 3]]).unwrap();
        let k2 = seg(&[0, 0], &[1, -1]);
        let l = VPolytope::from_int_points(&[&[0, 0], &[1, 0], &[1, 1], &[-1, 2]]).unwrap();
        let v = |a: &VPolytope, b: &VPolytope| {
            mixed_volume(&MixedVolumeQuery::from_bodies(vec![a.clone(), b.clone()]).unwrap()).unwrap()
        };
        let sum = minkowski_sum(&k, &k2).unwrap();
        assert_eq!(v(&sum, &l), v(&k, &l) + v(&k2, &l));
        assert_eq!(v(&scale(&k, &int(3)).unwrap(), &l), v(&k, &l) * int(3));
        let moved = translate(&k, &Point::from_ints(&[5, -7])).unwrap();
        assert_eq!(v(&moved, &l), v(&k, &l));
        assert_eq!(v(&k, &l), v(&l, &k));
    }

    #[test]
    fn registry_lookup() {
        let reg = MethodRegistry::default();
        assert_eq!(reg.names(), vec!["polarization", "interpolation"]);
        assert!(matches!(reg.get("nope"), Err(MixedVolumeError::UnknownMethod(_))));
        let q = MixedVolumeQuery::from_bodies(vec![VPolytope::unit_cube(2), VPolytope::standard_simplex(2)])
            .unwrap();
        for name in reg.names() {
            assert_eq!(reg.get(name).unwrap().compute(&q).unwrap(), int(1));
        }
    }
}
