use super::{MixedVolumeError, MixedVolumeQuery};
use crate::geometry::{minkowski_sum, scale, volume, VPolytope};
use crate::multilinear::interpolate;
use crate::rational::Rational;

fn weighted_sum(bodies: &[VPolytope], weights: &[usize]) -> VPolytope {
    let mut acc: Option<VPolytope> = None;
    for (body, &w) in bodies.iter().zip(weights) {
        let term = scale(body, &Rational::from_integer(w.into())).expect("non-negative weight");
        acc = Some(match acc {
            None => term,
            Some(a) => minkowski_sum(&a, &term).expect("same dimension"),
        });
    }
    acc.expect("at least one body")
}

/// Recovers the mixed volume as a normalised coefficient of the polynomial
/// `t -> vol(t_1 K_1 + ... + t_r K_r)`, using only the public geometry
/// operations.
pub fn mixed_volume_by_interpolation(query: &MixedVolumeQuery) -> Result<Rational, MixedVolumeError> {
    let (bodies, mults) = query.grouped();
    let value = interpolate(query.dim(), &mults, |t| {
        Ok::<_, MixedVolumeError>(volume(&weighted_sum(&bodies, t)))
    })?;
    value.ok_or(MixedVolumeError::SingularInterpolation)
}
