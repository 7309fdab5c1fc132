use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use super::MixedVolumeError;
use crate::geometry::hull::{hull, volume_of_hull, IntHull};
use crate::geometry::int::{add_vec, scale_vec, Int, IntResult};
use crate::geometry::{LatticeSet, Point, VPolytope};
use crate::rational::{lcm_of_denominators, Rational};

/// Memoising evaluator of `vol(c_1 K_1 + ... + c_r K_r)` for a fixed list of
/// bodies, and of mixed volumes built from those volumes.
///
/// All bodies share one denominator so sums stay on a common integer lattice.
/// Work starts in `i128` and restarts in `BigInt` on the first overflow.
pub struct MixedVolumeEngine {
    dim: usize,
    scale: BigInt,
    bodies: Vec<Vec<Vec<BigInt>>>,
    state: State,
}

enum State {
    Small(Cache<i128>),
    Big(Cache<BigInt>),
}

struct SumEntry<T> {
    points: Vec<Vec<T>>,
    hull: IntHull<T>,
}

struct Cache<T> {
    dim: usize,
    bodies: Vec<Vec<Vec<T>>>,
    sums: HashMap<Vec<usize>, Arc<SumEntry<T>>>,
    volumes: HashMap<Vec<usize>, Rational>,
}

trait VolumeSource: Send {
    fn volume(&mut self, coeffs: &[usize]) -> IntResult<Rational>;
}

impl<T: Int> Cache<T> {
    fn new(dim: usize, bodies: Vec<Vec<Vec<T>>>) -> Self {
        Self { dim, bodies, sums: HashMap::new(), volumes: HashMap::new() }
    }

    fn sum(&mut self, coeffs: &[usize]) -> IntResult<Arc<SumEntry<T>>> {
        if let Some(entry) = self.sums.get(coeffs) {
            return Ok(entry.clone());
        }
        let Some(last) = coeffs.iter().rposition(|&c| c > 0) else {
            let points = vec![vec![T::zero(); self.dim]];
            let hull = hull(&points)?;
            return Ok(Arc::new(SumEntry { points, hull }));
        };
        let factor = T::from_big(&BigInt::from(coeffs[last])).ok_or(crate::geometry::int::Overflow)?;
        let scaled: Vec<Vec<T>> =
            self.bodies[last].iter().map(|v| scale_vec(v, &factor)).collect::<IntResult<_>>()?;
        let mut rest = coeffs.to_vec();
        rest[last] = 0;
        let candidates = if rest.iter().all(|&c| c == 0) {
            scaled
        } else {
            let base = self.sum(&rest)?;
            let mut out = Vec::with_capacity(base.points.len() * scaled.len());
            for u in &base.points {
                for w in &scaled {
                    out.push(add_vec(u, w)?);
                }
            }
            out
        };
        let h = hull(&candidates)?;
        let entry = Arc::new(compact(candidates, h));
        self.sums.insert(coeffs.to_vec(), entry.clone());
        Ok(entry)
    }
}

impl<T: Int> VolumeSource for Cache<T> {
    fn volume(&mut self, coeffs: &[usize]) -> IntResult<Rational> {
        if let Some(v) = self.volumes.get(coeffs) {
            return Ok(v.clone());
        }
        let entry = self.sum(coeffs)?;
        let v = volume_of_hull(&entry.points, &entry.hull)?;
        self.volumes.insert(coeffs.to_vec(), v.clone());
        Ok(v)
    }
}

/// Keeps only the hull vertices and renumbers the hull accordingly.
fn compact<T: Int>(candidates: Vec<Vec<T>>, mut h: IntHull<T>) -> SumEntry<T> {
    let mut new_index = vec![usize::MAX; candidates.len()];
    for (k, &v) in h.vertices.iter().enumerate() {
        new_index[v] = k;
    }
    let mut slots: Vec<Option<Vec<T>>> = candidates.into_iter().map(Some).collect();
    let points: Vec<Vec<T>> = h.vertices.iter().map(|&v| slots[v].take().unwrap()).collect();
    for f in &mut h.facets {
        for v in &mut f.vertices {
            *v = new_index[*v];
        }
    }
    h.vertices = (0..points.len()).collect();
    SumEntry { points, hull: h }
}

impl MixedVolumeEngine {
    pub fn new(bodies: &[VPolytope]) -> Result<Self, MixedVolumeError> {
        let dim = bodies.first().ok_or(MixedVolumeError::Empty)?.dim();
        if let Some(b) = bodies.iter().find(|b| b.dim() != dim) {
            return Err(MixedVolumeError::DimensionMismatch { expected: dim, found: b.dim() });
        }
        let scale = lcm_of_denominators(bodies.iter().flat_map(|b| b.vertices()).flat_map(Point::coords));
        let big: Vec<Vec<Vec<BigInt>>> = bodies
            .iter()
            .map(|b| LatticeSet::with_scale(b.vertices(), scale.clone()).points)
            .collect();
        let small: Option<Vec<Vec<Vec<i128>>>> = big
            .iter()
            .map(|b| b.iter().map(|p| p.iter().map(<i128 as Int>::from_big).collect()).collect())
            .collect();
        let state = match small {
            Some(s) => State::Small(Cache::new(dim, s)),
            None => State::Big(Cache::new(dim, big.clone())),
        };
        Ok(Self { dim, scale, bodies: big, state })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_bodies(&self) -> usize {
        self.bodies.len()
    }

    fn source(&mut self) -> &mut dyn VolumeSource {
        match &mut self.state {
            State::Small(c) => c,
            State::Big(c) => c,
        }
    }

    /// `vol(c_1 K_1 + ... + c_r K_r)` for non-negative integer coefficients.
    pub fn combination_volume(&mut self, coeffs: &[usize]) -> Result<Rational, MixedVolumeError> {
        if coeffs.len() != self.bodies.len() {
            return Err(MixedVolumeError::UnknownBody(coeffs.len().max(self.bodies.len()) - 1));
        }
        let raw = loop {
            match self.source().volume(coeffs) {
                Ok(v) => break v,
                Err(_) => self.state = State::Big(Cache::new(self.dim, self.bodies.clone())),
            }
        };
        Ok(raw / Rational::from_integer(num_traits::pow(self.scale.clone(), self.dim)))
    }

    /// `V(K_1^{m_1}, ..., K_r^{m_r})`; `mults` has one entry per body and sums
    /// to the dimension.
    pub fn mixed_volume(&mut self, mults: &[usize]) -> Result<Rational, MixedVolumeError> {
        if mults.len() != self.bodies.len() {
            return Err(MixedVolumeError::UnknownBody(mults.len().max(self.bodies.len()) - 1));
        }
        let total: usize = mults.iter().sum();
        if total != self.dim {
            return Err(MixedVolumeError::MultiplicitySum { expected: self.dim, found: total });
        }
        crate::multilinear::polarize(self.dim, mults, |c| self.combination_volume(c))
    }

    /// Mixed volume of an explicit argument list `(body index, multiplicity)`.
    pub fn mixed_volume_of(&mut self, args: &[(usize, usize)]) -> Result<Rational, MixedVolumeError> {
        let mut mults = vec![0usize; self.bodies.len()];
        for &(b, m) in args {
            *mults.get_mut(b).ok_or(MixedVolumeError::UnknownBody(b))? += m;
        }
        self.mixed_volume(&mults)
    }

    /// Volume of a single body.
    pub fn volume(&mut self, body: usize) -> Result<Rational, MixedVolumeError> {
        self.mixed_volume_of(&[(body, self.dim)])
    }
}
