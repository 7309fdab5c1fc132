//! Relative inradius `r(K, L) = max { lambda >= 0 : lambda L + t in K }` as
//! an exact LP, with the inradius bound and inclusion scaling checks.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::{facet_enumeration, scale, translate, GeometryError, HPolytope, Point, VPolytope};
use crate::lp::{solve_lp, LinearProgram, LpError, LpSolution};
use crate::mixed_volume::{MixedVolumeEngine, MixedVolumeError};
use crate::rational::{int, Rational};
use crate::report::InequalityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InradiusError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    MixedVolume(#[from] MixedVolumeError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("L is a single point, so every multiple of it fits")]
    PointBody,
    #[error("{0} must be full-dimensional")]
    NotFullDimensional(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InradiusResult {
    pub lambda_star: Rational,
    /// `lambda_star * L + translate` lies in `K`.
    pub translate: Point,
    /// Optimality certificate of the underlying LP (variables `(lambda, t)`).
    pub lp: LinearProgram,
    pub solution: LpSolution,
}

impl InradiusResult {
    /// Exact re-check of the containment witness and the LP certificate.
    pub fn verify(&self, k: &VPolytope, l: &VPolytope) -> Result<bool, InradiusError> {
        let h = facet_enumeration(k)?;
        let placed = translate(&scale(l, &self.lambda_star)?, &self.translate)?;
        Ok(placed.vertices().iter().all(|v| h.contains(v)) && self.solution.certifies(&self.lp))
    }
}

fn inradius_lp(h: &HPolytope, l: &VPolytope) -> LinearProgram {
    let n = h.dim;
    let mut objective = vec![Rational::zero(); n + 1];
    objective[0] = Rational::one();
    let mut lp = LinearProgram::new(objective);
    for f in &h.facets {
        let a = f.normal_point();
        let mut row = vec![l.support(&a)];
        row.extend(a.coords().iter().cloned());
        lp.add_constraint(row, f.offset.clone());
    }
    let mut nonneg = vec![Rational::zero(); n + 1];
    nonneg[0] = -Rational::one();
    lp.add_constraint(nonneg, Rational::zero());
    lp
}

pub fn inradius(k: &VPolytope, l: &VPolytope) -> Result<InradiusResult, InradiusError> {
    if k.dim() != l.dim() {
        return Err(GeometryError::DimensionMismatch { expected: k.dim(), found: l.dim() }.into());
    }
    if !k.is_full_dimensional() {
        return Err(InradiusError::NotFullDimensional("K"));
    }
    if l.vertices().len() == 1 {
        return Err(InradiusError::PointBody);
    }
    let h = facet_enumeration(k)?;
    let lp = inradius_lp(&h, l);
    let solution = solve_lp(&lp)?;
    Ok(InradiusResult {
        lambda_star: solution.x[0].clone(),
        translate: Point::new(solution.x[1..].to_vec()),
        lp,
        solution,
    })
}

fn require_full(k: &VPolytope, l: &VPolytope) -> Result<(), InradiusError> {
    if !k.is_full_dimensional() {
        return Err(InradiusError::NotFullDimensional("K"));
    }
    if !l.is_full_dimensional() {
        return Err(InradiusError::NotFullDimensional("L"));
    }
    Ok(())
}

/// `vol(K) / (n V(K^{n-1}, L)) <= r(K, L)`.
pub fn check_diskant_bound(k: &VPolytope, l: &VPolytope) -> Result<InequalityReport, InradiusError> {
    require_full(k, l)?;
    let n = k.dim();
    let mut e = MixedVolumeEngine::new(&[k.clone(), l.clone()])?;
    let vol_k = e.volume(0)?;
    let mixed = e.mixed_volume(&[n - 1, 1])?;
    let lhs = vol_k / (int(n as i64) * mixed);
    let r = inradius(k, l)?;
    Ok(InequalityReport::new("diskant", lhs, r.lambda_star, format!("n={n}")).with_witness(r.translate))
}

/// Some translate of `L` lies in `s K` with `s = n V(L, K^{n-1}) / vol(K)`.
///
/// Reported as `1 <= r(sK, L)`; the witness is a translate `t` with
/// `L + t` in `sK`, found by a feasibility LP and re-checked vertex by vertex.
pub fn check_inclusion_scaling(k: &VPolytope, l: &VPolytope) -> Result<InequalityReport, InradiusError> {
    require_full(k, l)?;
    let n = k.dim();
    let mut e = MixedVolumeEngine::new(&[k.clone(), l.clone()])?;
    let s = int(n as i64) * e.mixed_volume(&[n - 1, 1])? / e.volume(0)?;
    let big = scale(k, &s)?;
    let r = inradius(&big, l)?;
    let digest = format!("n={n};s={s}");
    let mut report = InequalityReport::new("inclusion-scaling", Rational::one(), r.lambda_star.clone(), digest);
    if let Some(t) = inclusion_witness(&big, l)? {
        report = report.with_witness(t);
    } else {
        report.holds = false;
    }
    Ok(report)
}

/// A translate `t` with `L + t` inside `K`, re-verified exactly, or `None`.
pub fn inclusion_witness(k: &VPolytope, l: &VPolytope) -> Result<Option<Point>, InradiusError> {
    let h = facet_enumeration(k)?;
    let n = k.dim();
    let mut lp = LinearProgram::new(vec![Rational::zero(); n]);
    for f in &h.facets {
        let a = f.normal_point();
        lp.add_constraint(a.coords().to_vec(), &f.offset - l.support(&a));
    }
    let t = match solve_lp(&lp) {
        Ok(s) => Point::new(s.x),
        Err(LpError::Infeasible) => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let placed = translate(l, &t)?;
    Ok(placed.vertices().iter().all(|v| h.contains(v)).then_some(t))
}
