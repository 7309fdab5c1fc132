//! Mixed-volume inequalities evaluated exactly on concrete bodies.

use num_traits::One;

use super::generate::Zonotope;
use super::HarnessError;
use crate::geometry::VPolytope;
use crate::mixed_volume::MixedVolumeEngine;
use crate::rational::{binomial, factorial, int, pow, Rational};
use crate::report::InequalityReport;

fn require_full(d: &VPolytope, name: &'static str) -> Result<(), HarnessError> {
    if d.is_full_dimensional() {
        Ok(())
    } else {
        Err(HarnessError::NotFullDimensional(name))
    }
}

fn mults_string(a: &[usize]) -> String {
    a.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Engine over `bodies ++ [d]` with `V(K_i, D^{n-1})` for every `i`.
fn with_reference(bodies: &[VPolytope], d: &VPolytope) -> Result<(MixedVolumeEngine, Vec<Rational>), HarnessError> {
    let mut all = bodies.to_vec();
    all.push(d.clone());
    let mut e = MixedVolumeEngine::new(&all)?;
    let n = e.dim();
    let r = bodies.len();
    let factors = (0..r).map(|i| e.mixed_volume_of(&[(i, 1), (r, n - 1)])).collect::<Result<Vec<_>, _>>()?;
    Ok((e, factors))
}

/// `C(n,a_k) V(K_1^{a_1}, ..., K_r^{a_r}, D^{n-|a|}) vol(D)^{r-1}
///   <= prod_i C(n,a_i) V(K_i^{a_i}, D^{n-a_i})`.
pub fn check_main_theorem(
    k: &[(VPolytope, usize)],
    d: &VPolytope,
    sel: usize,
) -> Result<InequalityReport, HarnessError> {
    let r = k.len();
    if sel == 0 || sel > r {
        return Err(HarnessError::Precondition(format!("selector k = {sel} outside 1..={r}")));
    }
    require_full(d, "D")?;
    let n = d.dim();
    let total: usize = k.iter().map(|(_, a)| a).sum();
    if total > n {
        return Err(HarnessError::Precondition(format!("multiplicities sum to {total} > {n}")));
    }
    let bodies: Vec<VPolytope> = k.iter().map(|(b, _)| b.clone()).collect();
    let mut all = bodies.clone();
    all.push(d.clone());
    let mut e = MixedVolumeEngine::new(&all)?;
    let mut joint: Vec<usize> = k.iter().map(|(_, a)| *a).collect();
    joint.push(n - total);
    let mixed = e.mixed_volume(&joint)?;
    let vol_d = e.volume(r)?;
    let lhs = Rational::from_integer(binomial(n, k[sel - 1].1)) * mixed * pow(&vol_d, r - 1);
    let mut rhs = Rational::one();
    for (i, (_, a)) in k.iter().enumerate() {
        rhs *= Rational::from_integer(binomial(n, *a)) * e.mixed_volume_of(&[(i, *a), (r, n - a)])?;
    }
    let a: Vec<usize> = k.iter().map(|(_, a)| *a).collect();
    Ok(InequalityReport::new("main-theorem", lhs, rhs, format!("n={n};a={};k={sel}", mults_string(&a))))
}

/// `V(K_1, ..., K_r, D^{n-r}) vol(D)^{r-1} <= n^{r-1} prod_i V(K_i, D^{n-1})`.
pub fn check_corollary(k: &[VPolytope], d: &VPolytope) -> Result<InequalityReport, HarnessError> {
    require_full(d, "D")?;
    let n = d.dim();
    let r = k.len();
    if r == 0 || r > n {
        return Err(HarnessError::Precondition(format!("need 1 <= r <= {n}, got r = {r}")));
    }
    let (mut e, factors) = with_reference(k, d)?;
    let mut joint = vec![1; r];
    joint.push(n - r);
    let lhs = e.mixed_volume(&joint)? * pow(&e.volume(r)?, r - 1);
    let rhs = factors.iter().fold(pow(&int(n as i64), r - 1), |acc, f| acc * f);
    Ok(InequalityReport::new("corollary", lhs, rhs, format!("n={n};r={r}")))
}

/// `vol(L) V(K^k, M_1, ..., M_{n-k}) <= C(n,k) V(K^k, L^{n-k}) V(L^k, M_1, ..., M_{n-k})`.
pub fn check_reverse_kt(
    k: &VPolytope,
    l: &VPolytope,
    m: &[VPolytope],
    level: usize,
) -> Result<InequalityReport, HarnessError> {
    require_full(l, "L")?;
    let n = l.dim();
    if level == 0 || level > n || m.len() != n - level {
        return Err(HarnessError::Precondition(format!(
            "need 1 <= k <= {n} and n - k bodies M, got k = {level} and {} bodies",
            m.len()
        )));
    }
    let mut all = vec![k.clone(), l.clone()];
    all.extend(m.iter().cloned());
    let mut e = MixedVolumeEngine::new(&all)?;
    let ms: Vec<(usize, usize)> = (0..m.len()).map(|j| (2 + j, 1)).collect();
    let mut km = vec![(0, level)];
    km.extend(ms.iter().copied());
    let mut lm = vec![(1, level)];
    lm.extend(ms.iter().copied());
    let v_km = e.mixed_volume_of(&km)?;
    let v_lm = e.mixed_volume_of(&lm)?;
    let v_kl = e.mixed_volume_of(&[(0, level), (1, n - level)])?;
    let vol_l = e.volume(1)?;
    let lhs = vol_l * v_km;
    let rhs = Rational::from_integer(binomial(n, level)) * v_kl * v_lm;
    Ok(InequalityReport::new("reverse-kt", lhs, rhs, format!("n={n};k={level}")))
}

/// `V(K_1, ..., K_r, Delta^{n-r}) vol(Delta)^{r-1} <= prod_i V(K_i, Delta^{n-1})`.
pub fn check_simplex_inequality(k: &[VPolytope]) -> Result<InequalityReport, HarnessError> {
    let Some(first) = k.first() else {
        return Err(HarnessError::Precondition("no bodies".into()));
    };
    let n = first.dim();
    let r = k.len();
    if r > n {
        return Err(HarnessError::Precondition(format!("need r <= {n}, got r = {r}")));
    }
    let delta = VPolytope::standard_simplex(n);
    let (mut e, factors) = with_reference(k, &delta)?;
    let mut joint = vec![1; r];
    joint.push(n - r);
    let vol = Rational::new(1.into(), factorial(n));
    let lhs = e.mixed_volume(&joint)? * pow(&vol, r - 1);
    let rhs = factors.iter().fold(Rational::one(), |acc, f| acc * f);
    Ok(InequalityReport::new("simplex", lhs, rhs, format!("n={n};r={r}")))
}

/// `r^r / r!`.
pub fn zonoid_constant(r: usize) -> Rational {
    Rational::new(num_traits::pow(num_bigint::BigInt::from(r), r), factorial(r))
}

/// `V(K_1, ..., K_r, D^{n-r}) vol(D)^{r-1} <= r^r / r! prod_i V(K_i, D^{n-1})`
/// for zonotopes `K_i`.
pub fn check_zonoid_constant(k: &[Zonotope], d: &VPolytope) -> Result<InequalityReport, HarnessError> {
    require_full(d, "D")?;
    let n = d.dim();
    let r = k.len();
    if r == 0 || r > n {
        return Err(HarnessError::Precondition(format!("need 1 <= r <= {n}, got r = {r}")));
    }
    let bodies: Vec<VPolytope> = k.iter().map(Zonotope::to_polytope).collect();
    let (mut e, factors) = with_reference(&bodies, d)?;
    let mut joint = vec![1; r];
    joint.push(n - r);
    let lhs = e.mixed_volume(&joint)? * pow(&e.volume(r)?, r - 1);
    let rhs = factors.iter().fold(zonoid_constant(r), |acc, f| acc * f);
    Ok(InequalityReport::new("zonoid", lhs, rhs, format!("n={n};r={r}")))
}

/// `V(K^r, D^{n-r}) vol(D)^{r-1} <= V(K, D^{n-1})^r`.
pub fn check_log_concavity_form(k: &VPolytope, d: &VPolytope, r: usize) -> Result<InequalityReport, HarnessError> {
    require_full(d, "D")?;
    let n = d.dim();
    if r == 0 || r > n {
        return Err(HarnessError::Precondition(format!("need 1 <= r <= {n}, got r = {r}")));
    }
    let mut e = MixedVolumeEngine::new(&[k.clone(), d.clone()])?;
    let lhs = e.mixed_volume(&[r, n - r])? * pow(&e.volume(1)?, r - 1);
    let rhs = pow(&e.mixed_volume(&[1, n - 1])?, r);
    Ok(InequalityReport::new("log-concavity", lhs, rhs, format!("n={n};r={r}")))
}

/// All `(a, k)` with `a` a composition into positive parts of some
/// `m <= n` and `1 <= k <= len(a)`, in a fixed order.
pub fn composition_selector_pairs(n: usize) -> Vec<(Vec<usize>, usize)> {
    fn compositions(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=m {
            for mut rest in compositions(m - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for m in 1..=n {
        for a in compositions(m) {
            for k in 1..=a.len() {
                out.push((a.clone(), k));
            }
        }
    }
    out
}
