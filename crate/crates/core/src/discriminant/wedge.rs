use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::{mixed_discriminant, DiscriminantError, SymMatrix};
use crate::rational::{format_rational, k_subsets, Rational};
use crate::report::InequalityReport;

/// Diagonal coefficients `Gamma_KK`, keyed by sorted index sets `K`.
pub type Gamma = BTreeMap<Vec<usize>, Rational>;

fn product(mu: &[Rational], idx: &[usize]) -> Rational {
    idx.iter().fold(Rational::one(), |acc, &i| acc * &mu[i])
}

fn complement(n: usize, idx: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !idx.contains(i)).collect()
}

/// Checks `sum_J mu_J Gamma_{J^c J^c} <= (sum_J mu_J)(sum_K Gamma_KK)` with
/// `J` over `k`-subsets, `K` over `(n-k)`-subsets and `mu` the diagonal of `a`.
pub fn check_pointwise_wedge_inequality(
    a: &SymMatrix,
    gamma: &Gamma,
    k: usize,
) -> Result<InequalityReport, DiscriminantError> {
    let n = a.dim();
    if !a.is_diagonal() {
        return Err(DiscriminantError::NotDiagonal(0));
    }
    if k > n {
        return Err(DiscriminantError::BadLevel { k, n });
    }
    let mu = a.diagonal_entries();
    if let Some(m) = mu.iter().find(|m| m.is_negative()) {
        return Err(DiscriminantError::Negative(format!("eigenvalue {}", format_rational(m))));
    }
    let mut gamma_sum = Rational::zero();
    for key in k_subsets(n, n - k) {
        let g = gamma.get(&key).ok_or_else(|| DiscriminantError::MissingGamma(key.clone()))?;
        if g.is_negative() {
            return Err(DiscriminantError::Negative(format!("Gamma{key:?} = {}", format_rational(g))));
        }
        gamma_sum += g;
    }
    let mut mu_sum = Rational::zero();
    let mut lhs = Rational::zero();
    for j in k_subsets(n, k) {
        let m = product(&mu, &j);
        if m.is_zero() {
            continue;
        }
        lhs += &m * &gamma[&complement(n, &j)];
        mu_sum += m;
    }
    let mus: Vec<String> = mu.iter().map(format_rational).collect();
    let digest = format!("n={n};k={k};mu={}", mus.join(","));
    Ok(InequalityReport::new("pointwise-wedge", lhs, mu_sum * gamma_sum, digest))
}

/// `Gamma_KK = D(C_1[K], ..., C_m[K])` over all `m`-subsets `K` of `0..n`,
/// where `m` is the number of matrices (`Gamma_{{}} = 1` when `m = 0`).
pub fn gamma_from_matrices(n: usize, cs: &[SymMatrix]) -> Result<Gamma, DiscriminantError> {
    if let Some(c) = cs.iter().find(|c| c.dim() != n) {
        return Err(DiscriminantError::DimensionMismatch { expected: n, found: c.dim() });
    }
    let mut out = Gamma::new();
    for key in k_subsets(n, cs.len()) {
        let value = if key.is_empty() {
            Rational::one()
        } else {
            let subs: Vec<(SymMatrix, usize)> = cs.iter().map(|c| (c.principal(&key), 1)).collect();
            mixed_discriminant(&subs)?
        };
        out.insert(key, value);
    }
    Ok(out)
}
