use num_bigint::BigInt;
use num_traits::One;

use super::{certify_psd, mixed_discriminant, DiscriminantError, SymMatrix};
use crate::rational::{binomial, factorial, pow, Rational};
use crate::report::InequalityReport;

fn validate(ms: &[(SymMatrix, usize)], n_mat: &SymMatrix) -> Result<usize, DiscriminantError> {
    let n = n_mat.dim();
    let mut total = 0;
    for (i, (m, a)) in ms.iter().enumerate() {
        if m.dim() != n {
            return Err(DiscriminantError::DimensionMismatch { expected: n, found: m.dim() });
        }
        if !certify_psd(m).is_psd {
            return Err(DiscriminantError::NotPsd(i));
        }
        total += a;
    }
    if total > n {
        return Err(DiscriminantError::MultiplicitySum { expected: n, found: total });
    }
    if !certify_psd(n_mat).is_pd {
        return Err(DiscriminantError::NotPd);
    }
    Ok(total)
}

fn digest(n: usize, ms: &[(SymMatrix, usize)]) -> String {
    let a: Vec<String> = ms.iter().map(|(_, a)| a.to_string()).collect();
    format!("n={n};a={}", a.join(","))
}

/// `D(M_1^{a_1}, ..., M_r^{a_r}, N^{n-|a|})` and the per-body factors
/// `D(M_i^{a_i}, N^{n-a_i})`.
fn sides(ms: &[(SymMatrix, usize)], n_mat: &SymMatrix, total: usize) -> Result<(Rational, Vec<Rational>), DiscriminantError> {
    let n = n_mat.dim();
    let mut joint: Vec<(SymMatrix, usize)> = ms.to_vec();
    joint.push((n_mat.clone(), n - total));
    let mixed = mixed_discriminant(&joint)?;
    let factors = ms
        .iter()
        .map(|(m, a)| mixed_discriminant(&[(m.clone(), *a), (n_mat.clone(), n - a)]))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((mixed, factors))
}

/// `C(n,a_k) D(M_1^{a_1}, ..., M_r^{a_r}, N^{n-|a|}) det(N)^{r-1}
///   <= prod_i C(n,a_i) D(M_i^{a_i}, N^{n-a_i})` for PSD `M_i` and PD `N`.
pub fn check_discriminant_bezout(
    ms: &[(SymMatrix, usize)],
    n_mat: &SymMatrix,
    k: usize,
) -> Result<InequalityReport, DiscriminantError> {
    let r = ms.len();
    if k == 0 || k > r {
        return Err(DiscriminantError::SelectorOutOfRange { k, r });
    }
    let total = validate(ms, n_mat)?;
    let n = n_mat.dim();
    let (mixed, factors) = sides(ms, n_mat, total)?;
    let lhs = Rational::from_integer(binomial(n, ms[k - 1].1)) * mixed * pow(&n_mat.det(), r - 1);
    let rhs = ms
        .iter()
        .zip(&factors)
        .fold(Rational::one(), |acc, ((_, a), f)| acc * Rational::from_integer(binomial(n, *a)) * f);
    Ok(InequalityReport::new("discriminant-bezout", lhs, rhs, format!("{};k={k}", digest(n, ms))))
}

/// `(n!)^{r-1} (n-|a|)! / prod_i (n-a_i)!`.
pub fn diagonal_constant(n: usize, mults: &[usize]) -> Rational {
    let total: usize = mults.iter().sum();
    let num = num_traits::pow(factorial(n), mults.len().saturating_sub(1)) * factorial(n - total);
    let den: BigInt = mults.iter().map(|&a| factorial(n - a)).product();
    Rational::new(num, den)
}

/// The sharper constant for diagonal `M_i`:
/// `D(M_1^{a_1}, ..., N^{n-|a|}) det(N)^{r-1} <= c prod_i D(M_i^{a_i}, N^{n-a_i})`.
pub fn check_discriminant_diagonal(
    ms: &[(SymMatrix, usize)],
    n_mat: &SymMatrix,
) -> Result<InequalityReport, DiscriminantError> {
    if let Some(i) = ms.iter().position(|(m, _)| !m.is_diagonal()) {
        return Err(DiscriminantError::NotDiagonal(i));
    }
    sharper_constant_report(ms, n_mat, "discriminant-diagonal")
}

/// Evaluates the sharper-constant inequality without the diagonal
/// precondition. Used by the exploratory search over general matrices.
pub(crate) fn sharper_constant_report(
    ms: &[(SymMatrix, usize)],
    n_mat: &SymMatrix,
    id: &str,
) -> Result<InequalityReport, DiscriminantError> {
    if ms.is_empty() {
        return Err(DiscriminantError::Empty);
    }
    let total = validate(ms, n_mat)?;
    let n = n_mat.dim();
    let r = ms.len();
    let (mixed, factors) = sides(ms, n_mat, total)?;
    let mults: Vec<usize> = ms.iter().map(|(_, a)| *a).collect();
    let lhs = mixed * pow(&n_mat.det(), r - 1);
    let rhs = factors.iter().fold(diagonal_constant(n, &mults), |acc, f| acc * f);
    Ok(InequalityReport::new(id, lhs, rhs, digest(n, ms)))
}
