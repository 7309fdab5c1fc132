//! Coefficient extraction for homogeneous polynomials `f(t_1, ..., t_r)` of
//! degree `n`, shared by mixed volumes (`f = vol(sum t_i K_i)`) and mixed
//! discriminants (`f = det(sum t_i M_i)`).
//!
//! Both routines return the normalised coefficient
//! `coeff of t^a / multinomial(n; a)`, i.e. the symmetric multilinear form
//! evaluated at `(X_1^{a_1}, ..., X_r^{a_r})`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::linalg::solve;
use crate::rational::{binomial, factorial, multinomial, weak_compositions, Rational};

/// Signed inclusion-exclusion over count vectors `0 != c <= a`:
/// `1/n! * sum (-1)^{n-|c|} prod C(a_j, c_j) f(c)`.
pub fn polarize<E>(
    dim: usize,
    mults: &[usize],
    mut eval: impl FnMut(&[usize]) -> Result<Rational, E>,
) -> Result<Rational, E> {
    let mut acc = Rational::zero();
    let mut counts = vec![0usize; mults.len()];
    loop {
        // Advance the mixed-radix counter over 0 <= c <= a.
        let mut i = 0;
        while i < counts.len() {
            if counts[i] < mults[i] {
                counts[i] += 1;
                break;
            }
            counts[i] = 0;
            i += 1;
        }
        if i == counts.len() {
            break;
        }
        let size: usize = counts.iter().sum();
        let weight: BigInt = counts.iter().zip(mults).map(|(&c, &m)| binomial(m, c)).product();
        let term = eval(&counts)? * Rational::from_integer(weight);
        if (dim - size) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc / Rational::from_integer(factorial(dim)))
}

/// Evaluation grids tried in order: `t_j = e_j + 1`, then `t_j = 2 e_j + 1`.
const GRIDS: [fn(usize) -> usize; 2] = [|e| e + 1, |e| 2 * e + 1];

/// Recovers every coefficient of `f` from its values on an integer grid by
/// an exact linear solve and returns the normalised one for `mults`.
/// `Ok(None)` when both grids give a singular system.
pub fn interpolate<E>(
    dim: usize,
    mults: &[usize],
    mut eval: impl FnMut(&[usize]) -> Result<Rational, E>,
) -> Result<Option<Rational>, E> {
    let exponents = weak_compositions(dim, mults.len());
    let Some(target) = exponents.iter().position(|e| e == mults) else {
        return Ok(None);
    };
    for grid in GRIDS {
        let points: Vec<Vec<usize>> = exponents.iter().map(|e| e.iter().map(|&x| grid(x)).collect()).collect();
        let matrix: Vec<Vec<Rational>> = points
            .iter()
            .map(|t| {
                exponents
                    .iter()
                    .map(|f| {
                        let v: BigInt = t
                            .iter()
                            .zip(f)
                            .map(|(&ti, &fi)| num_traits::pow(BigInt::from(ti), fi))
                            .product();
                        Rational::from_integer(v)
                    })
                    .collect()
            })
            .collect();
        let values = points.iter().map(|t| eval(t)).collect::<Result<Vec<_>, E>>()?;
        if let Some(coeffs) = solve(matrix, values) {
            return Ok(Some(&coeffs[target] / Rational::from_integer(multinomial(mults))));
        }
    }
    Ok(None)
}
