//! Mixed discriminants of rational symmetric matrices, exact PSD
//! certification and the matrix forms of the Bézout-type inequalities.

mod checks;
pub mod io;
mod psd;
mod wedge;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::geometry::int::determinant;
use crate::multilinear::{interpolate, polarize};
use crate::rational::{format_rational, int, lcm_of_denominators, Rational};

pub(crate) use checks::sharper_constant_report;
pub use checks::{check_discriminant_bezout, check_discriminant_diagonal, diagonal_constant};
pub use psd::{certify_psd, PsdCertificate, PsdWitness};
pub use wedge::{check_pointwise_wedge_inequality, gamma_from_matrices, Gamma};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscriminantError {
    #[error("matrix has no rows")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, expected: usize, found: usize },
    #[error("matrix is not symmetric: entries ({i},{j}) and ({j},{i}) differ")]
    NotSymmetric { i: usize, j: usize },
    #[error("matrix dimension {found} differs from {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("multiplicities sum to {found}, expected {expected}")]
    MultiplicitySum { expected: usize, found: usize },
    #[error("interpolation system singular on both grids")]
    SingularInterpolation,
    #[error("argument {0} is not positive semidefinite")]
    NotPsd(usize),
    #[error("reference matrix is not positive definite")]
    NotPd,
    #[error("argument {0} is not diagonal")]
    NotDiagonal(usize),
    #[error("selected index k = {k} outside 1..={r}")]
    SelectorOutOfRange { k: usize, r: usize },
    #[error("negative eigenvalue or coefficient: {0}")]
    Negative(String),
    #[error("missing coefficient for index set {0:?}")]
    MissingGamma(Vec<usize>),
    #[error("k = {k} exceeds dimension {n}")]
    BadLevel { k: usize, n: usize },
}

/// `n x n` rational symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Vec<Rational>>,
}

impl SymMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self, DiscriminantError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(DiscriminantError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(DiscriminantError::NotSquare { row, expected: dim, found: r.len() });
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if rows[i][j] != rows[j][i] {
                    return Err(DiscriminantError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { dim, entries: rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, DiscriminantError> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![vec![Rational::zero(); dim]; dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); dim])
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, x) in d.iter().enumerate() {
            m.entries[i][i] = x.clone();
        }
        m
    }

    /// `v v^T`.
    pub fn outer(v: &[Rational]) -> Self {
        Self { dim: v.len(), entries: v.iter().map(|a| v.iter().map(|b| a * b).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.dim).map(|i| self.entries[i][i].clone()).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    pub fn add(&self, other: &SymMatrix) -> Result<SymMatrix, DiscriminantError> {
        if other.dim != self.dim {
            return Err(DiscriminantError::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self { dim: self.dim, entries })
    }

    pub fn scaled(&self, t: &Rational) -> SymMatrix {
        let entries = self.entries.iter().map(|r| r.iter().map(|x| x * t).collect()).collect();
        Self { dim: self.dim, entries }
    }

    /// Principal submatrix on the given (sorted) index set.
    pub fn principal(&self, idx: &[usize]) -> SymMatrix {
        let entries = idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        Self { dim: idx.len(), entries }
    }

    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.dim {
            if v[i].is_zero() {
                continue;
            }
            let row: Rational = self.entries[i].iter().zip(v).map(|(a, x)| a * x).sum();
            acc += &v[i] * row;
        }
        acc
    }

    /// Exact determinant: rows are cleared of denominators and the integer
    /// matrix goes through fraction-free elimination.
    pub fn det(&self) -> Rational {
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| {
                let l = lcm_of_denominators(r);
                scale *= &l;
                r.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
            })
            .collect();
        let d = determinant(rows).expect("BigInt arithmetic cannot overflow");
        Rational::new(d, scale)
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = r.iter().map(format_rational).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

fn grouped(entries: &[(SymMatrix, usize)]) -> Result<(usize, Vec<SymMatrix>, Vec<usize>), DiscriminantError> {
    let dim = entries.first().ok_or(DiscriminantError::Empty)?.0.dim();
    let mut mats: Vec<SymMatrix> = Vec::new();
    let mut mults: Vec<usize> = Vec::new();
    let mut total = 0;
    for (m, a) in entries {
        if m.dim() != dim {
            return Err(DiscriminantError::DimensionMismatch { expected: dim, found: m.dim() });
        }
        total += a;
        if *a == 0 {
            continue;
        }
        match mats.iter().position(|x| x == m) {
            Some(i) => mults[i] += a,
            None => {
                mats.push(m.clone());
                mults.push(*a);
            }
        }
    }
    if total != dim {
        return Err(DiscriminantError::MultiplicitySum { expected: dim, found: total });
    }
    Ok((dim, mats, mults))
}

fn combination(mats: &[SymMatrix], coeffs: &[usize]) -> SymMatrix {
    let mut acc = SymMatrix::zero(mats[0].dim());
    for (m, &c) in mats.iter().zip(coeffs) {
        if c > 0 {
            acc = acc.add(&m.scaled(&int(c as i64))).expect("same dimension");
        }
    }
    acc
}

/// `D(M_1^{a_1}, ..., M_r^{a_r})` by polarization of the determinant over
/// sub-sums, each distinct sub-sum evaluated once.
pub fn mixed_discriminant(entries: &[(SymMatrix, usize)]) -> Result<Rational, DiscriminantError> {
    let (dim, mats, mults) = grouped(entries)?;
    polarize(dim, &mults, |c| Ok(combination(&mats, c).det()))
}

/// Same value read off the interpolated polynomial `det(t_1 M_1 + ... + t_r M_r)`.
pub fn mixed_discriminant_by_interpolation(entries: &[(SymMatrix, usize)]) -> Result<Rational, DiscriminantError> {
    let (dim, mats, mults) = grouped(entries)?;
    interpolate(dim, &mults, |t| Ok(combination(&mats, t).det()))?.ok_or(DiscriminantError::SingularInterpolation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn rejects_malformed_matrices() {
        assert_eq!(SymMatrix::new(vec![]), Err(DiscriminantError::Empty));
        assert_eq!(
            SymMatrix::from_ints(&[&[1, 2], &[3, 4]]),
            Err(DiscriminantError::NotSymmetric { i: 0, j: 1 })
        );
        assert!(matches!(SymMatrix::from_ints(&[&[1, 2], &[2]]), Err(DiscriminantError::NotSquare { .. })));
    }

    #[test]
    fn determinant_with_fractions() {
        let m = SymMatrix::new(vec![vec![ratio(1, 2), ratio(1, 3)], vec![ratio(1, 3), int(2)]]).unwrap();
        assert_eq!(m.det(), ratio(1, 1) - ratio(1, 9));
        assert_eq!(SymMatrix::identity(4).det(), int(1));
    }

    #[test]
    fn diagonal_pair() {
        let a = SymMatrix::diagonal(&[int(2), int(3)]);
        let b = SymMatrix::diagonal(&[int(5), int(7)]);
        let d = mixed_discriminant(&[(a.clone(), 1), (b.clone(), 1)]).unwrap();
        assert_eq!(d, ratio(2 * 7 + 3 * 5, 2));
        assert_eq!(mixed_discriminant_by_interpolation(&[(a.clone(), 1), (b, 1)]).unwrap(), d);
        assert_eq!(mixed_discriminant(&[(a.clone(), 2)]).unwrap(), a.det());
    }

    #[test]
    fn identity_and_errors() {
        let i3 = SymMatrix::identity(3);
        assert_eq!(mixed_discriminant(&[(i3.clone(), 1), (i3.clone(), 1), (i3.clone(), 1)]).unwrap(), int(1));
        assert_eq!(
            mixed_discriminant(&[(i3.clone(), 2)]),
            Err(DiscriminantError::MultiplicitySum { expected: 3, found: 2 })
        );
        assert!(matches!(
            mixed_discriminant(&[(i3, 2), (SymMatrix::identity(2), 1)]),
            Err(DiscriminantError::DimensionMismatch { .. })
        ));
    }
}
