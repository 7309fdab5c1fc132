//! Integer kernels used by the hull and volume code.
//!
//! Geometry on rational points is done after clearing denominators, so the
//! inner loops only ever see integers. Every routine is generic over
//! [`Int`]: the machine `i128` path reports [`Overflow`] instead of wrapping
//! and callers retry with `BigInt`.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub type IntResult<T> = Result<T, Overflow>;

pub trait Int: Clone + Ord + Eq + Hash + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn add(&self, o: &Self) -> IntResult<Self>;
    fn sub(&self, o: &Self) -> IntResult<Self>;
    fn mul(&self, o: &Self) -> IntResult<Self>;
    /// Division known to be exact (Bareiss steps, gcd normalisation).
    fn div_exact(&self, o: &Self) -> IntResult<Self>;
    fn neg(&self) -> IntResult<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn signum(&self) -> i8;

    fn is_zero(&self) -> bool {
        self.signum() == 0
    }
    fn abs(&self) -> IntResult<Self> {
        if self.signum() < 0 {
            self.neg()
        } else {
            Ok(self.clone())
        }
    }
}

impl Int for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn add(&self, o: &Self) -> IntResult<Self> {
        self.checked_add(*o).ok_or(Overflow)
    }
    fn sub(&self, o: &Self) -> IntResult<Self> {
        self.checked_sub(*o).ok_or(Overflow)
    }
    fn mul(&self, o: &Self) -> IntResult<Self> {
        self.checked_mul(*o).ok_or(Overflow)
    }
    fn div_exact(&self, o: &Self) -> IntResult<Self> {
        self.checked_div(*o).ok_or(Overflow)
    }
    fn neg(&self) -> IntResult<Self> {
        self.checked_neg().ok_or(Overflow)
    }
    fn gcd(&self, o: &Self) -> Self {
        // gcd of i128::MIN overflows; unsigned arithmetic avoids it.
        let g = self.unsigned_abs().gcd(&o.unsigned_abs());
        i128::try_from(g).unwrap_or(1)
    }
    fn signum(&self) -> i8 {
        i128::signum(*self) as i8
    }
}

impl Int for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn add(&self, o: &Self) -> IntResult<Self> {
        Ok(self + o)
    }
    fn sub(&self, o: &Self) -> IntResult<Self> {
        Ok(self - o)
    }
    fn mul(&self, o: &Self) -> IntResult<Self> {
        Ok(self * o)
    }
    fn div_exact(&self, o: &Self) -> IntResult<Self> {
        Ok(self / o)
    }
    fn neg(&self) -> IntResult<Self> {
        Ok(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn signum(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

pub fn dot<T: Int>(a: &[T], b: &[T]) -> IntResult<T> {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc.add(&x.mul(y)?)?;
    }
    Ok(acc)
}

pub fn sub_vec<T: Int>(a: &[T], b: &[T]) -> IntResult<Vec<T>> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn add_vec<T: Int>(a: &[T], b: &[T]) -> IntResult<Vec<T>> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn scale_vec<T: Int>(a: &[T], s: &T) -> IntResult<Vec<T>> {
    a.iter().map(|x| x.mul(s)).collect()
}

/// Divides the vector by the gcd of its entries (no-op for the zero vector).
pub fn make_primitive<T: Int>(v: &mut [T]) -> IntResult<T> {
    let g = v.iter().fold(T::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g != T::one() {
        for x in v.iter_mut() {
            *x = x.div_exact(&g)?;
        }
    }
    Ok(g)
}

/// Fraction-free (Bareiss) determinant of a square matrix given by rows.
pub fn determinant<T: Int>(mut m: Vec<Vec<T>>) -> IntResult<T> {
    let n = m.len();
    if n == 0 {
        return Ok(T::one());
    }
    let mut sign_flip = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k])?.sub(&m[i][k].mul(&m[k][j])?)?;
                m[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign_flip {
        d.neg()
    } else {
        Ok(d)
    }
}

/// Incrementally built row-echelon basis of integer vectors; used to pick
/// linearly independent subsets exactly.
#[derive(Debug, Clone)]
pub struct EchelonBasis<T: Int> {
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Int> Default for EchelonBasis<T> {
    fn default() -> Self {
        Self { rows: Vec::new() }
    }
}

impl<T: Int> EchelonBasis<T> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: &[T]) -> IntResult<bool> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let a = row[*pivot].clone();
            let b = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                *x = x.mul(&a)?.sub(&r.mul(&b)?)?;
            }
            make_primitive(&mut v)?;
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }

    /// Pivot columns in insertion order; projecting onto them is injective on
    /// the spanned subspace.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

/// Indices of a maximal affinely independent subset of `points[idx]`
/// (greedy in the given order).
pub fn affine_basis<T: Int>(points: &[Vec<T>], idx: &[usize]) -> IntResult<(Vec<usize>, EchelonBasis<T>)> {
    let mut basis = EchelonBasis::default();
    let Some(&first) = idx.first() else {
        return Ok((Vec::new(), basis));
    };
    let dim = points[first].len();
    let mut chosen = vec![first];
    for &i in &idx[1..] {
        if basis.rank() == dim {
            break;
        }
        let diff = sub_vec(&points[i], &points[first])?;
        if basis.insert(&diff)? {
            chosen.push(i);
        }
    }
    Ok((chosen, basis))
}

/// Normal of the hyperplane through `d` affinely independent points in
/// dimension `d` (generalised cross product of the difference vectors).
pub fn hyperplane_normal<T: Int>(points: &[&[T]]) -> IntResult<Vec<T>> {
    let d = points[0].len();
    let diffs: Vec<Vec<T>> = points[1..]
        .iter()
        .map(|p| sub_vec(p, points[0]))
        .collect::<IntResult<_>>()?;
    let mut normal = Vec::with_capacity(d);
    for col in 0..d {
        let minor: Vec<Vec<T>> = diffs
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let det = determinant(minor)?;
        normal.push(if col % 2 == 0 { det } else { det.neg()? });
    }
    Ok(normal)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m: Vec<Vec<i128>> = vec![vec![2, -1, 0], vec![1, 3, 4], vec![0, 5, -2]];
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) = -52 - 2
        assert_eq!(determinant(m).unwrap(), -54);
        let singular: Vec<Vec<i128>> = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(determinant(singular).unwrap(), 0);
        let swap: Vec<Vec<i128>> = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(determinant(swap).unwrap(), -1);
    }

    #[test]
    fn i128_overflow_is_reported() {
        let big = i128::MAX / 2 + 1;
        assert_eq!(Int::mul(&big, &2i128), Err(Overflow));
    }

    #[test]
    fn normal_is_orthogonal_to_differences() {
        let pts: Vec<Vec<i128>> = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let refs: Vec<&[i128]> = pts.iter().map(|p| p.as_slice()).collect();
        let n = hyperplane_normal(&refs).unwrap();
        for p in &pts[1..] {
            let d = sub_vec(p, &pts[0]).unwrap();
            assert_eq!(dot(&n, &d).unwrap(), 0);
        }
        assert!(n.iter().all(|x| x.unsigned_abs() == 1));
    }
}
