use num_traits::{One, Signed, Zero};

use super::SymMatrix;
use crate::linalg::solve;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdWitness {
    /// `P M P^T = L diag(pivots) L^T` with `P` the permutation taking row
    /// `i` to `perm[i]` and `L` unit lower triangular.
    Ldl { perm: Vec<usize>, lower: Vec<Vec<Rational>>, pivots: Vec<Rational> },
    /// `v^T M v = value < 0`.
    Negative { vector: Vec<Rational>, value: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsdCertificate {
    pub matrix: SymMatrix,
    pub is_psd: bool,
    pub is_pd: bool,
    pub witness: PsdWitness,
}

impl PsdCertificate {
    /// Re-checks the witness against the matrix from scratch.
    pub fn verify(&self) -> bool {
        let m = &self.matrix;
        let n = m.dim();
        match &self.witness {
            PsdWitness::Negative { vector, value } => {
                !self.is_psd && !self.is_pd && value.is_negative() && m.quadratic_form(vector) == *value
            }
            PsdWitness::Ldl { perm, lower, pivots } => {
                let mut sorted = perm.clone();
                sorted.sort_unstable();
                if sorted != (0..n).collect::<Vec<_>>() || pivots.len() != n || lower.len() != n {
                    return false;
                }
                if pivots.iter().any(Signed::is_negative) || !self.is_psd {
                    return false;
                }
                if self.is_pd != pivots.iter().all(Signed::is_positive) {
                    return false;
                }
                for i in 0..n {
                    if !lower[i][i].is_one() || lower[i][i + 1..].iter().any(|x| !x.is_zero()) {
                        return false;
                    }
                    for j in 0..=i {
                        let s: Rational = (0..=j).map(|k| &lower[i][k] * &pivots[k] * &lower[j][k]).sum();
                        if s != *m.get(perm[i], perm[j]) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }
}

/// Decides positive (semi)definiteness exactly by symmetric elimination with
/// diagonal pivoting. A failure yields an explicit vector with negative
/// quadratic form value.
pub fn certify_psd(m: &SymMatrix) -> PsdCertificate {
    let n = m.dim();
    let mut s: Vec<Vec<Rational>> = m.rows().to_vec();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut pivots: Vec<Rational> = Vec::with_capacity(n);
    // multipliers[i][k] is the step-k multiplier of original index i.
    let mut multipliers: Vec<Vec<Rational>> = vec![Vec::new(); n];

    let negative = |y: Vec<(usize, Rational)>, order: &[usize]| {
        let vector = lift(m, order, y);
        let value = m.quadratic_form(&vector);
        debug_assert!(value.is_negative());
        PsdCertificate { matrix: m.clone(), is_psd: false, is_pd: false, witness: PsdWitness::Negative { vector, value } }
    };

    while !remaining.is_empty() {
        if let Some(&i) = remaining.iter().find(|&&i| s[i][i].is_negative()) {
            return negative(vec![(i, Rational::one())], &order);
        }
        let Some(pos) = remaining.iter().position(|&i| s[i][i].is_positive()) else {
            // Zero diagonal: any non-zero off-diagonal entry gives a 2x2
            // indefinite block, otherwise the rest is identically zero.
            for (a, &i) in remaining.iter().enumerate() {
                for &j in &remaining[a + 1..] {
                    if !s[i][j].is_zero() {
                        let sign = if s[i][j].is_positive() { -Rational::one() } else { Rational::one() };
                        return negative(vec![(i, Rational::one()), (j, sign)], &order);
                    }
                }
            }
            for &i in &remaining {
                order.push(i);
                pivots.push(Rational::zero());
                for &j in &remaining {
                    multipliers[j].push(if i == j { Rational::one() } else { Rational::zero() });
                }
            }
            remaining.clear();
            break;
        };
        let p = remaining.remove(pos);
        let d = s[p][p].clone();
        multipliers[p].push(Rational::one());
        let ls: Vec<Rational> = remaining.iter().map(|&i| &s[i][p] / &d).collect();
        for (&i, l) in remaining.iter().zip(&ls) {
            multipliers[i].push(l.clone());
        }
        for (a, &i) in remaining.iter().enumerate() {
            if ls[a].is_zero() {
                continue;
            }
            for &j in &remaining {
                let delta = &ls[a] * &s[p][j];
                s[i][j] -= delta;
            }
        }
        order.push(p);
        pivots.push(d);
    }

    // multipliers[i][k] holds L[position of i][k] for k < position, then 1.
    let mut lower = vec![vec![Rational::zero(); n]; n];
    for (row, &i) in order.iter().enumerate() {
        for (k, l) in multipliers[i].iter().enumerate().take(row + 1) {
            lower[row][k] = l.clone();
        }
    }
    let is_pd = pivots.iter().all(Signed::is_positive);
    PsdCertificate {
        matrix: m.clone(),
        is_psd: true,
        is_pd,
        witness: PsdWitness::Ldl { perm: order, lower, pivots },
    }
}

/// Maps a vector `y` on the remaining indices (with negative Schur
/// complement form) to a full vector with the same form value on `m`.
fn lift(m: &SymMatrix, eliminated: &[usize], y: Vec<(usize, Rational)>) -> Vec<Rational> {
    let n = m.dim();
    let mut v = vec![Rational::zero(); n];
    for (i, x) in &y {
        v[*i] = x.clone();
    }
    if eliminated.is_empty() {
        return v;
    }
    // v_E solves M_EE v_E = -M_ER y.
    let a: Vec<Vec<Rational>> = eliminated
        .iter()
        .map(|&i| eliminated.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    let b: Vec<Rational> = eliminated
        .iter()
        .map(|&i| -y.iter().map(|(j, x)| m.get(i, *j) * x).sum::<Rational>())
        .collect();
    let ve = solve(a, b).expect("eliminated block is positive definite");
    for (&i, x) in eliminated.iter().zip(ve) {
        v[i] = x;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn classifies_small_cases() {
        let c = certify_psd(&SymMatrix::identity(3));
        assert!(c.is_pd && c.is_psd && c.verify());

        let c = certify_psd(&SymMatrix::diagonal(&[int(1), int(0)]));
        assert!(c.is_psd && !c.is_pd && c.verify());

        let c = certify_psd(&SymMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap());
        assert!(!c.is_psd && c.verify());
        assert_eq!(c.witness, PsdWitness::Negative { vector: vec![int(1), int(-1)], value: int(-2) });
    }

    #[test]
    fn negative_schur_complement_is_lifted() {
        // Positive diagonal, but det < 0.
        let m = SymMatrix::from_ints(&[&[1, 2, 0], &[2, 1, 0], &[0, 0, 1]]).unwrap();
        let c = certify_psd(&m);
        assert!(!c.is_psd && c.verify());
        // Rank-one PSD with zero pivots after the first step.
        let v = vec![int(1), int(-2), int(3)];
        let c = certify_psd(&SymMatrix::outer(&v));
        assert!(c.is_psd && !c.is_pd && c.verify());
    }
}
