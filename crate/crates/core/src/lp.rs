//! Exact rational simplex method for `maximize c.x subject to A x <= b`
//! with free variables.
//!
//! Free variables are split as `x = x+ - x-`, each row gets a slack, rows
//! with negative right-hand side are negated and receive an artificial
//! variable for phase I. Bland's rule picks both the entering and leaving
//! variable, so the method terminates.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("constraint {row} has {found} coefficients, expected {expected}")]
    Malformed { row: usize, expected: usize, found: usize },
}

/// `maximize objective . x` subject to `row . x <= rhs` for each constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub objective: Vec<Rational>,
    pub constraints: Vec<(Vec<Rational>, Rational)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    /// An optimal basic solution.
    pub x: Vec<Rational>,
    /// Optimal dual multipliers, one per constraint.
    pub duals: Vec<Rational>,
}

impl LinearProgram {
    pub fn new(objective: Vec<Rational>) -> Self {
        Self { objective, constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn add_constraint(&mut self, row: Vec<Rational>, rhs: Rational) -> &mut Self {
        self.constraints.push((row, rhs));
        self
    }

    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|(row, b)| dot(row, x) <= *b)
    }
}

impl LpSolution {
    /// Checks primal feasibility, dual feasibility (`y >= 0`, `y^T A = c`)
    /// and equal objective values, which together prove optimality.
    pub fn certifies(&self, lp: &LinearProgram) -> bool {
        if !lp.is_feasible(&self.x) || dot(&lp.objective, &self.x) != self.value {
            return false;
        }
        if self.duals.len() != lp.constraints.len() || self.duals.iter().any(Signed::is_negative) {
            return false;
        }
        let n = lp.num_vars();
        let combo_ok = (0..n).all(|j| {
            let s: Rational = lp.constraints.iter().zip(&self.duals).map(|((row, _), y)| &row[j] * y).sum();
            s == lp.objective[j]
        });
        let dual_value: Rational = lp.constraints.iter().zip(&self.duals).map(|((_, b), y)| b * y).sum();
        combo_ok && dual_value == self.value
    }
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let z: Rational = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| !cost[b].is_zero())
            .map(|(i, &b)| &cost[b] * &self.rows[i][j])
            .sum();
        &cost[j] - z
    }

    /// Maximises `cost` over the columns allowed to enter.
    fn optimise(&mut self, cost: &[Rational], allowed: usize) -> Result<(), LpError> {
        loop {
            let Some(enter) = (0..allowed).find(|&j| !self.basis.contains(&j) && self.reduced_cost(cost, j).is_positive())
            else {
                return Ok(());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let (r, _) = leave.ok_or(LpError::Unbounded)?;
            self.pivot(r, enter);
        }
    }
}

pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    let n = lp.num_vars();
    let m = lp.constraints.len();
    for (row, (a, _)) in lp.constraints.iter().enumerate() {
        if a.len() != n {
            return Err(LpError::Malformed { row, expected: n, found: a.len() });
        }
    }
    // Columns: x+ (n), x- (n), slacks (m), artificials (one per negated row).
    let negated: Vec<bool> = lp.constraints.iter().map(|(_, b)| b.is_negative()).collect();
    let num_art = negated.iter().filter(|&&x| x).count();
    let real = 2 * n + m;
    let width = real + num_art;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut next_art = real;
    for (i, (a, b)) in lp.constraints.iter().enumerate() {
        let sign = if negated[i] { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            row[j] = &a[j] * &sign;
            row[n + j] = -&a[j] * &sign;
        }
        row[2 * n + i] = sign.clone();
        if negated[i] {
            row[next_art] = Rational::from_integer(1.into());
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(2 * n + i);
        }
        rows.push(row);
        rhs.push(b * &sign);
    }
    let mut t = Tableau { rows, rhs, basis };

    if num_art > 0 {
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(real) {
            *c = -Rational::from_integer(1.into());
        }
        t.optimise(&cost, width)?;
        let infeasibility: Rational = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(&b, _)| b >= real)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return Err(LpError::Infeasible);
        }
        // Drive zero-valued artificials out of the basis where possible;
        // rows where that fails are redundant and stay inert.
        for r in 0..m {
            if t.basis[r] >= real {
                if let Some(c) = (0..real).find(|&c| !t.rows[r][c].is_zero() && !t.basis.contains(&c)) {
                    t.pivot(r, c);
                }
            }
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for j in 0..n {
        cost[j] = lp.objective[j].clone();
        cost[n + j] = -&lp.objective[j];
    }
    t.optimise(&cost, real)?;

    let mut values = vec![Rational::zero(); width];
    for (r, &b) in t.basis.iter().enumerate() {
        values[b] = t.rhs[r].clone();
    }
    let x: Vec<Rational> = (0..n).map(|j| &values[j] - &values[n + j]).collect();
    let value = dot(&lp.objective, &x);
    // y_i = c_B B^{-1} applied to the original slack column, which is what
    // the current slack column of the tableau encodes.
    let duals: Vec<Rational> = (0..m).map(|i| -t.reduced_cost(&cost, 2 * n + i)).collect();
    Ok(LpSolution { value, x, duals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn lp(obj: &[i64], rows: &[(&[i64], Rational)]) -> LinearProgram {
        let mut p = LinearProgram::new(obj.iter().map(|&c| int(c)).collect());
        for (a, b) in rows {
            p.add_constraint(a.iter().map(|&c| int(c)).collect(), b.clone());
        }
        p
    }

    #[test]
    fn one_variable() {
        let p = lp(&[1], &[(&[1], int(3))]);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, int(3));
        assert!(s.certifies(&p));
    }

    #[test]
    fn square_with_cut() {
        let p = lp(&[1, 1], &[(&[1, 0], int(1)), (&[0, 1], int(1)), (&[1, 1], ratio(3, 2))]);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, ratio(3, 2));
        assert!(s.certifies(&p));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let p = lp(&[1], &[(&[1], int(1)), (&[-1], int(-2))]);
        assert_eq!(solve_lp(&p), Err(LpError::Infeasible));
        let p = lp(&[1], &[(&[-1], int(0))]);
        assert_eq!(solve_lp(&p), Err(LpError::Unbounded));
        let p = lp(&[1, 0], &[(&[1], int(0))]);
        assert!(matches!(solve_lp(&p), Err(LpError::Malformed { .. })));
    }

    #[test]
    fn negative_rhs_needs_phase_one() {
        // x >= 2, y >= 1, x + y <= 5, maximise 2x - y.
        let p = lp(&[2, -1], &[(&[-1, 0], int(-2)), (&[0, -1], int(-1)), (&[1, 1], int(5))]);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, int(7));
        assert_eq!(s.x, vec![int(4), int(1)]);
        assert!(s.certifies(&p));
    }

    #[test]
    fn degenerate_redundant_rows() {
        let p = lp(&[1, 1], &[(&[1, 0], int(0)), (&[1, 0], int(0)), (&[0, 1], int(2)), (&[-1, -1], int(-2))]);
        let s = solve_lp(&p).unwrap();
        assert_eq!(s.value, int(2));
        assert!(s.certifies(&p));
    }
}
