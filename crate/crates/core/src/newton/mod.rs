//! Laurent polynomial systems, Newton polytopes and solution-count bounds:
//! the BKK count `n! V(P_1, ..., P_n)`, the classical Bézout product
//! `prod n! V(P_i, Delta^{n-1})` and the grouped Bézout-type bound.

mod parser;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::geometry::{convex_hull, Point, VPolytope};
use crate::mixed_volume::{MixedVolumeEngine, MixedVolumeError};
use crate::rational::{binomial, factorial, format_rational, pow, Rational};
use crate::report::InequalityReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NewtonError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: variable x{index} outside x1..x{num_vars}")]
    VariableOutOfRange { line: usize, column: usize, index: usize, num_vars: usize },
    #[error("line {line}: zero polynomial has no Newton polytope")]
    ZeroPolynomial { line: usize },
    #[error("exponent vector has {found} entries, expected {expected}")]
    Arity { expected: usize, found: usize },
    #[error("all coefficients cancel")]
    AllTermsCancel,
    #[error("system has {polys} polynomials in {vars} variables")]
    CountMismatch { polys: usize, vars: usize },
    #[error("invalid grouping: {0}")]
    Grouping(String),
    #[error("mixed volume count {0} is not an integer")]
    NonInteger(String),
    #[error(transparent)]
    MixedVolume(#[from] MixedVolumeError),
}

/// Non-zero Laurent polynomial; terms sorted by exponent vector, no zero
/// coefficients, no repeated exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPolynomial {
    num_vars: usize,
    terms: Vec<(Rational, Vec<i64>)>,
}

impl LaurentPolynomial {
    /// Combines like terms and drops zero coefficients.
    pub fn new(num_vars: usize, terms: Vec<(Rational, Vec<i64>)>) -> Result<Self, NewtonError> {
        let mut combined: std::collections::BTreeMap<Vec<i64>, Rational> = std::collections::BTreeMap::new();
        for (c, e) in terms {
            if e.len() != num_vars {
                return Err(NewtonError::Arity { expected: num_vars, found: e.len() });
            }
            *combined.entry(e).or_default() += c;
        }
        let terms: Vec<(Rational, Vec<i64>)> =
            combined.into_iter().filter(|(_, c)| !num_traits::Zero::is_zero(c)).map(|(e, c)| (c, e)).collect();
        if terms.is_empty() {
            return Err(NewtonError::AllTermsCancel);
        }
        Ok(Self { num_vars, terms })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &[(Rational, Vec<i64>)] {
        &self.terms
    }

    pub fn exponents(&self) -> impl Iterator<Item = &[i64]> {
        self.terms.iter().map(|(_, e)| e.as_slice())
    }
}

pub fn parse_laurent(text: &str, num_vars: usize) -> Result<LaurentPolynomial, NewtonError> {
    parser::parse_line(text, 1, num_vars)
}

/// One polynomial per non-blank line; the number of variables equals the
/// number of polynomials.
pub fn parse_system(text: &str) -> Result<Vec<LaurentPolynomial>, NewtonError> {
    let lines: Vec<(usize, &str)> =
        text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, l)).collect();
    let n = lines.len();
    if n == 0 {
        return Err(NewtonError::CountMismatch { polys: 0, vars: 0 });
    }
    lines.into_iter().map(|(line, l)| parser::parse_line(l, line, n)).collect()
}

pub fn newton_polytope(p: &LaurentPolynomial) -> VPolytope {
    let pts: Vec<Point> = p.exponents().map(Point::from_ints).collect();
    convex_hull(&pts).expect("non-empty, uniform dimension")
}

/// Equal after translating one onto the other.
pub fn same_up_to_translation(a: &VPolytope, b: &VPolytope) -> bool {
    // Lexicographic vertex order is translation-equivariant.
    let (va, vb) = (a.vertices(), b.vertices());
    va.len() == vb.len() && va.iter().zip(vb).all(|(x, y)| x - &va[0] == y - &vb[0])
}

fn check_square(system: &[LaurentPolynomial]) -> Result<usize, NewtonError> {
    let n = system.len();
    if let Some(p) = system.iter().find(|p| p.num_vars != n) {
        return Err(NewtonError::CountMismatch { polys: n, vars: p.num_vars });
    }
    if n == 0 {
        return Err(NewtonError::CountMismatch { polys: 0, vars: 0 });
    }
    Ok(n)
}

fn to_integer(v: Rational) -> Result<BigInt, NewtonError> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(NewtonError::NonInteger(format_rational(&v)))
    }
}

/// `n!` times a mixed volume over lattice bodies, asserted integral.
fn count(e: &mut MixedVolumeEngine, mults: &[usize]) -> Result<BigInt, NewtonError> {
    let n = e.dim();
    to_integer(e.mixed_volume(mults)? * Rational::from_integer(factorial(n)))
}

/// `n! V(P_1, ..., P_n)`.
pub fn bkk_bound(system: &[LaurentPolynomial]) -> Result<BigInt, NewtonError> {
    check_square(system)?;
    let polys: Vec<VPolytope> = system.iter().map(newton_polytope).collect();
    let mut e = MixedVolumeEngine::new(&polys)?;
    count(&mut e, &vec![1; polys.len()])
}

/// `prod_i n! V(P_i, Delta^{n-1})`.
pub fn classical_bound(system: &[LaurentPolynomial]) -> Result<BigInt, NewtonError> {
    let n = check_square(system)?;
    let mut bodies: Vec<VPolytope> = system.iter().map(newton_polytope).collect();
    bodies.push(VPolytope::standard_simplex(n));
    let mut e = MixedVolumeEngine::new(&bodies)?;
    let mut product = BigInt::one();
    for i in 0..n {
        let mut mults = vec![0; n + 1];
        mults[i] = 1;
        mults[n] = n - 1;
        product *= count(&mut e, &mults)?;
    }
    Ok(product)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub bkk: BigInt,
    pub classical: BigInt,
    /// `min_k prod C(n,a_i) N(K_i^{a_i}, D^{n-a_i}) / (C(n,a_k) N(D)^{r-1})`;
    /// absent when `N(D) = 0` and there are several groups.
    pub paper_bound: Option<Rational>,
    /// Group sizes `a_1, ..., a_r`; the remaining polynomials form the `D` group.
    pub grouping: Vec<usize>,
    pub remark: Option<InequalityReport>,
}

impl BoundsReport {
    pub fn to_json(&self) -> serde_json::Value {
        let int = |v: &BigInt| match i64::try_from(v) {
            Ok(x) => serde_json::Value::from(x),
            Err(_) => serde_json::Value::from(v.to_string()),
        };
        serde_json::json!({
            "bkk": int(&self.bkk),
            "classical": int(&self.classical),
            "paper_bound": self.paper_bound.as_ref().map(format_rational),
            "grouping": self.grouping,
        })
    }

    pub fn bkk_within_classical(&self) -> bool {
        self.bkk <= self.classical
    }

    pub fn remark_holds(&self) -> bool {
        self.remark.as_ref().is_none_or(|r| r.holds)
    }
}

/// Splits consecutive runs of translation-equivalent Newton polytopes.
pub fn default_grouping(polys: &[VPolytope]) -> Vec<usize> {
    let mut groups: Vec<usize> = Vec::new();
    for (i, p) in polys.iter().enumerate() {
        if i > 0 && same_up_to_translation(p, &polys[i - 1]) {
            *groups.last_mut().unwrap() += 1;
        } else {
            groups.push(1);
        }
    }
    groups
}

/// BKK count, classical Bézout product and the grouped Bézout-type bound.
///
/// `grouping = [a_1, ..., a_r]` takes the first `a_1` polynomials as group
/// one and so on; the `n - |a|` remaining ones share the polytope `D`. When
/// `|a| = n`, `D` is the standard simplex. Without a grouping, consecutive
/// runs of equal Newton polytopes (up to translation) form the groups.
pub fn compare_bounds(system: &[LaurentPolynomial], grouping: Option<&[usize]>) -> Result<BoundsReport, NewtonError> {
    let n = check_square(system)?;
    let polys: Vec<VPolytope> = system.iter().map(newton_polytope).collect();
    let groups = grouping.map_or_else(|| default_grouping(&polys), <[usize]>::to_vec);
    if groups.is_empty() || groups.contains(&0) {
        return Err(NewtonError::Grouping("group sizes must be positive".into()));
    }
    let total: usize = groups.iter().sum();
    if total > n {
        return Err(NewtonError::Grouping(format!("group sizes sum to {total} > {n}")));
    }

    let mut reps: Vec<VPolytope> = Vec::new();
    let mut start = 0;
    for (g, &a) in groups.iter().enumerate() {
        let rep = &polys[start];
        if let Some(j) = (start..start + a).find(|&j| !same_up_to_translation(&polys[j], rep)) {
            return Err(NewtonError::Grouping(format!(
                "polynomial {} has a different Newton polytope from the rest of group {}",
                j + 1,
                g + 1
            )));
        }
        reps.push(rep.clone());
        start += a;
    }
    let d = if total < n {
        let rep = &polys[total];
        if let Some(j) = (total..n).find(|&j| !same_up_to_translation(&polys[j], rep)) {
            return Err(NewtonError::Grouping(format!("polynomial {} differs from the remaining D group", j + 1)));
        }
        rep.clone()
    } else {
        VPolytope::standard_simplex(n)
    };

    // Bodies: distinct Newton polytopes, then the group representatives, D and Delta.
    let r = groups.len();
    let mut bodies = polys.clone();
    bodies.extend(reps.iter().cloned());
    bodies.push(d);
    bodies.push(VPolytope::standard_simplex(n));
    let mut e = MixedVolumeEngine::new(&bodies)?;
    let width = bodies.len();
    let (d_idx, delta_idx) = (n + r, n + r + 1);
    let unit = |pairs: &[(usize, usize)]| {
        let mut m = vec![0; width];
        for &(i, a) in pairs {
            m[i] += a;
        }
        m
    };

    let bkk = count(&mut e, &unit(&(0..n).map(|i| (i, 1)).collect::<Vec<_>>()))?;
    let mut classical = BigInt::one();
    for i in 0..n {
        classical *= count(&mut e, &unit(&[(i, 1), (delta_idx, n - 1)]))?;
    }

    let mut joint: Vec<(usize, usize)> = groups.iter().enumerate().map(|(g, &a)| (n + g, a)).collect();
    joint.push((d_idx, n - total));
    let lhs_count = count(&mut e, &unit(&joint))?;
    let n_d = count(&mut e, &unit(&[(d_idx, n)]))?;
    let mut rhs = BigInt::one();
    for (g, &a) in groups.iter().enumerate() {
        rhs *= binomial(n, a) * count(&mut e, &unit(&[(n + g, a), (d_idx, n - a)]))?;
    }
    let rhs = Rational::from_integer(rhs);
    let nd_pow = pow(&Rational::from_integer(n_d.clone()), r - 1);

    // The selector k only enters through C(n, a_k); the largest binomial
    // gives the tightest bound.
    let k = (0..r).max_by_key(|&g| (binomial(n, groups[g]), std::cmp::Reverse(g))).unwrap();
    let ck = Rational::from_integer(binomial(n, groups[k]));
    let lhs = &ck * Rational::from_integer(lhs_count) * &nd_pow;
    let a_str: Vec<String> = groups.iter().map(usize::to_string).collect();
    let remark = InequalityReport::new("bkk-remark", lhs, rhs.clone(), format!("n={n};a={};k={}", a_str.join(","), k + 1));
    let paper_bound = nd_pow.is_positive().then(|| rhs / (ck * nd_pow));

    Ok(BoundsReport { bkk, classical, paper_bound, grouping: groups, remark: Some(remark) })
}
