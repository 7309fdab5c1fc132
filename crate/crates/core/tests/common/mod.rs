//! Brute-force oracles shared by the integration tests. They use only
//! rational Gaussian elimination and the Leibniz determinant, nothing from
//! the library's hull or volume code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use bezout_core::geometry::Point;
use bezout_core::rational::{factorial, ratio, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_points(rng: &mut ChaCha8Rng, dim: usize, count: usize, bound: i64, q: i64) -> Vec<Point> {
    (0..count).map(|_| Point::new((0..dim).map(|_| ratio(rng.gen_range(-bound..=bound), q)).collect())).collect()
}

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[r][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn affine_dim(points: &[&Point]) -> usize {
    let Some(first) = points.first() else { return 0 };
    rank(points.iter().skip(1).map(|p| (*p - *first).coords().to_vec()).collect())
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // Inserting at `pos` moves the new element past `len - pos` others.
            let flips = p.len() - pos;
            out.push((q, even == (flips % 2 == 0)));
        }
    }
    out
}

/// Leibniz expansion.
pub fn leibniz_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    permutations(n)
        .into_iter()
        .map(|(p, even)| {
            let term = (0..n).fold(Rational::one(), |acc, i| acc * &m[i][p[i]]);
            if even {
                term
            } else {
                -term
            }
        })
        .sum()
}

pub fn permutation_list(n: usize) -> Vec<Vec<usize>> {
    permutations(n).into_iter().map(|(p, _)| p).collect()
}

/// `(1/n!) sum_sigma det[A_sigma(1) e_1 | ... | A_sigma(n) e_n]`.
pub fn mixed_discriminant_oracle(ms: &[Vec<Vec<Rational>>]) -> Rational {
    let n = ms.len();
    let mut total = Rational::zero();
    for p in permutation_list(n) {
        let m: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| ms[p[j]][i][j].clone()).collect()).collect();
        total += leibniz_det(&m);
    }
    total / Rational::from_integer(factorial(n))
}

/// Hyperplane `normal . x = offset` through `d` affinely independent points,
/// normal given by signed cofactors.
fn hyperplane(points: &[&Point]) -> Option<(Vec<Rational>, Rational)> {
    let d = points[0].dim();
    let diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| (*p - points[0]).coords().to_vec()).collect();
    let normal: Vec<Rational> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<Rational>> =
                diffs.iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
            let v = leibniz_det(&minor);
            if j % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    if normal.iter().all(Zero::is_zero) {
        return None;
    }
    let offset = normal.iter().zip(points[0].coords()).map(|(a, x)| a * x).sum();
    Some((normal, offset))
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = k_subsets(n - 1, k);
    for mut s in k_subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Normal scaled so its first non-zero entry has absolute value 1.
pub fn normalize(normal: &[Rational], offset: &Rational) -> (Vec<Rational>, Rational) {
    let s = normal.iter().find(|x| !x.is_zero()).expect("non-zero").abs();
    (normal.iter().map(|x| x / &s).collect(), offset / &s)
}

/// Every supporting hyperplane through `d` input points with all points
/// on one side, oriented outward (`normal . x <= offset`), normalized.
pub fn naive_facets(points: &[Point]) -> BTreeSet<(Vec<Rational>, Rational)> {
    let d = points[0].dim();
    let mut out = BTreeSet::new();
    for idx in k_subsets(points.len(), d) {
        let pts: Vec<&Point> = idx.iter().map(|&i| &points[i]).collect();
        let Some((normal, offset)) = hyperplane(&pts) else { continue };
        let side = |p: &Point| -> Rational { normal.iter().zip(p.coords()).map(|(a, x)| a * x).sum::<Rational>() - &offset };
        let values: Vec<Rational> = points.iter().map(side).collect();
        if values.iter().all(|v| !v.is_positive()) {
            out.insert(normalize(&normal, &offset));
        } else if values.iter().all(|v| !v.is_negative()) {
            let neg: Vec<Rational> = normal.iter().map(|x| -x).collect();
            out.insert(normalize(&neg, &-offset.clone()));
        }
    }
    out
}

fn on_facet(p: &Point, f: &(Vec<Rational>, Rational)) -> bool {
    f.0.iter().zip(p.coords()).map(|(a, x)| a * x).sum::<Rational>() == f.1
}

/// Points that are the only common point of the facets through them.
pub fn naive_vertices(points: &[Point], facets: &BTreeSet<(Vec<Rational>, Rational)>) -> BTreeSet<Point> {
    let d = points[0].dim();
    points
        .iter()
        .filter(|p| {
            let normals: Vec<Vec<Rational>> = facets.iter().filter(|f| on_facet(p, f)).map(|f| f.0.clone()).collect();
            !normals.is_empty() && rank(normals) == d
        })
        .cloned()
        .collect()
}

fn simplex_volume(vs: &[&Point]) -> Rational {
    let d = vs[0].dim();
    let m: Vec<Vec<Rational>> = vs[1..].iter().map(|p| (*p - vs[0]).coords().to_vec()).collect();
    leibniz_det(&m).abs() / Rational::from_integer(factorial(d))
}

/// Pulling triangulation: faces of a face are its intersections with the
/// facets of the whole polytope that drop the dimension by one.
fn triangulate(
    points: &[Point],
    face: &BTreeSet<usize>,
    dim: usize,
    facets: &[BTreeSet<usize>],
) -> Vec<Vec<usize>> {
    let apex = *face.iter().next().expect("non-empty face");
    if dim == 0 {
        return vec![vec![apex]];
    }
    let mut subfaces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for f in facets {
        let inter: BTreeSet<usize> = face.intersection(f).copied().collect();
        if inter.is_empty() || inter.contains(&apex) {
            continue;
        }
        let pts: Vec<&Point> = inter.iter().map(|&i| &points[i]).collect();
        if affine_dim(&pts) == dim - 1 {
            subfaces.insert(inter);
        }
    }
    let mut out = Vec::new();
    for s in subfaces {
        for mut simplex in triangulate(points, &s, dim - 1, facets) {
            simplex.push(apex);
            out.push(simplex);
        }
    }
    out
}

/// Volume of the hull of full-dimensional `points` by pulling triangulation
/// over the brute-force facets.
pub fn naive_volume(points: &[Point]) -> Rational {
    let d = points[0].dim();
    let facets = naive_facets(points);
    let facet_sets: Vec<BTreeSet<usize>> =
        facets.iter().map(|f| (0..points.len()).filter(|&i| on_facet(&points[i], f)).collect()).collect();
    let all: BTreeSet<usize> = (0..points.len()).collect();
    triangulate(points, &all, d, &facet_sets)
        .iter()
        .map(|s| simplex_volume(&s.iter().map(|&i| &points[i]).collect::<Vec<_>>()))
        .sum()
}

/// Mixed volume of axis-parallel boxes: `perm(sides) / n!`.
pub fn box_mixed_volume(sides: &[Vec<Rational>]) -> Rational {
    let n = sides.len();
    let perm: Rational = permutation_list(n)
        .into_iter()
        .map(|p| (0..n).fold(Rational::one(), |acc, i| acc * &sides[p[i]][i]))
        .sum();
    perm / Rational::from_integer(factorial(n))
}
