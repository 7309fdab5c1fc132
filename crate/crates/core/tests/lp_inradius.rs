mod common;

use bezout_core::geometry::{convex_hull, facet_enumeration, scale, translate, Point, VPolytope};
use bezout_core::inradius::{check_diskant_bound, check_inclusion_scaling, inradius, InradiusError};
use bezout_core::linalg::solve;
use bezout_core::lp::{solve_lp, LinearProgram, LpError};
use bezout_core::rational::{int, ratio, Rational};
use common::{random_points, rng};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Optimum of a bounded, feasible LP by enumerating basic solutions.
fn vertex_oracle(lp: &LinearProgram) -> Option<Rational> {
    let n = lp.num_vars();
    let mut best: Option<Rational> = None;
    for idx in subsets(lp.constraints.len(), n) {
        let a: Vec<Vec<Rational>> = idx.iter().map(|&i| lp.constraints[i].0.clone()).collect();
        let b: Vec<Rational> = idx.iter().map(|&i| lp.constraints[i].1.clone()).collect();
        let Some(x) = solve(a, b) else { continue };
        if lp.is_feasible(&x) {
            let v: Rational = lp.objective.iter().zip(&x).map(|(c, y)| c * y).sum();
            if best.as_ref().is_none_or(|b| v > *b) {
                best = Some(v);
            }
        }
    }
    best
}

#[test]
fn lp_matches_vertex_enumeration() {
    let mut r = rng(8);
    let mut solved = 0;
    for _ in 0..150 {
        let n = r.gen_range(2..=3);
        let mut lp = LinearProgram::new((0..n).map(|_| int(r.gen_range(-3..=3))).collect());
        // A box keeps every instance bounded; random cuts may empty it.
        for j in 0..n {
            let mut row = vec![Rational::zero(); n];
            row[j] = int(1);
            lp.add_constraint(row.clone(), int(r.gen_range(1..=6)));
            row[j] = int(-1);
            lp.add_constraint(row, int(r.gen_range(-2..=6)));
        }
        for _ in 0..r.gen_range(1..=4) {
            let row = (0..n).map(|_| int(r.gen_range(-4..=4))).collect();
            lp.add_constraint(row, ratio(r.gen_range(-6..=10), r.gen_range(1..=3)));
        }
        match (solve_lp(&lp), vertex_oracle(&lp)) {
            (Ok(s), Some(v)) => {
                assert_eq!(s.value, v);
                assert!(s.certifies(&lp));
                solved += 1;
            }
            (Err(LpError::Infeasible), None) => {}
            (got, want) => panic!("solver {got:?}, oracle {want:?} on {lp:?}"),
        }
    }
    assert!(solved > 50);
}

/// Whether some `t` satisfies `a . t <= b - lambda h_L(a)` for every facet,
/// decided by enumerating intersections of `n` constraint planes.
fn translate_exists(k: &VPolytope, l: &VPolytope, lambda: &Rational) -> bool {
    let h = facet_enumeration(k).unwrap();
    let rows: Vec<(Vec<Rational>, Rational)> = h
        .facets
        .iter()
        .map(|f| {
            let a = f.normal_point();
            (a.coords().to_vec(), &f.offset - lambda * l.support(&a))
        })
        .collect();
    let n = k.dim();
    subsets(rows.len(), n).into_iter().any(|idx| {
        let a = idx.iter().map(|&i| rows[i].0.clone()).collect();
        let b = idx.iter().map(|&i| rows[i].1.clone()).collect();
        solve(a, b).is_some_and(|t| rows.iter().all(|(a, b)| a.iter().zip(&t).map(|(x, y)| x * y).sum::<Rational>() <= *b))
    })
}

#[test]
fn inradius_against_lambda_grid() {
    let mut r = rng(9);
    let mut checked = 0;
    while checked < 30 {
        let dim = r.gen_range(2..=3);
        let k = convex_hull(&random_points(&mut r, dim, dim + 4, 6, 1)).unwrap();
        let l = convex_hull(&random_points(&mut r, dim, dim + 3, 4, 1)).unwrap();
        if !k.is_full_dimensional() || l.vertices().len() < 2 {
            continue;
        }
        let res = inradius(&k, &l).unwrap();
        assert!(res.verify(&k, &l).unwrap());
        assert!(translate_exists(&k, &l, &res.lambda_star));
        for step in 1..=24 {
            let lambda = ratio(step, 8);
            assert_eq!(translate_exists(&k, &l, &lambda), lambda <= res.lambda_star, "lambda {lambda}");
        }
        let above = &res.lambda_star + ratio(1, 1000);
        assert!(!translate_exists(&k, &l, &above));
        checked += 1;
    }
}

#[test]
fn degenerate_and_error_cases() {
    let sq = VPolytope::unit_cube(2);
    let thin = VPolytope::cube_box(&[int(10), ratio(1, 10)]);
    // A long bar fits in the square only when shrunk below 1/10.
    assert_eq!(inradius(&sq, &thin).unwrap().lambda_star, ratio(1, 10));
    let pt = VPolytope::point(Point::from_ints(&[1, 1]));
    assert_eq!(inradius(&sq, &pt), Err(InradiusError::PointBody));
    let seg = VPolytope::segment(Point::from_ints(&[0, 0]), Point::from_ints(&[3, 4])).unwrap();
    assert_eq!(inradius(&sq, &seg).unwrap().lambda_star, ratio(1, 4));
    assert!(matches!(check_diskant_bound(&sq, &seg), Err(InradiusError::NotFullDimensional("L"))));
}

#[test]
fn bound_checks_hold_on_cases() {
    let sq = VPolytope::unit_cube(2);
    let tri = VPolytope::standard_simplex(2);
    let r = check_diskant_bound(&sq, &tri).unwrap();
    assert!(r.holds);
    let r = check_inclusion_scaling(&tri, &sq).unwrap();
    assert!(r.holds);
    let t = r.witness.unwrap();
    // s = 2 V(sq, tri) / vol(tri) = 2 * 1 / (1/2) = 4
    assert!(scale(&tri, &int(4)).unwrap().contains_polytope(&translate(&sq, &t).unwrap()).unwrap());
}

fn arb_body(dim: usize) -> impl Strategy<Value = VPolytope> {
    prop::collection::vec(prop::collection::vec(-5i64..=5, dim), dim + 1..=dim + 5)
        .prop_map(|pts| convex_hull(&pts.iter().map(|p| Point::from_ints(p)).collect::<Vec<_>>()).unwrap())
        .prop_filter("full-dimensional", |p| p.is_full_dimensional())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inradius_scales_and_translates(
        k in arb_body(2),
        l in arb_body(2),
        s in (1i64..=5, 1i64..=3).prop_map(|(p, q)| ratio(p, q)),
        v in prop::collection::vec(-4i64..=4, 2),
    ) {
        let base = inradius(&k, &l).unwrap().lambda_star;
        let scaled = inradius(&k, &scale(&l, &s).unwrap()).unwrap().lambda_star;
        prop_assert_eq!(scaled, &base / &s);
        let shift = Point::from_ints(&v);
        prop_assert_eq!(&inradius(&translate(&k, &shift).unwrap(), &l).unwrap().lambda_star, &base);
        prop_assert_eq!(&inradius(&k, &translate(&l, &shift).unwrap()).unwrap().lambda_star, &base);
    }
}
