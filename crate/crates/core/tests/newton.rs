mod common;

use bezout_core::newton::{
    bkk_bound, classical_bound, compare_bounds, parse_system, LaurentPolynomial, NewtonError,
};
use bezout_core::rational::{int, Rational};
use common::{box_mixed_volume, rng};
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::Rng;

/// Product of `(1 + x_j + ... + x_j^{d_j})` written out term by term.
fn box_polynomial(degrees: &[i64]) -> String {
    let mut terms = vec![String::from("1")];
    for (j, &d) in degrees.iter().enumerate() {
        let mut next = Vec::new();
        for t in &terms {
            for e in 0..=d {
                next.push(if e == 0 { t.clone() } else { format!("{t}*x{}^{e}", j + 1) });
            }
        }
        terms = next;
    }
    terms.join(" + ")
}

fn dense(n: usize, d: i64) -> String {
    // All monomials of total degree <= d.
    fn rec(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<String>) {
        if prefix.len() == n {
            let mono: Vec<String> =
                prefix.iter().enumerate().filter(|(_, e)| **e > 0).map(|(j, e)| format!("x{}^{e}", j + 1)).collect();
            out.push(if mono.is_empty() { "1".into() } else { mono.join("*") });
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(n, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out.join(" + ")
}

#[test]
fn box_systems_count_permanents() {
    let mut r = rng(40);
    for n in 1..=3 {
        for _ in 0..4 {
            let degrees: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(0..=2)).collect()).collect();
            let text: Vec<String> = degrees.iter().map(|d| box_polynomial(d)).collect();
            let sys = parse_system(&text.join("\n")).unwrap();
            let sides: Vec<Vec<Rational>> = degrees.iter().map(|d| d.iter().map(|&x| int(x)).collect()).collect();
            let n_fact: Rational = (1..=n as i64).map(int).product();
            let expected = box_mixed_volume(&sides) * n_fact;
            assert_eq!(Rational::from_integer(bkk_bound(&sys).unwrap()), expected, "degrees {degrees:?}");
        }
    }
}

#[test]
fn dense_systems_meet_bezout() {
    for (n, degs) in [(1, vec![3]), (2, vec![2, 3]), (3, vec![1, 2, 2])] {
        let text: Vec<String> = degs.iter().map(|&d| dense(n, d)).collect();
        let sys = parse_system(&text.join("\n")).unwrap();
        let product: i64 = degs.iter().product();
        assert_eq!(bkk_bound(&sys).unwrap(), BigInt::from(product));
        assert_eq!(classical_bound(&sys).unwrap(), BigInt::from(product));
        let rep = compare_bounds(&sys, None).unwrap();
        assert!(rep.bkk_within_classical() && rep.remark_holds());
    }
}

#[test]
fn univariate_counts_degree_span() {
    let sys = parse_system("x1^-1 + 4 + x1").unwrap();
    assert_eq!(bkk_bound(&sys).unwrap(), BigInt::from(2));
    let sys = parse_system("7*x1^5").unwrap();
    assert_eq!(bkk_bound(&sys).unwrap(), BigInt::from(0));
}

#[test]
fn constructor_combines_terms() {
    let p = LaurentPolynomial::new(2, vec![(int(1), vec![1, 0]), (int(2), vec![1, 0]), (int(-1), vec![0, 0])]).unwrap();
    assert_eq!(p.terms(), &[(int(-1), vec![0, 0]), (int(3), vec![1, 0])]);
    assert_eq!(
        LaurentPolynomial::new(2, vec![(int(1), vec![1])]),
        Err(NewtonError::Arity { expected: 2, found: 1 })
    );
    assert_eq!(
        LaurentPolynomial::new(1, vec![(int(1), vec![2]), (int(-1), vec![2])]),
        Err(NewtonError::AllTermsCancel)
    );
}

#[test]
fn system_shape_errors() {
    assert!(matches!(parse_system("\n\n"), Err(NewtonError::CountMismatch { .. })));
    let p = LaurentPolynomial::new(3, vec![(int(1), vec![0, 0, 0])]).unwrap();
    assert!(matches!(bkk_bound(&[p]), Err(NewtonError::CountMismatch { polys: 1, vars: 3 })));
}

#[test]
fn grouped_bound_on_mixed_supports() {
    // Two bilinear equations and one linear one.
    let sys = parse_system("1 + x1 + x2 + x1*x2 + x3\n2 + x1 - x2 + 3*x1*x2 + x3\n1 + x1 + x2 + x3").unwrap();
    let rep = compare_bounds(&sys, None).unwrap();
    assert_eq!(rep.grouping, vec![2, 1]);
    assert!(rep.bkk_within_classical());
    assert!(rep.remark_holds());
    let bound = rep.paper_bound.clone().unwrap();
    assert!(Rational::from_integer(rep.bkk.clone()) <= bound);
    assert_eq!(rep.to_json()["grouping"], serde_json::json!([2, 1]));
}

fn arb_support(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..=n + 3)
}

fn to_poly(n: usize, support: &[Vec<i64>]) -> LaurentPolynomial {
    LaurentPolynomial::new(n, support.iter().map(|e| (Rational::one(), e.clone())).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn bkk_invariant_under_shift_and_order(
        supports in prop::collection::vec(arb_support(2), 2),
        shift in prop::collection::vec(-3i64..=3, 2),
    ) {
        let sys: Vec<LaurentPolynomial> = supports.iter().map(|s| to_poly(2, s)).collect();
        let base = bkk_bound(&sys).unwrap();
        let moved: Vec<Vec<i64>> = supports[0].iter().map(|e| vec![e[0] + shift[0], e[1] + shift[1]]).collect();
        let shifted = vec![to_poly(2, &moved), sys[1].clone()];
        prop_assert_eq!(&bkk_bound(&shifted).unwrap(), &base);
        let swapped = vec![sys[1].clone(), sys[0].clone()];
        prop_assert_eq!(&bkk_bound(&swapped).unwrap(), &base);
    }

    #[test]
    fn bkk_bounded_by_remark_and_classical(supports in prop::collection::vec(arb_support(2), 2)) {
        let nonneg: Vec<Vec<Vec<i64>>> =
            supports.iter().map(|s| s.iter().map(|e| e.iter().map(|x| x + 2).collect()).collect()).collect();
        let sys: Vec<LaurentPolynomial> = nonneg.iter().map(|s| to_poly(2, s)).collect();
        let rep = compare_bounds(&sys, Some(&[1, 1])).unwrap();
        prop_assert!(rep.bkk_within_classical());
        prop_assert!(rep.remark_holds());
    }
}
