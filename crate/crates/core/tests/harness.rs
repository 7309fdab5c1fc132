use bezout_core::geometry::{Point, VPolytope};
use bezout_core::harness::{
    check_log_concavity_form, check_main_theorem, check_zonoid_constant, composition_selector_pairs, run_suite,
    run_suite_into, tightness_survey, trial_seed, HarnessError, InstanceGenerator, Registry, ResultsStore, SuiteConfig,
    Zonotope,
};
use bezout_core::rational::{binomial, int, ratio, Rational};
use proptest::prelude::*;

#[test]
fn generator_is_reproducible() {
    for dim in 1..=4 {
        let mut a = InstanceGenerator::new(trial_seed(7, 3), dim);
        let mut b = InstanceGenerator::new(trial_seed(7, 3), dim);
        for _ in 0..20 {
            assert_eq!(a.body(), b.body());
            assert_eq!(a.psd_matrix(None), b.psd_matrix(None));
        }
    }
    assert_ne!(trial_seed(7, 3), trial_seed(7, 4));
    assert_ne!(trial_seed(7, 3), trial_seed(8, 3));
}

#[test]
fn store_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.ndjson");
    let reg = Registry::default();
    let store = ResultsStore::create(&path).unwrap();
    let a = run_suite_into(&reg, &SuiteConfig::new("corollary", 2, 12, 5), &store).unwrap();
    let b = run_suite_into(&reg, &SuiteConfig::new("simplex", 3, 8, 5), &store).unwrap();
    drop(store);
    let back = ResultsStore::read(&path).unwrap();
    let expected: Vec<_> = a.records.iter().chain(&b.records).cloned().collect();
    assert_eq!(back, expected);
    let text = std::fs::read_to_string(&path).unwrap();
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    let keys: Vec<&String> = first.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 8);
    for k in ["inequality_id", "seed", "trial", "lhs", "rhs", "ratio", "holds", "digest"] {
        assert!(first.get(k).is_some(), "missing {k}");
    }
}

#[test]
fn survey_is_reproducible() {
    let reg = Registry::default();
    let one = tightness_survey(&reg, "simplex", 1000, &[2], 11, None).unwrap();
    let two = tightness_survey(&reg, "simplex", 1000, &[2], 11, None).unwrap();
    assert_eq!(one.to_json(), two.to_json());
    assert_eq!(one.dims[0].violations, 0);
}

#[test]
fn suite_is_thread_independent() {
    let reg = Registry::default();
    let base = run_suite(&reg, &SuiteConfig::new("main-theorem", 3, 24, 99).threads(1)).unwrap();
    let par = run_suite(&reg, &SuiteConfig::new("main-theorem", 3, 24, 99).threads(4)).unwrap();
    assert_eq!(base.to_ndjson(), par.to_ndjson());
    assert!(base.is_success());
}

#[test]
fn unknown_and_unsupported() {
    let reg = Registry::default();
    assert!(matches!(run_suite(&reg, &SuiteConfig::new("nope", 2, 1, 0)), Err(HarnessError::UnknownInequality(_))));
    assert!(matches!(
        run_suite(&reg, &SuiteConfig::new("main-theorem", 40, 1, 0)),
        Err(HarnessError::UnsupportedDim { .. })
    ));
    assert_eq!(reg.ids().len(), 14);
}

#[test]
fn sharper_search_never_counts_as_violation() {
    let reg = Registry::default();
    let check = reg.get("discriminant-sharper-search").unwrap();
    assert!(!check.asserts());
    let res = run_suite(&reg, &SuiteConfig::new("discriminant-sharper-search", 3, 30, 2)).unwrap();
    assert!(!res.asserts);
    assert!(res.violations().is_empty());
    assert!(res.errors.is_empty());
}

#[test]
fn equal_bodies_give_binomial_ratio() {
    for n in 2..=4 {
        let d = VPolytope::unit_cube(n);
        for (a, k) in composition_selector_pairs(n) {
            let bodies: Vec<(VPolytope, usize)> = a.iter().map(|&m| (d.clone(), m)).collect();
            let rep = check_main_theorem(&bodies, &d, k).unwrap();
            let num: num_bigint::BigInt = a.iter().map(|&m| binomial(n, m)).product();
            let expected = Rational::new(num, binomial(n, a[k - 1]));
            assert_eq!(rep.ratio, Some(expected), "n={n} a={a:?} k={k}");
            assert!(rep.holds);
        }
    }
}

#[test]
fn zonoid_single_body_is_equality() {
    let z = Zonotope {
        offset: Point::from_ints(&[1, -1, 0]),
        generators: vec![Point::from_ints(&[1, 2, 0]), Point::from_ints(&[0, 1, 3]), Point::from_ints(&[2, 0, 1])],
    };
    let rep = check_zonoid_constant(&[z], &VPolytope::standard_simplex(3)).unwrap();
    assert!(rep.is_equality());
}

#[test]
fn log_concavity_with_segment() {
    let seg = VPolytope::segment(Point::from_ints(&[0, 0, 0]), Point::from_ints(&[1, 2, 3])).unwrap();
    let d = VPolytope::cube_box(&[int(1), int(2), ratio(1, 2)]);
    assert!(check_log_concavity_form(&seg, &d, 1).unwrap().is_equality());
    for r in 2..=3 {
        let rep = check_log_concavity_form(&seg, &d, r).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.lhs, int(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_check_holds_on_random_trials(seed in any::<u64>(), idx in 0usize..14) {
        let reg = Registry::default();
        let id = reg.ids()[idx].to_string();
        let check = reg.get(&id).unwrap();
        let dim = if check.supports_dim(3) { 3 } else { 2 };
        let mut g = InstanceGenerator::new(seed, dim);
        match check.run_trial(&mut g, seed % 7) {
            Ok(rep) => prop_assert!(rep.holds || !check.asserts(), "{} {}", id, rep.digest),
            Err(e) => prop_assert!(false, "{} failed: {}", id, e),
        }
    }
}
