mod common;

use common::*;
use markov_shap::wa::MAX_DENSE_DIM;
use markov_shap::{Materialized, Pipeline, Sort};
use proptest::prelude::*;
use rand::Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lazy_composites_equal_materialised_ones(seed in any::<u64>(), len in 0usize..=4) {
        let mut r = rng(seed);
        let sigma = alphabet(r.gen_range(1..=3));
        let gamma = alphabet(r.gen_range(1..=3));
        let da = r.gen_range(1..=3);
        let a = random_wa(&mut r, &sigma, da);
        let db = r.gen_range(1..=3);
        let b = random_wa(&mut r, &sigma, db);
        let dt = r.gen_range(1..=2);
        let t = random_wt(&mut r, &sigma, &gamma, dt);
        let du = r.gen_range(1..=2);
        let u = random_wt(&mut r, &gamma, &sigma, du);
        let c: f64 = r.gen_range(-2.0..2.0);

        let inner = Pipeline::scale(Pipeline::sum(a.clone(), Pipeline::product(a.clone(), b.clone()).unwrap()).unwrap(), c).unwrap();
        let projected = Pipeline::project(inner.clone(), t.clone()).unwrap();
        let back = Pipeline::project(projected.clone(), Pipeline::inverse(Pipeline::inverse(u.clone()).unwrap()).unwrap()).unwrap();
        let relation = Pipeline::times(projected.clone(), u.clone()).unwrap();
        prop_assert_eq!(back.sort(), &Sort::Language(sigma.clone()));

        let dense_back = back.materialize_wa().unwrap();
        let dense_rel = relation.materialize_wt().unwrap();
        for w in sigma.words(len) {
            let lazy = back.evaluate(&w).unwrap();
            prop_assert!((lazy - dense_back.evaluate(&w).unwrap()).abs() < 1e-10);
        }
        prop_assert!((back.partition_constant(len).unwrap() - dense_back.partition_constant(len)).abs() < 1e-9);
        for g in gamma.words(len) {
            for w in sigma.words(len) {
                let lazy = relation.evaluate_pair(&g, &w).unwrap();
                prop_assert!((lazy - dense_rel.evaluate(&g, &w).unwrap()).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn sort_errors_are_contract_violations() {
    let mut r = rng(1);
    let (s2, s3) = (alphabet(2), alphabet(3));
    let a = random_wa(&mut r, &s2, 2);
    let b = random_wa(&mut r, &s3, 2);
    let t = random_wt(&mut r, &s3, &s2, 1);
    assert!(Pipeline::product(a.clone(), b.clone()).is_err());
    assert!(Pipeline::project(a.clone(), t.clone()).is_err());
    assert!(Pipeline::inverse(a.clone()).is_err());
    assert!(Pipeline::product(a.clone(), t.clone()).is_err());
    assert!(a.product(&b).is_err());
    let rel = Pipeline::from(t);
    assert!(rel.evaluate(&[0]).is_err());
    assert!(rel.evaluate_pair(&[0, 1], &[0]).is_err());
    assert!(matches!(Pipeline::from(a).materialize().unwrap(), Materialized::Automaton(_)));
}

#[test]
fn dense_constructions_are_capped() {
    let mut r = rng(2);
    let s = alphabet(2);
    let big = random_wa(&mut r, &s, 101);
    assert!(matches!(big.product(&big), Err(markov_shap::Error::Contract(_))));
    let lazy = Pipeline::product(big.clone(), big.clone()).unwrap();
    assert!(lazy.composite_dim() > MAX_DENSE_DIM as u128);
    let w = random_word(&mut r, 2, 3);
    let direct = big.evaluate(&w).unwrap().powi(2);
    assert!((lazy.evaluate(&w).unwrap() - direct).abs() < 1e-9 * direct.abs().max(1.0));
}
